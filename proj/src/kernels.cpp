#include "lgtlab/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace lgt::kernels {

void spmv(const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
  const std::int64_t n = a.rows;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    cplx acc{0.0, 0.0};
    for (int p = a.outer[i]; p < a.outer[i + 1]; ++p) acc += a.values[p] * x[a.inner[p]];
    y[i] = acc;
  }
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const std::int64_t blocks = static_cast<std::int64_t>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<cplx> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    cplx acc{0.0, 0.0};
    for (std::size_t i = lo; i < hi; ++i) acc += std::conj(x[i]) * y[i];
    partial[b] = acc;
  }
  cplx total{0.0, 0.0};
  for (const cplx& p : partial) total += p;
  return total;
}

double norm(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const std::int64_t blocks = static_cast<std::int64_t>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += std::norm(x[i]);
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return std::sqrt(total);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx alpha, std::span<cplx> x) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) x[i] *= alpha;
}

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace lgt::kernels

namespace lgt::kernels::serial {

void spmv(const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
  for (std::int64_t i = 0; i < a.rows; ++i) {
    cplx acc{0.0, 0.0};
    for (int p = a.outer[i]; p < a.outer[i + 1]; ++p) acc += a.values[p] * x[a.inner[p]];
    y[i] = acc;
  }
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace lgt::kernels::serial
