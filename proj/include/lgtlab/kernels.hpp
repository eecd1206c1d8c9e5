#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace lgt {

using cplx = std::complex<double>;

/// Raw compressed-sparse-row view used by the vector kernels.
struct CsrView {
  std::int64_t rows = 0;
  const int* outer = nullptr;  // rows + 1 entries
  const int* inner = nullptr;
  const cplx* values = nullptr;
};

namespace kernels {

// Reductions are accumulated over fixed-size blocks and the block partials are
// summed serially, so results do not depend on the thread count or schedule.
inline constexpr std::size_t kReductionBlock = 4096;

void spmv(const CsrView& a, std::span<const cplx> x, std::span<cplx> y);
cplx dot(std::span<const cplx> x, std::span<const cplx> y);  // conj(x) . y
double norm(std::span<const cplx> x);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void scale(cplx alpha, std::span<cplx> x);

void set_threads(int n);
int max_threads();

}  // namespace kernels

/// Single-threaded reference versions of the kernels above. Kept for testing
/// and for the benchmark comparison.
namespace kernels::serial {

void spmv(const CsrView& a, std::span<const cplx> x, std::span<cplx> y);
cplx dot(std::span<const cplx> x, std::span<const cplx> y);
double norm(std::span<const cplx> x);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

}  // namespace kernels::serial

}  // namespace lgt
