#pragma once

#include <doctest.h>

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "lgtlab/operator.hpp"

namespace testing {

using lgt::cplx;
using lgt::DenseMatrix;

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DenseMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
  return 0.5 * (m + m.adjoint());
}

inline lgt::Vector random_state(std::int64_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  lgt::Vector v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v / v.norm();
}

inline double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Lowest eigenvalues by dense diagonalization.
inline Eigen::VectorXd dense_spectrum(const DenseMatrix& h) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (h + h.adjoint()));
  return es.eigenvalues();
}

}  // namespace testing
