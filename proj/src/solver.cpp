#include "lgtlab/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace lgt {

SparseOperator restrict_operator(const SparseOperator& on_basis, const GaussSector& sector) {
  if (on_basis.dim() != sector.basis.size())
    throw std::invalid_argument("restrict: operator dimension does not match the sector basis");
  if (sector.product_basis()) return on_basis;
  const DenseMatrix& b = sector.isometry;
  const DenseMatrix r = b.adjoint() * (on_basis.matrix() * b);
  return SparseOperator::from_dense(r, on_basis.hermitian());
}

SparseOperator restrict_opsum(const OpSum& op, const ProductSpace& space, const GaussSector& sector) {
  return restrict_operator(assemble(op, space, sector.basis), sector);
}

SparseOperator restrict_full(const SparseOperator& full, const GaussSector& sector) {
  const StateBasis& basis = sector.basis;
  if (basis.is_full()) {
    if (full.dim() != basis.size()) throw std::invalid_argument("restrict: dimension mismatch");
    return restrict_operator(full, sector);
  }
  const auto& m = full.matrix();
  const std::int64_t n = basis.size();
  std::vector<Eigen::Triplet<cplx>> triplets;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(basis.state(i));
    if (row >= m.rows()) throw std::invalid_argument("restrict: basis state outside operator range");
    for (SparseOperator::Matrix::InnerIterator it(m, row); it; ++it) {
      const auto j = basis.find(static_cast<std::uint64_t>(it.col()));
      if (j) triplets.emplace_back(static_cast<int>(i), static_cast<int>(*j), it.value());
    }
  }
  SparseOperator::Matrix r(n, n);
  r.setFromTriplets(triplets.begin(), triplets.end());
  return restrict_operator(SparseOperator(std::move(r), full.hermitian()), sector);
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vector start_vector(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(n);
  const double base = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t i = 0; i < n; ++i) v(i) = base * (1.0 + 0.1 * (uniform01(rng) - 0.5));
  return v / v.norm();
}

void matvec(const SparseOperator& a, const Vector& x, Vector& y) {
  y.resize(a.dim());
  kernels::spmv(a.view(), {x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
}

std::span<const cplx> cspan(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<cplx> mspan(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Removes the components of w along the first `count` columns of q (twice,
// for numerical stability).
void orthogonalize(const DenseMatrix& q, int count, Vector& w) {
  for (int pass = 0; pass < 2; ++pass)
    for (int j = 0; j < count; ++j) {
      const Vector qj = q.col(j);
      const cplx c = kernels::dot(cspan(qj), cspan(w));
      kernels::axpy(-c, cspan(qj), mspan(w));
    }
}

struct RitzPair {
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
};

// Lowest eigenpair of A on the orthogonal complement of the first `locked`
// columns of `lock`, by explicitly restarted Lanczos.
RitzPair lowest_deflated(const SparseOperator& a, const DenseMatrix& lock, int locked, Vector v, int m,
                         const EigsOptions& opt, int& restarts) {
  const std::int64_t n = a.dim();
  m = static_cast<int>(std::min<std::int64_t>(m, n - locked));
  DenseMatrix q(n, m);
  Vector w;
  RitzPair best;
  for (int cycle = 0; cycle < opt.max_restarts; ++cycle) {
    ++restarts;
    orthogonalize(lock, locked, v);
    double nv = kernels::norm(cspan(v));
    if (nv < 1e-12) {
      v = start_vector(n, opt.seed + 7919 * (cycle + 1));
      orthogonalize(lock, locked, v);
      nv = kernels::norm(cspan(v));
    }
    q.col(0) = v / nv;

    std::vector<double> alpha, beta;
    int size = m;
    for (int j = 0; j < m; ++j) {
      const Vector qj = q.col(j);
      matvec(a, qj, w);
      alpha.push_back(kernels::dot(cspan(qj), cspan(w)).real());
      orthogonalize(lock, locked, w);
      orthogonalize(q, j + 1, w);
      const double b = kernels::norm(cspan(w));
      if (j + 1 == m) break;
      if (b < 1e-13) {
        size = j + 1;
        break;
      }
      beta.push_back(b);
      q.col(j + 1) = w / b;
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (int j = 0; j < size; ++j) t(j, j) = alpha[j];
    for (int j = 0; j + 1 < size; ++j) t(j, j + 1) = t(j + 1, j) = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd s = es.eigenvectors().col(0);

    Vector x = q.leftCols(size) * s.cast<cplx>();
    orthogonalize(lock, locked, x);
    x /= kernels::norm(cspan(x));
    Vector ax;
    matvec(a, x, ax);
    const double theta = kernels::dot(cspan(x), cspan(ax)).real();
    kernels::axpy(-theta, cspan(x), mspan(ax));
    const double res = kernels::norm(cspan(ax));
    best = {theta, x, res};
    if (res < opt.tolerance) return best;
    v = x;
  }
  throw NumericalError("eigs: Lanczos did not converge after " + std::to_string(restarts) +
                       " restarts (residual " + std::to_string(best.residual) + ")");
}

}  // namespace

EigenResult eigs(const SparseOperator& op, int k, const EigsOptions& opt) {
  const std::int64_t n = op.dim();
  if (k < 1 || k > n) throw std::invalid_argument("eigs: k must lie in [1, dim]");
  EigenResult out;

  if (n < opt.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(op.dense());
    if (es.info() != Eigen::Success) throw NumericalError("eigs: dense eigensolver failed");
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    out.dense = true;
  } else {
    const int m = opt.krylov_dim > 0 ? opt.krylov_dim : std::max(60, 4 * k);
    DenseMatrix lock(n, k);
    std::vector<double> values;
    Vector v = start_vector(n, opt.seed);
    int restarts = 0;
    for (int i = 0; i < k; ++i) {
      RitzPair p = lowest_deflated(op, lock, i, v, m, opt, restarts);
      lock.col(i) = p.vector;
      values.push_back(p.value);
      v = start_vector(n, opt.seed + i + 1);
    }
    // Rayleigh-Ritz on the locked space to order and separate the pairs.
    DenseMatrix al(n, k);
    for (int i = 0; i < k; ++i) {
      Vector y;
      matvec(op, lock.col(i), y);
      al.col(i) = y;
    }
    const DenseMatrix small = lock.adjoint() * al;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (small + small.adjoint()));
    out.values = es.eigenvalues();
    out.vectors = lock * es.eigenvectors();
    out.iterations = restarts;
  }

  for (int i = 0; i < k; ++i) {
    Vector y;
    const Vector x = out.vectors.col(i);
    matvec(op, x, y);
    y -= out.values(i) * x;
    out.max_residual = std::max(out.max_residual, y.norm());
  }
  if (!out.dense && out.max_residual > opt.tolerance)
    throw NumericalError("eigs: residual " + std::to_string(out.max_residual) + " above tolerance after " +
                         std::to_string(out.iterations) + " restarts");
  return out;
}

namespace {

bool krylov_step(const SparseOperator& h, const Vector& v, double dt, const EvolveOptions& opt, Vector& out) {
  const std::int64_t n = h.dim();
  const double beta0 = kernels::norm(cspan(v));
  if (beta0 == 0.0) {
    out = v;
    return true;
  }
  const int mmax = static_cast<int>(std::min<std::int64_t>(opt.max_krylov, n));
  DenseMatrix q(n, mmax);
  q.col(0) = v / beta0;
  std::vector<double> alpha, beta;
  Vector w;
  Eigen::VectorXcd coeffs;
  bool converged = false;
  int size = 0;
  for (int j = 0; j < mmax; ++j) {
    const Vector qj = q.col(j);
    matvec(h, qj, w);
    alpha.push_back(kernels::dot(cspan(qj), cspan(w)).real());
    orthogonalize(q, j + 1, w);
    const double b = kernels::norm(cspan(w));
    size = j + 1;

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) t(i, i) = alpha[i];
    for (int i = 0; i + 1 < size; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::MatrixXcd u = es.eigenvectors().cast<cplx>();
    Eigen::VectorXcd phase(size);
    for (int i = 0; i < size; ++i) phase(i) = std::exp(cplx{0.0, -es.eigenvalues()(i) * dt});
    coeffs = u * phase.asDiagonal() * u.row(0).adjoint();

    const bool breakdown = b < 1e-13;
    if (breakdown || b * std::abs(coeffs(size - 1)) < opt.krylov_tolerance) {
      converged = true;
      break;
    }
    if (j + 1 < mmax) {
      beta.push_back(b);
      q.col(j + 1) = w / b;
    }
  }
  out = beta0 * (q.leftCols(size) * coeffs);
  return converged;
}

}  // namespace

Vector krylov_expm(const SparseOperator& h, const Vector& v, double dt, const EvolveOptions& options) {
  Vector out;
  if (!krylov_step(h, v, dt, options, out)) throw NumericalError("krylov_expm: Krylov space did not converge");
  return out;
}

Trajectory evolve(const SparseOperator& h, const Vector& psi0, double t, int steps, const EvolveOptions& opt) {
  if (steps < 1) throw std::invalid_argument("evolve: steps must be positive");
  if (psi0.size() != h.dim()) throw std::invalid_argument("evolve: state dimension mismatch");
  Trajectory tr;
  const double dt = t / steps;
  const double n0 = psi0.norm();
  Vector psi = psi0;
  tr.times.push_back(0.0);
  tr.states.push_back(psi);
  for (int s = 1; s <= steps; ++s) {
    Vector next;
    if (!krylov_step(h, psi, dt, opt, next)) tr.converged = false;
    psi = std::move(next);
    tr.times.push_back(s * dt);
    tr.states.push_back(psi);
    tr.max_norm_deviation = std::max(tr.max_norm_deviation, std::abs(psi.norm() - n0));
  }
  if (opt.check_halving) {
    Vector fine = psi0;
    for (int s = 0; s < 2 * steps; ++s) {
      Vector next;
      if (!krylov_step(h, fine, 0.5 * dt, opt, next)) tr.converged = false;
      fine = std::move(next);
    }
    tr.halving_difference = (fine - psi).norm();
    if (tr.halving_difference > opt.halving_tolerance) tr.converged = false;
  }
  return tr;
}

EffectiveHamiltonianReport effective_second_order(const SparseOperator& h0, const SparseOperator& v,
                                                  const SparseOperator& h1, const GaussSector& sector,
                                                  double lambda) {
  if (!sector.product_basis()) throw std::invalid_argument("effective_second_order: needs a product-basis sector");
  if (!h0.is_diagonal()) throw std::invalid_argument("effective_second_order: H0 must be diagonal");
  const std::int64_t n = h0.dim();
  if (v.dim() != n || h1.dim() != n) throw std::invalid_argument("effective_second_order: dimension mismatch");

  const StateBasis& basis = sector.basis;
  const std::int64_t s = basis.size();
  const Vector d = h0.diagonal();

  EffectiveHamiltonianReport rep;
  rep.lambda = lambda;
  double e0 = 0.0;
  for (std::int64_t i = 0; i < s; ++i) e0 += d(static_cast<Eigen::Index>(basis.state(i))).real();
  e0 /= static_cast<double>(s);
  rep.e0 = e0;
  for (std::int64_t i = 0; i < s; ++i)
    rep.h0_sector_defect = std::max(rep.h0_sector_defect, std::abs(d(static_cast<Eigen::Index>(basis.state(i))) - e0));

  // Columns of V on the sector: W = V B.
  std::vector<Eigen::Triplet<cplx>> sel;
  for (std::int64_t i = 0; i < s; ++i) sel.emplace_back(static_cast<int>(basis.state(i)), static_cast<int>(i), 1.0);
  SparseOperator::Matrix b(n, s);
  b.setFromTriplets(sel.begin(), sel.end());
  const SparseOperator::Matrix w = v.matrix() * b;

  DenseMatrix h2 = DenseMatrix::Zero(s, s);
  double leak = 0.0;
  const double scale = std::max(1.0, std::abs(e0)) * 1e-12;
  std::vector<std::pair<int, cplx>> row;
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    row.clear();
    for (SparseOperator::Matrix::InnerIterator it(w, r); it; ++it) row.emplace_back(static_cast<int>(it.col()), it.value());
    if (row.empty()) continue;
    if (basis.find(static_cast<std::uint64_t>(r))) {
      for (const auto& [i, x] : row) leak += std::norm(x);
      continue;
    }
    const cplx gap = e0 - d(r);
    if (std::abs(gap) < scale)
      throw NumericalError("effective_second_order: E0 - H0 is singular on state " + std::to_string(r) +
                           " outside the sector");
    for (const auto& [i, xi] : row)
      for (const auto& [j, xj] : row) h2(i, j) += std::conj(xi) * xj / gap;
  }
  rep.leakage = std::sqrt(leak);
  rep.h_eff = restrict_full(h1, sector).dense() + h2;
  rep.h_eff = 0.5 * (rep.h_eff + rep.h_eff.adjoint()).eval();
  return rep;
}

std::pair<double, double> pattern_coefficient(const DenseMatrix& h, const DenseMatrix& pattern) {
  DenseMatrix ho = h, po = pattern;
  ho.diagonal().setZero();
  po.diagonal().setZero();
  const double pp = po.squaredNorm();
  if (pp == 0.0) return {0.0, ho.norm()};
  const double c = (po.adjoint() * ho).trace().real() / pp;
  return {c, (ho - c * po).norm()};
}

}  // namespace lgt
