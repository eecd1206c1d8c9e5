#include "lgtlab/operator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgt {

ProductSpace::ProductSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  strides_.assign(dims_.size(), 1);
  size_ = 1;
  for (int s = static_cast<int>(dims_.size()) - 1; s >= 0; --s) {
    if (dims_[s] < 1) throw std::invalid_argument("ProductSpace: site dimension must be positive");
    strides_[s] = size_;
    const auto d = static_cast<std::uint64_t>(dims_[s]);
    if (size_ > (std::uint64_t{1} << 62) / d) throw std::overflow_error("ProductSpace: dimension overflow");
    size_ *= d;
  }
}

void ProductSpace::decode(std::uint64_t index, std::span<int> digits) const {
  for (int s = sites() - 1; s >= 0; --s) {
    const auto d = static_cast<std::uint64_t>(dims_[s]);
    digits[s] = static_cast<int>(index % d);
    index /= d;
  }
}

std::uint64_t ProductSpace::encode(std::span<const int> digits) const {
  std::uint64_t idx = 0;
  for (int s = 0; s < sites(); ++s) idx += static_cast<std::uint64_t>(digits[s]) * strides_[s];
  return idx;
}

// ---------------------------------------------------------------------------

OpString OpString::local(int site, LocalMatrix m, cplx coeff) {
  OpString s(coeff);
  s.factors_.push_back({site, std::move(m)});
  return s;
}

OpString OpString::operator*(const OpString& rhs) const {
  OpString out(coeff_ * rhs.coeff_);
  auto a = factors_.begin();
  auto b = rhs.factors_.begin();
  while (a != factors_.end() || b != rhs.factors_.end()) {
    if (b == rhs.factors_.end() || (a != factors_.end() && a->site < b->site)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->site < a->site) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->site, a->matrix * b->matrix});
      ++a;
      ++b;
    }
  }
  return out;
}

OpString OpString::adjoint() const {
  OpString out(std::conj(coeff_));
  out.factors_.reserve(factors_.size());
  for (const auto& f : factors_) out.factors_.push_back({f.site, f.matrix.adjoint()});
  return out;
}

OpString OpString::scaled(cplx s) const {
  OpString out = *this;
  out.coeff_ *= s;
  return out;
}

OpSum& OpSum::operator+=(const OpString& t) {
  terms_.push_back(t);
  return *this;
}

OpSum& OpSum::operator+=(const OpSum& rhs) {
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return *this;
}

OpSum& OpSum::operator-=(const OpSum& rhs) {
  for (const auto& t : rhs.terms_) terms_.push_back(t.scaled(-1.0));
  return *this;
}

OpSum& OpSum::operator*=(cplx s) {
  for (auto& t : terms_) t = t.scaled(s);
  return *this;
}

OpSum OpSum::adjoint() const {
  OpSum out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
  return out;
}

OpSum operator*(const OpSum& a, const OpSum& b) {
  OpSum out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.terms_.push_back(x * y);
  return out;
}

// ---------------------------------------------------------------------------

StateBasis StateBasis::full(std::uint64_t size) {
  StateBasis b;
  b.full_ = true;
  b.full_size_ = size;
  return b;
}

StateBasis StateBasis::subset(std::vector<std::uint64_t> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  StateBasis b;
  b.full_ = false;
  b.states_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(states));
  return b;
}

std::optional<std::int64_t> StateBasis::find(std::uint64_t product) const {
  if (full_) {
    if (product < full_size_) return static_cast<std::int64_t>(product);
    return std::nullopt;
  }
  auto it = std::lower_bound(states_->begin(), states_->end(), product);
  if (it == states_->end() || *it != product) return std::nullopt;
  return static_cast<std::int64_t>(it - states_->begin());
}

// ---------------------------------------------------------------------------

SparseOperator::SparseOperator(Matrix m, bool hermitian) : matrix_(std::move(m)), hermitian_(hermitian) {
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::identity(std::int64_t n) {
  Matrix m(n, n);
  m.setIdentity();
  return SparseOperator(std::move(m), true);
}

SparseOperator SparseOperator::zero(std::int64_t n) { return SparseOperator(Matrix(n, n), true); }

SparseOperator SparseOperator::from_dense(const DenseMatrix& d, bool hermitian, double drop) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      if (std::abs(d(i, j)) > drop) trips.emplace_back(i, j, d(i, j));
  Matrix m(d.rows(), d.cols());
  m.setFromTriplets(trips.begin(), trips.end());
  return SparseOperator(std::move(m), hermitian);
}

CsrView SparseOperator::view() const {
  return CsrView{matrix_.rows(), matrix_.outerIndexPtr(), matrix_.innerIndexPtr(), matrix_.valuePtr()};
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
  if (static_cast<std::int64_t>(x.size()) != dim() || static_cast<std::int64_t>(y.size()) != dim())
    throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
  kernels::spmv(view(), x, y);
}

Vector SparseOperator::apply(const Vector& x) const {
  Vector y(dim());
  apply(std::span<const cplx>(x.data(), x.size()), std::span<cplx>(y.data(), y.size()));
  return y;
}

SparseOperator SparseOperator::adjoint() const {
  Matrix m = matrix_.adjoint();
  return SparseOperator(std::move(m), hermitian_);
}

DenseMatrix SparseOperator::dense() const { return DenseMatrix(matrix_); }

bool SparseOperator::is_diagonal() const {
  for (Eigen::Index i = 0; i < matrix_.outerSize(); ++i)
    for (Matrix::InnerIterator it(matrix_, i); it; ++it)
      if (it.col() != it.row() && it.value() != cplx{0.0, 0.0}) return false;
  return true;
}

Vector SparseOperator::diagonal() const {
  Vector d = Vector::Zero(dim());
  for (Eigen::Index i = 0; i < matrix_.outerSize(); ++i)
    for (Matrix::InnerIterator it(matrix_, i); it; ++it)
      if (it.col() == it.row()) d(i) += it.value();
  return d;
}

double SparseOperator::hermiticity_defect() const {
  Matrix diff = matrix_ - Matrix(matrix_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.nonZeros(); ++k) worst = std::max(worst, std::abs(diff.valuePtr()[k]));
  return worst;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& rhs) {
  matrix_ = matrix_ + rhs.matrix_;
  matrix_.makeCompressed();
  hermitian_ = hermitian_ && rhs.hermitian_;
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& rhs) {
  matrix_ = matrix_ - rhs.matrix_;
  matrix_.makeCompressed();
  hermitian_ = hermitian_ && rhs.hermitian_;
  return *this;
}

SparseOperator& SparseOperator::operator*=(cplx s) {
  matrix_ *= s;
  if (s.imag() != 0.0) hermitian_ = false;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  SparseOperator::Matrix m = a.matrix_ * b.matrix_;
  return SparseOperator(std::move(m), false);
}

double frobenius_norm(const SparseOperator& a) {
  const auto& m = a.matrix();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) acc += std::norm(m.valuePtr()[k]);
  return std::sqrt(acc);
}

double max_abs(const SparseOperator& a) {
  const auto& m = a.matrix();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) worst = std::max(worst, std::abs(m.valuePtr()[k]));
  return worst;
}

namespace {

// [a, d] for diagonal d: entries a_ij (d_j - d_i).
double commutator_with_diagonal(const SparseOperator& a, const Vector& d) {
  const auto& m = a.matrix();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i)
    for (SparseOperator::Matrix::InnerIterator it(m, i); it; ++it)
      acc += std::norm(it.value() * (d(it.col()) - d(it.row())));
  return std::sqrt(acc);
}

}  // namespace

double commutator_norm(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("commutator_norm: dimension mismatch");
  if (b.is_diagonal()) return commutator_with_diagonal(a, b.diagonal());
  if (a.is_diagonal()) return commutator_with_diagonal(b, a.diagonal());
  return frobenius_norm(a * b - b * a);
}

// ---------------------------------------------------------------------------

namespace {

struct ColumnEntries {
  // nonzeros of column c of a local matrix: (row, value)
  std::vector<std::vector<std::pair<int, cplx>>> cols;
};

struct CompiledTerm {
  cplx coeff;
  std::vector<int> sites;
  std::vector<ColumnEntries> factors;
};

std::vector<CompiledTerm> compile(const OpSum& op, const ProductSpace& space) {
  std::vector<CompiledTerm> out;
  out.reserve(op.terms().size());
  for (const auto& t : op.terms()) {
    if (t.coeff() == cplx{0.0, 0.0}) continue;
    CompiledTerm ct{t.coeff(), {}, {}};
    bool vanishes = false;
    for (const auto& f : t.factors()) {
      if (f.site < 0 || f.site >= space.sites()) throw std::out_of_range("assemble: factor site out of range");
      const int d = space.dim(f.site);
      if (f.matrix.rows() != d || f.matrix.cols() != d)
        throw std::invalid_argument("assemble: local matrix does not match site dimension");
      ColumnEntries ce;
      ce.cols.resize(d);
      bool any = false;
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r)
          if (f.matrix(r, c) != cplx{0.0, 0.0}) {
            ce.cols[c].emplace_back(r, f.matrix(r, c));
            any = true;
          }
      if (!any) vanishes = true;
      ct.sites.push_back(f.site);
      ct.factors.push_back(std::move(ce));
    }
    if (!vanishes) out.push_back(std::move(ct));
  }
  return out;
}

void apply_term(const CompiledTerm& t, const ProductSpace& space, std::uint64_t state,
                std::vector<std::pair<std::uint64_t, cplx>>& work, std::vector<std::pair<std::uint64_t, cplx>>& next,
                std::vector<std::pair<std::uint64_t, cplx>>& out) {
  work.clear();
  work.emplace_back(state, t.coeff);
  for (std::size_t f = 0; f < t.sites.size(); ++f) {
    const int site = t.sites[f];
    const int d = space.digit(state, site);
    const auto& entries = t.factors[f].cols[d];
    if (entries.empty()) return;
    const std::uint64_t stride = space.stride(site);
    next.clear();
    for (const auto& [idx, amp] : work)
      for (const auto& [r, v] : entries) next.emplace_back(idx - d * stride + r * stride, amp * v);
    work.swap(next);
  }
  out.insert(out.end(), work.begin(), work.end());
}

}  // namespace

SparseOperator assemble(const OpSum& op, const ProductSpace& space, const StateBasis& basis, AssemblyStats* stats) {
  const std::vector<CompiledTerm> terms = compile(op, space);
  const std::int64_t n = basis.size();
  constexpr std::int64_t kChunk = 8192;

  std::vector<int> outer;  // column pointers (CSC)
  std::vector<int> inner;
  std::vector<cplx> values;
  outer.reserve(n + 1);
  outer.push_back(0);
  double leaked = 0.0;

  std::vector<std::vector<std::pair<int, cplx>>> chunk_cols;
  for (std::int64_t c0 = 0; c0 < n; c0 += kChunk) {
    const std::int64_t c1 = std::min(n, c0 + kChunk);
    chunk_cols.assign(c1 - c0, {});
    std::vector<double> chunk_leak(c1 - c0, 0.0);
#pragma omp parallel
    {
      std::vector<std::pair<std::uint64_t, cplx>> work, next, raw;
#pragma omp for schedule(static)
      for (std::int64_t c = c0; c < c1; ++c) {
        raw.clear();
        const std::uint64_t state = basis.state(c);
        for (const auto& t : terms) apply_term(t, space, state, work, next, raw);
        auto& col = chunk_cols[c - c0];
        std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t k = 0; k < raw.size();) {
          std::uint64_t row = raw[k].first;
          cplx acc{0.0, 0.0};
          for (; k < raw.size() && raw[k].first == row; ++k) acc += raw[k].second;
          if (acc == cplx{0.0, 0.0}) continue;
          auto idx = basis.find(row);
          if (!idx) {
            chunk_leak[c - c0] += std::norm(acc);
            continue;
          }
          col.emplace_back(static_cast<int>(*idx), acc);
        }
      }
    }
    for (std::int64_t c = c0; c < c1; ++c) {
      auto& col = chunk_cols[c - c0];
      std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [r, v] : col) {
        inner.push_back(r);
        values.push_back(v);
      }
      if (inner.size() > static_cast<std::size_t>(std::numeric_limits<int>::max()))
        throw std::overflow_error("assemble: too many nonzeros");
      outer.push_back(static_cast<int>(inner.size()));
      leaked += chunk_leak[c - c0];
    }
  }
  if (stats) stats->leaked_weight = leaked;

  Eigen::Map<const Eigen::SparseMatrix<cplx, Eigen::ColMajor>> csc(n, n, static_cast<Eigen::Index>(values.size()),
                                                                    outer.data(), inner.data(), values.data());
  SparseOperator::Matrix m = csc;
  return SparseOperator(std::move(m), false);
}

SparseOperator assemble(const OpSum& op, const ProductSpace& space) {
  return assemble(op, space, StateBasis::full(space.size()));
}

LocalMatrix exp_i_hermitian(const LocalMatrix& h) {
  Eigen::SelfAdjointEigenSolver<LocalMatrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(cplx{0.0, w(k)});
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace lgt
