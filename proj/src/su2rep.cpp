#include "lgtlab/su2rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lgt {
namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
constexpr int kPrimeCount = sizeof(kPrimes) / sizeof(kPrimes[0]);
constexpr int kMaxFactorial = 72;

using Exponents = std::array<int, kPrimeCount>;

Exponents factorial_exponents(int n) {
  if (n < 0 || n > kMaxFactorial) throw std::out_of_range("cg: factorial argument out of range");
  Exponents e{};
  for (int i = 0; i < kPrimeCount; ++i)
    for (int q = kPrimes[i]; q <= n; q *= kPrimes[i]) e[i] += n / q;
  return e;
}

Exponents integer_exponents(int n) {
  Exponents e{};
  for (int i = 0; i < kPrimeCount && n > 1; ++i)
    while (n % kPrimes[i] == 0) {
      ++e[i];
      n /= kPrimes[i];
    }
  if (n != 1) throw std::out_of_range("cg: integer has a prime factor outside the table");
  return e;
}

void accumulate(Exponents& acc, const Exponents& e, int sign) {
  for (int i = 0; i < kPrimeCount; ++i) acc[i] += sign * e[i];
}

__int128 exponents_value(const Exponents& e) {
  __int128 v = 1;
  for (int i = 0; i < kPrimeCount; ++i)
    for (int k = 0; k < e[i]; ++k) v *= kPrimes[i];
  return v;
}

// Half-integer helpers on doubled values; all arguments below are already
// known to have even sums, so the halves are exact.
int half(int twice) { return twice / 2; }

}  // namespace

double cg2(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  if (tj1 < 0 || tj2 < 0 || tJ < 0) return 0.0;
  if (tm1 + tm2 != tM) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tJ + tM) % 2 != 0) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;

  const int a = half(tJ + tj1 - tj2);
  const int b = half(tJ - tj1 + tj2);
  const int c = half(tj1 + tj2 - tJ);
  const int d = half(tj1 + tj2 + tJ) + 1;

  // Squared prefactor as prime exponents.
  Exponents pre{};
  accumulate(pre, integer_exponents(tJ + 1), +1);
  accumulate(pre, factorial_exponents(a), +1);
  accumulate(pre, factorial_exponents(b), +1);
  accumulate(pre, factorial_exponents(c), +1);
  accumulate(pre, factorial_exponents(d), -1);
  accumulate(pre, factorial_exponents(half(tJ + tM)), +1);
  accumulate(pre, factorial_exponents(half(tJ - tM)), +1);
  accumulate(pre, factorial_exponents(half(tj1 - tm1)), +1);
  accumulate(pre, factorial_exponents(half(tj1 + tm1)), +1);
  accumulate(pre, factorial_exponents(half(tj2 - tm2)), +1);
  accumulate(pre, factorial_exponents(half(tj2 + tm2)), +1);

  // Racah sum over k with the common denominator L = lcm of the terms.
  const int k1 = half(tj1 + tj2 - tJ);
  const int k2 = half(tj1 - tm1);
  const int k3 = half(tj2 + tm2);
  const int k4 = half(tJ - tj2 + tm1);
  const int k5 = half(tJ - tj1 - tm2);
  const int kmin = std::max({0, -k4, -k5});
  const int kmax = std::min({k1, k2, k3});
  if (kmin > kmax) return 0.0;

  std::vector<Exponents> denoms;
  for (int k = kmin; k <= kmax; ++k) {
    Exponents e{};
    accumulate(e, factorial_exponents(k), +1);
    accumulate(e, factorial_exponents(k1 - k), +1);
    accumulate(e, factorial_exponents(k2 - k), +1);
    accumulate(e, factorial_exponents(k3 - k), +1);
    accumulate(e, factorial_exponents(k4 + k), +1);
    accumulate(e, factorial_exponents(k5 + k), +1);
    denoms.push_back(e);
  }
  Exponents lcm{};
  for (const auto& e : denoms)
    for (int i = 0; i < kPrimeCount; ++i) lcm[i] = std::max(lcm[i], e[i]);

  __int128 numerator = 0;
  for (int k = kmin; k <= kmax; ++k) {
    Exponents q = lcm;
    accumulate(q, denoms[k - kmin], -1);
    const __int128 term = exponents_value(q);
    numerator += (k % 2 == 0) ? term : -term;
  }
  if (numerator == 0) return 0.0;

  // C = N / L * sqrt(pre), evaluated as sign * exp(log|N| + 0.5 log pre - log L).
  accumulate(pre, lcm, -2);
  long double log_mag = std::log(static_cast<long double>(numerator < 0 ? -numerator : numerator));
  for (int i = 0; i < kPrimeCount; ++i)
    log_mag += 0.5L * pre[i] * std::log(static_cast<long double>(kPrimes[i]));
  const long double mag = std::exp(log_mag);
  return static_cast<double>(numerator < 0 ? -mag : mag);
}

double cg(double j1, double m1, double j2, double m2, double J, double M) {
  auto twice = [](double x) { return static_cast<int>(std::lround(2.0 * x)); };
  return cg2(twice(j1), twice(m1), twice(j2), twice(m2), twice(J), twice(M));
}

std::array<LocalMatrix, 3> spin_matrices(int tj) {
  const int d = tj + 1;
  const LocalMatrix tp = spin_raise(tj);
  const LocalMatrix tm = tp.adjoint();
  LocalMatrix tz = LocalMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) tz(a, a) = 0.5 * (tj - 2 * a);
  return {(tp + tm) * 0.5, (tp - tm) * cplx{0.0, -0.5}, tz};
}

LocalMatrix spin_raise(int tj) {
  const int d = tj + 1;
  const double j = 0.5 * tj;
  LocalMatrix tp = LocalMatrix::Zero(d, d);
  for (int a = 1; a < d; ++a) {
    const double m = j - a;
    tp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  return tp;
}

CGTable::CGTable(int tj_cap) : cap_(tj_cap), stride_(tj_cap + 1) {
  if (tj_cap < 0) throw std::invalid_argument("CGTable: negative cap");
  values_.assign(static_cast<std::size_t>(stride_) * stride_ * stride_ * stride_ * (2 * cap_ + 1), 0.0);
  for (int tj1 = 0; tj1 <= cap_; ++tj1)
    for (int a1 = 0; a1 <= tj1; ++a1)
      for (int tj2 = 0; tj2 <= cap_; ++tj2)
        for (int a2 = 0; a2 <= tj2; ++a2)
          for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
            const int tm1 = tj1 - 2 * a1, tm2 = tj2 - 2 * a2;
            values_[index(tj1, tm1, tj2, tm2, tJ)] = cg2(tj1, tm1, tj2, tm2, tJ, tm1 + tm2);
          }
}

std::size_t CGTable::index(int tj1, int tm1, int tj2, int tm2, int tJ) const {
  const int a1 = (tj1 - tm1) / 2, a2 = (tj2 - tm2) / 2;
  return (((static_cast<std::size_t>(tj1) * stride_ + a1) * stride_ + tj2) * stride_ + a2) * (2 * cap_ + 1) + tJ;
}

double CGTable::operator()(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) const {
  if (tj1 > cap_ || tj2 > cap_) return cg2(tj1, tm1, tj2, tm2, tJ, tM);
  if (tj1 < 0 || tj2 < 0 || tJ < 0 || tJ > 2 * cap_) return 0.0;
  if (tm1 + tm2 != tM || std::abs(tm1) > tj1 || std::abs(tm2) > tj2) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0) return 0.0;
  return values_[index(tj1, tm1, tj2, tm2, tJ)];
}

SU2LinkSpace::SU2LinkSpace(int tj_max) : tj_max_(tj_max) {
  if (tj_max < 0 || tj_max > 4) throw std::invalid_argument("SU2LinkSpace: J_max must lie in [0, 2]");
  for (int tj = 0; tj <= tj_max; ++tj)
    for (int a = 0; a <= tj; ++a)
      for (int b = 0; b <= tj; ++b) basis_.push_back({tj, tj - 2 * a, tj - 2 * b});

  const int d = local_dim();
  for (int alpha = 0; alpha < 3; ++alpha) {
    left_[alpha] = LocalMatrix::Zero(d, d);
    right_[alpha] = LocalMatrix::Zero(d, d);
  }
  int offset = 0;
  for (int tj = 0; tj <= tj_max; ++tj) {
    const int n = tj + 1;
    const auto t = spin_matrices(tj);
    for (int alpha = 0; alpha < 3; ++alpha) {
      const LocalMatrix lt = t[alpha].transpose();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            // L acts on m with T^T, R acts on m' with T.
            left_[alpha](offset + a * n + b, offset + c * n + b) = lt(a, c);
            right_[alpha](offset + a * n + b, offset + a * n + c) = t[alpha](b, c);
          }
    }
    offset += n * n;
  }
}

int SU2LinkSpace::index(int tj, int tm, int tmp) const {
  if (tj < 0 || tj > tj_max_ || std::abs(tm) > tj || std::abs(tmp) > tj) return -1;
  if ((tj + tm) % 2 != 0 || (tj + tmp) % 2 != 0) return -1;
  int offset = 0;
  for (int t = 0; t < tj; ++t) offset += (t + 1) * (t + 1);
  const int a = (tj - tm) / 2, b = (tj - tmp) / 2;
  return offset + a * (tj + 1) + b;
}

LocalMatrix SU2LinkSpace::left_casimir() const {
  return left_[0] * left_[0] + left_[1] * left_[1] + left_[2] * left_[2];
}

LocalMatrix SU2LinkSpace::right_casimir() const {
  return right_[0] * right_[0] + right_[1] * right_[1] + right_[2] * right_[2];
}

LocalMatrix SU2LinkSpace::projector(int tj) const {
  const int d = local_dim();
  LocalMatrix p = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (basis_[i].tj == tj) p(i, i) = 1.0;
  return p;
}

LocalMatrix SU2LinkSpace::casimir() const {
  const int d = local_dim();
  LocalMatrix c = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double j = 0.5 * basis_[i].tj;
    c(i, i) = j * (j + 1);
  }
  return c;
}

TruncatedRotationMatrix truncated_rotation_matrix(const SU2LinkSpace& space, int tj) {
  if (tj < 0 || tj > space.tj_max())
    throw std::invalid_argument("truncated_rotation_matrix: j must not exceed J_max");
  const int n = tj + 1;
  const int d = space.local_dim();
  const int cap = space.tj_max();
  const CGTable table(std::max(cap, tj));

  TruncatedRotationMatrix u;
  u.tj = tj;
  u.entries.assign(n, std::vector<LocalMatrix>(n, LocalMatrix::Zero(d, d)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int tm = tj - 2 * a, tmp = tj - 2 * b;
      LocalMatrix& e = u.entries[a][b];
      for (int col = 0; col < d; ++col) {
        const LinkState& s = space.basis()[col];
        for (int tK = std::abs(s.tj - tj); tK <= std::min(s.tj + tj, cap); tK += 2) {
          const int row = space.index(tK, s.tm + tm, s.tmp + tmp);
          if (row < 0) continue;
          const double w = std::sqrt((s.tj + 1.0) / (tK + 1.0));
          e(row, col) += w * table(s.tj, s.tm, tj, tm, tK, s.tm + tm) *
                         table(s.tj, s.tmp, tj, tmp, tK, s.tmp + tmp);
        }
      }
    }
  return u;
}

TraceDefect measure_trace_defect(const SU2LinkSpace& space, const TruncatedRotationMatrix& u) {
  const int d = space.local_dim();
  LocalMatrix t = LocalMatrix::Zero(d, d);
  for (int a = 0; a < u.size(); ++a)
    for (int b = 0; b < u.size(); ++b) t += u(a, b).adjoint() * u(a, b);

  const double dim = u.tj + 1.0;
  const LocalMatrix p = space.projector(space.tj_max());
  double f = 0.0;
  int count = 0;
  for (int i = 0; i < d; ++i)
    if (space.basis()[i].tj == space.tj_max()) {
      f += dim - t(i, i).real();
      ++count;
    }
  TraceDefect out;
  out.f = count > 0 ? f / count : 0.0;
  const LocalMatrix expected = dim * LocalMatrix::Identity(d, d) - out.f * p;
  out.residual = (t - expected).cwiseAbs().maxCoeff();
  return out;
}

namespace {

LocalMatrix annihilator(int n_max) {
  LocalMatrix a = LocalMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

LocalMatrix kron(const LocalMatrix& x, const LocalMatrix& y) {
  LocalMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

// Mode `which` of `count` identical modes, first mode most significant.
LocalMatrix embed_mode(const LocalMatrix& a, int which, int count) {
  const Eigen::Index d = a.rows();
  LocalMatrix out = LocalMatrix::Identity(1, 1);
  for (int k = 0; k < count; ++k) out = kron(out, k == which ? a : LocalMatrix::Identity(d, d));
  return out;
}

LocalMatrix inverse_sqrt_plus_one(const LocalMatrix& number) {
  LocalMatrix out = LocalMatrix::Zero(number.rows(), number.cols());
  for (Eigen::Index i = 0; i < number.rows(); ++i) out(i, i) = 1.0 / std::sqrt(number(i, i).real() + 1.0);
  return out;
}

}  // namespace

std::vector<int> SchwingerU1::fixed_total(int total) const {
  std::vector<int> out;
  for (int na = 0; na <= total; ++na) {
    const int nb = total - na;
    if (na <= n_max && nb <= n_max) out.push_back(index(na, nb));
  }
  return out;
}

SchwingerU1 schwinger_u1(int n_max) {
  if (n_max < 0) throw std::invalid_argument("schwinger_u1: negative cutoff");
  SchwingerU1 s;
  s.n_max = n_max;
  s.local_dim = (n_max + 1) * (n_max + 1);
  const LocalMatrix a = annihilator(n_max);
  s.a = embed_mode(a, 0, 2);
  s.b = embed_mode(a, 1, 2);
  const LocalMatrix na = s.a.adjoint() * s.a;
  const LocalMatrix nb = s.b.adjoint() * s.b;
  s.lz = 0.5 * (na - nb);
  s.ell = 0.5 * (na + nb);
  s.lplus = s.a.adjoint() * s.b;
  s.lminus = s.b.adjoint() * s.a;
  return s;
}

int Prepotential::index(int na1, int na2, int nb1, int nb2) const {
  const int d = n_max + 1;
  return ((na1 * d + na2) * d + nb1) * d + nb2;
}

Prepotential prepotential_decomposition(int n_max) {
  if (n_max < 1) throw std::invalid_argument("prepotential_decomposition: cutoff must be at least 1");
  Prepotential p;
  p.n_max = n_max;
  const LocalMatrix a = annihilator(n_max);
  for (int i = 0; i < 2; ++i) {
    p.a[i] = embed_mode(a, i, 4);
    p.b[i] = embed_mode(a, 2 + i, 4);
  }
  p.local_dim = static_cast<int>(p.a[0].rows());
  p.n_left = p.a[0].adjoint() * p.a[0] + p.a[1].adjoint() * p.a[1];
  p.n_right = p.b[0].adjoint() * p.b[0] + p.b[1].adjoint() * p.b[1];

  const LocalMatrix sl = inverse_sqrt_plus_one(p.n_left);
  const LocalMatrix sr = inverse_sqrt_plus_one(p.n_right);
  p.u_left = {{{sl * p.a[0].adjoint(), -(sl * p.a[1])}, {sl * p.a[1].adjoint(), sl * p.a[0]}}};
  p.u_right = {{{p.b[0].adjoint() * sr, p.b[1].adjoint() * sr}, {-(p.b[1] * sr), p.b[0] * sr}}};
  for (int m = 0; m < 2; ++m)
    for (int mp = 0; mp < 2; ++mp) p.u[m][mp] = p.u_left[m][0] * p.u_right[0][mp] + p.u_left[m][1] * p.u_right[1][mp];

  const auto sigma = spin_matrices(1);  // sigma / 2 in the (up, down) basis
  for (int alpha = 0; alpha < 3; ++alpha) {
    p.left[alpha] = LocalMatrix::Zero(p.local_dim, p.local_dim);
    p.right[alpha] = LocalMatrix::Zero(p.local_dim, p.local_dim);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        p.left[alpha] += sigma[alpha](j, i) * p.a[i].adjoint() * p.a[j];
        p.right[alpha] += sigma[alpha](i, j) * p.b[i].adjoint() * p.b[j];
      }
  }

  p.equal_number_projector = LocalMatrix::Zero(p.local_dim, p.local_dim);
  for (int i = 0; i < p.local_dim; ++i)
    if (std::abs(p.n_left(i, i) - p.n_right(i, i)) < 0.5) p.equal_number_projector(i, i) = 1.0;
  return p;
}

}  // namespace lgt
