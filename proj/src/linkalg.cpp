#include "lgtlab/linkalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgt {

LocalMatrix LinkOperatorSet::link_operator() const {
  switch (model) {
    case LinkModel::u1_truncated:
      return raise;
    case LinkModel::spin_gauge:
      return raise / std::sqrt(static_cast<double>(truncation) * (truncation + 1));
    case LinkModel::zn:
      return raise;
  }
  return raise;
}

LinkOperatorSet u1_ops(int lambda) {
  if (lambda < 0) throw std::invalid_argument("u1_ops: truncation must be non-negative");
  LinkOperatorSet s;
  s.model = LinkModel::u1_truncated;
  s.truncation = lambda;
  s.local_dim = 2 * lambda + 1;
  const int d = s.local_dim;
  s.electric = LocalMatrix::Zero(d, d);
  s.raise = LocalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s.electric(i, i) = s.flux(i);
  for (int i = 0; i + 1 < d; ++i) s.raise(i + 1, i) = 1.0;
  s.lower = s.raise.adjoint();
  return s;
}

LinkOperatorSet spin_gauge_ops(int l) {
  if (l < 1) throw std::invalid_argument("spin_gauge_ops: l must be at least 1");
  LinkOperatorSet s;
  s.model = LinkModel::spin_gauge;
  s.truncation = l;
  s.local_dim = 2 * l + 1;
  const int d = s.local_dim;
  s.electric = LocalMatrix::Zero(d, d);
  s.raise = LocalMatrix::Zero(d, d);
  const double ll = static_cast<double>(l) * (l + 1);
  for (int i = 0; i < d; ++i) s.electric(i, i) = s.flux(i);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = s.flux(i);
    s.raise(i + 1, i) = std::sqrt(ll - m * (m + 1));
  }
  s.lower = s.raise.adjoint();
  return s;
}

LinkOperatorSet zn_ops(int n) {
  if (n < 2) throw std::invalid_argument("zn_ops: N must be at least 2");
  if (n % 2 == 0) throw std::invalid_argument("zn_ops: only odd N is supported");
  LinkOperatorSet s;
  s.model = LinkModel::zn;
  s.truncation = n;
  s.local_dim = n;
  s.delta = 2.0 * std::numbers::pi / n;
  s.electric = LocalMatrix::Zero(n, n);
  s.clock = LocalMatrix::Zero(n, n);
  s.shift = LocalMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    s.electric(i, i) = s.flux(i);
    s.clock(i, i) = std::exp(cplx{0.0, s.flux(i) * s.delta});
    s.shift((i + n - 1) % n, i) = 1.0;  // |m> -> |m-1>, bottom wraps to top
  }
  s.raise = s.shift.adjoint();
  s.lower = s.shift;
  return s;
}

}  // namespace lgt
