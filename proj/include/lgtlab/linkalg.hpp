#pragma once

#include "lgtlab/operator.hpp"

namespace lgt {

enum class LinkModel { u1_truncated, spin_gauge, zn };

/// Dense operator algebra of a single link. Basis index i carries the flux
/// label m = i - (local_dim - 1) / 2, ascending.
///
/// - u1_truncated(Lambda): electric = L, raise = U, lower = U^dagger
///   (hard truncation U|Lambda> = 0).
/// - spin_gauge(l): electric = L_z, raise = L_+, lower = L_- (unnormalized);
///   the gauge-field stand-in is raise / sqrt(l(l+1)).
/// - zn(N): clock = P, shift = Q with Q|m> = |m-1> cyclically; raise = Q^dagger.
struct LinkOperatorSet {
  LinkModel model = LinkModel::u1_truncated;
  int truncation = 0;  // Lambda, l, or N
  int local_dim = 0;

  LocalMatrix electric;  // L or L_z; for Z_N the m label as a diagonal matrix
  LocalMatrix raise;
  LocalMatrix lower;

  // Z_N only
  LocalMatrix clock;  // P
  LocalMatrix shift;  // Q
  double delta = 0.0;

  /// Link operator that plays U in the Hamiltonian (normalized ladder for spin-gauge).
  LocalMatrix link_operator() const;
  /// Integer flux label of basis state i.
  int flux(int i) const { return i - (local_dim - 1) / 2; }
};

LinkOperatorSet u1_ops(int lambda);
LinkOperatorSet spin_gauge_ops(int l);
LinkOperatorSet zn_ops(int n);

}  // namespace lgt
