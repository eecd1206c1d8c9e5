#pragma once

// Cold-atom dictionary checks: hyperfine-conserving scattering amplitudes,
// channel selection by H_Omega, the bosonic M matrix against the truncated
// rotation matrix, the F = 1 two-atom projectors, and the Schwinger-boson
// link interaction.
//
// Angular momenta are doubled integers throughout (tF = 2F, tm = 2m).

#include <map>
#include <string>
#include <vector>

#include "lgtlab/operator.hpp"

namespace lgt {

/// Coefficients C_F keyed by 2F.
using ScatteringCoefficients = std::map<int, double>;

/// <F_b m_b', F_f m_f'| V_S |F_b m_b, F_f m_f>.
cplx scattering_matrix_element(int tFb, int tmb_out, int tFf, int tmf_out, int tmb_in, int tmf_in,
                               const ScatteringCoefficients& c);

/// Boson F = 2 and fermion F = 3/2 levels with H_Omega offsets.
struct HyperfineLevelScheme {
  int tFb = 4;
  int tFf = 3;
  double omega1 = 1.0;
  double omega2 = 3.0;

  double boson_energy(int tmb) const;    // -Omega_|m| for m != 0
  double fermion_energy(int tmf) const;  // psi: m = -3/2, +3/2; chi: m = +1/2, -1/2
  /// The non-degeneracy conditions Omega1 != Omega2 and 2 Omega1 != Omega2 hold.
  bool nondegenerate() const;
};

struct Channel {
  int tmb = 0, tmf = 0;          // initial
  int tmb_out = 0, tmf_out = 0;  // final
  cplx amplitude;
  bool allowed_by_omega = false;
};

struct ChannelTable {
  std::vector<Channel> channels;  // every m_F-conserving transition
  bool degenerate = false;        // Omega choice violates the non-degeneracy conditions
};

ChannelTable enumerate_channels(const HyperfineLevelScheme& scheme, const ScatteringCoefficients& c);
std::string channels_csv(const ChannelTable& table);

enum class LinkMapping { even, odd };

struct MVerification {
  std::vector<std::vector<LocalMatrix>> m;  // M (even) or M^dagger (odd), relabelled onto the link space
  double max_deviation = 0.0;               // max_ab |entry - U_ab|
  double number_leak = 0.0;                 // weight mapped outside the single-atom space (always 0 here)
};

/// The bosonic 2x2 matrix on the five single-atom levels m_b = 2..-2.
std::vector<std::vector<LocalMatrix>> boson_m_matrix();
/// Unitary taking boson level |m_b> (index 2 - m_b) to the J_max = 1/2 link basis.
LocalMatrix atom_to_link(LinkMapping mapping);
MVerification build_M_and_verify(LinkMapping mapping);

/// max |[H_int(M), G^a_n]| on a two-vertex, one-link system with two-color matter.
double m_interaction_gauge_defect();

struct F1Projectors {
  LocalMatrix p0, p2;          // symmetrized projectors on the 9-dim space
  LocalMatrix p0_printed, p2_printed;  // the unsymmetrized expressions
  double g0 = 0.0, g2 = 0.0;
};

F1Projectors f1_projectors(double a0, double a2, double mass);

struct SchwingerInteractionCheck {
  double identity_deviation = 0.0;   // |c^dag a^dag b d + h.c. - (c^dag L+ d + h.c.)|
  double number_commutator = 0.0;    // |[a^dag a + b^dag b, H]|
  double ell_commutator = 0.0;       // |[ell, H]|
  bool allowed_example_conserves = false;
  bool forbidden_example_violates = false;
};

SchwingerInteractionCheck schwinger_interaction_check(int n_max);

/// True when the process c^dag a^dag b d conserves total m_F.
bool gip_channel_allowed(int tma, int tmb, int tmc, int tmd);

struct CoefficientFit {
  ScatteringCoefficients coefficients;
  double residual = 0.0;  // |A c - target| over the fitted channels
  int channels = 0;
};

/// Minimum-norm least-squares C_F reproducing the even-link M amplitudes (1/sqrt 2 with signs)
/// on all H_Omega-allowed off-diagonal channels, zero elsewhere.
CoefficientFit fit_scattering_coefficients(const HyperfineLevelScheme& scheme);

}  // namespace lgt
