#pragma once

#include "lgtlab/gauge.hpp"
#include "lgtlab/model.hpp"

namespace lgt {

/// (g^2/2) sum L^2 (U(1)), L_z^2 (spin-gauge), Casimir (SU(2));
/// -(lambda_zn/2) sum (P + P^dagger) for Z_N.
OpSum h_electric(const Model& model);

/// Plaquette term. Throws on one-dimensional lattices.
OpSum h_magnetic(const Model& model);

/// U1 U2 U3^dag U4^dag + h.c. around one plaquette, with U the model's link
/// operator (L_+ / sqrt(l(l+1)) for spin-gauge, Q for Z_N, the traced 2x2
/// truncated rotation matrix for SU(2)).
OpSum plaquette_pattern(const Model& model, int plaquette);

/// Gauge-matter coupling epsilon sum psi^dag_n U psi_{n+k} + h.c.; for naive
/// fermions i epsilon sum (psi^dag_n sigma_k psi_{n+k} U - h.c.).
OpSum h_gauge_matter(const Model& model);

/// Staggered m sum (-1)^n psi^dag psi; naive M sum psi^dag sigma_z psi.
OpSum h_mass(const Model& model);

/// lambda sum G_n^2 (U(1), spin-gauge, summed over components for SU(2));
/// lambda sum (2 - G_n - G_n^dagger) for Z_N.
OpSum h_penalty(const Model& model);

/// Gauge-variant corner hopping eta sum (U_a U_b^{sigma} + h.c.) over pairs of
/// perpendicular links meeting at a vertex; sigma is chosen so the flux turns
/// the corner, leaving the shared vertex satisfied and violating the far ends.
OpSum h_microscopic_hopping(const Model& model);

/// Sum of every enabled term. The magnetic term is absent in one dimension and
/// matter terms are absent without matter.
OpSum hamiltonian(const Model& model);

SparseOperator assemble_hamiltonian(const Model& model, const StateBasis& basis, AssemblyStats* stats = nullptr);

}  // namespace lgt
