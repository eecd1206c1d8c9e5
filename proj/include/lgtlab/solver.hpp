#pragma once

#include <cstdint>
#include <vector>

#include "lgtlab/gauge.hpp"
#include "lgtlab/operator.hpp"

namespace lgt {

/// B^dagger A B for an operator A assembled on the sector's product basis.
/// Product-basis sectors return A unchanged.
SparseOperator restrict_operator(const SparseOperator& on_basis, const GaussSector& sector);
/// Assembles `op` on the sector basis and restricts it.
SparseOperator restrict_opsum(const OpSum& op, const ProductSpace& space, const GaussSector& sector);
/// Restriction of an operator assembled on the full product space.
SparseOperator restrict_full(const SparseOperator& full, const GaussSector& sector);

struct EigsOptions {
  double tolerance = 1e-9;           // residual |A v - lambda v|
  std::int64_t dense_threshold = 2000;
  int krylov_dim = 0;                // 0: chosen from k
  int max_restarts = 5000;
  std::uint64_t seed = 20240229;
};

struct EigenResult {
  Eigen::VectorXd values;  // ascending
  DenseMatrix vectors;     // columns
  int iterations = 0;      // Lanczos restarts (0 for the dense path)
  double max_residual = 0.0;
  bool dense = false;
};

/// k lowest eigenpairs of a Hermitian operator. Dense below the threshold,
/// restarted Lanczos with locking and full reorthogonalization above it.
/// The start vector is the normalized all-ones vector plus a fixed-seed
/// perturbation. Throws NumericalError on non-convergence.
EigenResult eigs(const SparseOperator& op, int k, const EigsOptions& options = {});

struct EvolveOptions {
  double krylov_tolerance = 1e-13;
  int max_krylov = 60;
  bool check_halving = true;
  double halving_tolerance = 1e-8;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  double max_norm_deviation = 0.0;
  double halving_difference = 0.0;  // |psi_steps(t) - psi_2steps(t)|
  bool converged = true;
};

/// psi(t_k) = exp(-i H t_k) psi0 at t_k = k t / steps, k = 0..steps, by
/// Lanczos-Krylov exponentials. With check_halving the final state is
/// recomputed with twice the steps and `converged` reflects the agreement.
Trajectory evolve(const SparseOperator& h, const Vector& psi0, double t, int steps, const EvolveOptions& options = {});

/// Single Krylov exponential exp(-i H dt) v.
Vector krylov_expm(const SparseOperator& h, const Vector& v, double dt, const EvolveOptions& options = {});

struct EffectiveHamiltonianReport {
  DenseMatrix h_eff;             // on the sector basis
  double lambda = 0.0;
  double e0 = 0.0;
  double leakage = 0.0;          // |P V P|_F, zero when V leaves the sector
  double h0_sector_defect = 0.0; // max |P H0 P - e0|
  double plaquette_coefficient = 0.0;
  double unmatched_norm = 0.0;   // off-diagonal part of H_eff not explained by the pattern
};

/// H_eff = P H1 P + P V Q (E0 - H0)^{-1} Q V P on a product-basis sector.
/// H0, V and H1 are full-space operators; H0 must be diagonal. Throws
/// NumericalError when E0 - H0 vanishes on a state outside the sector.
EffectiveHamiltonianReport effective_second_order(const SparseOperator& h0, const SparseOperator& v,
                                                  const SparseOperator& h1, const GaussSector& sector,
                                                  double lambda = 0.0);

/// Least-squares coefficient c of `pattern` in the off-diagonal part of `h`,
/// and the Frobenius norm of what remains.
std::pair<double, double> pattern_coefficient(const DenseMatrix& h, const DenseMatrix& pattern);

}  // namespace lgt
