#pragma once

// SU(2) representation machinery: Clebsch-Gordan coefficients, the truncated
// |j m m'> link space with its left/right generators, the Clebsch-Gordan
// built (truncated) rotation matrices, and the Schwinger-boson and
// prepotential oscillator representations.
//
// Angular momenta are passed as doubled integers (tj = 2j, tm = 2m) wherever
// half-integers occur. Spin-j matrices use the standard descending basis:
// row/column a carries m = j - a.

#include <array>
#include <vector>

#include "lgtlab/operator.hpp"

namespace lgt {

/// <j1 m1 j2 m2 | J M> in the Condon-Shortley convention (Racah formula in
/// exact rational arithmetic). Returns 0 for selection-rule violations.
double cg2(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);
double cg(double j1, double m1, double j2, double m2, double J, double M);

/// Spin-j matrices {T_x, T_y, T_z} in the descending-m basis.
std::array<LocalMatrix, 3> spin_matrices(int tj);
LocalMatrix spin_raise(int tj);  // T_+

/// Dense table of CG coefficients for all j's up to a cap, built once and
/// shared read-only.
class CGTable {
 public:
  explicit CGTable(int tj_cap);
  int cap() const { return cap_; }
  double operator()(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) const;

 private:
  int cap_;
  int stride_;
  std::vector<double> values_;
  std::size_t index(int tj1, int tm1, int tj2, int tm2, int tJ) const;
};

struct LinkState {
  int tj;
  int tm;   // left index m
  int tmp;  // right index m'
};

/// Single-atom link Hilbert space spanned by |j m m'>, j = 0, 1/2, ..., J_max.
/// Ordered by j ascending, then m descending, then m' descending.
class SU2LinkSpace {
 public:
  explicit SU2LinkSpace(int tj_max);

  int tj_max() const { return tj_max_; }
  int local_dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<LinkState>& basis() const { return basis_; }
  int index(int tj, int tm, int tmp) const;  // -1 if absent

  /// Left generators L_alpha (act on m, satisfy [L_i, L_j] = -i eps L_k) and
  /// right generators R_alpha (act on m', satisfy [R_i, R_j] = +i eps R_k).
  const std::array<LocalMatrix, 3>& left() const { return left_; }
  const std::array<LocalMatrix, 3>& right() const { return right_; }
  LocalMatrix left_casimir() const;
  LocalMatrix right_casimir() const;
  LocalMatrix projector(int tj) const;  // P_j
  /// Electric energy sum_j j(j+1) P_j.
  LocalMatrix casimir() const;

 private:
  int tj_max_;
  std::vector<LinkState> basis_;
  std::array<LocalMatrix, 3> left_;
  std::array<LocalMatrix, 3> right_;
};

/// (2j+1) x (2j+1) array of link-space operators U^j_{m m'}.
struct TruncatedRotationMatrix {
  int tj = 1;
  std::vector<std::vector<LocalMatrix>> entries;  // [a][b], m = j - a, m' = j - b

  int size() const { return static_cast<int>(entries.size()); }
  const LocalMatrix& operator()(int a, int b) const { return entries[a][b]; }
};

TruncatedRotationMatrix truncated_rotation_matrix(const SU2LinkSpace& space, int tj);

struct TraceDefect {
  double f = 0.0;         // measured coefficient of P_{J_max}
  double residual = 0.0;  // max |tr(U^dag U) - ((2j+1) I - f P_{Jmax})|
};

/// Measures f_j(J_max) in tr(U^dag U) = (2j+1) - f P_{J_max}.
TraceDefect measure_trace_defect(const SU2LinkSpace& space, const TruncatedRotationMatrix& u);

/// Two-mode Schwinger-boson representation on the Fock space with per-mode
/// cutoff n_max. Product index = n_a * (n_max + 1) + n_b.
struct SchwingerU1 {
  int n_max = 0;
  int local_dim = 0;
  LocalMatrix a, b;  // annihilators
  LocalMatrix lz, lplus, lminus, ell;

  int index(int na, int nb) const { return na * (n_max + 1) + nb; }
  /// Indices with n_a + n_b = total, ordered by m = (n_a - n_b)/2 ascending.
  std::vector<int> fixed_total(int total) const;
};

SchwingerU1 schwinger_u1(int n_max);

/// Prepotential oscillators: a_1, a_2 on the left and b_1, b_2 on the right of
/// a link, each with Fock cutoff n_max. Product index ordering (a1, a2, b1, b2)
/// with b2 fastest.
struct Prepotential {
  int n_max = 0;
  int local_dim = 0;
  std::array<LocalMatrix, 2> a, b;
  LocalMatrix n_left, n_right;
  std::array<std::array<LocalMatrix, 2>, 2> u_left, u_right, u;
  std::array<LocalMatrix, 3> left, right;  // generators
  LocalMatrix equal_number_projector;      // onto N_L = N_R

  int index(int na1, int na2, int nb1, int nb2) const;
};

Prepotential prepotential_decomposition(int n_max);

/// Default Fock cutoff: 2 * (ell or 2 J_max) + 1.
inline int default_fock_cutoff(int twice_spin) { return 2 * twice_spin + 1; }

}  // namespace lgt
