#include "lgtlab/atommap.hpp"

#include <Eigen/QR>

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lgtlab/format.hpp"
#include "lgtlab/gauge.hpp"
#include "lgtlab/matter.hpp"
#include "lgtlab/model.hpp"
#include "lgtlab/su2rep.hpp"

namespace lgt {

cplx scattering_matrix_element(int tFb, int tmb_out, int tFf, int tmf_out, int tmb_in, int tmf_in,
                               const ScatteringCoefficients& c) {
  if (tmb_out + tmf_out != tmb_in + tmf_in) return 0.0;
  const int tM = tmb_in + tmf_in;
  double sum = 0.0;
  for (const auto& [tF, coeff] : c) {
    if (coeff == 0.0) continue;
    sum += coeff * cg2(tFb, tmb_out, tFf, tmf_out, tF, tM) * cg2(tFb, tmb_in, tFf, tmf_in, tF, tM);
  }
  return sum;
}

double HyperfineLevelScheme::boson_energy(int tmb) const {
  switch (std::abs(tmb)) {
    case 0:
      return 0.0;
    case 2:
      return -omega1;
    case 4:
      return -omega2;
    default:
      throw std::invalid_argument("boson level outside the F = 2 manifold");
  }
}

double HyperfineLevelScheme::fermion_energy(int tmf) const {
  switch (tmf) {
    case -3:
      return 0.5 * (omega1 + omega2);
    case 3:
      return -0.5 * (omega1 + omega2);
    case 1:
      return 0.5 * (omega1 - omega2);
    case -1:
      return -0.5 * (omega1 - omega2);
    default:
      throw std::invalid_argument("fermion level outside the F = 3/2 manifold");
  }
}

bool HyperfineLevelScheme::nondegenerate() const { return omega1 != omega2 && 2.0 * omega1 != omega2; }

ChannelTable enumerate_channels(const HyperfineLevelScheme& scheme, const ScatteringCoefficients& c) {
  ChannelTable t;
  t.degenerate = !scheme.nondegenerate();
  const double scale = 1e-12 * (1.0 + std::abs(scheme.omega1) + std::abs(scheme.omega2));
  for (int tmb = scheme.tFb; tmb >= -scheme.tFb; tmb -= 2)
    for (int tmf = scheme.tFf; tmf >= -scheme.tFf; tmf -= 2)
      for (int tmb2 = scheme.tFb; tmb2 >= -scheme.tFb; tmb2 -= 2)
        for (int tmf2 = scheme.tFf; tmf2 >= -scheme.tFf; tmf2 -= 2) {
          if (tmb + tmf != tmb2 + tmf2) continue;
          Channel ch{tmb, tmf, tmb2, tmf2, scattering_matrix_element(scheme.tFb, tmb2, scheme.tFf, tmf2, tmb, tmf, c),
                     false};
          const double e_in = scheme.boson_energy(tmb) + scheme.fermion_energy(tmf);
          const double e_out = scheme.boson_energy(tmb2) + scheme.fermion_energy(tmf2);
          ch.allowed_by_omega = std::abs(e_in - e_out) < scale;
          t.channels.push_back(ch);
        }
  return t;
}

std::string channels_csv(const ChannelTable& table) {
  std::ostringstream os;
  os << "m_b,m_f,m_b',m_f',amplitude_re,amplitude_im,allowed_by_HΩ\n";
  for (const auto& c : table.channels)
    os << fmt_double(0.5 * c.tmb) << ',' << fmt_double(0.5 * c.tmf) << ',' << fmt_double(0.5 * c.tmb_out) << ','
       << fmt_double(0.5 * c.tmf_out) << ',' << fmt_double(c.amplitude.real()) << ','
       << fmt_double(c.amplitude.imag()) << ',' << (c.allowed_by_omega ? "true" : "false") << '\n';
  return os.str();
}

namespace {

int level(int tmb) { return (4 - tmb) / 2; }  // boson level index, m_b = 2 .. -2

LocalMatrix transition(int tmb_to, int tmb_from) {
  LocalMatrix m = LocalMatrix::Zero(5, 5);
  m(level(tmb_to), level(tmb_from)) = 1.0;
  return m;
}

// Boson terms of M as (row, col, coefficient, m_b created, m_b destroyed).
struct MTerm {
  int i, j;
  double coeff;
  int to, from;
};

const std::vector<MTerm>& m_terms() {
  static const std::vector<MTerm> terms = {
      {0, 0, 1.0, 4, 0},  {0, 0, 1.0, 0, -4}, {0, 1, -1.0, 2, 0}, {0, 1, 1.0, 0, -2},
      {1, 0, -1.0, -2, 0}, {1, 0, 1.0, 0, 2}, {1, 1, 1.0, 0, 4},  {1, 1, 1.0, -4, 0},
  };
  return terms;
}

}  // namespace

std::vector<std::vector<LocalMatrix>> boson_m_matrix() {
  std::vector<std::vector<LocalMatrix>> m(2, std::vector<LocalMatrix>(2, LocalMatrix::Zero(5, 5)));
  for (const auto& t : m_terms()) m[t.i][t.j] += (t.coeff / std::sqrt(2.0)) * transition(t.to, t.from);
  return m;
}

LocalMatrix atom_to_link(LinkMapping mapping) {
  const SU2LinkSpace space(1);
  LocalMatrix t = LocalMatrix::Zero(5, 5);
  auto put = [&](int tmb, int tm, int tmp, double sign) { t(space.index(tm == 0 && tmp == 0 ? 0 : 1, tm, tmp), level(tmb)) = sign; };
  put(0, 0, 0, 1.0);
  if (mapping == LinkMapping::even) {
    put(4, 1, 1, 1.0);
    put(-4, -1, -1, 1.0);
    put(2, 1, -1, -1.0);
    put(-2, -1, 1, -1.0);
  } else {
    put(4, -1, -1, 1.0);
    put(-4, 1, 1, 1.0);
    put(2, 1, -1, 1.0);
    put(-2, -1, 1, 1.0);
  }
  return t;
}

MVerification build_M_and_verify(LinkMapping mapping) {
  const SU2LinkSpace space(1);
  const TruncatedRotationMatrix u = truncated_rotation_matrix(space, 1);
  const auto m = boson_m_matrix();
  const LocalMatrix t = atom_to_link(mapping);

  MVerification out;
  out.m.assign(2, std::vector<LocalMatrix>(2));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const LocalMatrix entry = mapping == LinkMapping::even ? m[a][b] : LocalMatrix(m[b][a].adjoint());
      out.m[a][b] = t * entry * t.adjoint();
      out.max_deviation = std::max(out.max_deviation, (out.m[a][b] - u(a, b)).cwiseAbs().maxCoeff());
    }
  return out;
}

double m_interaction_gauge_defect() {
  HamiltonianSpec spec;
  spec.model = GaugeModel::su2;
  spec.truncation = 1;
  spec.matter = FermionScheme::su2fundamental;
  const Model model(spec, Lattice(1, {2}));
  const MVerification mv = build_M_and_verify(LinkMapping::even);
  const FermionLayout& f = model.fermions();

  OpSum h;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h += hopping(f, 0, i, 1, j) * OpString::local(model.link_site(0), mv.m[i][j]);
  h += h.adjoint();
  const SparseOperator hm = assemble(h, model.space());
  double worst = 0.0;
  for (const auto& g : gauss_operators(model)) worst = std::max(worst, commutator_norm(hm, g));
  return worst;
}

F1Projectors f1_projectors(double a0, double a2, double mass) {
  if (mass <= 0.0) throw std::invalid_argument("f1_projectors: mass must be positive");
  const auto f = spin_matrices(2);
  auto kron = [](const LocalMatrix& x, const LocalMatrix& y) {
    LocalMatrix out(9, 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.block(3 * i, 3 * j, 3, 3) = x(i, j) * y;
    return out;
  };
  LocalMatrix ff = LocalMatrix::Zero(9, 9);
  for (int a = 0; a < 3; ++a) ff += kron(f[a], f[a]);
  LocalMatrix swap = LocalMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) swap(3 * j + i, 3 * i + j) = 1.0;
  const LocalMatrix id = LocalMatrix::Identity(9, 9);
  const LocalMatrix sym = 0.5 * (id + swap);

  F1Projectors p;
  p.p0_printed = (id - ff) / 3.0;
  p.p2_printed = (ff + 2.0 * id) / 3.0;
  p.p0 = sym * p.p0_printed * sym;
  p.p2 = sym * p.p2_printed * sym;
  const double pi = std::acos(-1.0);
  p.g0 = 4.0 * pi * (2.0 * a2 + a0) / (3.0 * mass);
  p.g2 = 4.0 * pi * (a2 - a0) / (3.0 * mass);
  return p;
}

bool gip_channel_allowed(int tma, int tmb, int tmc, int tmd) { return tma + tmc == tmb + tmd; }

SchwingerInteractionCheck schwinger_interaction_check(int n_max) {
  const SchwingerU1 s = schwinger_u1(n_max);
  const int db = s.local_dim;
  auto kron = [](const LocalMatrix& x, const LocalMatrix& y) {
    LocalMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
  };
  const LocalMatrix c = local_annihilator(2, 0);
  const LocalMatrix d = local_annihilator(2, 1);
  const LocalMatrix idf = LocalMatrix::Identity(4, 4);
  const LocalMatrix idb = LocalMatrix::Identity(db, db);

  const LocalMatrix direct = kron(s.a.adjoint() * s.b, c.adjoint() * d) + kron(s.b.adjoint() * s.a, d.adjoint() * c);
  const LocalMatrix via_l = kron(s.lplus, c.adjoint() * d) + kron(s.lminus, d.adjoint() * c);

  SchwingerInteractionCheck r;
  r.identity_deviation = (direct - via_l).cwiseAbs().maxCoeff();
  const LocalMatrix n = kron(s.a.adjoint() * s.a + s.b.adjoint() * s.b, idf);
  const LocalMatrix ell = kron(s.ell, idf);
  r.number_commutator = (n * via_l - via_l * n).norm();
  r.ell_commutator = (ell * via_l - via_l * ell).norm();

  auto mf_commutator = [&](int tma, int tmb, int tmc, int tmd) {
    const LocalMatrix mf = 0.5 * (tma * kron(s.a.adjoint() * s.a, idf) + tmb * kron(s.b.adjoint() * s.b, idf) +
                                  tmc * kron(idb, c.adjoint() * c) + tmd * kron(idb, d.adjoint() * d));
    return (mf * via_l - via_l * mf).norm();
  };
  // a: +1, b: 0, c: -1/2, d: +1/2 satisfies the rule; c: +1/2 breaks it.
  r.allowed_example_conserves = gip_channel_allowed(2, 0, -1, 1) && mf_commutator(2, 0, -1, 1) < 1e-12;
  r.forbidden_example_violates = !gip_channel_allowed(2, 0, 1, 1) && mf_commutator(2, 0, 1, 1) > 1e-6;
  return r;
}

CoefficientFit fit_scattering_coefficients(const HyperfineLevelScheme& scheme) {
  const std::vector<int> fs = {1, 3, 5, 7};
  ScatteringCoefficients unit;
  for (int tF : fs) unit[tF] = 1.0;
  const ChannelTable base = enumerate_channels(scheme, unit);

  // Target amplitudes from the even-link M matrix: psi_1 (-3/2), psi_2 (+3/2),
  // chi_1 (+1/2), chi_2 (-1/2).
  const int psi[2] = {-3, 3};
  const int chi[2] = {1, -1};
  std::map<std::array<int, 4>, double> target;
  for (const auto& t : m_terms()) {
    const double a = t.coeff / std::sqrt(2.0);
    target[{t.from, chi[t.j], t.to, psi[t.i]}] += a;
    target[{t.to, psi[t.i], t.from, chi[t.j]}] += a;
  }

  std::vector<const Channel*> rows;
  for (const auto& ch : base.channels)
    if (ch.allowed_by_omega && !(ch.tmb == ch.tmb_out && ch.tmf == ch.tmf_out)) rows.push_back(&ch);

  Eigen::MatrixXd a(rows.size(), fs.size());
  Eigen::VectorXd b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Channel& ch = *rows[r];
    for (std::size_t k = 0; k < fs.size(); ++k)
      a(r, k) = scattering_matrix_element(scheme.tFb, ch.tmb_out, scheme.tFf, ch.tmf_out, ch.tmb, ch.tmf,
                                          {{fs[k], 1.0}})
                    .real();
    const auto it = target.find({ch.tmb, ch.tmf, ch.tmb_out, ch.tmf_out});
    b(r) = it == target.end() ? 0.0 : it->second;
  }

  CoefficientFit fit;
  fit.channels = static_cast<int>(rows.size());
  if (rows.empty()) return fit;
  // Equal C_F only shift the diagonal, so the off-diagonal rows leave that
  // direction free; take the minimum-norm solution.
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  for (std::size_t k = 0; k < fs.size(); ++k) fit.coefficients[fs[k]] = x(k);
  fit.residual = (a * x - b).norm();
  return fit;
}

}  // namespace lgt
