#include "xxcrit/freefermion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xxcrit/errors.hpp"
#include "xxcrit/linalg.hpp"
#include "xxcrit/quadrature.hpp"

namespace xxcrit::freefermion {

namespace {

constexpr double kPi = std::numbers::pi;

double fermi(double energy, double beta) {
  const double x = beta * energy;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

/// Fermi wavevector of the infinite chain at T = 0 (untwisted frame).
double fermi_momentum(const SpinChainSpec& spec) {
  const double ratio = spec.mu_over_j();
  if (ratio >= 1.0) return 0.0;
  if (ratio <= -1.0) return kPi;
  return std::acos(ratio);
}

std::vector<double> fermi_breakpoints(const SpinChainSpec& spec) {
  const double ratio = spec.mu_over_j();
  if (std::abs(ratio) >= 1.0) return {};
  const double kf = std::acos(ratio);
  return {-kf, kf};
}

/// Untwisted-frame G(d) on the infinite chain; the twist adds a phase exp(-i theta d).
double infinite_correlation_real(const SpinChainSpec& spec, int d) {
  if (spec.temperature == 0.0) {
    const double kf = fermi_momentum(spec);
    if (d == 0) return kf / kPi;
    return std::sin(kf * d) / (kPi * d);
  }
  const double beta = spec.beta();
  const double j = spec.coupling_j, mu = spec.chem_potential;
  quadrature::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 0.0;
  auto integrand = [&](double q) { return fermi(-2.0 * j * std::cos(q) + 2.0 * mu, beta) * std::cos(q * d); };
  std::vector<double> cuts;
  for (double k : fermi_breakpoints(spec))
    if (k > 0.0) cuts.push_back(k);
  return quadrature::integrate(integrand, 0.0, kPi, opt, cuts) / kPi;
}

std::vector<cplx> infinite_correlations(const SpinChainSpec& spec, int r_max) {
  std::vector<cplx> g(static_cast<std::size_t>(r_max) + 1);
  for (int d = 0; d <= r_max; ++d)
    g[static_cast<std::size_t>(d)] =
        std::polar(1.0, -spec.twist_per_bond * d) * infinite_correlation_real(spec, d);
  return g;
}

struct Fill {
  double energy;  // sum of occupied single-particle energies
  int particles;
  bool degenerate;
};

/// Lowest filling of ascending levels `eps` with the requested particle parity
/// (-1: any, 0: even, 1: odd).
Fill best_fill(const Eigen::VectorXd& eps, int parity, double tol) {
  const int n = static_cast<int>(eps.size());
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + eps(k);
  auto allowed = [&](int p) { return parity < 0 || p % 2 == parity; };
  int best = -1;
  for (int p = 0; p <= n; ++p)
    if (allowed(p) && (best < 0 || prefix[p] < prefix[best] - tol)) best = p;
  bool degenerate = false;
  for (int p = 0; p <= n; ++p)
    if (p != best && allowed(p) && prefix[p] <= prefix[best] + tol) degenerate = true;
  if (best > 0 && best < n && eps(best) - eps(best - 1) <= tol) degenerate = true;
  return {prefix[best], best, degenerate};
}

struct ModeDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd modes;
};

ModeDecomposition decompose(const SpinChainSpec& spec, FermionBoundary boundary) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hopping_matrix(spec, boundary));
  if (es.info() != Eigen::Success) throw NumericError("single-particle eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd string_signs(int n, int first, int last) {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  for (int s = first; s <= last; ++s) d(s) = -1.0;
  return d;
}

}  // namespace

double dispersion(double k, const SpinChainSpec& spec) {
  return -2.0 * spec.coupling_j * std::cos(k + spec.twist_per_bond) + 2.0 * spec.chem_potential;
}

Eigen::MatrixXcd hopping_matrix(const SpinChainSpec& spec, FermionBoundary boundary) {
  spec.validate();
  if (spec.thermodynamic_limit) throw ValidationError("hopping matrix needs a finite chain");
  const int n = spec.n_sites;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const cplx t = -spec.coupling_j * std::polar(1.0, spec.twist_per_bond);
  const Boundary chain = boundary == FermionBoundary::open ? Boundary::open : Boundary::periodic;
  for (auto [a, b] : chain_bonds(n, chain)) {
    const bool wraps = (a == n - 1 && b == 0);
    const double sign = (wraps && boundary == FermionBoundary::antiperiodic) ? -1.0 : 1.0;
    h(a, b) += sign * t;
    h(b, a) += sign * std::conj(t);
  }
  for (int i = 0; i < n; ++i) h(i, i) += 2.0 * spec.chem_potential;
  return h;
}

FermionModeSpectrum mode_spectrum(const SpinChainSpec& spec, FermionBoundary boundary) {
  spec.validate();
  FermionModeSpectrum out;
  out.boundary = boundary;
  const int n = spec.n_sites;
  if (boundary == FermionBoundary::open) {
    const Eigen::VectorXd e = decompose(spec, boundary).energies;
    out.energies.assign(e.data(), e.data() + e.size());
  } else {
    std::vector<std::pair<double, double>> modes;
    for (int m = 0; m < n; ++m) {
      double k = (boundary == FermionBoundary::periodic ? 2.0 * m : 2.0 * m + 1.0) * kPi / n;
      if (k > kPi) k -= 2.0 * kPi;
      modes.emplace_back(dispersion(k, spec), k);
    }
    std::sort(modes.begin(), modes.end());
    for (auto [e, k] : modes) {
      out.energies.push_back(e);
      out.momenta.push_back(k);
    }
  }
  for (double e : out.energies) {
    if (spec.temperature > 0.0)
      out.fillings.push_back(fermi(e, spec.beta()));
    else
      out.fillings.push_back(e < 0.0 ? 1.0 : (e == 0.0 ? 0.5 : 0.0));
  }
  return out;
}

Magnetization magnetization(double mu_over_j, double temperature_over_j) {
  if (temperature_over_j < 0.0 || !std::isfinite(mu_over_j)) throw ValidationError("invalid magnetization inputs");
  if (temperature_over_j == 0.0 && mu_over_j >= 1.0) return {1.0, true};
  SpinChainSpec spec;
  spec.thermodynamic_limit = true;
  spec.chem_potential = mu_over_j;
  spec.temperature = temperature_over_j;
  return {1.0 - 2.0 * infinite_correlation_real(spec, 0), false};
}

RingGroundState ring_ground_state(const SpinChainSpec& spec) {
  spec.validate();
  if (spec.thermodynamic_limit) throw ValidationError("ring ground state needs a finite chain");
  const double tol = 1e-10 * std::max(1.0, spec.coupling_j);
  const double offset = -spec.chem_potential * spec.n_sites;
  if (spec.boundary == Boundary::open) {
    const Fill f = best_fill(decompose(spec, FermionBoundary::open).energies, -1, tol);
    return {f.energy + offset, FermionBoundary::open, f.particles, f.degenerate};
  }
  const Fill even = best_fill(decompose(spec, FermionBoundary::antiperiodic).energies, 0, tol);
  const Fill odd = best_fill(decompose(spec, FermionBoundary::periodic).energies, 1, tol);
  // Ties go to the smaller particle number, as in the exact solver.
  const bool tie = std::abs(even.energy - odd.energy) <= tol;
  const bool take_even = tie ? even.particles < odd.particles : even.energy < odd.energy;
  if (take_even)
    return {even.energy + offset, FermionBoundary::antiperiodic, even.particles, even.degenerate || tie};
  return {odd.energy + offset, FermionBoundary::periodic, odd.particles, odd.degenerate || tie};
}

// ---------------------------------------------------------------- ChainState

ChainState::ChainState(const SpinChainSpec& spec, int max_distance) {
  spec.validate();
  if (spec.thermodynamic_limit) {
    if (max_distance < 0 || max_distance > kMaxStringDistance)
      throw ValidationError("separation outside the configured window [0, " + std::to_string(kMaxStringDistance) + "]");
    infinite_ = true;
    toeplitz_ = infinite_correlations(spec, std::max(1, max_distance));
    return;
  }
  n_sites_ = spec.n_sites;
  if (spec.temperature == 0.0) {
    const RingGroundState gs = ring_ground_state(spec);
    const ModeDecomposition md = decompose(spec, gs.boundary);
    const Eigen::MatrixXcd occ = md.modes.leftCols(gs.particles);
    k_ = occ * occ.adjoint();
    return;
  }
  gaussian_ = false;
  const double beta = spec.beta();
  struct Piece {
    FermionBoundary boundary;
    double sign;
    double coefficient;
  };
  std::vector<Piece> pieces;
  if (spec.boundary == Boundary::open) {
    pieces.push_back({FermionBoundary::open, 1.0, 1.0});
  } else {
    // Even parity pairs with antiperiodic fermions, odd parity with periodic ones;
    // (-1)^N exp(-beta H) is the Gaussian with g -> -g.
    pieces = {{FermionBoundary::antiperiodic, 1.0, 0.5},
              {FermionBoundary::antiperiodic, -1.0, 0.5},
              {FermionBoundary::periodic, 1.0, 0.5},
              {FermionBoundary::periodic, -1.0, -0.5}};
  }
  for (const Piece& p : pieces) {
    const ModeDecomposition md = decompose(spec, p.boundary);
    Ensemble e;
    e.coefficient = p.coefficient;
    e.modes = md.modes;
    const Eigen::Index n = md.energies.size();
    e.scaled.resize(n);
    e.inv_w.resize(n);
    e.log_scale = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double log_g = -beta * md.energies(k);
      const double log_w = std::max(0.0, log_g);
      e.log_scale += log_w;
      e.scaled(k) = p.sign * std::exp(log_g - log_w);
      e.inv_w(k) = std::exp(-log_w);
    }
    ensembles_.push_back(std::move(e));
  }
  max_log_scale_ = ensembles_.front().log_scale;
  for (const auto& e : ensembles_) max_log_scale_ = std::max(max_log_scale_, e.log_scale);
  partition_ = 0.0;
  for (const auto& e : ensembles_) {
    cplx prod = 1.0;
    for (Eigen::Index k = 0; k < e.scaled.size(); ++k) prod *= e.inv_w(k) + e.scaled(k);
    partition_ += e.coefficient * std::exp(e.log_scale - max_log_scale_) * prod;
  }
  if (!(std::abs(partition_) > 0.0)) throw NumericError("vanishing partition function in fermionic ensembles");
}

Eigen::MatrixXcd ChainState::window(int first, int last) const {
  const int len = last - first + 1;
  if (!infinite_) return k_.block(first, first, len, len);
  Eigen::MatrixXcd w(len, len);
  for (int a = 0; a < len; ++a)
    for (int b = 0; b < len; ++b) {
      const int d = a - b;
      // K_ab = <c^dagger_b c_a> = G(a - b), with G(-d) = conj(G(d)).
      w(a, b) = d >= 0 ? toeplitz_.at(static_cast<std::size_t>(d)) : std::conj(toeplitz_.at(static_cast<std::size_t>(-d)));
    }
  return w;
}

cplx ChainState::ensemble_hopping(int i, int j) const {
  // Tr(c^dagger_i E_S c_j Gamma_X) = [U (det B - W^{-1} adj B) U^dagger]_{ji},
  // B = W^{-1} + (U^dagger D U) G~, with D = -1 on the sites strictly between i and j.
  const int lo = std::min(i, j), hi = std::max(i, j);
  const Eigen::VectorXd d = string_signs(n_sites_, lo + 1, hi - 1);
  cplx total = 0.0;
  for (const auto& e : ensembles_) {
    const Eigen::MatrixXcd a = e.modes.adjoint() * d.asDiagonal() * e.modes;
    Eigen::MatrixXcd b = a * e.scaled.asDiagonal();
    b.diagonal() += e.inv_w.cast<cplx>();
    const Eigen::MatrixXcd adj = linalg::adjugate(b);
    const Eigen::MatrixXcd inner = e.inv_w.cast<cplx>().asDiagonal() * adj;
    cplx value = -(e.modes.row(j) * inner * e.modes.row(i).adjoint())(0, 0);
    if (i == j) value += linalg::determinant(b);
    total += e.coefficient * std::exp(e.log_scale - max_log_scale_) * value;
  }
  return total / partition_;
}

double ChainState::ensemble_z_string(const std::vector<int>& sites) const {
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n_sites_);
  for (int s : sites) d(s) = -d(s);
  cplx total = 0.0;
  for (const auto& e : ensembles_) {
    Eigen::MatrixXcd b = (e.modes.adjoint() * d.asDiagonal() * e.modes) * e.scaled.asDiagonal();
    b.diagonal() += e.inv_w.cast<cplx>();
    total += e.coefficient * std::exp(e.log_scale - max_log_scale_) * linalg::determinant(b);
  }
  return (total / partition_).real();
}

cplx ChainState::hopping(int i, int j) const {
  if (!infinite_ && (i < 0 || j < 0 || i >= n_sites_ || j >= n_sites_))
    throw ValidationError("site index outside the chain");
  if (infinite_ && std::abs(i - j) + 1 > static_cast<int>(toeplitz_.size()))
    throw ValidationError("separation exceeds the precomputed correlation window");
  if (i > j) return std::conj(hopping(j, i));
  if (!gaussian_) return ensemble_hopping(i, j);
  // <c^dagger_i E_S c_j> = [det(M) 1 - (1 - K) adj(M)]_{ji}, M = 1 - 2 P_S K.
  const Eigen::MatrixXcd k = window(i, j);
  const Eigen::Index len = k.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(len, len);
  for (Eigen::Index s = 1; s + 1 < len; ++s) m.row(s) -= 2.0 * k.row(s);
  const Eigen::MatrixXcd one_minus_k = Eigen::MatrixXcd::Identity(len, len) - k;
  cplx value = -(one_minus_k.row(len - 1) * linalg::adjugate(m).col(0))(0, 0);
  if (i == j) value += linalg::determinant(m);
  return value;
}

double ChainState::z_string(const std::vector<int>& sites) const {
  for (int s : sites)
    if (!infinite_ && (s < 0 || s >= n_sites_)) throw ValidationError("site index outside the chain");
  if (!gaussian_) return ensemble_z_string(sites);
  // <prod (1 - 2 n_s)> = det(1 - 2 K_SS).
  const auto n = static_cast<Eigen::Index>(sites.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      cplx kab;
      if (infinite_) {
        const int d = sites[a] - sites[b];
        if (std::abs(d) >= static_cast<int>(toeplitz_.size()))
          throw ValidationError("separation exceeds the precomputed correlation window");
        kab = d >= 0 ? toeplitz_[static_cast<std::size_t>(d)] : std::conj(toeplitz_[static_cast<std::size_t>(-d)]);
      } else {
        kab = k_(sites[a], sites[b]);
      }
      m(a, b) = (a == b ? 1.0 : 0.0) - 2.0 * kab;
    }
  return linalg::determinant(m).real();
}

cplx ChainState::fermion_correlation(int d) const {
  if (infinite_) {
    if (d < 0 || d >= static_cast<int>(toeplitz_.size())) throw ValidationError("distance outside the window");
    return toeplitz_[static_cast<std::size_t>(d)];
  }
  if (d < 0 || d >= n_sites_) throw ValidationError("distance outside the chain");
  if (gaussian_) return k_(d, 0);
  // Same ensemble formula with no string: reuse ensemble_hopping for adjacent/equal sites only.
  if (d <= 1) return ensemble_hopping(0, d);
  cplx total = 0.0;
  for (const auto& e : ensembles_) {
    Eigen::MatrixXcd b = e.scaled.asDiagonal();
    b.diagonal() += e.inv_w.cast<cplx>();
    const Eigen::MatrixXcd inner = e.inv_w.cast<cplx>().asDiagonal() * linalg::adjugate(b);
    const cplx value = -(e.modes.row(d) * inner * e.modes.row(0).adjoint())(0, 0);
    total += e.coefficient * std::exp(e.log_scale - max_log_scale_) * value;
  }
  return total / partition_;
}

// ---------------------------------------------------------------- Public wrappers

std::vector<cplx> fermion_correlation_matrix(const SpinChainSpec& spec, int r_max) {
  if (r_max < 1) throw ValidationError("r_max must be >= 1");
  const ChainState state(spec, r_max);
  if (!state.infinite() && r_max >= spec.n_sites) throw ValidationError("r_max must be < n_sites");
  std::vector<cplx> g;
  for (int d = 0; d <= r_max; ++d) g.push_back(state.fermion_correlation(d));
  return g;
}

CorrelatorSet nn_correlators(const SpinChainSpec& spec, int profile_r_max) {
  if (profile_r_max < 0) throw ValidationError("profile r_max must be >= 0");
  const ChainState state(spec, std::max(1, profile_r_max));
  CorrelatorSet out;
  out.source = Solver::free_fermion;
  out.temperature = spec.temperature;
  out.mu_over_j = spec.mu_over_j();
  if (state.infinite()) {
    out.xx_nn = 2.0 * state.hopping(0, 1).real();
    out.zz_nn = state.z_string({0, 1});
    out.z_single = state.z_string({0});
  } else {
    if (profile_r_max >= spec.n_sites) throw ValidationError("profile r_max must be < n_sites");
    const auto bonds = chain_bonds(spec.n_sites, spec.boundary);
    for (auto [a, b] : bonds) {
      out.xx_nn += 2.0 * state.hopping(a, b).real();
      out.zz_nn += state.z_string({a, b});
    }
    out.xx_nn /= static_cast<double>(bonds.size());
    out.zz_nn /= static_cast<double>(bonds.size());
    for (int i = 0; i < spec.n_sites; ++i) out.z_single += state.z_string({i});
    out.z_single /= spec.n_sites;
  }
  // s+ s- and s- s+ carry the same string, so <sy sy> = <sx sx> identically here.
  out.yy_nn = out.xx_nn;
  for (int r = 1; r <= profile_r_max; ++r) out.transverse_profile.emplace_back(r, state.hopping(0, r).real());
  return out;
}

double transverse_correlator(int r, const SpinChainSpec& spec) {
  if (r < 1) throw ValidationError("transverse correlator needs r >= 1");
  if (spec.thermodynamic_limit && r > kMaxStringDistance)
    throw ValidationError("r exceeds the configured window of " + std::to_string(kMaxStringDistance));
  if (!spec.thermodynamic_limit && r >= spec.n_sites) throw ValidationError("r must be < n_sites");
  return ChainState(spec, r).hopping(0, r).real();
}

std::vector<double> transverse_profile(const SpinChainSpec& spec, int r_max) {
  if (r_max < 1) throw ValidationError("r_max must be >= 1");
  if (spec.thermodynamic_limit && r_max > kMaxStringDistance)
    throw ValidationError("r exceeds the configured window of " + std::to_string(kMaxStringDistance));
  if (!spec.thermodynamic_limit && r_max >= spec.n_sites) throw ValidationError("r must be < n_sites");
  const ChainState state(spec, r_max);
  std::vector<double> values;
  for (int r = 1; r <= r_max; ++r) values.push_back(state.hopping(0, r).real());
  return values;
}

std::vector<cplx> bond_hoppings(const SpinChainSpec& spec) {
  if (spec.thermodynamic_limit) throw ValidationError("bond hoppings need a finite chain");
  const ChainState state(spec, 1);
  std::vector<cplx> out;
  for (auto [a, b] : chain_bonds(spec.n_sites, spec.boundary)) out.push_back(state.hopping(a, b));
  return out;
}

double twist_energy_density(const SpinChainSpec& spec, double theta) {
  spec.validate();
  const double j = spec.coupling_j, mu = spec.chem_potential;
  const double s = std::sin(0.5 * theta);
  // eps_theta(k) - eps_0(k) = 4 J sin(k + theta/2) sin(theta/2)
  quadrature::Options opt;
  opt.abs_tol = 1e-18;
  opt.rel_tol = 1e-13;
  if (spec.temperature == 0.0) {
    const double kf = fermi_momentum(spec);
    if (kf == 0.0) return 0.0;
    auto f = [&](double k) { return 4.0 * j * std::sin(k + 0.5 * theta) * s; };
    return quadrature::integrate(f, -kf, kf, opt) / (2.0 * kPi);
  }
  const double beta = spec.beta();
  auto f = [&](double k) {
    return fermi(-2.0 * j * std::cos(k) + 2.0 * mu, beta) * 4.0 * j * std::sin(k + 0.5 * theta) * s;
  };
  return quadrature::integrate(f, -kPi, kPi, opt, fermi_breakpoints(spec)) / (2.0 * kPi);
}

}  // namespace xxcrit::freefermion
