#include "xxcrit/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xxcrit/errors.hpp"

namespace xxcrit::entanglement {

namespace {

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

/// sqrt((1 + zz)^2 - 4 z^2), clamping tiny negative radicands.
double correlator_radical(const CorrelatorSet& c) {
  for (double v : {c.xx_nn, c.zz_nn, c.z_single})
    if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-9) throw ValidationError("correlators must lie in [-1, 1]");
  const double radicand = (1.0 + c.zz_nn) * (1.0 + c.zz_nn) - 4.0 * c.z_single * c.z_single;
  if (radicand < -1e-9)
    throw NumericError("inconsistent correlator set: (1 + zz)^2 - 4 z^2 = " + std::to_string(radicand));
  return std::sqrt(std::max(0.0, radicand));
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix2cd y;
  y << 0.0, std::complex<double>(0.0, -1.0), std::complex<double>(0.0, 1.0), 0.0;
  Eigen::Matrix4cd yy;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) yy(a + 2 * b, c + 2 * d) = y(a, c) * y(b, d);
  return yy;
}

}  // namespace

double single_site_entropy(double z) {
  if (!std::isfinite(z) || std::abs(z) > 1.0 + 1e-12) throw ValidationError("<sz> must lie in [-1, 1]");
  z = std::clamp(z, -1.0, 1.0);
  // Clamp the -0.0 left by xlogx at the poles.
  return std::max(0.0, -xlogx(0.5 * (1.0 + z)) - xlogx(0.5 * (1.0 - z)));
}

double concurrence_nn(const CorrelatorSet& c) {
  return std::max(0.0, std::abs(c.xx_nn) - correlator_radical(c));
}

double concurrence_u1(const CorrelatorSet& c) {
  return std::max(0.0, std::abs(c.xx_nn) - 0.5 * correlator_radical(c));
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() * root.cast<std::complex<double>>().asDiagonal() *
                                    es.eigenvectors().adjoint();
  const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;
  Eigen::Matrix4cd m = sqrt_rho * tilde * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::Vector4d l = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(m, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .cwiseMax(0.0)
                          .cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double partial_transpose_min_eigenvalue(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(a + 2 * b, c + 2 * d) = rho(a + 2 * d, c + 2 * b);
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(pt, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

bool fails_ppt(const Eigen::Matrix4cd& rho) { return partial_transpose_min_eigenvalue(rho) < -1e-12; }

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  const Eigen::VectorXd p =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho, Eigen::EigenvaluesOnly).eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s -= xlogx(std::max(0.0, p(i)));
  return s;
}

double subsystem_entropy(const hilbert::QuantumState& state, std::span<const int> sites) {
  return von_neumann_entropy(hilbert::reduced_density_operator(state, sites));
}

std::vector<double> bipartition_entropies(const hilbert::QuantumState& state) {
  if (state.kind() != hilbert::StateKind::pure) throw ValidationError("cut entropies need a pure state");
  const int n = state.basis().n_sites();
  std::vector<double> out;
  for (int k = 1; k < n; ++k) {
    std::vector<int> sites;
    if (k <= n - k)
      for (int i = 0; i < k; ++i) sites.push_back(i);
    else
      for (int i = k; i < n; ++i) sites.push_back(i);
    out.push_back(subsystem_entropy(state, sites));
  }
  return out;
}

Eigen::Matrix4cd two_site_density(const hilbert::QuantumState& state, int a, int b) {
  if (state.basis().n_max() != 1) throw ValidationError("two-qubit density needs a spin-1/2 state");
  const int sites[2] = {a, b};
  return hilbert::reduced_density_operator(state, sites);
}

std::string to_string(WitnessName w) {
  switch (w) {
    case WitnessName::fs_half: return "fs_half";
    case WitnessName::mu_T_disc: return "mu_T_disc";
    case WitnessName::energy_1d: return "energy_1d";
    case WitnessName::energy_2d: return "energy_2d";
    case WitnessName::continuum_energy: return "continuum_energy";
  }
  return "unknown";
}

WitnessReport make_witness(WitnessName name, double margin, std::vector<std::pair<std::string, double>> inputs) {
  if (!std::isfinite(margin)) throw NumericError("witness margin is not finite");
  WitnessReport r;
  r.name = name;
  r.margin = margin;
  r.fired = margin > 0.0;
  r.inputs = std::move(inputs);
  r.caveat = r.fired ? "entanglement certified (the witness is violated)"
                     : "inconclusive: a witness that does not fire says nothing about separability";
  return r;
}

WitnessReport witness_superfluid(double fs_kinetic) {
  if (!(fs_kinetic >= 0.0)) throw ValidationError("superfluid fraction must be >= 0");
  WitnessReport r = make_witness(WitnessName::fs_half, fs_kinetic - 0.5, {{"fs_kinetic", fs_kinetic}});
  r.convention = "fs_kinetic = |<sxsx + sysy>| / 2 per bond";
  return r;
}

WitnessReport witness_high_temperature(double mu, double temperature, double j) {
  if (!(j > 0.0)) throw ValidationError("J must be > 0");
  return make_witness(WitnessName::mu_T_disc, j * j - mu * mu - temperature * temperature,
                      {{"mu", mu}, {"temperature", temperature}, {"j", j}});
}

WitnessReport witness_energy_1d(double bond_energy, double j) {
  if (!(j > 0.0)) throw ValidationError("J must be > 0");
  WitnessReport r = make_witness(WitnessName::energy_1d, std::abs(bond_energy) - 0.5 * j,
                                 {{"bond_energy", bond_energy}, {"j", j}});
  r.convention = "per bond, H_b = -J (s+s- + s-s+)";
  return r;
}

EntropyEstimate experiment_entropy_estimate(double mu_over_j) {
  if (!std::isfinite(mu_over_j)) throw ValidationError("mu/J must be finite");
  EntropyEstimate e;
  if (std::abs(mu_over_j) >= 1.0) {
    e.saturated = true;
    e.z_expectation = mu_over_j > 0.0 ? 1.0 : -1.0;
    return e;
  }
  e.z_expectation = 1.0 - (2.0 / std::numbers::pi) * std::acos(mu_over_j);
  e.entropy = single_site_entropy(e.z_expectation);
  return e;
}

}  // namespace xxcrit::entanglement
