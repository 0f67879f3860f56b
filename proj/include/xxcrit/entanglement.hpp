#pragma once

// Single-site entropy, nearest-neighbour concurrence and entanglement
// witnesses. Entropies are in nats unless a name says otherwise.

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xxcrit/correlators.hpp"
#include "xxcrit/hilbert.hpp"

namespace xxcrit::entanglement {

/// Binary entropy of eps = (1 +- <sz>)/2.
double single_site_entropy(double z_expectation);
inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

/// max{0, |xx| - sqrt((1 + zz)^2 - 4 z^2)}, the correlator closed form quoted
/// for the XX chain. Radicands down to -1e-9 are clamped to zero.
double concurrence_nn(const CorrelatorSet& c);

/// Wootters concurrence of a U(1)-symmetric two-qubit state written through its
/// correlators: max{0, |xx| - sqrt((1 + zz)^2 - 4 z^2) / 2}.
double concurrence_u1(const CorrelatorSet& c);

/// Wootters concurrence of a two-qubit density matrix (index = n_a + 2 n_b).
double wootters_concurrence(const Eigen::Matrix4cd& rho);

/// Smallest eigenvalue of the partial transpose on the second qubit.
double partial_transpose_min_eigenvalue(const Eigen::Matrix4cd& rho);
/// Negative partial transpose (below -1e-12) certifies entanglement.
bool fails_ppt(const Eigen::Matrix4cd& rho);

double von_neumann_entropy(const Eigen::MatrixXcd& rho);
/// Entropy of the reduced state on `sites` (at most four sites).
double subsystem_entropy(const hilbert::QuantumState& state, std::span<const int> sites);
/// Entropy of every left/right cut {0..k-1} | {k..n-1} of a pure state, k = 1..n-1,
/// each evaluated on the smaller side (at most four sites).
std::vector<double> bipartition_entropies(const hilbert::QuantumState& state);
/// Two-site reduced density matrix of a spin state.
Eigen::Matrix4cd two_site_density(const hilbert::QuantumState& state, int a, int b);

enum class WitnessName { fs_half, mu_T_disc, energy_1d, energy_2d, continuum_energy };
std::string to_string(WitnessName w);

struct WitnessReport {
  WitnessName name = WitnessName::fs_half;
  bool fired = false;
  /// Signed distance to the threshold; positive exactly when fired.
  double margin = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
  std::string caveat;
  /// Normalization used for the compared quantity, when it is not unique.
  std::string convention;
};

/// Builds a report with fired = margin > 0 and the standard one-sided caveat.
WitnessReport make_witness(WitnessName name, double margin, std::vector<std::pair<std::string, double>> inputs);

/// fs > 1/2.
WitnessReport witness_superfluid(double fs_kinetic);
/// mu^2 + T^2 < J^2.
WitnessReport witness_high_temperature(double mu, double temperature, double j);
/// |<H_bond>| > J/2 for the bond energy -J <s+s- + s-s+>, the product-state bound.
WitnessReport witness_energy_1d(double bond_energy, double j);

struct EntropyEstimate {
  double z_expectation = 0.0;
  double entropy = 0.0;  // nats
  /// |mu/J| >= 1: the band is empty or full and the entropy vanishes.
  bool saturated = false;
};

/// Single-site entropy at <sz> = 1 - (2/pi) arccos(mu/J).
EntropyEstimate experiment_entropy_estimate(double mu_over_j);

}  // namespace xxcrit::entanglement
