#pragma once

// Jordan-Wigner free-fermion solver for the XX chain. Spin correlators are
// written as traces over Gaussian fermionic operators: a single Gaussian state
// at zero temperature and in the infinite chain, and a signed combination of
// four Gaussian ensembles (periodic/antiperiodic fermions times the
// particle-parity projector) for thermal states of finite rings.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "xxcrit/correlators.hpp"
#include "xxcrit/spec.hpp"

namespace xxcrit::freefermion {

using cplx = std::complex<double>;

/// Single-particle energy eps(k) = -2J cos(k + theta) + 2 mu.
double dispersion(double k, const SpinChainSpec& spec);

enum class FermionBoundary { open, periodic, antiperiodic };

struct FermionModeSpectrum {
  FermionBoundary boundary = FermionBoundary::periodic;
  std::vector<double> momenta;   // in (-pi, pi]; empty for open chains
  std::vector<double> energies;  // ascending
  std::vector<double> fillings;  // Fermi factors at the spec temperature
};

/// Hopping matrix h with H = sum_ab c^dagger_a h_ab c_b - mu N for the given fermion boundary.
Eigen::MatrixXcd hopping_matrix(const SpinChainSpec& spec, FermionBoundary boundary);
FermionModeSpectrum mode_spectrum(const SpinChainSpec& spec, FermionBoundary boundary);

struct Magnetization {
  double value;
  bool saturated;  // mu >= J at T = 0: fully polarized, empty band
};

/// Infinite-chain <sz> at mu/J and T/J.
Magnetization magnetization(double mu_over_j, double temperature_over_j);

/// Lowest state of a finite chain, selected consistently with the
/// Jordan-Wigner parity sector. Ties go to the smaller particle number.
struct RingGroundState {
  double energy;
  FermionBoundary boundary;
  int particles;
  /// Another parity-consistent configuration lies within 1e-10 of the energy.
  bool degenerate;
};

RingGroundState ring_ground_state(const SpinChainSpec& spec);

/// Spin-chain state in Gaussian form.
class ChainState {
 public:
  /// `max_distance` bounds the separations that will be queried on the infinite chain.
  explicit ChainState(const SpinChainSpec& spec, int max_distance = 1);

  /// <s+_i s-_j>, Jordan-Wigner string included.
  cplx hopping(int i, int j) const;
  /// <prod_{s in sites} sz_s>.
  double z_string(const std::vector<int>& sites) const;
  /// <c^dagger_0 c_d> (infinite chain) or <c^dagger_0 c_d> on the ring.
  cplx fermion_correlation(int d) const;

  bool infinite() const { return infinite_; }
  int n_sites() const { return n_sites_; }

 private:
  struct Ensemble {
    double coefficient;       // +-1/2
    double log_scale;         // log det W
    Eigen::MatrixXcd modes;   // U, columns are eigenmodes of h
    Eigen::VectorXcd scaled;  // g_k / w_k
    Eigen::VectorXd inv_w;    // 1 / w_k
  };

  Eigen::MatrixXcd window(int first, int last) const;
  cplx ensemble_hopping(int i, int j) const;
  double ensemble_z_string(const std::vector<int>& sites) const;

  bool infinite_ = false;
  int n_sites_ = 0;
  bool gaussian_ = true;
  Eigen::MatrixXcd k_;          // finite Gaussian: K_ab = <c^dagger_b c_a>
  std::vector<cplx> toeplitz_;  // infinite chain: G(d), d >= 0
  std::vector<Ensemble> ensembles_;
  double max_log_scale_ = 0.0;
  cplx partition_ = 0.0;  // scaled by exp(-max_log_scale_)
};

/// G(d) = <c^dagger_0 c_d> for d = 0..r_max (G(0) is the filling).
std::vector<cplx> fermion_correlation_matrix(const SpinChainSpec& spec, int r_max);

CorrelatorSet nn_correlators(const SpinChainSpec& spec, int profile_r_max = 0);

/// <s+_0 s-_r> (real part).
double transverse_correlator(int r, const SpinChainSpec& spec);
std::vector<double> transverse_profile(const SpinChainSpec& spec, int r_max);

/// <s+_i s-_j> on every bond of a finite chain, in chain_bonds order.
std::vector<cplx> bond_hoppings(const SpinChainSpec& spec);

/// Infinite chain, per site: sum over the occupations of the untwisted state of
/// eps_theta(k) - eps_0(k).
double twist_energy_density(const SpinChainSpec& spec, double theta);

/// Largest separation accepted by transverse_correlator on the infinite chain.
inline constexpr int kMaxStringDistance = 512;

}  // namespace xxcrit::freefermion
