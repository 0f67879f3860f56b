#pragma once

// Superfluid fraction of the XX ring from the energy cost of a phase twist and
// from the kinetic bond correlator, the equilibrium current, and the
// criticality predicate.

#include "xxcrit/correlators.hpp"
#include "xxcrit/spec.hpp"

namespace xxcrit::superfluid {

inline constexpr double kDefaultTheta = 1e-3;
inline constexpr double kMaxTheta = 1e-2;
/// Bond correlations at or below this count as zero.
inline constexpr double kCriticalTolerance = 1e-10;
/// Allowed relative change of the curvature estimate between theta and theta/2.
inline constexpr double kRichardsonTolerance = 0.01;

/// Correlator set from either solver. Exact diagonalization needs a finite chain.
CorrelatorSet correlators(const SpinChainSpec& spec, Solver solver, int profile_r_max = 0);

/// Total energy change E(theta) - E(0) of the chain when every bond acquires the
/// phase theta. Per site on the infinite chain. At T > 0 the change is taken in
/// the untwisted equilibrium state.
double twist_energy(const SpinChainSpec& spec, double theta, Solver solver);

struct CurvatureResult {
  double value = 0.0;       // (E(theta) - E(0)) / (J N theta^2)
  double theta = 0.0;
  double half_theta_value = 0.0;
  double relative_change = 0.0;
};

/// Throws ValidationError for open chains or theta outside (0, 1e-2], and
/// NumericError when the theta/2 recomputation moves the result by more than 1%.
CurvatureResult superfluid_fraction_curvature(const SpinChainSpec& spec, double theta, Solver solver);

/// |xx_nn + yy_nn| / 2.
double superfluid_fraction_kinetic(const CorrelatorSet& correlators);

/// <-i sum_b (s+_i s-_j - s-_i s+_j)>: summed over bonds for finite chains,
/// per bond on the infinite chain.
double superfluid_current(const SpinChainSpec& spec, Solver solver);

struct Criticality {
  bool critical = false;
  /// Per-bond |<sxsx + sysy>| / 2 minus the tolerance.
  double margin = 0.0;
  /// mu < J, the zero-temperature prediction.
  bool below_critical_mu = false;
};

Criticality criticality_check(const SpinChainSpec& spec, Solver solver);

struct SuperfluidReport {
  Solver solver = Solver::free_fermion;
  double fs_kinetic = 0.0;
  double fs_curvature = 0.0;
  double theta = 0.0;
  double fs_curvature_half_theta = 0.0;
  double richardson_change = 0.0;
  /// fs_kinetic / fs_curvature; 2 up to O(theta^2) for the XX ring.
  double bridge_ratio = 0.0;
  double current = 0.0;
  Criticality criticality;
};

/// fs_curvature is left at zero (with theta 0) for open chains.
SuperfluidReport superfluid_report(const SpinChainSpec& spec, Solver solver, double theta = kDefaultTheta);

}  // namespace xxcrit::superfluid
