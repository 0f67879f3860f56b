#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xxcrit/spec.hpp"

namespace xxcrit {

/// Nearest-neighbour and transverse correlators feeding the superfluid and
/// entanglement formulas. Nearest-neighbour entries are averaged over bonds
/// (over sites for z_single); the transverse profile is measured from site 0.
struct CorrelatorSet {
  double xx_nn = 0.0;
  double yy_nn = 0.0;
  double zz_nn = 0.0;
  double z_single = 0.0;
  /// (r, <s+_0 s-_r>), real part.
  std::vector<std::pair<int, double>> transverse_profile;
  Solver source = Solver::free_fermion;
  double temperature = 0.0;
  double mu_over_j = 0.0;
};

}  // namespace xxcrit
