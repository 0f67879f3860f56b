#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace xxcrit {

enum class Boundary { open, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Parameters of the XX chain
///   H = -J sum_b (e^{i theta} s+_i s-_{i+1} + h.c.) - mu sum_i sz_i
/// in units hbar = k_B = 1. A temperature of zero selects the ground state.
struct SpinChainSpec {
  int n_sites = 8;
  double coupling_j = 1.0;
  double chem_potential = 0.0;
  double twist_per_bond = 0.0;
  Boundary boundary = Boundary::periodic;
  double temperature = 0.0;
  /// Infinite chain; only the free-fermion solver honours this and n_sites is ignored.
  bool thermodynamic_limit = false;

  void validate() const;
  double beta() const {
    return temperature > 0.0 ? 1.0 / temperature : std::numeric_limits<double>::infinity();
  }
  double mu_over_j() const { return chem_potential / coupling_j; }
};

/// Nearest-neighbour bonds (i, i+1); periodic chains add (n-1, 0).
std::vector<std::pair<int, int>> chain_bonds(int n_sites, Boundary boundary);

struct BoseHubbardSpec {
  int n_sites = 4;
  double coupling_j = 1.0;
  double onsite_u = 0.0;
  int n_max = 1;
  Boundary boundary = Boundary::periodic;
  std::optional<int> n_particles;

  void validate() const;
};

enum class Solver { exact_diag, free_fermion };

std::string to_string(Solver s);
Solver solver_from_string(const std::string& s);

}  // namespace xxcrit
