#include "xxcrit/spec.hpp"

#include <cmath>

#include "xxcrit/errors.hpp"

namespace xxcrit {

std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw ValidationError("unknown boundary '" + s + "' (expected open|periodic)");
}

std::string to_string(Solver s) { return s == Solver::exact_diag ? "exactdiag" : "freefermion"; }

Solver solver_from_string(const std::string& s) {
  if (s == "exactdiag") return Solver::exact_diag;
  if (s == "freefermion") return Solver::free_fermion;
  throw ValidationError("unknown solver '" + s + "' (expected exactdiag|freefermion)");
}

void SpinChainSpec::validate() const {
  if (!thermodynamic_limit && n_sites < 2) throw ValidationError("n_sites must be >= 2");
  if (!std::isfinite(coupling_j) || !std::isfinite(chem_potential) ||
      !std::isfinite(twist_per_bond) || !std::isfinite(temperature))
    throw ValidationError("chain parameters must be finite");
  if (coupling_j <= 0.0) throw ValidationError("coupling_j must be > 0");
  if (temperature < 0.0) throw ValidationError("temperature must be >= 0");
}

std::vector<std::pair<int, int>> chain_bonds(int n_sites, Boundary boundary) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < n_sites; ++i) bonds.emplace_back(i, i + 1);
  if (boundary == Boundary::periodic) bonds.emplace_back(n_sites - 1, 0);
  return bonds;
}

void BoseHubbardSpec::validate() const {
  if (n_sites < 2) throw ValidationError("n_sites must be >= 2");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (!std::isfinite(coupling_j) || !std::isfinite(onsite_u))
    throw ValidationError("Bose-Hubbard parameters must be finite");
  if (onsite_u < 0.0) throw ValidationError("onsite_u must be >= 0");
  if (n_particles && (*n_particles < 0 || *n_particles > n_sites * n_max))
    throw ValidationError("n_particles outside [0, n_sites * n_max]");
}

}  // namespace xxcrit
