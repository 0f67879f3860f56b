#pragma once

// Mean-field spectrum of the two-dimensional XX lattice, its thermal energy
// density and the energy witness built on it.

#include "xxcrit/entanglement.hpp"

namespace xxcrit::dim2 {

struct Dim2Spec {
  double j_parallel = 1.0;
  double j_perp = 1.0;
  double beta = 1.0;
  /// Gauss-Legendre points per axis on each zone tile.
  int quadrature_points = 64;

  void validate() const;
};

/// sqrt(J_perp^2 cos^2 ky + J^2 sin^2 kx).
double lambda_2d(double kx, double ky, const Dim2Spec& spec);

/// -(1/2) \int_{[-pi,pi]^2} d^2k/(2 pi)^2 Lambda tanh(beta Lambda / 2).
double energy_density_2d(const Dim2Spec& spec);

/// -beta (J^2 + J_perp^2) / 8, the leading high-temperature term.
double high_t_energy_density(const Dim2Spec& spec);

enum class EnergyConvention {
  per_site,            // |U| as computed
  per_bond_doubled,    // 2|U|
};

/// |U| > (J + J_perp)/2 under the chosen accounting of U.
entanglement::WitnessReport witness_energy_2d(double u_density, const Dim2Spec& spec,
                                              EnergyConvention convention = EnergyConvention::per_site);

/// (1/8)(J^2 + J_perp^2)/(J + J_perp).
double high_t_entanglement_threshold(const Dim2Spec& spec);

}  // namespace xxcrit::dim2
