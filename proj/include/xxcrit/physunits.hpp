#pragma once

// SI layer: constants, the lattice hopping J = hbar^2 / (2 m a^2), thermal
// wavelengths and the experiment-level entanglement checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xxcrit/entanglement.hpp"

namespace xxcrit::physunits {

// CODATA 2018 (h, k_B exact by the 2019 SI redefinition; u from the 2018 adjustment).
inline constexpr double kPlanck = 6.62607015e-34;           // J s
inline constexpr double kHbar = kPlanck / (2.0 * 3.14159265358979323846);
inline constexpr double kBoltzmann = 1.380649e-23;          // J / K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

inline double mass_from_amu(double amu) { return amu * kAtomicMassUnit; }

struct Energy {
  double joules = 0.0;
  double hertz = 0.0;      // E / h
  double rad_per_s = 0.0;  // E / hbar
};

Energy energy_from_joules(double joules);

/// J = hbar^2 / (2 m a^2).
Energy hopping_from_physical(double mass_kg, double spacing_m);

/// lambda_T = h / sqrt(2 pi m k_B T).
double thermal_wavelength(double mass_kg, double temperature_k);

/// Lattice analogue a sqrt(J / T), energies in the same units.
double lattice_de_broglie(double spacing, double j, double temperature);

enum class DensityKind { volumetric, areal };

/// a = 1/sqrt(rho s) with rho a number per volume. An areal density is converted
/// with the layer thickness, which is then required.
double healing_length(double density, double scattering_m, DensityKind kind = DensityKind::volumetric,
                      std::optional<double> thickness_m = std::nullopt);

struct PhysicalParams {
  double mass_kg = 0.0;
  double healing_length_m = 0.0;
  double temperature_k = 0.0;
  double mu_frequency_hz = 0.0;
  std::optional<double> density_2d;          // 1/m^2
  std::optional<double> scattering_length;   // m
  std::optional<double> layer_thickness;     // m, converts density_2d to a volume density
  /// Verdicts asserted for these inputs elsewhere, keyed by check name.
  std::vector<std::pair<std::string, bool>> claimed_verdicts;
  /// Externally quoted thermal wavelength, reported for comparison only.
  std::optional<double> quoted_thermal_wavelength_m;

  void validate() const;
};

/// Rb-87, a = 0.2 um, T = 150 nK, mu/h = 10 kHz, with the verdict claimed for them.
PhysicalParams reference_experiment();

struct Check {
  std::string name;
  std::string inequality;
  double left_si = 0.0;
  double right_si = 0.0;
  std::string si_unit;
  /// Same sides in lattice units (energies in J, lengths in a).
  double left_lattice = 0.0;
  double right_lattice = 0.0;
  /// Empty when the check cannot be evaluated for the inputs.
  std::optional<bool> verdict;
  std::optional<bool> claimed;
  bool discrepancy = false;
  std::string note;
};

struct ExperimentReport {
  PhysicalParams params;
  Energy j;
  Energy mu;
  Energy thermal;  // k_B T
  std::optional<double> thermal_wavelength_m;
  double healing_length_m = 0.0;
  std::optional<double> derived_healing_length_m;
  double mu_over_j = 0.0;
  double temperature_over_j = 0.0;
  entanglement::EntropyEstimate entropy;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> constants;
  std::string thermal_wavelength_formula = "lambda_T = h / sqrt(2 pi m k_B T)";
};

ExperimentReport experiment_report(const PhysicalParams& params);

}  // namespace xxcrit::physunits
