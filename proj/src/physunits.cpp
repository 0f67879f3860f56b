#include "xxcrit/physunits.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xxcrit/errors.hpp"

namespace xxcrit::physunits {

namespace {

std::string general(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite and > 0");
}

void attach_claim(Check& c, const PhysicalParams& p) {
  for (const auto& [name, verdict] : p.claimed_verdicts)
    if (name == c.name) c.claimed = verdict;
  c.discrepancy = c.claimed && c.verdict && *c.claimed != *c.verdict;
}

}  // namespace

Energy energy_from_joules(double joules) { return {joules, joules / kPlanck, joules / kHbar}; }

Energy hopping_from_physical(double mass_kg, double spacing_m) {
  require_positive(mass_kg, "mass");
  require_positive(spacing_m, "spacing");
  return energy_from_joules(kHbar * kHbar / (2.0 * mass_kg * spacing_m * spacing_m));
}

double thermal_wavelength(double mass_kg, double temperature_k) {
  require_positive(mass_kg, "mass");
  require_positive(temperature_k, "temperature");
  return kPlanck / std::sqrt(2.0 * std::numbers::pi * mass_kg * kBoltzmann * temperature_k);
}

double lattice_de_broglie(double spacing, double j, double temperature) {
  require_positive(spacing, "spacing");
  require_positive(j, "J");
  require_positive(temperature, "temperature");
  return spacing * std::sqrt(j / temperature);
}

double healing_length(double density, double scattering_m, DensityKind kind, std::optional<double> thickness_m) {
  require_positive(density, "density");
  require_positive(scattering_m, "scattering length");
  double rho = density;
  if (kind == DensityKind::areal) {
    if (!thickness_m) throw ValidationError("an areal density needs the layer thickness");
    require_positive(*thickness_m, "layer thickness");
    rho = density / *thickness_m;
  }
  return 1.0 / std::sqrt(rho * scattering_m);
}

void PhysicalParams::validate() const {
  require_positive(mass_kg, "mass");
  require_positive(healing_length_m, "healing length");
  if (!(temperature_k >= 0.0) || !std::isfinite(temperature_k)) throw ValidationError("temperature must be >= 0");
  if (!std::isfinite(mu_frequency_hz)) throw ValidationError("chemical potential must be finite");
  if (density_2d) require_positive(*density_2d, "density");
  if (scattering_length) require_positive(*scattering_length, "scattering length");
  if (layer_thickness) require_positive(*layer_thickness, "layer thickness");
}

PhysicalParams reference_experiment() {
  PhysicalParams p;
  p.mass_kg = mass_from_amu(87.0);
  p.healing_length_m = 0.2e-6;
  p.temperature_k = 150e-9;
  p.mu_frequency_hz = 10e3;
  p.claimed_verdicts = {{"mu_T_disc", true}, {"thermal_wavelength", true}};
  p.quoted_thermal_wavelength_m = 0.3e-6;
  return p;
}

ExperimentReport experiment_report(const PhysicalParams& params) {
  params.validate();
  ExperimentReport r;
  r.params = params;
  r.healing_length_m = params.healing_length_m;
  r.j = hopping_from_physical(params.mass_kg, params.healing_length_m);
  r.mu = energy_from_joules(params.mu_frequency_hz * kPlanck);
  r.thermal = energy_from_joules(kBoltzmann * params.temperature_k);
  r.mu_over_j = r.mu.joules / r.j.joules;
  r.temperature_over_j = r.thermal.joules / r.j.joules;
  r.entropy = entanglement::experiment_entropy_estimate(r.mu_over_j);
  if (params.temperature_k > 0.0) r.thermal_wavelength_m = thermal_wavelength(params.mass_kg, params.temperature_k);
  if (params.density_2d && params.scattering_length && params.layer_thickness)
    r.derived_healing_length_m =
        healing_length(*params.density_2d, *params.scattering_length, DensityKind::areal, params.layer_thickness);
  r.constants = {{"h", kPlanck}, {"hbar", kHbar}, {"k_B", kBoltzmann}, {"u", kAtomicMassUnit}};

  const double j2 = r.j.joules * r.j.joules;
  {
    Check c;
    c.name = "mu_T_disc";
    c.inequality = "mu^2 + (k_B T)^2 < J^2";
    c.si_unit = "J^2";
    c.left_si = r.mu.joules * r.mu.joules + r.thermal.joules * r.thermal.joules;
    c.right_si = j2;
    c.left_lattice = c.left_si / j2;
    c.right_lattice = 1.0;
    c.verdict = c.left_si < c.right_si;
    c.note = "mu/h = " + general(r.mu.hertz) + " Hz, k_B T/h = " + general(r.thermal.hertz) +
             " Hz, J/h = " + general(r.j.hertz) + " Hz";
    attach_claim(c, params);
    r.checks.push_back(c);
  }
  {
    Check c;
    c.name = "thermal_wavelength";
    c.inequality = "lambda_T > a";
    c.si_unit = "m";
    c.right_si = params.healing_length_m;
    c.right_lattice = 1.0;
    if (r.thermal_wavelength_m) {
      c.left_si = *r.thermal_wavelength_m;
      c.left_lattice = c.left_si / params.healing_length_m;
      c.verdict = c.left_si > c.right_si;
    } else {
      c.note = "not evaluable at T = 0";
    }
    if (params.quoted_thermal_wavelength_m)
      c.note = "quoted lambda_T = " + general(*params.quoted_thermal_wavelength_m) + " m";
    attach_claim(c, params);
    r.checks.push_back(c);
  }
  {
    // <H> ~ h^2 / (2 m lambda_T^2) against h^2 / (2 m a^2) = 4 pi^2 J.
    Check c;
    c.name = "continuum_energy";
    c.inequality = "h^2/(2 m lambda_T^2) < h^2/(2 m a^2)";
    c.si_unit = "J";
    c.right_si = kPlanck * kPlanck / (2.0 * params.mass_kg * params.healing_length_m * params.healing_length_m);
    c.right_lattice = c.right_si / r.j.joules;
    if (r.thermal_wavelength_m) {
      c.left_si = kPlanck * kPlanck / (2.0 * params.mass_kg * *r.thermal_wavelength_m * *r.thermal_wavelength_m);
      c.left_lattice = c.left_si / r.j.joules;
      c.verdict = c.left_si < c.right_si;
    } else {
      c.note = "not evaluable at T = 0";
    }
    attach_claim(c, params);
    r.checks.push_back(c);
  }
  {
    Check c;
    c.name = "lattice_de_broglie";
    c.inequality = "k_B T < J  (a sqrt(J/T) > a)";
    c.si_unit = "J";
    c.left_si = r.thermal.joules;
    c.right_si = r.j.joules;
    c.left_lattice = r.temperature_over_j;
    c.right_lattice = 1.0;
    c.verdict = c.left_si < c.right_si;
    attach_claim(c, params);
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace xxcrit::physunits
