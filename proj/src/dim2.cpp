#include "xxcrit/dim2.hpp"

#include <cmath>
#include <numbers>

#include "xxcrit/errors.hpp"
#include "xxcrit/quadrature.hpp"

namespace xxcrit::dim2 {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Dim2Spec::validate() const {
  if (!(j_parallel > 0.0) || !(j_perp > 0.0) || !std::isfinite(j_parallel) || !std::isfinite(j_perp))
    throw ValidationError("J and J_perp must be finite and > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and > 0");
  if (quadrature_points < 64) throw ValidationError("quadrature_points must be >= 64");
}

double lambda_2d(double kx, double ky, const Dim2Spec& spec) {
  const double a = spec.j_perp * std::cos(ky);
  const double b = spec.j_parallel * std::sin(kx);
  return std::sqrt(a * a + b * b);
}

double energy_density_2d(const Dim2Spec& spec) {
  spec.validate();
  auto f = [&](double kx, double ky) {
    const double l = lambda_2d(kx, ky, spec);
    return l * std::tanh(0.5 * spec.beta * l);
  };
  // Lambda vanishes at kx in {0, +-pi}, ky = +-pi/2: put those on tile corners.
  const std::vector<double> cuts{-kPi, -0.5 * kPi, 0.0, 0.5 * kPi, kPi};
  quadrature::Options2d opt;
  opt.order = spec.quadrature_points;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-300;
  opt.max_tiles = 200000;
  return -0.5 * quadrature::integrate_2d(f, cuts, cuts, opt) / (4.0 * kPi * kPi);
}

double high_t_energy_density(const Dim2Spec& spec) {
  return -spec.beta * (spec.j_parallel * spec.j_parallel + spec.j_perp * spec.j_perp) / 8.0;
}

entanglement::WitnessReport witness_energy_2d(double u_density, const Dim2Spec& spec, EnergyConvention convention) {
  const double scale = convention == EnergyConvention::per_bond_doubled ? 2.0 : 1.0;
  const double bound = 0.5 * (spec.j_parallel + spec.j_perp);
  auto r = entanglement::make_witness(entanglement::WitnessName::energy_2d, scale * std::abs(u_density) - bound,
                                      {{"u_density", u_density},
                                       {"j_parallel", spec.j_parallel},
                                       {"j_perp", spec.j_perp},
                                       {"separable_bound", bound}});
  r.convention = convention == EnergyConvention::per_bond_doubled ? "per_bond_doubled (2|U|)" : "per_site (|U|)";
  return r;
}

double high_t_entanglement_threshold(const Dim2Spec& spec) {
  const double j = spec.j_parallel, jp = spec.j_perp;
  if (!(j >= 0.0) || !(jp >= 0.0) || !(j + jp > 0.0)) throw ValidationError("couplings must be >= 0, not both zero");
  return (j * j + jp * jp) / (8.0 * (j + jp));
}

}  // namespace xxcrit::dim2
