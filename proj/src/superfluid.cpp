#include "xxcrit/superfluid.hpp"

#include <cmath>
#include <limits>

#include "xxcrit/errors.hpp"
#include "xxcrit/freefermion.hpp"
#include "xxcrit/hilbert.hpp"

namespace xxcrit::superfluid {

namespace {

void require_finite_chain(const SpinChainSpec& spec, Solver solver) {
  if (solver == Solver::exact_diag && spec.thermodynamic_limit)
    throw ValidationError("exact diagonalization needs a finite chain");
}

SpinChainSpec with_twist(SpinChainSpec spec, double theta) {
  spec.twist_per_bond = theta;
  return spec;
}

}  // namespace

CorrelatorSet correlators(const SpinChainSpec& spec, Solver solver, int profile_r_max) {
  require_finite_chain(spec, solver);
  if (solver == Solver::exact_diag) return hilbert::exact_correlators(spec, profile_r_max);
  return freefermion::nn_correlators(spec, profile_r_max);
}

double twist_energy(const SpinChainSpec& spec, double theta, Solver solver) {
  spec.validate();
  require_finite_chain(spec, solver);
  if (spec.twist_per_bond != 0.0) throw ValidationError("the twist is measured from an untwisted chain");
  const SpinChainSpec twisted = with_twist(spec, theta);
  if (solver == Solver::exact_diag) {
    if (spec.temperature == 0.0)
      return hilbert::diagonalize(hilbert::build_twisted_hamiltonian(twisted)).min_energy() -
             hilbert::diagonalize(hilbert::build_xx_hamiltonian(spec)).min_energy();
    const hilbert::QuantumState state = hilbert::chain_state(spec);
    return hilbert::expectation(state, hilbert::xx_operator(twisted) - hilbert::xx_operator(spec));
  }
  if (spec.thermodynamic_limit) return freefermion::twist_energy_density(spec, theta);
  if (spec.temperature == 0.0)
    return freefermion::ring_ground_state(twisted).energy - freefermion::ring_ground_state(spec).energy;
  // -J sum_b [(e^{i theta} - 1) <s+_i s-_j> + c.c.]
  const std::complex<double> phase = std::polar(1.0, theta) - 1.0;
  double total = 0.0;
  for (const auto& g : freefermion::bond_hoppings(spec)) total += -2.0 * spec.coupling_j * (phase * g).real();
  return total;
}

CurvatureResult superfluid_fraction_curvature(const SpinChainSpec& spec, double theta, Solver solver) {
  spec.validate();
  if (!spec.thermodynamic_limit && spec.boundary == Boundary::open)
    throw ValidationError("twist is gauge-trivial on open chains");
  if (!(theta > 0.0) || theta > kMaxTheta)
    throw ValidationError("twist angle must lie in (0, 1e-2] to stay in the quadratic regime");
  const double sites = spec.thermodynamic_limit ? 1.0 : static_cast<double>(spec.n_sites);
  auto fraction = [&](double t) { return twist_energy(spec, t, solver) / (spec.coupling_j * sites * t * t); };
  CurvatureResult out;
  out.theta = theta;
  out.value = fraction(theta);
  out.half_theta_value = fraction(0.5 * theta);
  const double scale = std::max(std::abs(out.value), std::abs(out.half_theta_value));
  out.relative_change = scale > 0.0 ? std::abs(out.value - out.half_theta_value) / scale : 0.0;
  const bool negligible = std::abs(out.value) <= 1e-10 && std::abs(out.half_theta_value) <= 1e-10;
  if (!negligible && out.relative_change > kRichardsonTolerance)
    throw NumericError("twist energy is not quadratic: f_s(theta) = " + std::to_string(out.value) +
                       ", f_s(theta/2) = " + std::to_string(out.half_theta_value) +
                       " (degenerate or level-crossing ground state?)");
  return out;
}

double superfluid_fraction_kinetic(const CorrelatorSet& c) {
  if (!std::isfinite(c.xx_nn) || !std::isfinite(c.yy_nn)) throw ValidationError("correlator set is incomplete");
  return 0.5 * std::abs(c.xx_nn + c.yy_nn);
}

double superfluid_current(const SpinChainSpec& spec, Solver solver) {
  spec.validate();
  require_finite_chain(spec, solver);
  if (solver == Solver::exact_diag)
    return hilbert::expectation(hilbert::chain_state(spec), hilbert::current_operator(spec.n_sites, spec.boundary));
  if (spec.thermodynamic_limit) return 2.0 * freefermion::ChainState(spec, 1).hopping(0, 1).imag();
  double total = 0.0;
  for (const auto& g : freefermion::bond_hoppings(spec)) total += 2.0 * g.imag();
  return total;
}

Criticality criticality_check(const SpinChainSpec& spec, Solver solver) {
  const double bond = superfluid_fraction_kinetic(correlators(spec, solver));
  Criticality out;
  out.margin = bond - kCriticalTolerance;
  out.critical = out.margin > 0.0;
  out.below_critical_mu = spec.chem_potential < spec.coupling_j;
  return out;
}

SuperfluidReport superfluid_report(const SpinChainSpec& spec, Solver solver, double theta) {
  SuperfluidReport r;
  r.solver = solver;
  const CorrelatorSet c = correlators(spec, solver);
  r.fs_kinetic = superfluid_fraction_kinetic(c);
  r.criticality.margin = r.fs_kinetic - kCriticalTolerance;
  r.criticality.critical = r.criticality.margin > 0.0;
  r.criticality.below_critical_mu = spec.chem_potential < spec.coupling_j;
  r.bridge_ratio = std::numeric_limits<double>::quiet_NaN();
  if (spec.thermodynamic_limit || spec.boundary == Boundary::periodic) {
    const CurvatureResult curv = superfluid_fraction_curvature(spec, theta, solver);
    r.fs_curvature = curv.value;
    r.theta = curv.theta;
    r.fs_curvature_half_theta = curv.half_theta_value;
    r.richardson_change = curv.relative_change;
    if (curv.value != 0.0) r.bridge_ratio = r.fs_kinetic / curv.value;
  }
  r.current = superfluid_current(spec, solver);
  return r;
}

}  // namespace xxcrit::superfluid
