// Command-line front end. Exit codes: 0 success, 2 invalid input or resource
// guard, 3 I/O failure, 4 numerical failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xxcrit/cli/exit_codes.hpp"
#include "xxcrit/cli/report.hpp"
#include "xxcrit/cli/sweep.hpp"
#include "xxcrit/errors.hpp"
#include "xxcrit/freefermion.hpp"
#include "xxcrit/hilbert.hpp"

using namespace xxcrit;
using cli::json;

namespace {

constexpr int kAutoExactDiagMaxSites = 12;

struct ChainOptions {
  int n_sites = 10;
  double mu = 0.0;
  double temp = 0.0;
  double theta = 0.0;
  double j = 1.0;
  std::string boundary = "periodic";
  bool infinite = false;
  std::optional<std::string> solver;
  std::string out;
  std::string format = "json";
};

void add_chain_options(CLI::App* app, ChainOptions& o, const std::string& theta_help) {
  app->add_option("--n-sites", o.n_sites, "Number of sites")->capture_default_str();
  app->add_option("--mu", o.mu, "Chemical potential (units of energy)")->capture_default_str();
  app->add_option("--temp", o.temp, "Temperature (k_B = 1)")->capture_default_str();
  app->add_option("--theta", o.theta, theta_help);
  app->add_option("--j", o.j, "Hopping J")->capture_default_str();
  app->add_option("--boundary", o.boundary, "open|periodic")->capture_default_str();
  app->add_flag("--infinite", o.infinite, "Thermodynamic limit (free-fermion solver only)");
  app->add_option("--solver", o.solver, "exactdiag|freefermion (default: exactdiag for n <= 12)");
  app->add_option("--out", o.out, "Output file (default: stdout)");
  app->add_option("--format", o.format, "Output format")->capture_default_str();
}

SpinChainSpec chain_spec(const ChainOptions& o) {
  SpinChainSpec s;
  s.n_sites = o.n_sites;
  s.chem_potential = o.mu;
  s.temperature = o.temp;
  s.coupling_j = o.j;
  s.boundary = boundary_from_string(o.boundary);
  s.thermodynamic_limit = o.infinite;
  s.validate();
  return s;
}

Solver resolve_solver(const std::optional<std::string>& requested, const SpinChainSpec& spec) {
  if (!requested) {
    if (spec.thermodynamic_limit || spec.n_sites > kAutoExactDiagMaxSites) return Solver::free_fermion;
    return Solver::exact_diag;
  }
  const Solver s = solver_from_string(*requested);
  if (s == Solver::exact_diag && spec.thermodynamic_limit)
    throw ValidationError("exactdiag cannot treat the infinite chain");
  if (s == Solver::exact_diag && spec.n_sites > hilbert::kMaxSpinSites)
    throw ValidationError("exactdiag is limited to " + std::to_string(hilbert::kMaxSpinSites) + " sites; use freefermion");
  return s;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    cli::write_file(out, content);
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw ValidationError("unsupported --format '" + format + "' for this command");
}

json state_summary(const SpinChainSpec& spec, Solver solver, int r_max) {
  const CorrelatorSet c = superfluid::correlators(spec, solver, r_max);
  json out = {{"spec", cli::to_json(spec)}, {"solver", to_string(solver)}};
  if (spec.temperature == 0.0) {
    if (solver == Solver::exact_diag) {
      const auto state = hilbert::ground_state(hilbert::build_twisted_hamiltonian(spec));
      out["ground_energy"] = *state.energy;
      out["degeneracy"] = state.degeneracy;
    } else if (!spec.thermodynamic_limit) {
      const auto gs = freefermion::ring_ground_state(spec);
      out["ground_energy"] = gs.energy;
      out["particles"] = gs.particles;
      out["degenerate"] = gs.degenerate;
    }
  }
  const double bonds_per_site = (spec.thermodynamic_limit || spec.boundary == Boundary::periodic)
                                    ? 1.0
                                    : static_cast<double>(spec.n_sites - 1) / spec.n_sites;
  out["energy_per_site"] = -spec.coupling_j * c.xx_nn * bonds_per_site - spec.chem_potential * c.z_single;
  out["correlators"] = cli::to_json(c);
  const double s = entanglement::single_site_entropy(c.z_single);
  out["single_site_entropy"] = {{"nats", s}, {"bits", entanglement::nats_to_bits(s)}};
  out["concurrence"] = entanglement::concurrence_nn(c);
  out["concurrence_u1"] = entanglement::concurrence_u1(c);
  const double fs = superfluid::superfluid_fraction_kinetic(c);
  out["witnesses"] = json::array({cli::to_json(entanglement::witness_superfluid(fs)),
                                  cli::to_json(entanglement::witness_high_temperature(
                                      spec.chem_potential, spec.temperature, spec.coupling_j)),
                                  cli::to_json(entanglement::witness_energy_1d(-spec.coupling_j * c.xx_nn, spec.coupling_j))});
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"XX-chain superfluidity, order and entanglement toolkit"};
  app.require_subcommand(1);

  ChainOptions ground_o, thermal_o, corr_o, sf_o, sweep_o;
  auto* ground = app.add_subcommand("ground", "Ground-state correlators, entropy, concurrence and witnesses");
  add_chain_options(ground, ground_o, "Twist per bond");
  auto* thermal = app.add_subcommand("thermal", "Same quantities in the Gibbs state (requires --temp > 0)");
  add_chain_options(thermal, thermal_o, "Twist per bond");

  auto* corr = app.add_subcommand("correlators", "Correlator set and transverse decay profile");
  add_chain_options(corr, corr_o, "Twist per bond");
  int corr_rmax = 0;
  std::string profile_csv;
  corr->add_option("--r-max", corr_rmax, "Largest separation of the transverse profile (>= 8 adds a fit)");
  corr->add_option("--profile-csv", profile_csv, "Also write the profile as CSV (r,value)");

  auto* sf = app.add_subcommand("superfluid", "Superfluid fraction by both routes, current and criticality");
  add_chain_options(sf, sf_o, "Probe twist per bond for the curvature route (default 1e-3)");

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and tabulate observables");
  add_chain_options(sweep, sweep_o, "Probe twist for fs_curvature");
  std::string sweep_param = "mu", sweep_values, sweep_observables = "fs_kinetic,entropy";
  double sweep_from = 0.0, sweep_to = 1.0, sweep_jperp = 1.0, sweep_beta = 1.0;
  int sweep_steps = 11, sweep_points = 64;
  sweep->add_option("--param", sweep_param, "mu|temperature|theta|j_perp")->capture_default_str();
  sweep->add_option("--from", sweep_from)->capture_default_str();
  sweep->add_option("--to", sweep_to)->capture_default_str();
  sweep->add_option("--steps", sweep_steps)->capture_default_str();
  sweep->add_option("--values", sweep_values, "Explicit comma-separated grid (overrides --from/--to/--steps)");
  sweep->add_option("--observables", sweep_observables,
                    "Comma-separated: fs_kinetic,fs_curvature,entropy,concurrence,correlators,witnesses")
      ->capture_default_str();
  sweep->add_option("--j-perp", sweep_jperp, "J_perp for j_perp sweeps base")->capture_default_str();
  sweep->add_option("--beta", sweep_beta, "Inverse temperature for j_perp sweeps")->capture_default_str();
  sweep->add_option("--points", sweep_points, "Quadrature points per axis for j_perp sweeps")->capture_default_str();

  auto* d2 = app.add_subcommand("dim2", "Two-dimensional energy density and energy witness");
  double d2_j = 1.0, d2_jperp = 1.0;
  std::optional<double> d2_beta, d2_temp;
  int d2_points = 64;
  std::string d2_convention = "per_site", d2_out, d2_format = "json";
  d2->add_option("--j", d2_j)->capture_default_str();
  d2->add_option("--j-perp", d2_jperp)->capture_default_str();
  d2->add_option("--beta", d2_beta, "Inverse temperature");
  d2->add_option("--temp", d2_temp, "Temperature (alternative to --beta)");
  d2->add_option("--points", d2_points, "Gauss-Legendre points per axis and tile")->capture_default_str();
  d2->add_option("--convention", d2_convention, "per_site|per_bond_doubled")->capture_default_str();
  d2->add_option("--out", d2_out);
  d2->add_option("--format", d2_format)->capture_default_str();

  auto* ex = app.add_subcommand("experiment", "SI-unit experiment checks (defaults: Rb-87 reference inputs)");
  physunits::PhysicalParams params = physunits::reference_experiment();
  double mass_amu = 87.0;
  std::string ex_out, ex_format = "json";
  ex->add_option("--mass-amu", mass_amu, "Atomic mass in u")->capture_default_str();
  ex->add_option("--healing-length", params.healing_length_m, "Healing length a in m")->capture_default_str();
  ex->add_option("--temperature-k", params.temperature_k, "Temperature in K")->capture_default_str();
  ex->add_option("--mu-hz", params.mu_frequency_hz, "Chemical potential as mu/h in Hz")->capture_default_str();
  ex->add_option("--density-2d", params.density_2d, "Areal density in 1/m^2");
  ex->add_option("--scattering-length", params.scattering_length, "Scattering length in m");
  ex->add_option("--layer-thickness", params.layer_thickness, "Layer thickness in m");
  ex->add_option("--out", ex_out);
  ex->add_option("--format", ex_format, "json|text")->capture_default_str();

  auto* cx = app.add_subcommand("counterexamples", "GHZ and coherent-product states");
  std::vector<int> ghz_sizes{4, 8};
  double alpha = 0.5;
  int n_max = 6, coherent_sites = 4;
  std::string cx_out, cx_format = "json";
  cx->add_option("--n-sites", ghz_sizes, "GHZ sizes")->capture_default_str();
  cx->add_option("--alpha", alpha, "Coherent amplitude (real)")->capture_default_str();
  cx->add_option("--n-max", n_max, "Occupation cutoff")->capture_default_str();
  cx->add_option("--coherent-sites", coherent_sites)->capture_default_str();
  cx->add_option("--out", cx_out);
  cx->add_option("--format", cx_format)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (ground->parsed() || thermal->parsed()) {
    const ChainOptions& o = ground->parsed() ? ground_o : thermal_o;
    require_format(o.format, {"json"});
    SpinChainSpec spec = chain_spec(o);
    spec.twist_per_bond = o.theta;
    if (ground->parsed() && spec.temperature != 0.0) throw ValidationError("ground takes no --temp; use thermal");
    if (thermal->parsed() && !(spec.temperature > 0.0)) throw ValidationError("thermal needs --temp > 0");
    const Solver solver = resolve_solver(o.solver, spec);
    emit(o.out, cli::envelope(ground->parsed() ? "ground" : "thermal", state_summary(spec, solver, 0)).dump(2) + "\n");
  } else if (corr->parsed()) {
    require_format(corr_o.format, {"json"});
    SpinChainSpec spec = chain_spec(corr_o);
    spec.twist_per_bond = corr_o.theta;
    const Solver solver = resolve_solver(corr_o.solver, spec);
    json out = {{"spec", cli::to_json(spec)},
                {"correlators", cli::to_json(superfluid::correlators(spec, solver, corr_rmax))}};
    if (corr_rmax >= 8) {
      const auto profile = order::correlation_profile(spec, corr_rmax, solver);
      out["profile"] = cli::to_json(profile);
      if (!profile_csv.empty()) cli::write_file(profile_csv, cli::profile_csv(profile));
    } else if (!profile_csv.empty()) {
      throw ValidationError("--profile-csv needs --r-max >= 8");
    }
    emit(corr_o.out, cli::envelope("profile", out).dump(2) + "\n");
  } else if (sf->parsed()) {
    require_format(sf_o.format, {"json"});
    const SpinChainSpec spec = chain_spec(sf_o);
    const Solver solver = resolve_solver(sf_o.solver, spec);
    const double theta = sf->count("--theta") ? sf_o.theta : superfluid::kDefaultTheta;
    const auto report = superfluid::superfluid_report(spec, solver, theta);
    json out = {{"spec", cli::to_json(spec)},
                {"report", cli::to_json(report)},
                {"witness", cli::to_json(entanglement::witness_superfluid(report.fs_kinetic))}};
    emit(sf_o.out, cli::envelope("superfluid", out).dump(2) + "\n");
  } else if (sweep->parsed()) {
    cli::SweepConfig cfg;
    cfg.parameter = cli::sweep_parameter_from_string(sweep_param);
    cfg.from = sweep_from;
    cfg.to = sweep_to;
    cfg.steps = sweep_steps;
    for (const auto& v : split_list(sweep_values)) {
      try {
        cfg.values.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw ValidationError("bad --values entry '" + v + "'");
      }
    }
    for (const auto& name : split_list(sweep_observables)) cfg.observables.push_back(cli::observable_from_string(name));
    cfg.format = cli::output_format_from_string(sweep_o.format);
    cfg.output_path = sweep_o.out;
    if (cfg.parameter == cli::SweepParameter::j_perp) {
      cfg.plane.j_parallel = sweep_o.j;
      cfg.plane.j_perp = sweep_jperp;
      cfg.plane.beta = sweep_beta;
      cfg.plane.quadrature_points = sweep_points;
    } else {
      cfg.chain = chain_spec(sweep_o);
      cfg.solver = resolve_solver(sweep_o.solver, cfg.chain);
      if (sweep->count("--theta")) cfg.theta = sweep_o.theta;
    }
    const auto table = cli::run_sweep(cfg);
    emit(cfg.output_path, cfg.format == cli::OutputFormat::csv
                              ? cli::sweep_csv(table)
                              : cli::envelope("sweep", cli::to_json(table)).dump(2) + "\n");
  } else if (d2->parsed()) {
    require_format(d2_format, {"json"});
    if (d2_beta && d2_temp) throw ValidationError("give --beta or --temp, not both");
    dim2::Dim2Spec spec;
    spec.j_parallel = d2_j;
    spec.j_perp = d2_jperp;
    spec.quadrature_points = d2_points;
    if (d2_temp) {
      if (!(*d2_temp > 0.0)) throw ValidationError("--temp must be > 0");
      spec.beta = 1.0 / *d2_temp;
    } else if (d2_beta) {
      spec.beta = *d2_beta;
    }
    dim2::EnergyConvention conv;
    if (d2_convention == "per_site")
      conv = dim2::EnergyConvention::per_site;
    else if (d2_convention == "per_bond_doubled")
      conv = dim2::EnergyConvention::per_bond_doubled;
    else
      throw ValidationError("unknown --convention '" + d2_convention + "'");
    const double u = dim2::energy_density_2d(spec);
    const double asym = dim2::high_t_energy_density(spec);
    json out = {{"j_parallel", spec.j_parallel},
                {"j_perp", spec.j_perp},
                {"beta", spec.beta},
                {"quadrature_points", spec.quadrature_points},
                {"u_density", u},
                {"high_t_asymptote", {{"value", asym}, {"ratio", u / asym}, {"formula", "-beta (J^2 + J_perp^2) / 8"}}},
                {"high_t_entanglement_threshold", dim2::high_t_entanglement_threshold(spec)},
                {"witness", cli::to_json(dim2::witness_energy_2d(u, spec, conv))}};
    emit(d2_out, cli::envelope("dim2", out).dump(2) + "\n");
  } else if (ex->parsed()) {
    require_format(ex_format, {"json", "text"});
    params.mass_kg = physunits::mass_from_amu(mass_amu);
    const bool reference = !ex->count("--mass-amu") && !ex->count("--healing-length") &&
                           !ex->count("--temperature-k") && !ex->count("--mu-hz");
    if (!reference) {
      params.claimed_verdicts.clear();
      params.quoted_thermal_wavelength_m.reset();
    }
    const auto report = physunits::experiment_report(params);
    emit(ex_out, ex_format == "text" ? cli::experiment_text(report)
                                     : cli::envelope("experiment", cli::to_json(report)).dump(2) + "\n");
  } else if (cx->parsed()) {
    require_format(cx_format, {"json"});
    json ghz = json::array();
    for (int n : ghz_sizes) {
      const auto state = order::ghz_state(n);
      double max_corr = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          if (i != k)
            max_corr = std::max(max_corr, std::abs(hilbert::expectation_value(
                                              state, hilbert::sigma_plus(i) * hilbert::sigma_minus(k))));
      const int site[1] = {0};
      ghz.push_back({{"n_sites", n},
                     {"max_transverse_correlator", max_corr},
                     {"single_site_entropy", entanglement::subsystem_entropy(state, site)}});
    }
    const auto coh = order::coherent_product_state(alpha, coherent_sites, n_max);
    json odlro = json::array();
    for (int r = 1; r < coherent_sites; ++r)
      odlro.push_back({{"r", r},
                       {"value", hilbert::expectation_value(coh, hilbert::sigma_plus(0) * hilbert::sigma_minus(r)).real()}});
    const auto cuts = entanglement::bipartition_entropies(coh);
    json out = {{"ghz", ghz},
                {"coherent_product",
                 {{"alpha", alpha},
                  {"n_sites", coherent_sites},
                  {"n_max", n_max},
                  {"truncation_weight", order::coherent_truncation_weight(alpha, n_max)},
                  {"off_diagonal_correlators", odlro},
                  {"cut_entropies", cuts}}}};
    emit(cx_out, cli::envelope("counterexamples", out).dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    const int code = xxcrit::cli::exit_code(e);
    std::cerr << (code == xxcrit::cli::kExitNumeric ? "numerical failure: " : "error: ") << e.what() << "\n";
    return code;
  }
}
