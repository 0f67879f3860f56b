#include "xxcrit/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "xxcrit/entanglement.hpp"
#include "xxcrit/errors.hpp"
#include "xxcrit/superfluid.hpp"

namespace xxcrit::cli {

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::mu: return "mu";
    case SweepParameter::temperature: return "temperature";
    case SweepParameter::theta: return "theta";
    case SweepParameter::j_perp: return "j_perp";
  }
  return "unknown";
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::fs_kinetic: return "fs_kinetic";
    case Observable::fs_curvature: return "fs_curvature";
    case Observable::entropy: return "entropy";
    case Observable::concurrence: return "concurrence";
    case Observable::correlators: return "correlators";
    case Observable::witnesses: return "witnesses";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

SweepParameter sweep_parameter_from_string(const std::string& s) {
  for (auto p : {SweepParameter::mu, SweepParameter::temperature, SweepParameter::theta, SweepParameter::j_perp})
    if (to_string(p) == s) return p;
  throw ValidationError("unknown sweep parameter '" + s + "' (expected mu|temperature|theta|j_perp)");
}

Observable observable_from_string(const std::string& s) {
  for (auto o : {Observable::fs_kinetic, Observable::fs_curvature, Observable::entropy, Observable::concurrence,
                 Observable::correlators, Observable::witnesses})
    if (to_string(o) == s) return o;
  throw ValidationError("unknown observable '" + s + "'");
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ValidationError("unknown output format '" + s + "' (expected csv|json)");
}

void SweepConfig::validate() const {
  if (observables.empty()) throw ValidationError("a sweep needs at least one observable");
  if (values.empty()) {
    if (steps < 2) throw ValidationError("a sweep needs steps >= 2");
    if (!(from < to)) throw ValidationError("sweep range needs from < to");
  }
  for (double v : grid())
    if (!std::isfinite(v)) throw ValidationError("sweep grid values must be finite");
  if (parameter == SweepParameter::j_perp) {
    plane.validate();
  } else {
    chain.validate();
    if (solver == Solver::exact_diag && chain.thermodynamic_limit)
      throw ValidationError("exact diagonalization needs a finite chain");
  }
}

std::vector<double> SweepConfig::grid() const {
  if (!values.empty()) return values;
  std::vector<double> g;
  for (int i = 0; i < steps; ++i) g.push_back(i == steps - 1 ? to : from + (to - from) * i / (steps - 1));
  return g;
}

namespace {

std::vector<std::string> columns_for(Observable o, SweepParameter p) {
  if (p == SweepParameter::j_perp) {
    if (o == Observable::witnesses) return {"u_density", "energy_2d_margin"};
    return {to_string(o)};
  }
  switch (o) {
    case Observable::fs_kinetic: return {"fs_kinetic"};
    case Observable::fs_curvature: return {"fs_curvature"};
    case Observable::entropy: return {"entropy_nats", "entropy_bits"};
    case Observable::concurrence: return {"concurrence", "concurrence_u1"};
    case Observable::correlators: return {"xx_nn", "yy_nn", "zz_nn", "z_single"};
    case Observable::witnesses: return {"fs_half_margin", "mu_T_disc_margin", "energy_1d_margin"};
  }
  return {};
}

void fill(SweepRow& row, const std::vector<std::string>& cols, const std::function<std::vector<double>()>& compute) {
  try {
    const std::vector<double> v = compute();
    for (std::size_t i = 0; i < cols.size(); ++i) row.cells[cols[i]] = {v[i], ""};
  } catch (const Error& e) {
    for (const auto& c : cols) row.cells[c] = {std::nullopt, e.what()};
    if (!row.failed) row.error = e.what();
    row.failed = true;
  }
}

SweepRow evaluate(const SweepConfig& cfg, int index, double x) {
  SweepRow row;
  row.index = index;
  row.parameter = x;
  SpinChainSpec spec = cfg.chain;
  dim2::Dim2Spec plane = cfg.plane;
  double theta = cfg.theta;
  switch (cfg.parameter) {
    case SweepParameter::mu: spec.chem_potential = x; break;
    case SweepParameter::temperature: spec.temperature = x; break;
    case SweepParameter::theta: theta = x; break;
    case SweepParameter::j_perp: plane.j_perp = x; break;
  }
  if (cfg.parameter == SweepParameter::j_perp) {
    for (Observable o : cfg.observables) {
      const auto cols = columns_for(o, cfg.parameter);
      if (o != Observable::witnesses) {
        for (const auto& c : cols) row.cells[c] = {std::nullopt, "defined for the chain only"};
        continue;
      }
      fill(row, cols, [&] {
        const double u = dim2::energy_density_2d(plane);
        return std::vector<double>{u, dim2::witness_energy_2d(u, plane).margin};
      });
    }
    return row;
  }
  std::optional<CorrelatorSet> corr;
  auto correlators = [&]() -> const CorrelatorSet& {
    if (!corr) corr = superfluid::correlators(spec, cfg.solver);
    return *corr;
  };
  for (Observable o : cfg.observables) {
    const auto cols = columns_for(o, cfg.parameter);
    fill(row, cols, [&]() -> std::vector<double> {
      switch (o) {
        case Observable::fs_kinetic: return {superfluid::superfluid_fraction_kinetic(correlators())};
        case Observable::fs_curvature:
          return {superfluid::superfluid_fraction_curvature(spec, theta, cfg.solver).value};
        case Observable::entropy: {
          const double s = entanglement::single_site_entropy(correlators().z_single);
          return {s, entanglement::nats_to_bits(s)};
        }
        case Observable::concurrence:
          return {entanglement::concurrence_nn(correlators()), entanglement::concurrence_u1(correlators())};
        case Observable::correlators: {
          const CorrelatorSet& c = correlators();
          return {c.xx_nn, c.yy_nn, c.zz_nn, c.z_single};
        }
        case Observable::witnesses: {
          const CorrelatorSet& c = correlators();
          return {entanglement::witness_superfluid(superfluid::superfluid_fraction_kinetic(c)).margin,
                  entanglement::witness_high_temperature(spec.chem_potential, spec.temperature, spec.coupling_j).margin,
                  entanglement::witness_energy_1d(-spec.coupling_j * c.xx_nn, spec.coupling_j).margin};
        }
      }
      return {};
    });
  }
  return row;
}

}  // namespace

std::vector<std::string> sweep_columns(const SweepConfig& config) {
  std::vector<std::string> out;
  for (Observable o : config.observables)
    for (auto& c : columns_for(o, config.parameter))
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("XXCRIT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> grid = config.grid();
  SweepTable table;
  table.parameter = to_string(config.parameter);
  table.columns = sweep_columns(config);
  table.rows.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++)
      table.rows[i] = evaluate(config, static_cast<int>(i), grid[i]);
  };
  const int workers = std::min<int>(thread_count(), static_cast<int>(grid.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return table;
}

}  // namespace xxcrit::cli
