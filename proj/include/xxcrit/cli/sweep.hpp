#pragma once

// Parameter sweeps: a grid over one parameter, a set of observables per grid
// point, evaluated in parallel and assembled in grid order.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xxcrit/dim2.hpp"
#include "xxcrit/spec.hpp"

namespace xxcrit::cli {

enum class SweepParameter { mu, temperature, theta, j_perp };
enum class Observable { fs_kinetic, fs_curvature, entropy, concurrence, correlators, witnesses };
enum class OutputFormat { csv, json };

std::string to_string(SweepParameter p);
std::string to_string(Observable o);
std::string to_string(OutputFormat f);
SweepParameter sweep_parameter_from_string(const std::string& s);
Observable observable_from_string(const std::string& s);
OutputFormat output_format_from_string(const std::string& s);

struct SweepConfig {
  SweepParameter parameter = SweepParameter::mu;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  /// Explicit grid; replaces from/to/steps when non-empty.
  std::vector<double> values;
  SpinChainSpec chain;
  dim2::Dim2Spec plane;
  std::vector<Observable> observables;
  Solver solver = Solver::free_fermion;
  /// Probe twist for fs_curvature (the swept value when parameter is theta).
  double theta = 1e-3;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;

  void validate() const;
  std::vector<double> grid() const;
};

struct Cell {
  std::optional<double> value;
  /// Why the value is missing.
  std::string reason;

  bool operator==(const Cell&) const = default;
};

struct SweepRow {
  int index = 0;
  double parameter = 0.0;
  std::map<std::string, Cell> cells;
  bool failed = false;
  std::string error;

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  std::string parameter;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;

  bool operator==(const SweepTable&) const = default;
};

/// Column names produced for the configured observables, in output order.
std::vector<std::string> sweep_columns(const SweepConfig& config);

/// Worker count: XXCRIT_THREADS when set to a positive integer, else the hardware concurrency.
int thread_count();

/// Per-point failures are recorded in the row and do not stop the sweep.
SweepTable run_sweep(const SweepConfig& config);

}  // namespace xxcrit::cli
