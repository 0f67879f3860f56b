#pragma once

// Serialization of sweep tables and reports. JSON documents carry a
// schema_version; CSV follows RFC 4180 quoting.

#include <string>

#include <json.hpp>

#include "xxcrit/cli/sweep.hpp"
#include "xxcrit/correlators.hpp"
#include "xxcrit/dim2.hpp"
#include "xxcrit/entanglement.hpp"
#include "xxcrit/order.hpp"
#include "xxcrit/physunits.hpp"
#include "xxcrit/superfluid.hpp"

namespace xxcrit::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Adds schema_version and kind ahead of the payload.
json envelope(const std::string& kind, const json& payload);

json to_json(const SpinChainSpec& spec);
json to_json(const CorrelatorSet& c);
json to_json(const superfluid::SuperfluidReport& r);
json to_json(const entanglement::WitnessReport& w);
json to_json(const physunits::ExperimentReport& r);
json to_json(const order::DecayProfile& p);
json to_json(const SweepTable& t);
SweepTable sweep_table_from_json(const json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
/// Splits CSV text into records; handles quoted fields with commas, quotes and newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string sweep_csv(const SweepTable& t);
SweepTable sweep_table_from_csv(const std::string& text);
std::string profile_csv(const order::DecayProfile& p);

/// Human-readable experiment summary.
std::string experiment_text(const physunits::ExperimentReport& r);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Writes the file or throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace xxcrit::cli
