#include "xxcrit/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xxcrit/errors.hpp"

namespace xxcrit::cli {

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

json pairs_object(const std::vector<std::pair<std::string, double>>& items) {
  json o = json::object();
  for (const auto& [k, v] : items) o[k] = number_or_null(v);
  return o;
}

json energy_json(const physunits::Energy& e) {
  return {{"joules", e.joules}, {"hertz", e.hertz}, {"rad_per_s", e.rad_per_s}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json envelope(const std::string& kind, const json& payload) {
  json out = {{"schema_version", kSchemaVersion}, {"kind", kind}};
  for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
  return out;
}

json to_json(const SpinChainSpec& s) {
  json out = {{"coupling_j", s.coupling_j},
              {"chem_potential", s.chem_potential},
              {"twist_per_bond", s.twist_per_bond},
              {"temperature", s.temperature},
              {"thermodynamic_limit", s.thermodynamic_limit}};
  if (!s.thermodynamic_limit) {
    out["n_sites"] = s.n_sites;
    out["boundary"] = to_string(s.boundary);
  }
  return out;
}

json to_json(const CorrelatorSet& c) {
  json profile = json::array();
  for (auto [r, v] : c.transverse_profile) profile.push_back({{"r", r}, {"value", v}});
  return {{"source", to_string(c.source)},
          {"temperature", c.temperature},
          {"mu_over_j", c.mu_over_j},
          {"xx_nn", c.xx_nn},
          {"yy_nn", c.yy_nn},
          {"zz_nn", c.zz_nn},
          {"z_single", c.z_single},
          {"transverse_profile", profile}};
}

json to_json(const superfluid::SuperfluidReport& r) {
  return {{"solver", to_string(r.solver)},
          {"fs_kinetic", r.fs_kinetic},
          {"fs_curvature", r.fs_curvature},
          {"theta", r.theta},
          {"fs_curvature_half_theta", r.fs_curvature_half_theta},
          {"richardson_relative_change", r.richardson_change},
          {"bridge_ratio", number_or_null(r.bridge_ratio)},
          {"current", r.current},
          {"critical", r.criticality.critical},
          {"critical_margin", r.criticality.margin},
          {"mu_below_j", r.criticality.below_critical_mu}};
}

json to_json(const entanglement::WitnessReport& w) {
  json out = {{"witness", entanglement::to_string(w.name)},
              {"fired", w.fired},
              {"margin", w.margin},
              {"inputs", pairs_object(w.inputs)},
              {"caveat", w.caveat}};
  if (!w.convention.empty()) out["convention"] = w.convention;
  return out;
}

json to_json(const physunits::ExperimentReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json item = {{"name", c.name},
                 {"inequality", c.inequality},
                 {"left_si", c.left_si},
                 {"right_si", c.right_si},
                 {"si_unit", c.si_unit},
                 {"left_lattice", c.left_lattice},
                 {"right_lattice", c.right_lattice},
                 {"verdict", c.verdict ? json(*c.verdict ? "fired" : "not_fired") : json("not_evaluable")},
                 {"claimed", c.claimed ? json(*c.claimed) : json(nullptr)},
                 {"discrepancy", c.discrepancy}};
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(item);
  }
  const auto& p = r.params;
  return {{"inputs",
           {{"mass_kg", p.mass_kg},
            {"healing_length_m", p.healing_length_m},
            {"temperature_k", p.temperature_k},
            {"mu_frequency_hz", p.mu_frequency_hz},
            {"density_2d", optional_number(p.density_2d)},
            {"scattering_length", optional_number(p.scattering_length)},
            {"layer_thickness", optional_number(p.layer_thickness)}}},
          {"j", energy_json(r.j)},
          {"mu", energy_json(r.mu)},
          {"thermal_energy", energy_json(r.thermal)},
          {"mu_over_j", r.mu_over_j},
          {"temperature_over_j", r.temperature_over_j},
          {"thermal_wavelength_m", optional_number(r.thermal_wavelength_m)},
          {"thermal_wavelength_formula", r.thermal_wavelength_formula},
          {"quoted_thermal_wavelength_m", optional_number(p.quoted_thermal_wavelength_m)},
          {"healing_length_m", r.healing_length_m},
          {"derived_healing_length_m", optional_number(r.derived_healing_length_m)},
          {"single_site_entropy",
           {{"z_expectation", r.entropy.z_expectation},
            {"nats", r.entropy.entropy},
            {"bits", entanglement::nats_to_bits(r.entropy.entropy)},
            {"saturated", r.entropy.saturated}}},
          {"checks", checks},
          {"constants", pairs_object(r.constants)}};
}

json to_json(const order::DecayProfile& p) {
  json points = json::array();
  for (auto [r, v] : p.points) points.push_back({{"r", r}, {"value", v}});
  return {{"classification", order::to_string(p.classification)},
          {"zero_signal", p.zero_signal},
          {"fit_poly", {{"exponent", p.fit_poly.rate}, {"amplitude", p.fit_poly.amplitude}, {"residual", p.fit_poly.residual}}},
          {"fit_exp", {{"rate", p.fit_exp.rate}, {"amplitude", p.fit_exp.amplitude}, {"residual", p.fit_exp.residual}}},
          {"points", points}};
}

json to_json(const SweepTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json values = json::object(), reasons = json::object();
    for (const auto& col : t.columns) {
      const auto it = row.cells.find(col);
      if (it == row.cells.end()) continue;
      values[col] = it->second.value ? json(*it->second.value) : json(nullptr);
      if (!it->second.value) reasons[col] = it->second.reason;
    }
    rows.push_back({{"index", row.index},
                    {"parameter", row.parameter},
                    {"values", values},
                    {"null_reasons", reasons},
                    {"failed", row.failed},
                    {"error", row.error}});
  }
  return {{"parameter", t.parameter}, {"columns", t.columns}, {"rows", rows}};
}

SweepTable sweep_table_from_json(const json& j) {
  SweepTable t;
  t.parameter = j.at("parameter").get<std::string>();
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    SweepRow row;
    row.index = r.at("index").get<int>();
    row.parameter = r.at("parameter").get<double>();
    row.failed = r.at("failed").get<bool>();
    row.error = r.at("error").get<std::string>();
    for (auto it = r.at("values").begin(); it != r.at("values").end(); ++it) {
      Cell c;
      if (!it.value().is_null()) c.value = it.value().get<double>();
      if (r.at("null_reasons").contains(it.key())) c.reason = r.at("null_reasons").at(it.key()).get<std::string>();
      row.cells[it.key()] = c;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw ValidationError("unterminated quoted CSV field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string sweep_csv(const SweepTable& t) {
  // Null cells are empty; their reasons travel in the notes column as a JSON object.
  std::ostringstream out;
  out << "index," << csv_field(t.parameter);
  for (const auto& c : t.columns) out << ',' << csv_field(c);
  out << ",failed,error,notes\r\n";
  for (const auto& row : t.rows) {
    out << row.index << ',' << format_double(row.parameter);
    json notes = json::object();
    for (const auto& c : t.columns) {
      out << ',';
      const auto it = row.cells.find(c);
      if (it == row.cells.end()) continue;
      if (it->second.value)
        out << format_double(*it->second.value);
      else
        notes[c] = it->second.reason;
    }
    out << ',' << (row.failed ? "true" : "false") << ',' << csv_field(row.error) << ','
        << csv_field(notes.empty() ? "" : notes.dump()) << "\r\n";
  }
  return out.str();
}

SweepTable sweep_table_from_csv(const std::string& text) {
  const auto records = parse_csv(text);
  if (records.empty() || records[0].size() < 5) throw ValidationError("sweep CSV lacks a header");
  const auto& header = records[0];
  SweepTable t;
  t.parameter = header[1];
  t.columns.assign(header.begin() + 2, header.end() - 3);
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ValidationError("bad number '" + s + "'");
    return v;
  };
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.size() != header.size()) throw ValidationError("CSV record width does not match the header");
    SweepRow row;
    row.index = std::stoi(rec[0]);
    row.parameter = to_double(rec[1]);
    const std::size_t tail = header.size() - 3;
    row.failed = rec[tail] == "true";
    row.error = rec[tail + 1];
    const json notes = rec[tail + 2].empty() ? json::object() : json::parse(rec[tail + 2]);
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const std::string& name = t.columns[c];
      const std::string& field = rec[c + 2];
      if (!field.empty())
        row.cells[name] = {to_double(field), ""};
      else if (notes.contains(name))
        row.cells[name] = {std::nullopt, notes.at(name).get<std::string>()};
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string profile_csv(const order::DecayProfile& p) {
  std::ostringstream out;
  out << "r,value\r\n";
  for (auto [r, v] : p.points) out << r << ',' << format_double(v) << "\r\n";
  return out.str();
}

std::string experiment_text(const physunits::ExperimentReport& r) {
  std::ostringstream out;
  out.precision(6);
  out << "J = " << r.j.joules << " J  (J/h = " << r.j.hertz << " Hz)\n";
  out << "mu/h = " << r.mu.hertz << " Hz, k_B T/h = " << r.thermal.hertz << " Hz\n";
  out << "mu/J = " << r.mu_over_j << ", T/J = " << r.temperature_over_j << "\n";
  if (r.thermal_wavelength_m) out << "lambda_T = " << *r.thermal_wavelength_m << " m  [" << r.thermal_wavelength_formula << "]\n";
  if (r.params.quoted_thermal_wavelength_m) out << "quoted lambda_T = " << *r.params.quoted_thermal_wavelength_m << " m\n";
  out << "a = " << r.healing_length_m << " m\n";
  for (const auto& c : r.checks) {
    out << c.name << ": " << c.inequality << "  " << c.left_si << " vs " << c.right_si << " " << c.si_unit << "  ("
        << c.left_lattice << " vs " << c.right_lattice << " lattice units)  -> "
        << (c.verdict ? (*c.verdict ? "fired" : "not fired") : "not evaluable");
    if (c.discrepancy) out << "  [differs from the claimed verdict]";
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << "single-site entropy: " << r.entropy.entropy << " nats" << (r.entropy.saturated ? " (saturated: |mu/J| >= 1)" : "")
      << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace xxcrit::cli
