#include "levgas/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace levgas {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int CsvTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const std::vector<double>& CsvTable::at(const std::string& name) const {
  const int idx = find(name);
  if (idx < 0) throw SchemaMismatch("csv: missing column \"" + name + "\"");
  return columns[static_cast<std::size_t>(idx)];
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const int n = traj.dim;
  out << "t,lambda";
  for (int i = 0; i < n; ++i) out << ",x_" << i;
  for (int i = 0; i < n; ++i) out << ",occ_" << i;
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      out << ",re_coh_" << u << "_" << w << ",im_coh_" << u << "_" << w;
    }
  }
  out << ",purity,trace_err\n";
  for (const TrajectorySample& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.lambda);
    for (int i = 0; i < n; ++i) out << ',' << format_double(s.x[i]);
    for (int i = 0; i < n; ++i) out << ',' << format_double(s.occupations[i]);
    for (int p = 0; p < s.coherences.size(); ++p) {
      out << ',' << format_double(s.coherences[p].real()) << ','
          << format_double(s.coherences[p].imag());
    }
    out << ',' << format_double(s.purity) << ',' << format_double(s.trace_error) << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_trajectory_csv(traj, out);
  if (!out) throw IoError("write failed: " + path);
}

void write_trajectory_metadata(const Trajectory& traj, const std::string& path) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(traj.metadata.config_json);
  j["seed"] = traj.metadata.seed;
  j["config_hash"] = traj.metadata.config_hash;
  j["sign_convention"] = traj.metadata.sign_convention;
  j["integrator"] = traj.metadata.integrator;
  j["dt"] = traj.metadata.dt;
  j["stride"] = traj.metadata.stride;
  j["j_value"] = traj.metadata.j_value;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

CsvTable read_csv_text(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw SchemaMismatch("csv: missing header row");
  }
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) {
    table.header.push_back(cell);
  }
  table.columns.assign(table.header.size(), {});
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::size_t col = 0;
    while (std::getline(fields, cell, ',')) {
      if (col >= table.header.size()) {
        throw SchemaMismatch("csv: row " + std::to_string(row) + " has extra fields");
      }
      try {
        table.columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaMismatch("csv: non-numeric cell \"" + cell + "\" at row " +
                             std::to_string(row));
      }
      ++col;
    }
    if (col != table.header.size()) {
      throw SchemaMismatch("csv: row " + std::to_string(row) + " has " +
                           std::to_string(col) + " fields, expected " +
                           std::to_string(table.header.size()));
    }
    ++row;
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open csv: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return read_csv_text(buf.str());
}

}  // namespace levgas
