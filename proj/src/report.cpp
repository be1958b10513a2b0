#include "ccl/report.hpp"

#include <fftw3.h>
#include <fmt/format.h>
#include <gmp.h>

#include <Eigen/Core>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ccl/errors.hpp"
#include "ccl/version.hpp"

namespace ccl {

namespace {

void check_finite(double v, const std::string& where) {
  if (!std::isfinite(v)) throw ContractError("report: non-finite value in " + where);
}

void check_json(const Json& j, const std::string& where) {
  if (j.is_number_float()) check_finite(j.get<double>(), where);
  if (j.is_structured())
    for (const auto& [key, value] : j.items()) check_json(value, where + "." + key);
}

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

ReportFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? ReportFormat::Csv : ReportFormat::Json;
}

std::string to_json(const Report& report) {
  if (report.empty()) return "{}\n";
  Json j = Json::object();
  check_json(report.config, "config");
  j["config"] = report.config;
  Json results = Json::object();
  for (const auto& [k, v] : report.results) {
    check_finite(v, "results." + k);
    results[k] = v;
  }
  j["results"] = results;
  if (!report.table.empty()) {
    Json rows = Json::array();
    for (const auto& row : report.table.rows) {
      require(row.size() == report.table.columns.size(), "report: table row width differs from header");
      Json r = Json::array();
      for (const auto& c : row) {
        if (const auto* d = std::get_if<double>(&c)) {
          check_finite(*d, "table");
          r.push_back(*d);
        } else {
          r.push_back(std::get<std::string>(c));
        }
      }
      rows.push_back(std::move(r));
    }
    j["table"] = {{"columns", report.table.columns}, {"rows", rows}};
  }
  check_json(report.provenance, "provenance");
  j["provenance"] = report.provenance;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ContractError(std::string("report: invalid JSON: ") + e.what());
  }
  require(j.is_object(), "report: top level must be an object");
  Report r;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") {
      r.config = value;
    } else if (key == "results") {
      for (const auto& [k, v] : value.items()) {
        require(v.is_number(), "report: result '" + k + "' is not a number");
        r.results[k] = v.get<double>();
      }
    } else if (key == "table") {
      r.table.columns = value.at("columns").get<std::vector<std::string>>();
      for (const auto& row : value.at("rows")) {
        std::vector<Cell> cells;
        for (const auto& c : row) {
          if (c.is_string()) cells.emplace_back(c.get<std::string>());
          else cells.emplace_back(c.get<double>());
        }
        r.table.rows.push_back(std::move(cells));
      }
    } else if (key == "provenance") {
      r.provenance = value;
    } else {
      throw ContractError("report: unknown key '" + key + "'");
    }
  }
  return r;
}

std::string to_csv(const Report& report) {
  // Results are validated even when only the table is written.
  for (const auto& [k, v] : report.results) check_finite(v, "results." + k);
  std::string out;
  if (!report.table.columns.empty()) {
    for (std::size_t i = 0; i < report.table.columns.size(); ++i)
      out += (i ? "," : "") + report.table.columns[i];
    out += "\n";
    for (const auto& row : report.table.rows) {
      require(row.size() == report.table.columns.size(), "report: table row width differs from header");
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (const auto* d = std::get_if<double>(&row[i])) check_finite(*d, "table");
        out += (i ? "," : "") + csv_cell(row[i]);
      }
      out += "\n";
    }
    return out;
  }
  out = "name,value\n";
  for (const auto& [k, v] : report.results) out += k + "," + number(v) + "\n";
  return out;
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  std::string text = format == ReportFormat::Csv ? to_csv(report) : to_json(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("report: write to " + path.string() + " failed");
}

void write_report(const Report& report, const std::filesystem::path& path) {
  write_report(report, path, format_for(path));
}

Report read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("report: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return report_from_json(buffer.str());
}

Json provenance(const std::string& command, const Json& seed) {
  Json p = Json::object();
  p["tool"] = "ccl";
  p["version"] = kVersion;
  p["command"] = command;
  if (!seed.is_null()) p["seed"] = seed;
  Json libs = Json::object();
  libs["gmp"] = std::string(gmp_version);
  libs["fftw"] = std::string(fftw_version);
  libs["eigen"] = fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
  libs["fmt"] = fmt::format("{}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100, FMT_VERSION % 100);
  p["libraries"] = libs;
  return p;
}

}  // namespace ccl
