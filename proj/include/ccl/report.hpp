#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace ccl {

using Json = nlohmann::ordered_json;

// Table cells are numbers or verbatim strings (exact integers wider than a double).
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool empty() const { return columns.empty() && rows.empty(); }
  bool operator==(const Table&) const = default;
};

// Serialized as {config, results, table, provenance}; an empty report is {}.
struct Report {
  Json config = Json::object();
  std::map<std::string, double> results;
  Table table;
  Json provenance = Json::object();

  bool empty() const { return config.empty() && results.empty() && table.empty() && provenance.empty(); }
  bool operator==(const Report&) const = default;
};

enum class ReportFormat { Csv, Json };

// .csv selects CSV, anything else JSON.
ReportFormat format_for(const std::filesystem::path& path);

// NaN or infinity anywhere raises ContractError.
std::string to_json(const Report& report);
Report report_from_json(const std::string& text);

// The table with its header; without a table, a name,value listing of results.
// Numbers use 17 significant digits.
std::string to_csv(const Report& report);

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);
void write_report(const Report& report, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);

// Tool name, version and linked library versions; seed when given.
Json provenance(const std::string& command, const Json& seed = nullptr);

}  // namespace ccl
