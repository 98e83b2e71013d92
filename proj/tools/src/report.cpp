#include "solvint/cli/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <stdexcept>

namespace solvint::cli {

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("table " + name + ": row width does not match the header");
  rows.push_back(std::move(row));
}

Table& Report::table(std::string name, std::vector<std::string> columns) {
  tables.push_back({std::move(name), std::move(columns), {}});
  return tables.back();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\n";
}

}  // namespace

std::string to_csv(const Report& r) {
  std::string out = "# command: " + r.command + "\n# digest: " + r.digest + "\n# status: " +
                    std::to_string(r.status()) + "\n";
  for (const auto& t : r.tables) {
    out += "\n# table: " + t.name + "\n" + csv_line(t.columns);
    for (const auto& row : t.rows) out += csv_line(row);
  }
  if (!r.failures.empty()) {
    out += "\n# table: failures\nassertion\n";
    for (const auto& f : r.failures) out += csv_line({f});
  }
  return out;
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["digest"] = r.digest;
  j["status"] = r.status();
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) {
    nlohmann::ordered_json tj;
    tj["name"] = t.name;
    tj["columns"] = t.columns;
    tj["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json rj;
      for (std::size_t i = 0; i < row.size(); ++i) rj[t.columns[i]] = row[i];
      tj["rows"].push_back(std::move(rj));
    }
    j["tables"].push_back(std::move(tj));
  }
  j["failures"] = r.failures;
  return j.dump(2) + "\n";
}

}  // namespace solvint::cli
