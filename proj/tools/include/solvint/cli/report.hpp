#pragma once

// Tabular reports with CSV and JSON renderings. Output bytes depend only on
// the report contents.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace solvint::cli {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

struct Report {
  std::string command;
  std::string digest;  // FNV-1a 64 of the canonical input, hex
  std::vector<Table> tables;
  std::vector<std::string> failures;  // canonical descriptions of failed assertions

  Table& table(std::string name, std::vector<std::string> columns);
  int status() const { return failures.empty() ? 0 : 1; }
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

std::string to_csv(const Report& r);
std::string to_json(const Report& r);

}  // namespace solvint::cli
