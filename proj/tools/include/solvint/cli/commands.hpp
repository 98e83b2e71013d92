#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "solvint/cli/report.hpp"
#include "solvint/cli/spec.hpp"

namespace solvint::cli {

enum ExitCode : int { kOk = 0, kAssertionFailure = 1, kSchemaError = 2, kResourceCap = 3 };

struct Options {
  std::string command;    // analyze | verify | counts
  std::string spec_path;
  std::string spec_text;  // used when spec_path is empty
  std::string suite;
  std::uint64_t seed = 0x5eed;
  std::size_t cap_order = groups::kDefaultOrderCap;
  std::string format;     // csv | json; empty picks json for analyze/verify and csv for counts
  bool strict_tower = false;
  std::size_t n_min = 2;
  std::size_t n_max = 3;
  std::size_t cases = 1000;
};

Report cmd_analyze(const GroupSpec& spec, const Options& opt);
/// Suites: thuno, due, propo, fittingamma, mobius, interKM, impor, possibile, tower.
Report cmd_verify(const GroupSpec& spec, const Options& opt);
Report cmd_counts(const Options& opt);

/// Runs one command, writes the rendered report to `out` and a single
/// "error: <reason> <message>" line to `err` on failure. Returns the exit code.
int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace solvint::cli
