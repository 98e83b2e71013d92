#pragma once

// Group specifications: a JSON document naming one group (or a built-in corpus).
//
//   {"kind": "sdp", "p": 5, "k": 1, "t": 1, "h": [[[2]]]}
//   {"kind": "tower", "n": 2, "strict": false}            or "primes": [3, 5]
//   {"kind": "oracle-table", "name": "C2", "table": [[0, 1], [1, 0]]}
//   {"kind": "corpus", "set": "solvable" | "primitive" | "sdp-pool"}

#include <memory>
#include <optional>
#include <string>

#include "solvint/errors.hpp"
#include "solvint/groups.hpp"
#include "solvint/sdp.hpp"
#include "solvint/tower.hpp"

namespace solvint::cli {

/// Raised for documents that do not match the schema.
class SchemaError : public MalformedInput {
 public:
  using MalformedInput::MalformedInput;
};

struct GroupSpec {
  std::string kind;
  std::string name;
  std::string canonical;  // compact JSON with sorted keys
  std::optional<sdp::SdGroup> sdp;
  std::optional<tower::TowerPrimes> tower;
  std::shared_ptr<const groups::OracleGroup> table;
  std::string corpus_set;
};

/// Parses and re-validates every invariant the kind carries.
GroupSpec parse_spec(const std::string& text);
GroupSpec load_spec(const std::string& path);

/// The single group a spec names, as an oracle. Throws SchemaError for corpus specs.
std::shared_ptr<const groups::OracleGroup> oracle_of(const GroupSpec& spec, std::size_t order_cap);

}  // namespace solvint::cli
