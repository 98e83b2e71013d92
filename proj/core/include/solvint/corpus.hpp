#pragma once

// Curated solvable groups for the property suites.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solvint/groups.hpp"
#include "solvint/sdp.hpp"

namespace solvint::corpus {

struct Entry {
  std::string name;
  std::shared_ptr<const groups::OracleGroup> group;
  /// Set when the group is a primitive V ⋊ H (t = 1).
  std::optional<sdp::SdGroup> primitive;
};

/// Solvable groups of order at most 200, in a fixed order.
std::vector<Entry> solvable_corpus();
/// Primitive solvable groups V ⋊ H, including F_3^2 ⋊ SL(2,3) of order 216.
std::vector<Entry> primitive_corpus();

bool has_nilpotent_derived_subgroup(const groups::OracleGroup& g);

}  // namespace solvint::corpus
