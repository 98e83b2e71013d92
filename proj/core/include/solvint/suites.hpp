#pragma once

// Seeded property suites comparing the closed-form semidirect-product
// machinery against elementwise computation.

#include <cstdint>
#include <string>
#include <vector>

#include "solvint/sdp.hpp"

namespace solvint::suites {

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> samples;  // first few failures, canonical text
  bool pass() const { return cases > 0 && failures == 0; }
};

struct PoolEntry {
  std::string name;
  sdp::SdGroup group;
};

/// Fixed list of SdGroups of order <= max_order, varying p, k, t and H.
std::vector<PoolEntry> sd_pool(std::uint64_t max_order = 2000);
/// SdGroups with t <= 2, |V| <= 25 and |H| <= 24.
std::vector<PoolEntry> round_trip_pool();

/// Random K = (U, C_H(z), v) and random maximal supplement M;
/// intersect(K, M) against the elementwise intersection.
SuiteResult interkm_suite(const std::vector<PoolEntry>& pool, std::uint64_t seed, std::size_t pairs);
/// Random families of 1..max_family maximal supplements; canonical form against elementwise.
SuiteResult impor_suite(const std::vector<PoolEntry>& pool, std::uint64_t seed, std::size_t families,
                        std::size_t max_family = 5);
/// Every (U, Z) with U a submodule and Z an F-subspace, skipping t* = 0 < d:
/// family size t* + d and intersection equal to U·C_H(Z) elementwise.
SuiteResult possibile_suite(const std::vector<PoolEntry>& pool);

}  // namespace solvint::suites
