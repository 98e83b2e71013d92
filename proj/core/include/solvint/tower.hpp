#pragma once

// The supersolvable tower G_n = (V_1 × ... × V_n) ⋊ <x_n>, with V_m = F_{p_m},
// |x_n| = 2^n and v^{x_n} = ζ_m v on V_m for ζ_m of exact order 2^m.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "solvint/element_set.hpp"
#include "solvint/groups.hpp"

namespace solvint::tower {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic Miller-Rabin on the first 13 prime bases; exact below this bound.
inline const BigInt kPrimalityCeiling{"3317044064679887385961981"};

bool is_probable_prime(const BigInt& n);

struct TowerPrimes {
  std::size_t n = 0;
  std::vector<BigInt> primes;
  bool strict = false;
};

/// Smallest admissible primes: 2^m | p_m - 1, p_m > p_{m-1}, and under
/// `strict` also p_{m+1} > 2^m p_1...p_m. Throws ResourceCap when a
/// candidate reaches `ceiling`.
TowerPrimes find_primes(std::size_t n, bool strict, const BigInt& ceiling = kPrimalityCeiling);

/// Checks the congruence (and growth, when strict) conditions.
bool is_valid(const TowerPrimes& primes);

/// Maximal subgroup: either the index-2 one (level 0) or W_i ⋊ H^v with v in V_i.
struct TowerMaximal {
  std::size_t level = 0;   // 0 for W ⋊ <x^2>, else i in 1..n
  std::uint64_t translate = 0;  // v in V_i as an integer in [0, p_i)
  bool operator==(const TowerMaximal&) const = default;
};

class TowerGroup {
 public:
  /// Requires valid primes that fit in 32 bits.
  static TowerGroup build(const TowerPrimes& primes);

  std::size_t n() const { return n_; }
  const std::vector<std::uint64_t>& primes() const { return p_; }
  /// ζ_m: smallest positive integer of exact order 2^m mod p_m.
  const std::vector<std::uint64_t>& zetas() const { return zeta_; }
  std::uint64_t module_order() const { return w_order_; }
  std::uint64_t h_order() const { return std::uint64_t{1} << n_; }
  std::uint64_t order() const { return w_order_ << n_; }

  /// Element ((a_1, ..., a_n), e) with id e·|W| + (a read in mixed radix, a_1 most significant).
  ElementId id_of(const std::vector<std::uint64_t>& a, std::uint64_t e) const;
  std::pair<std::vector<std::uint64_t>, std::uint64_t> element(ElementId id) const;
  ElementId mul(ElementId x, ElementId y) const;

  groups::OracleGroup oracle(std::size_t order_cap = groups::kDefaultOrderCap) const;

  std::vector<TowerMaximal> maximal_subgroups() const;
  ElementSet element_set(const TowerMaximal& m) const;
  /// (prod_{j not in J} V_j) ⋊ <x^{2^a}>, J given as 1-based levels.
  ElementSet standard_subgroup(const std::vector<std::size_t>& j, std::size_t a) const;
  /// Elements of <x> acting trivially on V_m.
  std::vector<std::uint64_t> centralizer_exponents(std::size_t m) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> p_;
  std::vector<std::uint64_t> zeta_;
  std::vector<std::vector<std::uint64_t>> zeta_pow_;  // zeta_pow_[m][e] = ζ_m^e
  std::uint64_t w_order_ = 1;
};

enum class ClassKind { X, Y, Z };
std::string to_string(ClassKind k);

struct IntersectionClass {
  ClassKind kind = ClassKind::X;
  std::vector<std::size_t> j;  // sorted 1-based levels
  std::size_t i = 0;           // level for Z classes, else 0
  std::uint64_t index = 1;
  std::vector<TowerMaximal> family;
  std::string label() const;
};

/// X_J for nonempty J, Y_J for every J (Y_∅ is the index-2 maximal), and
/// Z_{J,i} for i in {2..n} with i in J. Each class is W_J ⋊ <x^{2^a}> with
/// a = 0, 1, i respectively.
std::vector<IntersectionClass> classify_intersections(const TowerGroup& g);
/// Exponent a of the complement <x^{2^a}> of a class.
std::size_t complement_exponent(const IntersectionClass& c);
/// Intersection of the realizing family, computed elementwise.
ElementSet family_intersection(const TowerGroup& g, const IntersectionClass& c);

struct TowerCounts {
  std::size_t n = 0;
  std::uint64_t gamma_formula = 0;     // 2^{n-1}(n+2) - 1
  std::uint64_t beta_bound = 0;        // 2^{n+1} - 1
  std::uint64_t structural_classes = 0;
  std::optional<std::uint64_t> gamma_oracle;
  std::optional<std::uint64_t> beta_oracle;
  std::optional<bool> structural_matches_oracle;
  std::uint64_t ratio_num = 4, ratio_den = 4;  // 4/(n+2), reduced
  bool formula_agrees() const;  // against the oracle when present, else the structural count
};

/// Oracle fields are filled when |G_n| <= order_cap.
TowerCounts tilde_counts(const TowerGroup& g, std::size_t order_cap = groups::kDefaultOrderCap);
TowerCounts formula_counts(std::size_t n);

struct MuZeroRow {
  std::string label;
  std::int64_t mu = 0;
};
std::vector<MuZeroRow> verify_mu_zero(const TowerGroup& g, std::size_t order_cap = groups::kDefaultOrderCap);

struct RatioRow {
  std::size_t n = 0;
  TowerPrimes primes;
  TowerCounts counts;
  bool oracle = false;
};
/// Rows for n = n_min..n_max; oracle values when |G_n| <= order_cap.
std::vector<RatioRow> ratio_table(std::size_t n_min, std::size_t n_max, bool strict,
                                  std::size_t order_cap = groups::kDefaultOrderCap);

}  // namespace solvint::tower
