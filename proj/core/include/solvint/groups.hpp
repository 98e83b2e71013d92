#pragma once

// Brute-force oracle for finite groups given by an explicit multiplication
// table: subgroup lattices, conjugacy classes of subgroups, maximal
// subgroups, Möbius function and the counting sequences m_n, b_n, c_n.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "solvint/element_set.hpp"

namespace solvint::groups {

inline constexpr std::size_t kDefaultOrderCap = 5000;
inline constexpr std::size_t kDefaultOvergroupCap = 10000;

/// Finite group on the dense ids 0..n-1 with identity 0.
class OracleGroup {
 public:
  /// table[a][b] = a * b. Validates the group axioms; associativity is
  /// checked exhaustively up to order 512 and on 10^5 seeded random triples
  /// above that.
  static OracleGroup from_table(const std::vector<std::vector<ElementId>>& table, std::string name = {});
  static OracleGroup from_multiplication(std::size_t order, const std::function<ElementId(ElementId, ElementId)>& mul,
                                         std::string name = {});

  std::size_t order() const { return n_; }
  const std::string& name() const { return name_; }
  static constexpr ElementId identity() { return 0; }

  ElementId mul(ElementId a, ElementId b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  ElementId inv(ElementId a) const { return inverse_[a]; }
  /// g^-1 x g.
  ElementId conj(ElementId x, ElementId g) const { return mul(mul(inverse_[g], x), g); }
  ElementId pow(ElementId a, std::uint64_t e) const;
  std::size_t element_order(ElementId a) const { return orders_[a]; }

  /// Small generating set: greedy over elements by descending order, then id.
  const std::vector<ElementId>& generators() const { return generators_; }

 private:
  void finish();
  std::size_t n_ = 0;
  std::string name_;
  std::vector<std::uint16_t> table_;
  std::vector<ElementId> inverse_;
  std::vector<std::size_t> orders_;
  std::vector<ElementId> generators_;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(ElementSet bits, std::vector<ElementId> generators);

  const ElementSet& bits() const { return bits_; }
  const std::vector<ElementId>& members() const { return members_; }
  const std::vector<ElementId>& generators() const { return generators_; }
  std::size_t order() const { return members_.size(); }
  bool contains(ElementId x) const { return bits_.test(x); }
  bool is_subgroup_of(const Subgroup& o) const { return bits_.is_subset_of(o.bits_); }

  bool operator==(const Subgroup& o) const { return bits_ == o.bits_; }
  /// Canonical order: by order, then lexicographically by sorted members.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members_ < b.members_;
  }

 private:
  ElementSet bits_;
  std::vector<ElementId> members_;
  std::vector<ElementId> generators_;
};

Subgroup subgroup_closure(const OracleGroup& g, const std::vector<ElementId>& gens);
/// Subgroup from a member set known to be closed; computes a small generating set.
Subgroup from_members(const OracleGroup& g, const ElementSet& bits);
Subgroup trivial_subgroup(const OracleGroup& g);
Subgroup whole_group(const OracleGroup& g);
Subgroup intersection(const OracleGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup join(const OracleGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const OracleGroup& g, const Subgroup& s, ElementId by);
Subgroup normal_closure(const OracleGroup& g, const std::vector<ElementId>& gens);
bool is_normal(const OracleGroup& g, const Subgroup& s);
/// |AB| = |A||B| / |A ∩ B|.
std::size_t product_size(const Subgroup& a, const Subgroup& b);
/// Commutator subgroup [S, S].
Subgroup derived_subgroup(const OracleGroup& g, const Subgroup& s);
bool is_solvable(const OracleGroup& g);
bool is_nilpotent(const OracleGroup& g, const Subgroup& s);
/// True iff m is proper and <m, x> = G for every x outside m.
bool is_maximal_subgroup(const OracleGroup& g, const Subgroup& m);

struct SubgroupClass {
  std::size_t representative = 0;  // lattice id, canonical minimum of the class
  std::size_t size = 0;
  std::vector<std::size_t> members;  // lattice ids
};

/// Full subgroup lattice with derived data. The group must outlive the lattice.
class SubgroupLattice {
 public:
  /// Throws ResourceCap naming the cap when |G| > order_cap.
  static SubgroupLattice build(const OracleGroup& g, std::size_t order_cap = kDefaultOrderCap);

  const OracleGroup& group() const { return *group_; }
  std::size_t size() const { return subgroups_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subgroups_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  std::size_t whole() const { return subgroups_.size() - 1; }
  std::size_t trivial() const { return 0; }
  std::size_t index(std::size_t i) const { return group_->order() / subgroups_[i].order(); }

  std::optional<std::size_t> find(const ElementSet& bits) const;
  /// Throws PreconditionError if the set is not a subgroup of the lattice.
  std::size_t id_of(const ElementSet& bits) const;

  /// Proper overgroups of subgroup i (lattice ids, ascending).
  const std::vector<std::size_t>& strict_overgroups(std::size_t i) const { return supers_[i]; }
  const std::vector<std::size_t>& maximals() const { return maximals_; }
  bool is_maximal(std::size_t i) const { return is_maximal_[i]; }
  std::int64_t mobius(std::size_t i) const { return mobius_[i]; }
  /// Proper subgroups equal to the intersection of the maximals containing them.
  bool is_maximal_intersection(std::size_t i) const { return is_max_intersection_[i]; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  bool is_normal(std::size_t i) const { return classes_[class_of_[i]].size == 1; }
  /// Lattice id of the intersection of all maximals containing i (G if none).
  std::size_t maximal_closure(std::size_t i) const { return max_closure_[i]; }

 private:
  const OracleGroup* group_ = nullptr;
  std::vector<Subgroup> subgroups_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> lookup_;
  std::vector<std::vector<std::size_t>> supers_;
  std::vector<std::size_t> maximals_;
  std::vector<bool> is_maximal_;
  std::vector<std::int64_t> mobius_;
  std::vector<bool> is_max_intersection_;
  std::vector<std::size_t> max_closure_;
  std::vector<SubgroupClass> classes_;
  std::vector<std::size_t> class_of_;
};

/// Complete, duplicate-free, canonically ordered.
std::vector<Subgroup> all_subgroups(const OracleGroup& g, std::size_t order_cap = kDefaultOrderCap);

struct ClassRepresentative {
  Subgroup representative;
  std::size_t size = 0;
};
std::vector<ClassRepresentative> conjugacy_classes_of_subgroups(const OracleGroup& g,
                                                                std::size_t order_cap = kDefaultOrderCap);

std::vector<Subgroup> maximal_subgroups(const OracleGroup& g, std::size_t order_cap = kDefaultOrderCap);
/// Intersection of all maximal subgroups; by convention G itself when |G| = 1.
Subgroup frattini(const OracleGroup& g, std::size_t order_cap = kDefaultOrderCap);

struct CoreAndSocle {
  Subgroup core;   // Y_M
  Subgroup socle;  // X_M, with X_M / Y_M the minimal normal subgroup of G / Y_M
};
/// Requires M maximal and G solvable.
CoreAndSocle core_and_socle(const OracleGroup& g, const Subgroup& m);

/// Möbius value mu(H, G) from the overgroup lattice of H, computed directly
/// by closure over coset representatives. Throws ResourceCap above node_cap
/// overgroups and PreconditionError if H is not a subgroup.
std::int64_t mobius(const OracleGroup& g, const ElementSet& h, std::size_t node_cap = kDefaultOvergroupCap);

struct IndexCounts {
  std::uint64_t maximal = 0;       // m_n
  std::uint64_t nonzero_mobius = 0;  // b_n
  std::uint64_t intersections = 0;   // c_n
};
/// Index n > 1 dividing |G| -> (m_n, b_n, c_n).
using CountTable = std::map<std::uint64_t, IndexCounts>;

CountTable counts(const SubgroupLattice& lattice);
CountTable counts(const OracleGroup& g, std::size_t order_cap = kDefaultOrderCap);
bool is_maximal_intersection(const OracleGroup& g, const Subgroup& h, std::size_t order_cap = kDefaultOrderCap);

// ---------------------------------------------------------------- builders

OracleGroup cyclic_group(std::size_t n);
/// C_n ⋊ C_m with the generator of C_m acting as multiplication by r (r^m = 1 mod n).
OracleGroup cyclic_semidirect(std::size_t n, std::size_t m, std::size_t r, std::string name = {});
OracleGroup dihedral_group(std::size_t n);  // order 2n
OracleGroup direct_product(const OracleGroup& a, const OracleGroup& b, std::string name = {});

}  // namespace solvint::groups
