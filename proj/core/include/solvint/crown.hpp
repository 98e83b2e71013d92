#pragma once

// Chief-factor modules of a finite solvable group and Gaschütz crowns.
//
// All module actions are written over the fixed generator list
// G.generators(), so action matrices of different sections of the same
// group can be compared with ffla::module_isomorphism.

#include <optional>
#include <vector>

#include "solvint/ffla.hpp"
#include "solvint/groups.hpp"

namespace solvint::sdp {

/// Elementary abelian section upper/lower of G with both normal, viewed as a
/// right F_p G-module under conjugation.
class SectionModule {
 public:
  /// Throws PreconditionError unless upper/lower is a nontrivial elementary
  /// abelian section of normal subgroups.
  static SectionModule build(const groups::OracleGroup& g, const groups::Subgroup& lower,
                             const groups::Subgroup& upper);

  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::uint64_t order() const;
  const groups::Subgroup& lower() const { return lower_; }
  const groups::Subgroup& upper() const { return upper_; }
  /// One matrix per element of G.generators().
  const std::vector<ffla::Matrix>& action() const { return action_; }
  /// Coordinates of an element of upper modulo lower.
  ffla::Vec coordinates(ElementId x) const;
  /// Action matrix of an arbitrary element of G.
  ffla::Matrix action_of(const groups::OracleGroup& g, ElementId x) const;
  /// Kernel of the action, computed elementwise.
  groups::Subgroup centralizer(const groups::OracleGroup& g) const;

 private:
  std::uint32_t p_ = 2;
  std::size_t dim_ = 0;
  groups::Subgroup lower_, upper_;
  std::vector<ElementId> basis_;
  std::vector<std::int64_t> coord_index_;  // element id -> packed coordinates, or -1
  std::vector<ffla::Matrix> action_;
};

bool isomorphic(const SectionModule& a, const SectionModule& b);

/// X_M/Y_M for a maximal subgroup M.
SectionModule chief_module(const groups::OracleGroup& g, const groups::Subgroup& m);

/// G-isomorphism class of complemented chief factors, with the lattice ids
/// of the maximal subgroups M whose X_M/Y_M lies in the class.
struct ModuleClass {
  SectionModule module;  // from the first maximal of the class
  std::vector<std::size_t> maximals;
};

/// Classes in order of their first maximal subgroup in lattice order.
std::vector<ModuleClass> module_classes(const groups::SubgroupLattice& lattice);
/// Index into `classes` of the class of X_M/Y_M for maximal lattice id m.
std::size_t class_of_maximal(const std::vector<ModuleClass>& classes, std::size_t m);

struct CrownData {
  std::size_t module_class = 0;
  groups::Subgroup c;  // C_G(V)
  groups::Subgroup r;  // R_G(V)
  std::size_t delta = 0;
  std::optional<groups::Subgroup> d;  // normal, C = R × D
};

CrownData crown(const groups::SubgroupLattice& lattice, const std::vector<ModuleClass>& classes, std::size_t cls);
/// Requires a trivial Frattini subgroup; returns the first class with D ≠ 1.
CrownData find_corona_crown(const groups::SubgroupLattice& lattice, const std::vector<ModuleClass>& classes);

/// C/R is G-isomorphic to V^δ: elementary abelian of the right order and
/// isomorphic to the diagonal module.
bool check_crown_module(const groups::OracleGroup& g, const ModuleClass& cls, const CrownData& crown);
/// Every K with KD = KR = G equals G (exhaustive over the lattice).
bool check_sotto(const groups::SubgroupLattice& lattice, const CrownData& crown);

}  // namespace solvint::sdp
