#pragma once

// Semidirect products G = V^t ⋊ H with H ≤ GL(k, p) solvable, V = F_p^k a
// faithful irreducible H-module, and H acting diagonally on V^t.
//
// Elements are pairs (w, h) with (w1, h1)(w2, h2) = (w1·h2 + w2, h1 h2).
// The conjugate of H by a translate v is H^v = {(v - v·h, h)}.

#include <optional>
#include <vector>

#include "solvint/element_set.hpp"
#include "solvint/ffla.hpp"
#include "solvint/groups.hpp"
#include "solvint/matrix_group.hpp"

namespace solvint::sdp {

using ffla::Matrix;
using ffla::Subspace;
using ffla::Vec;

inline constexpr std::uint64_t kDefaultSdOrderCap = std::uint64_t{1} << 22;

struct SdElement {
  Vec w;
  ElementId h = 0;  // index into SdGroup::h()
  bool operator==(const SdElement&) const = default;
};

class SdGroup {
 public:
  /// Validates the module invariants. Shape problems raise MalformedInput;
  /// a failed invariant raises ValidationError naming "invertibility",
  /// "irreducibility", "faithfulness" or "solvability".
  static SdGroup create(std::uint32_t p, std::size_t k, std::size_t t, const std::vector<Matrix>& h_generators,
                        std::uint64_t order_cap = kDefaultSdOrderCap);

  std::uint32_t p() const { return p_; }
  std::size_t k() const { return k_; }
  std::size_t t() const { return t_; }
  /// dim_{F_p} V^t.
  std::size_t dim() const { return k_ * t_; }
  const ffla::EndField& field() const { return field_; }
  const groups::MatrixGroup& h() const { return h_; }
  const groups::OracleGroup& h_oracle() const { return h_oracle_; }
  std::uint64_t module_order() const { return module_order_; }  // |V^t|
  std::uint64_t v_order() const { return v_order_; }            // |V|
  std::uint64_t order() const { return module_order_ * h_.order(); }

  /// v·h with h acting blockwise on V^t.
  Vec act(std::span<const ffla::Scalar> v, ElementId h) const;
  /// Action of h on V^t as a (kt x kt) block-diagonal matrix.
  Matrix lifted(ElementId h) const;
  const std::vector<Matrix>& lifted_generators() const { return lifted_gens_; }

  SdElement mul(const SdElement& a, const SdElement& b) const;
  SdElement inverse(const SdElement& a) const;

  /// Dense id h·|V^t| + (w read as a base-p numeral, first coordinate most significant).
  ElementId id_of(const SdElement& e) const;
  SdElement element(ElementId id) const;
  std::uint64_t vector_id(std::span<const ffla::Scalar> w) const;
  Vec vector_of(std::uint64_t id) const;

  bool is_submodule(const Subspace& u) const;
  /// {c in V^t : c·x = c for every x in X}; X may be any generating list.
  Subspace fixed_space(const std::vector<ElementId>& x) const;
  /// C_X(Z) for a subspace Z of V.
  std::vector<ElementId> centralizer(const std::vector<ElementId>& x, const Subspace& z) const;
  std::vector<ElementId> all_h() const;

  /// Coordinate block i of V^t as a subspace.
  Subspace block(std::size_t i) const;
  /// phi: V -> block(i), the H-isomorphism chosen by module_isomorphism.
  Vec embed_in_block(std::span<const ffla::Scalar> z, std::size_t i) const;
  /// phi^-1 on block(i); u must lie in the block.
  Vec extract_from_block(std::span<const ffla::Scalar> u, std::size_t i) const;

 private:
  std::uint32_t p_ = 2;
  std::size_t k_ = 0;
  std::size_t t_ = 0;
  ffla::EndField field_;
  groups::MatrixGroup h_;
  groups::OracleGroup h_oracle_;
  std::uint64_t module_order_ = 1;
  std::uint64_t v_order_ = 1;
  std::vector<Matrix> lifted_gens_;
  Matrix phi_;      // k x k, z -> z·phi_
  Matrix phi_inv_;
};

/// M = W·H^v with W a maximal submodule of V^t.
struct MaximalSupplement {
  Subspace w;
  Vec v;  // canonical representative of v modulo W + C_{V^t}(H)
  bool operator==(const MaximalSupplement&) const = default;
  auto operator<=>(const MaximalSupplement&) const = default;
};

/// {(x, h) : h in X, x - v + v·h in U}; U is H-invariant and X ≤ H.
struct StructuredSubgroup {
  Subspace u;
  std::vector<ElementId> x;  // sorted ids of H
  Vec v;                     // canonical modulo U + C_{V^t}(X)
  bool operator==(const StructuredSubgroup&) const = default;
};

/// U·C_{H^v}(Z).
struct CanonicalIntersection {
  Subspace u;
  Vec v;
  Subspace z;  // F-closed subspace of V
  bool operator==(const CanonicalIntersection&) const = default;
};

MaximalSupplement make_supplement(const SdGroup& g, Subspace w, Vec v);
StructuredSubgroup make_structured(const SdGroup& g, Subspace u, std::vector<ElementId> x, Vec v);
StructuredSubgroup as_structured(const SdGroup& g, const MaximalSupplement& m);
StructuredSubgroup as_structured(const SdGroup& g, const CanonicalIntersection& c);

/// Kernels of y -> sum_i y_i a_i for normalized a in F^t, in canonical subspace order.
std::vector<Subspace> enumerate_maximal_submodules(const SdGroup& g);
/// Every submodule of V^t (each is an intersection of maximal submodules), canonical order.
std::vector<Subspace> enumerate_submodules(const SdGroup& g);
std::vector<MaximalSupplement> enumerate_maximal_supplements(const SdGroup& g);

/// First coordinate block not contained in W; a complement of W when W is maximal.
std::size_t complement_block(const SdGroup& g, const Subspace& w);

/// Requires W1 + W2 = V^t; returns (W1 ∩ W2, X, v1 + w1). Throws DispatchError otherwise.
StructuredSubgroup intersect_case_i(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m);

struct CaseTwoResult {
  StructuredSubgroup result;
  Vec witness;     // z in V with u = phi(z), F-line representative; zero when unchanged
  bool unchanged;  // K ∩ M = K
};
/// Requires W1 ⊆ W2; returns (W1, C_X(z), v1). Throws DispatchError otherwise.
CaseTwoResult intersect_case_ii(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m);

/// Dispatches to case i or ii; asserts that exactly one case applies.
StructuredSubgroup intersect(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m);

/// Throws PreconditionError on an empty family.
CanonicalIntersection canonicalize_intersection(const SdGroup& g, const std::vector<MaximalSupplement>& ms);

/// A family of t* + d maximal supplements intersecting to U·C_H(Z). Throws
/// PreconditionError if U is not a submodule, Z is not F-closed, or t* = 0 < d.
std::vector<MaximalSupplement> realize_intersection(const SdGroup& g, const Subspace& u, const Subspace& z);
/// Number of maximal submodules the realization uses for U (t*).
std::size_t submodule_depth(const SdGroup& g, const Subspace& u);

ElementSet element_set(const SdGroup& g, const StructuredSubgroup& s);
ElementSet element_set(const SdGroup& g, const MaximalSupplement& m);
ElementSet element_set(const SdGroup& g, const CanonicalIntersection& c);

/// Oracle copy with the same element ids. Throws ResourceCap above order_cap.
groups::OracleGroup embed_as_oracle(const SdGroup& g, std::size_t order_cap = 65535);

}  // namespace solvint::sdp
