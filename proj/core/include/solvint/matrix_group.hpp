#pragma once

// Finite matrix groups over F_p with an explicit element list.

#include <map>
#include <vector>

#include "solvint/element_set.hpp"
#include "solvint/ffla.hpp"
#include "solvint/groups.hpp"

namespace solvint::groups {

class MatrixGroup {
 public:
  /// Closure of invertible dim x dim generators. Elements are listed with the
  /// identity first and the rest in lexicographic matrix order. Throws
  /// ResourceCap above `max_order` elements.
  static MatrixGroup generate(std::uint32_t p, std::size_t dim, const std::vector<ffla::Matrix>& generators,
                              std::size_t max_order = 100000);

  std::uint32_t modulus() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<ffla::Matrix>& generators() const { return generators_; }
  /// Ids of the generators in the element list.
  const std::vector<ElementId>& generator_ids() const { return generator_ids_; }
  const std::vector<ffla::Matrix>& elements() const { return elements_; }
  const ffla::Matrix& operator[](ElementId i) const { return elements_[i]; }

  /// Throws PreconditionError if m is not in the group.
  ElementId id_of(const ffla::Matrix& m) const;
  bool contains(const ffla::Matrix& m) const { return index_.count(m) != 0; }
  ElementId mul(ElementId a, ElementId b) const;

  OracleGroup oracle(std::string name = {}) const;

 private:
  std::uint32_t p_ = 2;
  std::size_t dim_ = 0;
  std::vector<ffla::Matrix> generators_;
  std::vector<ElementId> generator_ids_;
  std::vector<ffla::Matrix> elements_;
  std::map<ffla::Matrix, ElementId> index_;
  std::vector<ElementId> table_;  // filled when order <= 4096
};

}  // namespace solvint::groups
