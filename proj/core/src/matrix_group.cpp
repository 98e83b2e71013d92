#include "solvint/matrix_group.hpp"

#include <set>
#include <string>

#include "solvint/errors.hpp"

namespace solvint::groups {

MatrixGroup MatrixGroup::generate(std::uint32_t p, std::size_t dim, const std::vector<ffla::Matrix>& generators,
                                  std::size_t max_order) {
  MatrixGroup g;
  g.p_ = p;
  g.dim_ = dim;
  g.generators_ = generators;
  for (const auto& m : generators) {
    if (m.modulus() != p || m.rows() != dim || m.cols() != dim)
      throw MalformedInput("matrix generator has the wrong size or modulus");
    if (m.rank() != dim) throw MalformedInput("matrix generator is singular");
  }
  const ffla::Matrix one = ffla::Matrix::identity(p, dim);
  std::set<ffla::Matrix> seen{one};
  std::vector<ffla::Matrix> queue{one};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& s : generators) {
      ffla::Matrix y = queue[i] * s;
      if (seen.insert(y).second) {
        if (seen.size() > max_order)
          throw ResourceCap("matrix group exceeds " + std::to_string(max_order) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  g.elements_.push_back(one);
  for (const auto& m : seen)
    if (m != one) g.elements_.push_back(m);
  for (std::size_t i = 0; i < g.elements_.size(); ++i) g.index_.emplace(g.elements_[i], static_cast<ElementId>(i));
  for (const auto& s : generators) g.generator_ids_.push_back(g.index_.at(s));

  const std::size_t n = g.elements_.size();
  if (n <= 4096) {
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = g.index_.at(g.elements_[a] * g.elements_[b]);
  }
  return g;
}

ElementId MatrixGroup::id_of(const ffla::Matrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw PreconditionError("matrix is not an element of the group");
  return it->second;
}

ElementId MatrixGroup::mul(ElementId a, ElementId b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_.at(elements_[a] * elements_[b]);
}

OracleGroup MatrixGroup::oracle(std::string name) const {
  return OracleGroup::from_multiplication(
      order(), [this](ElementId a, ElementId b) { return mul(a, b); }, std::move(name));
}

}  // namespace solvint::groups
