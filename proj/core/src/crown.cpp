#include "solvint/crown.hpp"

#include <string>

#include "solvint/errors.hpp"

namespace solvint::sdp {

SectionModule SectionModule::build(const groups::OracleGroup& g, const groups::Subgroup& lower,
                                   const groups::Subgroup& upper) {
  if (!lower.is_subgroup_of(upper) || lower.order() == upper.order())
    throw PreconditionError("section: lower must be a proper subgroup of upper");
  if (!groups::is_normal(g, lower) || !groups::is_normal(g, upper))
    throw PreconditionError("section: both subgroups must be normal");
  std::size_t index = upper.order() / lower.order();
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= index; ++d)
    if (index % d == 0) {
      p = d;
      break;
    }
  std::size_t dim = 0;
  for (std::size_t rest = index; rest > 1; rest /= p) {
    if (rest % p) throw PreconditionError("section: order is not a prime power");
    ++dim;
  }

  SectionModule s;
  s.p_ = p;
  s.dim_ = dim;
  s.lower_ = lower;
  s.upper_ = upper;
  std::vector<ElementId> gens = lower.generators();
  groups::Subgroup current = lower;
  for (auto x : upper.members()) {
    if (current.order() == upper.order()) break;
    if (current.contains(x)) continue;
    gens.push_back(x);
    auto next = groups::subgroup_closure(g, gens);
    if (next.order() != current.order() * p) throw PreconditionError("section is not elementary abelian");
    s.basis_.push_back(x);
    current = std::move(next);
  }
  for (auto a : s.basis_) {
    if (!lower.contains(g.pow(a, p))) throw PreconditionError("section does not have exponent p");
    for (auto b : s.basis_) {
      ElementId c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (!lower.contains(c)) throw PreconditionError("section is not abelian");
    }
  }

  s.coord_index_.assign(g.order(), -1);
  std::uint64_t cosets = 1;
  for (std::size_t i = 0; i < dim; ++i) cosets *= p;
  for (std::uint64_t packed = 0; packed < cosets; ++packed) {
    ElementId rep = groups::OracleGroup::identity();
    std::uint64_t rest = packed;
    // Packed value reads the first coordinate as the most significant digit.
    std::vector<std::uint32_t> a(dim);
    for (std::size_t i = dim; i-- > 0;) {
      a[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    for (std::size_t i = 0; i < dim; ++i) rep = g.mul(rep, g.pow(s.basis_[i], a[i]));
    for (auto y : lower.members()) {
      ElementId z = g.mul(y, rep);
      if (s.coord_index_[z] != -1) throw InvariantViolation("section coordinates are not injective");
      s.coord_index_[z] = static_cast<std::int64_t>(packed);
    }
  }
  for (auto w : g.generators()) {
    ffla::Matrix m(p, dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      auto row = s.coordinates(g.conj(s.basis_[i], w));
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = row[j];
    }
    s.action_.push_back(std::move(m));
  }
  return s;
}

std::uint64_t SectionModule::order() const { return upper_.order() / lower_.order(); }

ffla::Vec SectionModule::coordinates(ElementId x) const {
  std::int64_t packed = coord_index_.at(x);
  if (packed < 0) throw PreconditionError("element lies outside the section");
  ffla::Vec v(dim_);
  auto rest = static_cast<std::uint64_t>(packed);
  for (std::size_t i = dim_; i-- > 0;) {
    v[i] = static_cast<ffla::Scalar>(rest % p_);
    rest /= p_;
  }
  return v;
}

ffla::Matrix SectionModule::action_of(const groups::OracleGroup& g, ElementId x) const {
  ffla::Matrix m(p_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    auto row = coordinates(g.conj(basis_[i], x));
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = row[j];
  }
  return m;
}

groups::Subgroup SectionModule::centralizer(const groups::OracleGroup& g) const {
  ElementSet bits(g.order());
  for (ElementId x = 0; x < g.order(); ++x)
    if (action_of(g, x).is_identity()) bits.set(x);
  return groups::from_members(g, bits);
}

bool isomorphic(const SectionModule& a, const SectionModule& b) {
  if (a.p() != b.p() || a.dim() != b.dim()) return false;
  if (a.action().empty()) return true;
  return ffla::module_isomorphism(a.action(), b.action()).has_value();
}

SectionModule chief_module(const groups::OracleGroup& g, const groups::Subgroup& m) {
  auto cs = groups::core_and_socle(g, m);
  return SectionModule::build(g, cs.core, cs.socle);
}

std::vector<ModuleClass> module_classes(const groups::SubgroupLattice& lattice) {
  const auto& g = lattice.group();
  std::vector<ModuleClass> out;
  for (auto mi : lattice.maximals()) {
    auto mod = chief_module(g, lattice[mi]);
    bool placed = false;
    for (auto& c : out)
      if (isomorphic(c.module, mod)) {
        c.maximals.push_back(mi);
        placed = true;
        break;
      }
    if (!placed) out.push_back({std::move(mod), {mi}});
  }
  return out;
}

std::size_t class_of_maximal(const std::vector<ModuleClass>& classes, std::size_t m) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (auto x : classes[i].maximals)
      if (x == m) return i;
  throw PreconditionError("lattice id is not a maximal subgroup of any module class");
}

CrownData crown(const groups::SubgroupLattice& lattice, const std::vector<ModuleClass>& classes, std::size_t cls) {
  const auto& g = lattice.group();
  if (cls >= classes.size()) throw PreconditionError("module class index out of range");
  const auto& mc = classes[cls];
  CrownData out;
  out.module_class = cls;
  out.c = mc.module.centralizer(g);
  ElementSet r = lattice[lattice.whole()].bits();
  for (auto mi : mc.maximals) r &= lattice[mi].bits();
  out.r = groups::from_members(g, r);
  if (!out.r.is_subgroup_of(out.c)) throw InvariantViolation("crown: R is not contained in C");

  std::size_t quotient = out.c.order() / out.r.order();
  const std::uint64_t v = mc.module.order();
  while (quotient > 1) {
    if (quotient % v) throw InvariantViolation("crown: |C/R| is not a power of |V|");
    quotient /= v;
    ++out.delta;
  }
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& d = lattice[i];
    if (!lattice.is_normal(i) || d.order() * out.r.order() != out.c.order()) continue;
    if (!d.is_subgroup_of(out.c) || d.bits().intersection_count(out.r.bits()) != 1) continue;
    out.d = d;
    break;
  }
  return out;
}

CrownData find_corona_crown(const groups::SubgroupLattice& lattice, const std::vector<ModuleClass>& classes) {
  const auto& g = lattice.group();
  ElementSet phi = lattice[lattice.whole()].bits();
  for (auto mi : lattice.maximals()) phi &= lattice[mi].bits();
  if (g.order() == 1 || phi.count() != 1) throw PreconditionError("find_corona_crown requires trivial Frattini subgroup");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto cd = crown(lattice, classes, c);
    if (cd.d && cd.d->order() > 1) return cd;
  }
  throw InvariantViolation("no crown with a nontrivial direct complement in a Frattini-free group");
}

bool check_crown_module(const groups::OracleGroup& g, const ModuleClass& cls, const CrownData& cd) {
  if (cd.delta == 0) return cd.c == cd.r;
  auto section = SectionModule::build(g, cd.r, cd.c);
  const auto& v = cls.module;
  if (section.p() != v.p() || section.dim() != v.dim() * cd.delta) return false;
  std::vector<ffla::Matrix> diag;
  for (const auto& a : v.action()) {
    ffla::Matrix m(v.p(), section.dim(), section.dim());
    for (std::size_t b = 0; b < cd.delta; ++b)
      for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) m(b * v.dim() + i, b * v.dim() + j) = a(i, j);
    diag.push_back(std::move(m));
  }
  if (diag.empty()) return true;
  return ffla::module_isomorphism(section.action(), diag).has_value();
}

bool check_sotto(const groups::SubgroupLattice& lattice, const CrownData& cd) {
  if (!cd.d) throw PreconditionError("check_sotto needs a crown with a complement D");
  const std::size_t n = lattice.group().order();
  for (std::size_t i = 0; i < lattice.whole(); ++i) {
    const auto& k = lattice[i];
    if (groups::product_size(k, *cd.d) == n && groups::product_size(k, cd.r) == n) return false;
  }
  return true;
}

}  // namespace solvint::sdp
