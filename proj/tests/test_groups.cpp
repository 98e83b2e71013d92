#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "solvint/errors.hpp"
#include "solvint/groups.hpp"
#include "solvint/matrix_group.hpp"

using namespace solvint;
using namespace solvint::groups;

namespace {

OracleGroup s3() { return cyclic_semidirect(3, 2, 2, "S3"); }
OracleGroup f20() { return cyclic_semidirect(5, 4, 2, "F20"); }

// Permutation group on `points` generated by the given images, as an oracle.
OracleGroup permutation_group(std::size_t points, const std::vector<std::vector<int>>& gens) {
  using Perm = std::vector<int>;
  Perm id(points);
  for (std::size_t i = 0; i < points; ++i) id[i] = static_cast<int>(i);
  std::vector<Perm> elems{id};
  std::set<Perm> seen{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Perm c(points);
      for (std::size_t x = 0; x < points; ++x) c[x] = g[elems[i][x]];
      if (seen.insert(c).second) elems.push_back(c);
    }
  std::map<Perm, ElementId> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<ElementId>(i);
  return OracleGroup::from_multiplication(elems.size(), [&](ElementId a, ElementId b) {
    Perm c(points);
    for (std::size_t x = 0; x < points; ++x) c[x] = elems[b][elems[a][x]];
    return index.at(c);
  });
}

// Subgroups by exhaustive subset test; feasible up to order ~16.
std::size_t subset_subgroup_count(const OracleGroup& g) {
  const std::size_t n = g.order();
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      if (mask >> a & 1)
        for (std::size_t b = 0; b < n; ++b)
          if ((mask >> b & 1) && !(mask >> g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b)) & 1)) {
            closed = false;
            break;
          }
    count += closed;
  }
  return count;
}

// Distinct <a, b> over all pairs; complete when every subgroup is 2-generated.
std::size_t two_generated_count(const OracleGroup& g) {
  std::set<std::vector<ElementId>> seen;
  for (ElementId a = 0; a < g.order(); ++a)
    for (ElementId b = a; b < g.order(); ++b) seen.insert(subgroup_closure(g, {a, b}).members());
  return seen.size();
}

}  // namespace

TEST(OracleGroup, RejectsBrokenTables) {
  EXPECT_THROW(OracleGroup::from_table({}), MalformedInput);
  EXPECT_THROW(OracleGroup::from_table({{0, 1}, {1, 1}}), MalformedInput);
  EXPECT_THROW(OracleGroup::from_table({{1, 0}, {0, 1}}), MalformedInput);
  // Latin square with identity 0 that is not associative.
  std::vector<std::vector<ElementId>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(OracleGroup::from_table(loop), MalformedInput);
}

TEST(OracleGroup, ElementOrdersAndInverses) {
  auto g = f20();
  std::map<std::size_t, int> hist;
  for (ElementId x = 0; x < g.order(); ++x) {
    EXPECT_EQ(g.mul(x, g.inv(x)), 0u);
    EXPECT_EQ(g.pow(x, g.element_order(x)), 0u);
    ++hist[g.element_order(x)];
  }
  EXPECT_EQ(hist[1], 1);
  EXPECT_EQ(hist[5], 4);
  EXPECT_EQ(hist[2], 5);
  EXPECT_EQ(hist[4], 10);
  EXPECT_EQ(subgroup_closure(g, g.generators()).order(), 20u);
}

TEST(Subgroups, ClosureExamples) {
  auto g = s3();
  EXPECT_EQ(subgroup_closure(g, {}).order(), 1u);
  std::vector<ElementId> all(6);
  for (ElementId i = 0; i < 6; ++i) all[i] = i;
  EXPECT_EQ(subgroup_closure(g, all).order(), 6u);
  ElementId three_cycle = 1;  // (1, 0) in C3:C2
  ASSERT_EQ(g.element_order(three_cycle), 3u);
  EXPECT_EQ(subgroup_closure(g, {three_cycle}).order(), 3u);
}

TEST(Subgroups, CountsMatchSubsetOracle) {
  std::vector<OracleGroup> gs = {cyclic_group(7),
                                 s3(),
                                 dihedral_group(4),
                                 cyclic_semidirect(3, 4, 2, "Dic12"),
                                 dihedral_group(6),
                                 direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))),
                                 direct_product(cyclic_group(4), cyclic_group(4)),
                                 dihedral_group(8)};
  for (const auto& g : gs) EXPECT_EQ(all_subgroups(g).size(), subset_subgroup_count(g)) << g.name();
}

TEST(Subgroups, NonSolvableEnumeration) {
  auto a5 = permutation_group(5, {{1, 2, 0, 3, 4}, {0, 1, 3, 4, 2}, {1, 0, 3, 2, 4}});
  ASSERT_EQ(a5.order(), 60u);
  EXPECT_FALSE(is_solvable(a5));
  EXPECT_EQ(all_subgroups(a5).size(), two_generated_count(a5));
  auto s4 = permutation_group(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
  EXPECT_TRUE(is_solvable(s4));
  EXPECT_EQ(all_subgroups(s4).size(), two_generated_count(s4));
}

TEST(Subgroups, CanonicalOrder) {
  auto subs = all_subgroups(dihedral_group(6));
  EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
  EXPECT_EQ(subs.front().order(), 1u);
  EXPECT_EQ(subs.back().order(), 12u);
}

TEST(Subgroups, CapNamesLimit) {
  auto g = cyclic_group(40);
  try {
    (void)all_subgroups(g, 30);
    FAIL();
  } catch (const ResourceCap& e) {
    EXPECT_NE(std::string(e.what()).find("30"), std::string::npos);
  }
}

TEST(Lattice, S3) {
  auto g = s3();
  auto lat = SubgroupLattice::build(g);
  EXPECT_EQ(lat.size(), 6u);
  EXPECT_EQ(lat.classes().size(), 4u);
  auto maxes = maximal_subgroups(g);
  ASSERT_EQ(maxes.size(), 4u);
  std::multiset<std::size_t> idx;
  for (const auto& m : maxes) idx.insert(6 / m.order());
  EXPECT_EQ(idx, (std::multiset<std::size_t>{2, 3, 3, 3}));
  EXPECT_EQ(lat.mobius(lat.trivial()), 3);
  EXPECT_EQ(lat.mobius(lat.whole()), 1);
  for (auto m : lat.maximals()) EXPECT_EQ(lat.mobius(m), -1);

  auto table = counts(lat);
  EXPECT_EQ(table[2].maximal, 1u);
  EXPECT_EQ(table[3].maximal, 3u);
  EXPECT_EQ(table[2].intersections, 1u);
  EXPECT_EQ(table[3].intersections, 3u);
  EXPECT_EQ(table[6].intersections, 1u);
  EXPECT_EQ(table[6].nonzero_mobius, 1u);
}

TEST(Lattice, Frattini) {
  EXPECT_EQ(frattini(cyclic_group(4)).order(), 2u);
  EXPECT_EQ(maximal_subgroups(cyclic_group(4)).size(), 1u);
  EXPECT_EQ(frattini(cyclic_group(1)).order(), 1u);
  auto sl23 = MatrixGroup::generate(3, 2,
                                    {ffla::Matrix::from_rows(3, {{1, 1}, {0, 1}}),
                                     ffla::Matrix::from_rows(3, {{1, 0}, {1, 1}})});
  ASSERT_EQ(sl23.order(), 24u);
  auto o = sl23.oracle();
  auto phi = frattini(o);
  EXPECT_EQ(phi.order(), 2u);
  // The center: elements commuting with everything.
  for (auto z : phi.members())
    for (ElementId x = 0; x < o.order(); ++x) EXPECT_EQ(o.mul(z, x), o.mul(x, z));
}

TEST(Lattice, MobiusMatchesOvergroupComputation) {
  std::vector<OracleGroup> gs = {s3(), f20(), dihedral_group(6), cyclic_semidirect(7, 3, 2, "F21")};
  for (const auto& g : gs) {
    auto lat = SubgroupLattice::build(g);
    for (std::size_t i = 0; i < lat.size(); ++i) EXPECT_EQ(mobius(g, lat[i].bits()), lat.mobius(i)) << g.name();
  }
}

TEST(Lattice, MobiusRowSums) {
  std::vector<OracleGroup> gs = {f20(), dihedral_group(8), direct_product(s3(), cyclic_group(3))};
  for (const auto& g : gs) {
    auto lat = SubgroupLattice::build(g);
    for (std::size_t h = 0; h < lat.size(); ++h) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < lat.size(); ++k)
        if (lat[h].is_subgroup_of(lat[k])) sum += lat.mobius(k);
      EXPECT_EQ(sum, h == lat.whole() ? 1 : 0);
    }
  }
}

TEST(Lattice, MobiusRejectsNonSubgroup) {
  auto g = s3();
  ElementSet bad(g.order());
  bad.set(0);
  bad.set(1);
  EXPECT_THROW(mobius(g, bad), PreconditionError);
}

TEST(Lattice, MobiusOvergroupCap) {
  auto g = direct_product(cyclic_group(2), direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
  EXPECT_THROW(mobius(g, trivial_subgroup(g).bits(), 10), ResourceCap);
}

TEST(Lattice, ConjugacyClasses) {
  auto classes = conjugacy_classes_of_subgroups(dihedral_group(4));
  std::size_t total = 0;
  for (const auto& c : classes) total += c.size;
  EXPECT_EQ(total, all_subgroups(dihedral_group(4)).size());
  auto g = s3();
  auto lat = SubgroupLattice::build(g);
  for (std::size_t i = 0; i < lat.size(); ++i) EXPECT_EQ(lat.is_normal(i), is_normal(g, lat[i]));
}

TEST(CoreAndSocle, Examples) {
  auto g = s3();
  auto lat = SubgroupLattice::build(g);
  for (auto mi : lat.maximals()) {
    const auto& m = lat[mi];
    auto cs = core_and_socle(g, m);
    if (m.order() == 3) {
      EXPECT_EQ(cs.core, m);
      EXPECT_EQ(cs.socle.order(), 6u);
    } else {
      EXPECT_EQ(cs.core.order(), 1u);
      EXPECT_EQ(cs.socle.order(), 3u);
    }
    EXPECT_EQ(intersection(g, m, cs.socle), cs.core);
    EXPECT_EQ(product_size(m, cs.socle), g.order());
  }
  auto f = f20();
  for (const auto& m : maximal_subgroups(f)) {
    auto cs = core_and_socle(f, m);
    if (m.order() == 4) {
      EXPECT_EQ(cs.core.order(), 1u);
      EXPECT_EQ(cs.socle.order(), 5u);
    }
    EXPECT_EQ(intersection(f, m, cs.socle), cs.core);
    EXPECT_EQ(product_size(m, cs.socle), f.order());
  }
  EXPECT_THROW(core_and_socle(g, trivial_subgroup(g)), PreconditionError);
  auto a5 = permutation_group(5, {{1, 2, 0, 3, 4}, {0, 1, 3, 4, 2}});
  EXPECT_THROW(core_and_socle(a5, maximal_subgroups(a5).front()), Unsupported);
}

TEST(Structure, SolvableAndNilpotent) {
  EXPECT_TRUE(is_solvable(s3()));
  EXPECT_FALSE(is_nilpotent(s3(), whole_group(s3())));
  auto d8 = dihedral_group(4);
  EXPECT_TRUE(is_nilpotent(d8, whole_group(d8)));
  auto f = f20();
  EXPECT_EQ(derived_subgroup(f, whole_group(f)).order(), 5u);
  EXPECT_TRUE(is_nilpotent(f, derived_subgroup(f, whole_group(f))));
}
