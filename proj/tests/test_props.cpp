#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "solvint/corpus.hpp"
#include "solvint/errors.hpp"
#include "solvint/props.hpp"

using namespace solvint;
using namespace solvint::props;
using ffla::Matrix;

namespace {

groups::MatrixGroup mgroup(std::uint32_t p, std::size_t k, const std::vector<std::vector<std::vector<std::int64_t>>>& gens) {
  std::vector<Matrix> ms;
  for (const auto& g : gens) ms.push_back(Matrix::from_rows(p, g));
  return groups::MatrixGroup::generate(p, k, ms);
}

// All subspaces of F_p^k as spans of vector subsets of size <= k.
std::vector<ffla::Subspace> all_subspaces(std::uint32_t p, std::size_t k) {
  auto vecs = ffla::Subspace::full(p, k).elements();
  std::set<ffla::Subspace> out{ffla::Subspace(p, k)};
  std::vector<ffla::Subspace> frontier{ffla::Subspace(p, k)};
  while (!frontier.empty()) {
    auto s = frontier.back();
    frontier.pop_back();
    for (const auto& v : vecs) {
      auto b = s.basis();
      b.push_back(v);
      auto t = ffla::rref(p, k, b);
      if (out.insert(t).second) frontier.push_back(t);
    }
  }
  return {out.begin(), out.end()};
}

// γ from the definition, for absolutely irreducible H (F = F_p).
std::size_t brute_gamma(const groups::MatrixGroup& h, bool strong) {
  auto subs = all_subspaces(h.modulus(), h.dim());
  auto o = h.oracle();
  auto maxes = groups::maximal_subgroups(o);
  auto cent = [&](const ffla::Subspace& w) {
    std::set<ElementId> c;
    for (ElementId x = 0; x < h.order(); ++x) {
      bool ok = true;
      for (const auto& v : w.elements()) ok = ok && ffla::apply(v, h[x]) == v;
      if (ok) c.insert(x);
    }
    return c;
  };
  std::size_t gamma = 1;
  for (const auto& w : subs) {
    auto cw = cent(w);
    std::set<ElementId> inter;
    for (ElementId x = 0; x < h.order(); ++x) inter.insert(x);
    for (const auto& m : maxes) {
      bool contains = true;
      for (auto x : cw) contains = contains && m.contains(x);
      if (!contains) continue;
      std::set<ElementId> next;
      for (auto x : inter)
        if (m.contains(x)) next.insert(x);
      inter = next;
    }
    std::size_t best = h.dim();
    for (const auto& ws : subs) {
      auto cs = cent(ws);
      std::set<ElementId> meet;
      for (auto x : cs)
        if (strong || inter.count(x)) meet.insert(x);
      if (meet == cw) best = std::min(best, ws.dim());
    }
    gamma = std::max(gamma, best);
  }
  return gamma;
}

// Minimal product over all subsets of the maximals containing H.
std::uint64_t brute_eta_product(const groups::SubgroupLattice& lat, std::size_t h) {
  std::vector<std::size_t> cands;
  for (auto m : lat.maximals())
    if (lat[h].is_subgroup_of(lat[m])) cands.push_back(m);
  EXPECT_LE(cands.size(), 20u);
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cands.size()); ++mask) {
    ElementSet cur = lat[lat.whole()].bits();
    std::uint64_t product = 1;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (mask >> i & 1) {
        cur &= lat[cands[i]].bits();
        product *= lat.index(cands[i]);
      }
    if (cur == lat[h].bits()) best = std::min(best, product);
  }
  return best;
}

}  // namespace

TEST(LogRatio, ExactComparisons) {
  for (std::uint64_t b = 2; b < 30; ++b)
    for (std::uint64_t v = 1; v < 200; v += 7)
      for (std::uint64_t num = 0; num < 8; ++num)
        for (std::uint64_t den = 1; den < 5; ++den) {
          LogRatio r{v, b};
          const double lhs = std::pow(double(v), double(den)), rhs = std::pow(double(b), double(num));
          if (std::abs(lhs - rhs) > 1e-6 * rhs) EXPECT_EQ(r.at_most(num, den), lhs <= rhs);
        }
  LogRatio f20{25, 20};
  EXPECT_TRUE(f20.at_most(2, 1));
  EXPECT_FALSE(f20.at_most(1, 1));
  EXPECT_EQ(f20.floor_times(3243, 1000), 3u);  // 1.0745 * 3.243 = 3.48
  EXPECT_EQ((LogRatio{6, 6}.floor_times(3243, 1000)), 3u);
  EXPECT_EQ((LogRatio{16, 2}.floor_times(1, 1)), 4u);
  EXPECT_EQ(compare(LogRatio{4, 2}, LogRatio{9, 3}), 0);
  EXPECT_LT(compare(LogRatio{24, 20}, LogRatio{25, 20}), 0);
  EXPECT_EQ(f20.decimal(), "1.0745");
}

TEST(Gamma, LineModulesAreOneModules) {
  for (auto g : {mgroup(5, 1, {{{2}}}), mgroup(7, 1, {{{3}}}), mgroup(3, 2, {{{1, 1}, {2, 1}}})}) {
    auto r = gamma_min(g);
    EXPECT_EQ(r.f_dim, 1u);
    EXPECT_EQ(r.gamma_min, 1u);
    EXPECT_TRUE(is_gamma_module(g, 1));
  }
  // C8 = F_9^*: |F| = 9, dim_F V = 1
  EXPECT_EQ(gamma_min(mgroup(3, 2, {{{1, 1}, {2, 1}}})).field_order, 9u);
}

TEST(Gamma, MatchesDefinitionBruteForce) {
  std::vector<groups::MatrixGroup> hs = {
      mgroup(3, 2, {{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}}),  // SL(2,3)
      mgroup(3, 2, {{{0, 1}, {2, 0}}, {{1, 1}, {1, 2}}}),  // Q8
      mgroup(3, 2, {{{1, 1}, {0, 1}}, {{2, 0}, {0, 1}}, {{0, 1}, {1, 0}}}),  // GL(2,3)
      mgroup(2, 2, {{{0, 1}, {1, 1}}, {{0, 1}, {1, 0}}}),  // GL(2,2)
      mgroup(5, 2, {{{0, 1}, {4, 0}}, {{0, 1}, {1, 0}}}),  // D8 on F_5^2
      mgroup(2, 3, {{{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}, {{1, 0, 0}, {0, 0, 1}, {0, 1, 1}}}),  // 7:3 on F_2^3
  };
  for (const auto& h : hs) {
    auto f = ffla::endomorphism_field(h.modulus(), h.dim(), h.generators());
    if (f.degree() != 1) continue;
    auto r = gamma_min(h);
    EXPECT_EQ(r.gamma_min, brute_gamma(h, false)) << "|H| = " << h.order();
    EXPECT_EQ(r.strong_gamma_min, brute_gamma(h, true)) << "|H| = " << h.order();
    EXPECT_LE(r.gamma_min, r.strong_gamma_min);
    EXPECT_LE(r.gamma_min, r.f_dim);
    for (std::size_t g = 1; g <= r.f_dim; ++g) {
      EXPECT_EQ(is_gamma_module(h, g), g >= r.gamma_min);
      EXPECT_EQ(is_gamma_module(h, g, true), g >= r.strong_gamma_min);
    }
  }
}

TEST(Gamma, SL23WitnessForV) {
  auto h = mgroup(3, 2, {{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}});
  auto r = gamma_min(h);
  EXPECT_EQ(r.gamma_min, 1u);
  EXPECT_EQ(r.witnesses.size(), 6u);
  const auto& last = r.witnesses.back();
  EXPECT_TRUE(last.w.is_full());
  EXPECT_EQ(last.w_star.dim(), 1u);
}

TEST(Gamma, Caps) {
  auto h = mgroup(3, 2, {{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}});
  GammaOptions tight;
  tight.max_f_dim = 1;
  EXPECT_THROW(gamma_min(h, "", tight), ResourceCap);
  tight = {};
  tight.max_field_order = 2;
  EXPECT_THROW(gamma_min(h, "", tight), ResourceCap);
}

TEST(Eta, Examples) {
  auto s3 = groups::cyclic_semidirect(3, 2, 2);
  auto lat = groups::SubgroupLattice::build(s3);
  auto row = eta_of_intersection(lat, lat.trivial());
  EXPECT_EQ(row.index, 6u);
  EXPECT_EQ(row.product, 6u);
  EXPECT_EQ(row.family.size(), 2u);
  for (auto m : lat.maximals()) {
    auto r = eta_of_intersection(lat, m);
    EXPECT_EQ(r.product, r.index);
    EXPECT_EQ(r.family, std::vector<std::size_t>{m});
  }
  EXPECT_THROW(eta_of_intersection(lat, lat.whole()), PreconditionError);

  auto f20 = groups::cyclic_semidirect(5, 4, 2);
  auto lf = groups::SubgroupLattice::build(f20);
  auto r = eta_of_intersection(lf, lf.trivial());
  EXPECT_EQ(r.index, 20u);
  EXPECT_EQ(r.product, 25u);
  ElementSet meet = lf[lf.whole()].bits();
  for (auto m : r.family) meet &= lf[m].bits();
  EXPECT_EQ(meet, lf[lf.trivial()].bits());
  // C4 in F20 is not an intersection of maximals (it lies only in the index-5 one above it)
  for (std::size_t i = 0; i < lf.size(); ++i)
    if (!lf.is_maximal_intersection(i)) EXPECT_THROW(eta_of_intersection(lf, i), PreconditionError);
}

TEST(Eta, BranchAndBoundMatchesExhaustive) {
  for (const auto& e : corpus::solvable_corpus()) {
    auto lat = groups::SubgroupLattice::build(*e.group);
    std::size_t maxes = lat.maximals().size();
    if (maxes > 20) continue;
    auto rep = eta_min(lat);
    for (const auto& row : rep.rows) {
      EXPECT_EQ(row.product, brute_eta_product(lat, row.subgroup)) << e.name;
      ElementSet meet = lat[lat.whole()].bits();
      std::uint64_t product = 1;
      for (auto m : row.family) {
        meet &= lat[m].bits();
        product *= lat.index(m);
      }
      EXPECT_EQ(meet, lat[row.subgroup].bits()) << e.name;
      EXPECT_EQ(product, row.product);
      EXPECT_TRUE(row.eta().at_most(row.product == row.index ? 1 : 100, 1));
      EXPECT_FALSE(row.product < row.index);
    }
    if (rep.argmax)
      for (const auto& row : rep.rows) EXPECT_LE(compare(row.eta(), rep.eta_min()), 0);
  }
}

TEST(FiniteForms, FittingGammaAndThuno) {
  std::size_t nilpotent_derived = 0;
  for (const auto& e : corpus::solvable_corpus()) {
    auto lat = groups::SubgroupLattice::build(*e.group);
    if (corpus::has_nilpotent_derived_subgroup(*e.group)) {
      ++nilpotent_derived;
      EXPECT_TRUE(has_eta_property(eta_min(lat), 2, 1)) << e.name;
    }
    auto th = verify_thuno(lat);
    EXPECT_TRUE(th.pass()) << e.name;
    for (const auto& row : th.rows) EXPECT_GE(row.gamma_h, 1u);
  }
  EXPECT_GE(nilpotent_derived, 10u);
}

TEST(FiniteForms, ThunoS3) {
  auto s3 = groups::cyclic_semidirect(3, 2, 2);
  auto lat = groups::SubgroupLattice::build(s3);
  auto th = verify_thuno(lat);
  EXPECT_EQ(th.modules.size(), 2u);
  for (const auto& row : th.rows) {
    EXPECT_EQ(row.gamma_h, 1u);
    EXPECT_TRUE(row.eta.eta().at_most(2, 1));
  }
}

TEST(FiniteForms, ThunoRejectsNonSolvable) {
  // A5 as 5x5 permutation matrices of (12345) and (123)
  auto a5 = mgroup(2, 5, {{{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}},
                          {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}});
  ASSERT_EQ(a5.order(), 60u);
  auto o = a5.oracle();
  auto lat = groups::SubgroupLattice::build(o);
  EXPECT_THROW(verify_thuno(lat), Unsupported);
}

TEST(FiniteForms, Due) {
  auto f20 = sdp::SdGroup::create(5, 1, 1, {Matrix::from_rows(5, {{2}})});
  auto d = verify_due(f20);
  EXPECT_EQ(d.gamma.gamma_min, 1u);
  EXPECT_EQ(d.bound, 3u);
  EXPECT_TRUE(d.pass());
  EXPECT_FALSE(d.flips);
  for (const auto& e : corpus::primitive_corpus()) {
    auto r = verify_due(*e.primitive);
    EXPECT_TRUE(r.pass()) << e.name;
    // |Γ| <= |V|^3.243 in floating point as a cross-check
    EXPECT_LE(std::log(double(e.primitive->order())), 3.243 * std::log(double(e.primitive->v_order())));
  }
  auto sl = sdp::SdGroup::create(3, 2, 1, {Matrix::from_rows(3, {{1, 1}, {0, 1}}), Matrix::from_rows(3, {{1, 0}, {1, 1}})});
  EXPECT_EQ(sl.order(), 216u);
  EXPECT_TRUE(verify_due(sl).palfy_wolf_pass);
  auto t2 = sdp::SdGroup::create(5, 1, 2, {Matrix::from_rows(5, {{2}})});
  EXPECT_THROW(verify_due(t2), PreconditionError);
}

TEST(FiniteForms, Propo) {
  LogRatio one{3, 3};
  EXPECT_EQ(propo_bound(1, one, one), 1);
  EXPECT_EQ(propo_bound(3, one, one), 18);
  EXPECT_EQ(propo_bound(4, LogRatio{1, 2}, LogRatio{2, 2}), 10);  // alpha = 0

  auto s3 = groups::cyclic_semidirect(3, 2, 2);
  auto counts = groups::counts(s3);
  auto a = alpha(counts);
  EXPECT_EQ(compare(a, one), 0);
  auto rows = check_propo(counts, a, one);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.pass);
    if (r.n == 3) {
      EXPECT_EQ(r.c_n, 3u);
      EXPECT_EQ(r.bound, 18);
    }
  }
  EXPECT_THROW(check_propo(counts, LogRatio{1, 2}, one), PreconditionError);

  for (const auto& e : corpus::solvable_corpus()) {
    auto lat = groups::SubgroupLattice::build(*e.group);
    auto c = groups::counts(lat);
    for (const auto& r : check_propo(c, alpha(c), eta_min(lat).eta_min())) EXPECT_TRUE(r.pass) << e.name << " n=" << r.n;
  }
}

TEST(Corpus, Shape) {
  auto c = corpus::solvable_corpus();
  EXPECT_GE(c.size(), 20u);
  std::set<std::string> names;
  for (const auto& e : c) {
    EXPECT_LE(e.group->order(), 200u) << e.name;
    EXPECT_TRUE(groups::is_solvable(*e.group)) << e.name;
    names.insert(e.name);
  }
  EXPECT_EQ(names.size(), c.size());
  for (const auto& e : corpus::primitive_corpus()) EXPECT_EQ(e.primitive->t(), 1u);
}
