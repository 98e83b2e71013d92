#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "solvint/errors.hpp"
#include "solvint/ffla.hpp"

using namespace solvint;
using namespace solvint::ffla;

namespace {

Vec random_vec(std::mt19937_64& rng, std::uint32_t p, std::size_t n) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Scalar>(rng() % p);
  return v;
}

// Span by brute force: every linear combination of the inputs.
std::set<Vec> span_elements(std::uint32_t p, std::size_t n, const std::vector<Vec>& vs) {
  PrimeField f(p);
  std::set<Vec> out{Vec(n, 0)};
  for (const auto& v : vs) {
    std::set<Vec> next;
    for (const auto& w : out)
      for (Scalar c = 0; c < p; ++c) next.insert(add(f, w, scale(f, c, v)));
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(PrimeField, Arithmetic) {
  PrimeField f(7);
  for (Scalar a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.reduce(-1), 6u);
  EXPECT_EQ(f.pow(3, 6), 1u);
  EXPECT_THROW(f.inv(0), PreconditionError);
  EXPECT_THROW(PrimeField(9), MalformedInput);
}

TEST(Rref, Examples) {
  EXPECT_EQ(rref(5, 2, {}).dim(), 0u);
  EXPECT_TRUE(rref(5, 2, {{1, 0}, {0, 1}}).is_full());
  auto s = rref(5, 2, {{2, 4}, {1, 2}});
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.basis()[0], (Vec{1, 2}));
  EXPECT_TRUE(s.contains(Vec{2, 4}));
  EXPECT_THROW(rref(5, 2, {{1, 2, 3}}), MalformedInput);
  EXPECT_THROW(rref(5, 2, {{7, 0}}), MalformedInput);
}

TEST(Rref, CanonicalUnderShuffleAndScaling) {
  std::mt19937_64 rng(17);
  const std::uint32_t primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 10000; ++trial) {
    std::uint32_t p = primes[trial % 4];
    PrimeField f(p);
    std::size_t n = 1 + rng() % 5, m = rng() % 5;
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < m; ++i) vs.push_back(random_vec(rng, p, n));
    auto a = rref(p, n, vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    for (auto& v : vs) v = scale(f, static_cast<Scalar>(1 + rng() % (p - 1)), v);
    auto b = rref(p, n, vs);
    ASSERT_EQ(a, b);
    EXPECT_EQ(rref(p, n, a.basis()), a);
  }
}

TEST(Rref, SpanMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t p = trial % 2 ? 3 : 2;
    std::size_t n = 1 + rng() % 4;
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < rng() % 4; ++i) vs.push_back(random_vec(rng, p, n));
    auto s = rref(p, n, vs);
    auto els = s.elements();
    std::set<Vec> got(els.begin(), els.end());
    EXPECT_EQ(got, span_elements(p, n, vs));
  }
}

TEST(SubspaceAlgebra, DimensionFormulaAndModularLaw) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::uint32_t p = trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 3 : 5);
    std::size_t n = 1 + rng() % 5;
    auto rand_space = [&] {
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < rng() % (n + 1); ++i) vs.push_back(random_vec(rng, p, n));
      return rref(p, n, vs);
    };
    auto a = rand_space(), b = rand_space(), c0 = rand_space();
    EXPECT_EQ(a.dim() + b.dim(), sum(a, b).dim() + intersect(a, b).dim());
    EXPECT_EQ(intersect(a, a), a);
    auto c = sum(a, c0);  // A ⊆ C
    EXPECT_EQ(sum(a, intersect(b, c)), intersect(sum(a, b), c));
    auto amb = sum(a, b);
    auto comp = complement_in(a, amb);
    EXPECT_EQ(intersect(a, comp).dim(), 0u);
    EXPECT_EQ(sum(a, comp), amb);
  }
  EXPECT_THROW(sum(Subspace(3, 2), Subspace(3, 3)), MalformedInput);
}

TEST(SubspaceAlgebra, ComplementExample) {
  auto a = rref(5, 2, {{1, 1}});
  auto b = complement_in(a, Subspace::full(5, 2));
  EXPECT_EQ(b.dim(), 1u);
  // Exhaustive direct-sum check: every vector splits uniquely.
  PrimeField f(5);
  for (Scalar x = 0; x < 5; ++x)
    for (Scalar y = 0; y < 5; ++y) {
      int ways = 0;
      for (const auto& u : a.elements())
        if (b.contains(sub(f, Vec{x, y}, u))) ++ways;
      EXPECT_EQ(ways, 1);
    }
}

TEST(SubspaceAlgebra, ZeroAmbient) {
  Subspace z(3, 0);
  EXPECT_EQ(z.dim(), 0u);
  EXPECT_TRUE(z.is_full());
  EXPECT_EQ(sum(z, z), z);
  EXPECT_EQ(intersect(z, z), z);
  EXPECT_EQ(z.elements().size(), 1u);
}

TEST(Spin, Examples) {
  std::vector<Matrix> id{Matrix::identity(3, 2)};
  EXPECT_EQ(spin(3, Vec{1, 0}, id).dim(), 1u);
  std::vector<Matrix> rot{Matrix::from_rows(3, {{0, -1}, {1, 0}})};
  EXPECT_TRUE(spin(3, Vec{1, 0}, rot).is_full());
  std::vector<Matrix> scalar{Matrix::from_rows(5, {{2, 0}, {0, 2}})};
  auto s = spin(5, Vec{1, 0}, scalar);
  EXPECT_EQ(s, rref(5, 2, {{1, 0}}));
  EXPECT_THROW(spin(3, Vec{0, 0}, rot), PreconditionError);
}

TEST(Spin, ResultIsInvariant) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::uint32_t p = trial % 2 ? 2 : 3;
    std::size_t n = 1 + rng() % 4;
    std::vector<Matrix> gens;
    for (int k = 0; k < 2; ++k) {
      Matrix m(p, n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<Scalar>(rng() % p);
      gens.push_back(m);
    }
    Vec seed = random_vec(rng, p, n);
    if (is_zero(seed)) continue;
    auto s = spin(p, seed, gens);
    EXPECT_TRUE(s.contains(seed));
    for (const auto& b : s.basis())
      for (const auto& g : gens) EXPECT_TRUE(s.contains(ffla::apply(b, g)));
  }
}

TEST(Irreducibility, ProjectivePointsNotOnlyBasis) {
  // The coordinate swap on F_3^2 fixes the line <(1,1)> while neither basis
  // vector spans an invariant line.
  std::vector<Matrix> swap{Matrix::from_rows(3, {{0, 1}, {1, 0}})};
  EXPECT_FALSE(is_irreducible(3, 2, swap));
  std::vector<Matrix> rot{Matrix::from_rows(3, {{0, 2}, {1, 0}})};
  EXPECT_TRUE(is_irreducible(3, 2, rot));
  EXPECT_FALSE(is_irreducible(3, 0, {}));
}

TEST(EndField, Examples) {
  std::vector<Matrix> two{Matrix::from_rows(5, {{2}})};
  auto f5 = endomorphism_field(5, 1, two);
  EXPECT_EQ(f5.degree(), 1u);
  EXPECT_EQ(f5.order(), 5u);

  std::vector<Matrix> rot{Matrix::from_rows(3, {{0, -1}, {1, 0}})};
  auto f9 = endomorphism_field(3, 2, rot);
  EXPECT_EQ(f9.degree(), 2u);
  EXPECT_EQ(f9.order(), 9u);
  EXPECT_EQ(f9.field_dim_of_module(), 1u);

  std::vector<Matrix> sl{Matrix::from_rows(3, {{1, 1}, {0, 1}}), Matrix::from_rows(3, {{1, 0}, {1, 1}})};
  auto f3 = endomorphism_field(3, 2, sl);
  EXPECT_EQ(f3.degree(), 1u);
  EXPECT_EQ(f3.field_dim_of_module(), 2u);

  std::vector<Matrix> swap{Matrix::from_rows(3, {{0, 1}, {1, 0}})};
  EXPECT_THROW(endomorphism_field(3, 2, swap), PreconditionError);
}

TEST(EndField, CommutesAndUnitGroupOrder) {
  std::vector<std::pair<std::uint32_t, std::vector<Matrix>>> cases = {
      {3, {Matrix::from_rows(3, {{0, 2}, {1, 0}})}},
      {2, {Matrix::from_rows(2, {{0, 1}, {1, 1}})}},
      {2, {Matrix::from_rows(2, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}})}},
      {7, {Matrix::from_rows(7, {{2}})}},
  };
  for (const auto& [p, gens] : cases) {
    std::size_t n = gens[0].rows();
    auto f = endomorphism_field(p, n, gens);
    for (const auto& b : f.basis())
      for (const auto& g : gens) EXPECT_EQ(b * g, g * b);
    // Units: distinct powers of the primitive element, all nonzero.
    std::set<Matrix> units(f.nonzero_elements().begin(), f.nonzero_elements().end());
    EXPECT_EQ(units.size(), f.order() - 1);
    for (const auto& u : units) EXPECT_FALSE(u.is_zero());
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < f.degree(); ++i) expected *= p;
    EXPECT_EQ(f.order(), expected);
  }
}

TEST(EndField, FSubspaces) {
  // F_9 acting on V = F_3^2: only 0 and V are F-subspaces.
  std::vector<Matrix> rot{Matrix::from_rows(3, {{0, 2}, {1, 0}})};
  auto f9 = endomorphism_field(3, 2, rot);
  EXPECT_EQ(enumerate_f_subspaces(f9).size(), 2u);
  // F_3 on F_3^2: 0, four lines, V.
  std::vector<Matrix> sl{Matrix::from_rows(3, {{1, 1}, {0, 1}}), Matrix::from_rows(3, {{1, 0}, {1, 1}})};
  auto f3 = endomorphism_field(3, 2, sl);
  auto subs = enumerate_f_subspaces(f3);
  ASSERT_EQ(subs.size(), 6u);
  EXPECT_EQ(subs.front().dim(), 0u);
  EXPECT_EQ(subs.back().dim(), 2u);
  EXPECT_THROW(enumerate_f_subspaces(f3, 3), ResourceCap);
}

TEST(ModuleIsomorphism, Examples) {
  std::vector<Matrix> a{Matrix::from_rows(5, {{2}})};
  auto t = module_isomorphism(a, a);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->rows(), 1u);
  EXPECT_EQ((a[0] * *t), (*t * a[0]));

  std::vector<Matrix> triv{Matrix::from_rows(5, {{1}})};
  EXPECT_FALSE(module_isomorphism(triv, a));

  // Diagonal C4 on F_5^2: the coordinate axes are isomorphic.
  std::vector<Matrix> diag{Matrix::from_rows(5, {{2, 0}, {0, 2}})};
  auto x = rref(5, 2, {{1, 0}});
  auto y = rref(5, 2, {{0, 1}});
  auto phi = module_isomorphism(x, diag, y, diag);
  ASSERT_TRUE(phi);
  auto img = phi->apply(Vec{1, 0});
  EXPECT_TRUE(y.contains(img));
  EXPECT_FALSE(is_zero(img));
  EXPECT_THROW(phi->apply(Vec{0, 1}), PreconditionError);
}

TEST(Matrix, InverseAndPow) {
  auto m = Matrix::from_rows(7, {{1, 2}, {3, 4}});
  EXPECT_TRUE((m * m.inverse()).is_identity());
  EXPECT_TRUE(Matrix::from_rows(3, {{0, 2}, {1, 0}}).pow(4).is_identity());
  EXPECT_THROW(Matrix::from_rows(5, {{1, 2}, {2, 4}}).inverse(), PreconditionError);
}
