#include "solvint/suites.hpp"

#include <random>

namespace solvint::suites {

namespace {

using ffla::Matrix;
using sdp::SdGroup;

Matrix m(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) { return Matrix::from_rows(p, rows); }

struct Recipe {
  std::string name;
  std::uint32_t p;
  std::size_t k;
  std::vector<Matrix> gens;
};

std::vector<Recipe> recipes() {
  return {
      {"3:2", 3, 1, {m(3, {{2}})}},
      {"5:2", 5, 1, {m(5, {{4}})}},
      {"5:4", 5, 1, {m(5, {{2}})}},
      {"7:3", 7, 1, {m(7, {{2}})}},
      {"7:6", 7, 1, {m(7, {{3}})}},
      {"11:5", 11, 1, {m(11, {{3}})}},
      {"13:3", 13, 1, {m(13, {{3}})}},
      {"2^2:3", 2, 2, {m(2, {{0, 1}, {1, 1}})}},
      {"2^2:S3", 2, 2, {m(2, {{0, 1}, {1, 1}}), m(2, {{0, 1}, {1, 0}})}},
      {"3^2:4", 3, 2, {m(3, {{0, 1}, {2, 0}})}},
      {"3^2:8", 3, 2, {m(3, {{1, 1}, {2, 1}})}},
      {"3^2:Q8", 3, 2, {m(3, {{0, 1}, {2, 0}}), m(3, {{1, 1}, {1, 2}})}},
      {"3^2:SL(2,3)", 3, 2, {m(3, {{1, 1}, {0, 1}}), m(3, {{1, 0}, {1, 1}})}},
      {"2^3:7", 2, 3, {m(2, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}})}},
      {"2^3:7:3", 2, 3, {m(2, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}), m(2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 1}})}},
      // x^2 + x + 1 is irreducible mod 5
      {"5^2:3", 5, 2, {m(5, {{0, 1}, {4, 4}})}},
  };
}

std::vector<PoolEntry> build_pool(std::uint64_t max_order, std::size_t max_t, std::uint64_t max_v, std::uint64_t max_h) {
  std::vector<PoolEntry> out;
  for (const auto& r : recipes()) {
    auto base = SdGroup::create(r.p, r.k, 1, r.gens);
    if (base.v_order() > max_v || base.h().order() > max_h) continue;
    for (std::size_t t = 1; t <= max_t; ++t) {
      std::uint64_t order = base.h().order();
      for (std::size_t i = 0; i < t; ++i) order *= base.v_order();
      if (order > max_order) break;
      out.push_back({r.name + " t=" + std::to_string(t), SdGroup::create(r.p, r.k, t, r.gens)});
    }
  }
  return out;
}

ElementSet everything(const SdGroup& g) {
  ElementSet all(static_cast<std::size_t>(g.order()));
  for (ElementId e = 0; e < g.order(); ++e) all.set(e);
  return all;
}

std::string vec_text(const ffla::Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (ok) return;
  ++r.failures;
  if (r.samples.size() < 5) r.samples.push_back(what);
}

// Uniform index in [0, n) from the raw engine output, portable across standard libraries.
std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

std::vector<PoolEntry> sd_pool(std::uint64_t max_order) { return build_pool(max_order, 4, UINT64_MAX, UINT64_MAX); }

std::vector<PoolEntry> round_trip_pool() { return build_pool(UINT64_MAX, 2, 25, 24); }

SuiteResult interkm_suite(const std::vector<PoolEntry>& pool, std::uint64_t seed, std::size_t pairs) {
  SuiteResult r{"interKM", 0, 0, {}};
  if (pool.empty()) return r;
  std::mt19937_64 rng(seed);
  std::vector<std::vector<sdp::MaximalSupplement>> sups;
  std::vector<std::vector<ffla::Subspace>> subs;
  for (const auto& e : pool) {
    sups.push_back(sdp::enumerate_maximal_supplements(e.group));
    subs.push_back(sdp::enumerate_submodules(e.group));
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t gi = pick(rng, pool.size());
    const auto& g = pool[gi].group;
    const auto& u = subs[gi][pick(rng, subs[gi].size())];
    ffla::Vec z(g.k()), v(g.dim());
    for (auto& c : z) c = static_cast<ffla::Scalar>(pick(rng, g.p()));
    for (auto& c : v) c = static_cast<ffla::Scalar>(pick(rng, g.p()));
    auto x = g.centralizer(g.all_h(), ffla::rref(g.p(), g.k(), {z}));
    auto k = sdp::make_structured(g, u, x, v);
    const auto& mm = sups[gi][pick(rng, sups[gi].size())];
    bool ok = sdp::element_set(g, sdp::intersect(g, k, mm)) == (sdp::element_set(g, k) & sdp::element_set(g, mm));
    record(r, ok, pool[gi].name + " case " + std::to_string(i) + " z=" + vec_text(z) + " v=" + vec_text(v));
  }
  return r;
}

SuiteResult impor_suite(const std::vector<PoolEntry>& pool, std::uint64_t seed, std::size_t families,
                        std::size_t max_family) {
  SuiteResult r{"impor", 0, 0, {}};
  if (pool.empty() || max_family == 0) return r;
  std::mt19937_64 rng(seed);
  std::vector<std::vector<sdp::MaximalSupplement>> sups;
  for (const auto& e : pool) sups.push_back(sdp::enumerate_maximal_supplements(e.group));
  for (std::size_t i = 0; i < families; ++i) {
    const std::size_t gi = pick(rng, pool.size());
    const auto& g = pool[gi].group;
    std::vector<sdp::MaximalSupplement> fam;
    const std::size_t n = 1 + pick(rng, max_family);
    ElementSet brute = everything(g);
    for (std::size_t j = 0; j < n; ++j) {
      fam.push_back(sups[gi][pick(rng, sups[gi].size())]);
      brute &= sdp::element_set(g, fam.back());
    }
    auto c = sdp::canonicalize_intersection(g, fam);
    bool ok = g.field().is_closed(c.z) && sdp::element_set(g, c) == brute;
    record(r, ok, pool[gi].name + " family " + std::to_string(i) + " size " + std::to_string(n));
  }
  return r;
}

SuiteResult possibile_suite(const std::vector<PoolEntry>& pool) {
  SuiteResult r{"possibile", 0, 0, {}};
  for (const auto& e : pool) {
    const auto& g = e.group;
    const auto all_h = g.all_h();
    for (const auto& u : sdp::enumerate_submodules(g)) {
      const std::size_t tstar = sdp::submodule_depth(g, u);
      for (const auto& z : ffla::enumerate_f_subspaces(g.field())) {
        const std::size_t d = g.field().f_dim(z);
        if (tstar == 0 && d > 0) continue;
        auto fam = sdp::realize_intersection(g, u, z);
        // U·C_H(Z) directly: w in U and h fixing Z pointwise
        ElementSet target(static_cast<std::size_t>(g.order()));
        for (ElementId id = 0; id < g.order(); ++id) {
          auto el = g.element(id);
          if (!u.contains(el.w)) continue;
          bool fixes = true;
          for (const auto& b : z.basis()) fixes = fixes && ffla::apply(b, g.h()[el.h]) == b;
          if (fixes) target.set(id);
        }
        ElementSet meet = everything(g);
        for (const auto& mm : fam) meet &= sdp::element_set(g, mm);
        bool ok = fam.size() == tstar + d && meet == target;
        record(r, ok, e.name + " dim U=" + std::to_string(u.dim()) + " dim Z=" + std::to_string(z.dim()));
      }
    }
  }
  return r;
}

}  // namespace solvint::suites
