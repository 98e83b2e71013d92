// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "solvint/cli/commands.hpp"
#include "solvint/corpus.hpp"
#include "solvint/props.hpp"
#include "solvint/suites.hpp"
#include "solvint/tower.hpp"

using namespace solvint;

namespace {

constexpr std::uint64_t kSeed = 0x5eed;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    v.pass = false;
    v.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s budget)";
  }
  if (!v.pass) ++failures;
  std::printf("%s criterion %2d %-34s %8.2fs  %s\n", v.pass ? "PASS" : "FAIL", id, title, secs, v.detail.c_str());
  std::fflush(stdout);
}

Verdict suite_verdict(const suites::SuiteResult& r, std::uint64_t min_cases) {
  std::string d = std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures";
  if (!r.samples.empty()) d += "; first: " + r.samples.front();
  return {r.pass() && r.cases >= min_cases, d};
}

Verdict tower_checks(std::size_t n, const std::vector<std::uint64_t>& primes, std::uint64_t order) {
  auto tp = tower::find_primes(n, false);
  auto g = tower::TowerGroup::build(tp);
  if (g.primes() != primes || g.order() != order) return {false, "unexpected primes or order"};
  auto oracle = g.oracle(order);
  auto lat = groups::SubgroupLattice::build(oracle, order);

  std::map<std::uint64_t, std::size_t> maximal_by_index;
  for (auto m : lat.maximals()) ++maximal_by_index[lat.index(m)];
  std::map<std::uint64_t, std::size_t> expected{{2, 1}};
  for (auto p : primes) expected[p] = p;
  if (maximal_by_index != expected) return {false, "maximal-subgroup counts differ"};

  std::size_t z = 0;
  for (const auto& row : tower::verify_mu_zero(g, order)) {
    ++z;
    if (row.mu != 0) return {false, "mu(" + row.label + ") = " + std::to_string(row.mu)};
  }
  auto c = tower::tilde_counts(g, order);
  if (!c.structural_matches_oracle || !*c.structural_matches_oracle)
    return {false, "structural classes differ from the oracle"};
  const std::uint64_t beta_bound = (std::uint64_t{2} << n) - 1;
  if (!c.beta_oracle || *c.beta_oracle > beta_bound) return {false, "beta_tilde exceeds 2^(n+1) - 1"};
  std::string d = "m = (1";
  for (auto p : primes) d += "," + std::to_string(maximal_by_index[p]);
  d += "), " + std::to_string(z) + " Z-classes with mu = 0, gamma_tilde oracle " + std::to_string(*c.gamma_oracle) +
       " vs formula " + std::to_string(c.gamma_formula) + " (" + (c.formula_agrees() ? "agree" : "disagree") +
       "), beta_tilde " + std::to_string(*c.beta_oracle) + " <= " + std::to_string(beta_bound);
  return {true, d};
}

// μ from its defining recursion and maximal-intersection status from the
// maximals, both recomputed here rather than read from the lattice.
std::string lattice_problem(const groups::SubgroupLattice& lat) {
  const std::size_t n = lat.size();
  std::vector<std::int64_t> mu(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lat[a].order() > lat[b].order(); });
  for (auto h : order) {
    if (h == lat.whole()) {
      mu[h] = 1;
      continue;
    }
    std::int64_t s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != h && lat[h].bits().is_subset_of(lat[k].bits())) s += mu[k];
    mu[h] = -s;
  }
  for (std::size_t h = 0; h < n; ++h) {
    if (mu[h] != lat.mobius(h)) return "mobius mismatch at subgroup " + std::to_string(h);
    std::int64_t s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (lat[h].bits().is_subset_of(lat[k].bits())) s += lat.mobius(k);
    if (s != (h == lat.whole() ? 1 : 0)) return "mobius sum fails at subgroup " + std::to_string(h);
    ElementSet meet = lat[lat.whole()].bits();
    for (auto m : lat.maximals())
      if (lat[h].bits().is_subset_of(lat[m].bits())) meet &= lat[m].bits();
    const bool intersection = h != lat.whole() && meet == lat[h].bits();
    if (lat.mobius(h) != 0 && h != lat.whole() && !intersection)
      return "nonzero mobius off the maximal intersections at subgroup " + std::to_string(h);
  }
  for (const auto& [idx, v] : groups::counts(lat))
    if (v.maximal > v.nonzero_mobius || v.nonzero_mobius > v.intersections)
      return "m_n <= b_n <= c_n fails at n = " + std::to_string(idx);
  return {};
}

std::string run_cli(const cli::Options& opt) {
  std::ostringstream out, err;
  int code = cli::run(opt, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

std::string full_suite() {
  std::string bytes;
  auto verify = [&](const char* suite, const char* spec) {
    cli::Options o;
    o.command = "verify";
    o.suite = suite;
    o.spec_text = spec;
    o.seed = kSeed;
    bytes += run_cli(o);
  };
  const char* corpus = R"({"kind": "corpus", "set": "solvable"})";
  const char* primitive = R"({"kind": "corpus", "set": "primitive"})";
  const char* pool = R"({"kind": "corpus", "set": "sdp-pool"})";
  for (const char* s : {"interKM", "impor", "possibile"}) verify(s, pool);
  verify("tower", R"({"kind": "tower", "n": 2})");
  verify("tower", R"({"kind": "tower", "n": 3})");
  for (const char* s : {"mobius", "fittingamma", "thuno", "propo"}) verify(s, corpus);
  verify("due", primitive);
  cli::Options c;
  c.command = "counts";
  c.n_min = 1;
  c.n_max = 6;
  bytes += run_cli(c);
  c.strict_tower = true;
  bytes += run_cli(c);
  return bytes;
}

}  // namespace

int main() {
  const auto pool = suites::sd_pool(2000);
  const auto solvable = corpus::solvable_corpus();
  const auto primitive = corpus::primitive_corpus();

  criterion(1, "interKM closed form", 120, [&] {
    for (const auto& e : pool)
      if (e.group.order() > 2000) return Verdict{false, e.name + " exceeds order 2000"};
    return suite_verdict(suites::interkm_suite(pool, kSeed, 1000), 1000);
  });
  criterion(2, "impor canonical intersection", 300,
            [&] { return suite_verdict(suites::impor_suite(pool, kSeed, 1000, 5), 1000); });
  criterion(3, "possibile round trip", 0, [&] {
    auto rt = suites::round_trip_pool();
    for (const auto& e : rt)
      if (e.group.t() > 2 || e.group.v_order() > 25 || e.group.h().order() > 24)
        return Verdict{false, e.name + " lies outside t <= 2, |V| <= 25, |H| <= 24"};
    auto v = suite_verdict(suites::possibile_suite(rt), 1);
    v.detail += " over " + std::to_string(rt.size()) + " groups";
    return v;
  });
  criterion(4, "tower n = 2", 10, [] { return tower_checks(2, {3, 5}, 60); });
  criterion(5, "tower n = 3", 600, [] { return tower_checks(3, {3, 5, 17}, 2040); });

  criterion(6, "mobius and lattice", 0, [&] {
    if (solvable.size() < 20) return Verdict{false, "corpus has fewer than 20 groups"};
    for (const auto& e : solvable) {
      if (e.group->order() > 200) return Verdict{false, e.name + " exceeds order 200"};
      auto p = lattice_problem(groups::SubgroupLattice::build(*e.group));
      if (!p.empty()) return Verdict{false, e.name + ": " + p};
    }
    return Verdict{true, std::to_string(solvable.size()) + " groups"};
  });
  criterion(7, "fittingamma", 0, [&] {
    std::size_t nilpotent = 0;
    for (const auto& e : solvable) {
      if (!corpus::has_nilpotent_derived_subgroup(*e.group)) continue;
      ++nilpotent;
      auto eta = props::eta_min(groups::SubgroupLattice::build(*e.group));
      if (!props::has_eta_property(eta, 2, 1)) return Verdict{false, e.name + ": " + eta.eta_min().certificate() + " > 2"};
    }
    return Verdict{nilpotent > 0, std::to_string(nilpotent) + " groups with nilpotent derived subgroup"};
  });
  criterion(8, "thuno", 0, [&] {
    std::size_t rows = 0;
    for (const auto& e : solvable) {
      auto r = props::verify_thuno(groups::SubgroupLattice::build(*e.group));
      rows += r.rows.size();
      for (const auto& row : r.rows)
        if (!row.pass)
          return Verdict{false, e.name + ": subgroup " + std::to_string(row.subgroup) + " has " +
                                    row.eta.eta().certificate() + " > " + std::to_string(row.gamma_h + 1)};
    }
    return Verdict{true, std::to_string(rows) + " classes over " + std::to_string(solvable.size()) + " groups"};
  });
  criterion(9, "due", 0, [&] {
    for (const auto& e : primitive) {
      auto d = props::verify_due(*e.primitive);
      if (!d.pass()) return Verdict{false, e.name};
    }
    return Verdict{true, std::to_string(primitive.size()) + " primitive groups"};
  });
  criterion(10, "propo", 0, [&] {
    std::size_t rows = 0;
    for (const auto& e : solvable) {
      auto lat = groups::SubgroupLattice::build(*e.group);
      auto c = groups::counts(lat);
      for (const auto& row : props::check_propo(c, props::alpha(c), props::eta_min(lat).eta_min())) {
        ++rows;
        if (!row.pass) return Verdict{false, e.name + ": c_" + std::to_string(row.n) + " exceeds the bound"};
      }
    }
    return Verdict{true, std::to_string(rows) + " (group, n) rows"};
  });
  criterion(11, "determinism", 0, [] {
    auto a = full_suite();
    auto b = full_suite();
    return Verdict{a == b, std::to_string(a.size()) + " bytes per run"};
  });
  return failures == 0 ? 0 : 1;
}
