#include "solvint/cli/commands.hpp"

#include <functional>
#include <ostream>

#include "solvint/corpus.hpp"
#include "solvint/crown.hpp"
#include "solvint/errors.hpp"
#include "solvint/props.hpp"
#include "solvint/suites.hpp"
#include "solvint/tower.hpp"

namespace solvint::cli {

namespace {

using std::to_string;

std::string yes(bool b) { return b ? "true" : "false"; }

struct NamedGroup {
  std::string name;
  std::shared_ptr<const groups::OracleGroup> group;
};

std::string digest_of(const Options& opt, const std::string& canonical) {
  std::string bytes = opt.command + "\n" + opt.suite + "\n" + to_string(opt.seed) + "\n" + to_string(opt.cap_order) +
                      "\n" + to_string(opt.cases) + "\n" + canonical;
  return hex64(fnv1a64(bytes));
}

std::string spec_name(const GroupSpec& spec) {
  if (!spec.name.empty()) return spec.name;
  if (spec.tower) return "G_" + to_string(spec.tower->n);
  return spec.kind;
}

std::vector<NamedGroup> groups_of(const GroupSpec& spec, const Options& opt) {
  std::vector<NamedGroup> out;
  if (spec.kind == "corpus") {
    auto entries = spec.corpus_set == "primitive" ? corpus::primitive_corpus() : corpus::solvable_corpus();
    if (spec.corpus_set == "sdp-pool") throw SchemaError("spec: the sdp-pool corpus only serves the random suites");
    for (auto& e : entries) out.push_back({e.name, e.group});
  } else {
    out.push_back({spec_name(spec), oracle_of(spec, opt.cap_order)});
  }
  return out;
}

std::vector<suites::PoolEntry> pool_of(const GroupSpec& spec, bool round_trip) {
  if (spec.sdp) return {{spec_name(spec), *spec.sdp}};
  if (spec.kind == "corpus") return round_trip ? suites::round_trip_pool() : suites::sd_pool();
  throw SchemaError("spec: the random suites need an sdp spec or a corpus spec");
}

// Σ_{K >= H} μ(K) = [H = G], μ ≠ 0 ⇒ intersection of maximals, m_n <= b_n <= c_n.
struct LatticeCheck {
  bool mobius_sum = true, nonzero_implies_intersection = true, monotone = true;
  bool pass() const { return mobius_sum && nonzero_implies_intersection && monotone; }
};

LatticeCheck check_lattice(const groups::SubgroupLattice& lat, Report& r, const std::string& name) {
  LatticeCheck c;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    std::int64_t sum = lat.mobius(i);
    for (auto k : lat.strict_overgroups(i)) sum += lat.mobius(k);
    if (sum != (i == lat.whole() ? 1 : 0)) {
      c.mobius_sum = false;
      r.failures.push_back(name + ": mobius row sum at subgroup " + to_string(i) + " is " + to_string(sum));
    }
    if (i != lat.whole() && lat.mobius(i) != 0 && !lat.is_maximal_intersection(i)) {
      c.nonzero_implies_intersection = false;
      r.failures.push_back(name + ": subgroup " + to_string(i) + " has nonzero mobius but is not a maximal intersection");
    }
  }
  for (const auto& [n, v] : groups::counts(lat))
    if (!(v.maximal <= v.nonzero_mobius && v.nonzero_mobius <= v.intersections)) {
      c.monotone = false;
      r.failures.push_back(name + ": m_n <= b_n <= c_n fails at n = " + to_string(n));
    }
  return c;
}

std::string eta_text(const props::LogRatio& e) { return e.certificate(); }

// ------------------------------------------------------------- analyze

void analyze_group(const NamedGroup& ng, const Options& opt, Report& r) {
  const auto& g = *ng.group;
  auto lat = groups::SubgroupLattice::build(g, opt.cap_order);
  const bool solvable = groups::is_solvable(g);

  auto& info = r.table("group", {"field", "value", "provenance"});
  ElementSet phi = lat[lat.whole()].bits();
  for (auto m : lat.maximals()) phi &= lat[m].bits();
  info.add({"name", ng.name, "input"});
  info.add({"order", to_string(g.order()), "oracle"});
  info.add({"solvable", yes(solvable), "oracle"});
  info.add({"subgroups", to_string(lat.size()), "oracle"});
  info.add({"conjugacy_classes", to_string(lat.classes().size()), "oracle"});
  info.add({"maximal_subgroups", to_string(lat.maximals().size()), "oracle"});
  info.add({"frattini_order", to_string(phi.count()), "oracle"});

  auto& counts = r.table("counts", {"n", "m_n", "b_n", "c_n", "provenance"});
  for (const auto& [n, v] : groups::counts(lat))
    counts.add({to_string(n), to_string(v.maximal), to_string(v.nonzero_mobius), to_string(v.intersections), "oracle"});
  check_lattice(lat, r, ng.name);

  if (solvable && g.order() > 1) {
    auto classes = sdp::module_classes(lat);
    auto& crowns = r.table("crowns", {"class", "p", "dim", "maximals", "C_order", "R_order", "delta", "D_order",
                                      "provenance"});
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto cd = sdp::crown(lat, classes, k);
      crowns.add({to_string(k), to_string(classes[k].module.p()), to_string(classes[k].module.dim()),
                  to_string(classes[k].maximals.size()), to_string(cd.c.order()), to_string(cd.r.order()),
                  to_string(cd.delta), cd.d ? to_string(cd.d->order()) : "-", "oracle"});
      if (!sdp::check_crown_module(g, classes[k], cd))
        r.failures.push_back(ng.name + ": C/R is not isomorphic to V^delta for class " + to_string(k));
      if (cd.d && !sdp::check_sotto(lat, cd))
        r.failures.push_back(ng.name + ": a proper K supplements both D and R for class " + to_string(k));
    }
  }

  auto eta = props::eta_min(lat);
  auto& inter = r.table("intersections", {"subgroup", "order", "index", "family_size", "product", "eta",
                                          "eta_decimal", "provenance"});
  for (const auto& row : eta.rows)
    inter.add({to_string(row.subgroup), to_string(lat[row.subgroup].order()), to_string(row.index),
               to_string(row.family.size()), to_string(row.product), eta_text(row.eta()), row.eta().decimal(),
               "oracle"});
  auto& em = r.table("eta_min", {"eta", "eta_decimal", "two_intersection_property", "provenance"});
  em.add({eta_text(eta.eta_min()), eta.eta_min().decimal(), yes(props::has_eta_property(eta, 2, 1)), "oracle"});
}

// -------------------------------------------------------------- verify

void verify_thuno(const std::vector<NamedGroup>& gs, const Options& opt, Report& r) {
  auto& t = r.table("thuno", {"group", "subgroup", "index", "eta", "eta_decimal", "gamma_h", "bound", "pass"});
  for (const auto& ng : gs) {
    auto lat = groups::SubgroupLattice::build(*ng.group, opt.cap_order);
    auto rep = props::verify_thuno(lat);
    for (const auto& row : rep.rows) {
      t.add({ng.name, to_string(row.subgroup), to_string(row.eta.index), eta_text(row.eta.eta()),
             row.eta.eta().decimal(), to_string(row.gamma_h), to_string(row.gamma_h + 1), yes(row.pass)});
      if (!row.pass) r.failures.push_back(ng.name + ": eta(H) > gamma_H + 1 at subgroup " + to_string(row.subgroup));
    }
  }
}

void verify_fittingamma(const std::vector<NamedGroup>& gs, const Options& opt, Report& r) {
  auto& t = r.table("fittingamma", {"group", "nilpotent_derived", "eta_min", "eta_decimal", "pass"});
  for (const auto& ng : gs) {
    const bool nil = corpus::has_nilpotent_derived_subgroup(*ng.group);
    auto lat = groups::SubgroupLattice::build(*ng.group, opt.cap_order);
    auto eta = props::eta_min(lat);
    const bool pass = !nil || props::has_eta_property(eta, 2, 1);
    t.add({ng.name, yes(nil), eta_text(eta.eta_min()), eta.eta_min().decimal(), yes(pass)});
    if (!pass) r.failures.push_back(ng.name + ": nilpotent derived subgroup but eta_min > 2");
  }
}

void verify_propo(const std::vector<NamedGroup>& gs, const Options& opt, Report& r) {
  auto& t = r.table("propo", {"group", "n", "c_n", "bound", "alpha", "eta", "pass"});
  for (const auto& ng : gs) {
    auto lat = groups::SubgroupLattice::build(*ng.group, opt.cap_order);
    auto c = groups::counts(lat);
    auto alpha = props::alpha(c);
    auto eta = props::eta_min(lat).eta_min();
    for (const auto& row : props::check_propo(c, alpha, eta)) {
      t.add({ng.name, to_string(row.n), to_string(row.c_n), row.bound.str(), eta_text(alpha), eta_text(eta),
             yes(row.pass)});
      if (!row.pass) r.failures.push_back(ng.name + ": c_" + to_string(row.n) + " exceeds the bound");
    }
  }
}

void verify_mobius(const std::vector<NamedGroup>& gs, const Options& opt, Report& r) {
  auto& t = r.table("mobius", {"group", "subgroups", "mobius_sum", "nonzero_implies_intersection", "m_le_b_le_c",
                               "pass"});
  for (const auto& ng : gs) {
    auto lat = groups::SubgroupLattice::build(*ng.group, opt.cap_order);
    auto c = check_lattice(lat, r, ng.name);
    t.add({ng.name, to_string(lat.size()), yes(c.mobius_sum), yes(c.nonzero_implies_intersection), yes(c.monotone),
           yes(c.pass())});
  }
}

void verify_due(const GroupSpec& spec, const Options& opt, Report& r) {
  std::vector<std::pair<std::string, sdp::SdGroup>> gs;
  if (spec.sdp) {
    gs.emplace_back(spec_name(spec), *spec.sdp);
  } else if (spec.kind == "corpus") {
    for (auto& e : corpus::primitive_corpus()) gs.emplace_back(e.name, *e.primitive);
  } else {
    throw SchemaError("spec: the due suite needs an sdp spec with t = 1 or a corpus spec");
  }
  auto& t = r.table("due", {"group", "order", "gamma_min", "eta", "eta_decimal", "bound", "palfy_wolf", "flips",
                            "pass"});
  for (const auto& [name, g] : gs) {
    auto d = props::verify_due(g, {}, opt.cap_order);
    t.add({name, to_string(g.order()), to_string(d.gamma.gamma_min), eta_text(d.eta), d.eta.decimal(),
           to_string(d.bound), yes(d.palfy_wolf_pass), yes(d.flips), yes(d.pass())});
    if (!d.gamma_pass) r.failures.push_back(name + ": gamma_min exceeds floor(eta * 3.243)");
    if (!d.palfy_wolf_pass) r.failures.push_back(name + ": |G| exceeds |V|^3.243");
  }
}

void verify_random(const GroupSpec& spec, const Options& opt, Report& r) {
  suites::SuiteResult res;
  if (opt.suite == "interKM") res = suites::interkm_suite(pool_of(spec, false), opt.seed, opt.cases);
  else if (opt.suite == "impor") res = suites::impor_suite(pool_of(spec, false), opt.seed, opt.cases);
  else res = suites::possibile_suite(pool_of(spec, true));
  auto& t = r.table(opt.suite, {"suite", "seed", "cases", "failures", "pass"});
  t.add({res.name, opt.suite == "possibile" ? "-" : to_string(opt.seed), to_string(res.cases), to_string(res.failures),
         yes(res.pass())});
  for (const auto& s : res.samples) r.failures.push_back(opt.suite + ": " + s);
  if (res.cases == 0) r.failures.push_back(opt.suite + ": no cases were run");
}

void verify_tower(const GroupSpec& spec, const Options& opt, Report& r) {
  if (!spec.tower) throw SchemaError("spec: the tower suite needs a tower spec");
  auto g = tower::TowerGroup::build(*spec.tower);
  auto& t = r.table("tower", {"check", "expected", "observed", "provenance", "pass"});
  auto add = [&](const std::string& check, const std::string& expected, const std::string& observed,
                 const std::string& prov, bool pass, bool required = true) {
    t.add({check, expected, observed, prov, required ? yes(pass) : (pass ? "agree" : "disagree")});
    if (required && !pass) r.failures.push_back("tower: " + check + " expected " + expected + " observed " + observed);
  };
  for (std::size_t m = 1; m <= g.n(); ++m) {
    auto c = g.centralizer_exponents(m);
    add("C_H(V_" + to_string(m) + ") generator exponent", to_string(std::uint64_t{1} << m),
        c.size() > 1 ? to_string(c[1]) : to_string(g.h_order()), "structural",
        c.size() == (g.h_order() >> m) && (c.size() == 1 || c[1] == (std::uint64_t{1} << m)));
  }
  auto oracle = g.oracle(opt.cap_order);
  auto lat = groups::SubgroupLattice::build(oracle, opt.cap_order);
  auto counts = groups::counts(lat);
  add("maximal subgroups of index 2", "1", to_string(counts.at(2).maximal), "oracle", counts.at(2).maximal == 1);
  for (auto p : g.primes())
    add("maximal subgroups of index " + to_string(p), to_string(p), to_string(counts.at(p).maximal), "oracle",
        counts.at(p).maximal == p);
  ElementSet w = g.standard_subgroup({}, g.n());
  std::size_t containing = 0;
  for (auto m : lat.maximals()) containing += w.is_subset_of(lat[m].bits());
  add("maximal subgroups containing W", "1", to_string(containing), "oracle", containing == 1);

  auto tc = tower::tilde_counts(g, opt.cap_order);
  add("structural classes equal oracle maximal-intersection classes", "true", yes(*tc.structural_matches_oracle),
      "oracle", *tc.structural_matches_oracle);
  for (const auto& row : tower::verify_mu_zero(g, opt.cap_order))
    add("mu(" + row.label + ", G)", "0", to_string(row.mu), "oracle", row.mu == 0);
  add("beta_tilde <= 2^(n+1) - 1", to_string(tc.beta_bound), to_string(*tc.beta_oracle), "oracle",
      *tc.beta_oracle <= tc.beta_bound);
  add("beta_tilde <= gamma_tilde", to_string(*tc.gamma_oracle), to_string(*tc.beta_oracle), "oracle",
      *tc.beta_oracle <= *tc.gamma_oracle);
  add("gamma_tilde closed formula", to_string(tc.gamma_formula), to_string(*tc.gamma_oracle), "formula",
      tc.formula_agrees(), false);
  add("gamma_tilde structural", to_string(tc.structural_classes), to_string(*tc.gamma_oracle), "structural",
      tc.structural_classes == *tc.gamma_oracle);
}

std::string primes_text(const tower::TowerPrimes& tp) {
  std::string s;
  for (std::size_t i = 0; i < tp.primes.size(); ++i) s += (i ? " " : "") + tp.primes[i].str();
  return s;
}

}  // namespace

Report cmd_analyze(const GroupSpec& spec, const Options& opt) {
  Report r;
  r.command = "analyze";
  r.digest = digest_of(opt, spec.canonical);
  for (const auto& ng : groups_of(spec, opt)) analyze_group(ng, opt, r);
  return r;
}

Report cmd_verify(const GroupSpec& spec, const Options& opt) {
  Report r;
  r.command = "verify " + opt.suite;
  r.digest = digest_of(opt, spec.canonical);
  if (opt.suite == "thuno") verify_thuno(groups_of(spec, opt), opt, r);
  else if (opt.suite == "fittingamma") verify_fittingamma(groups_of(spec, opt), opt, r);
  else if (opt.suite == "propo") verify_propo(groups_of(spec, opt), opt, r);
  else if (opt.suite == "mobius") verify_mobius(groups_of(spec, opt), opt, r);
  else if (opt.suite == "due") verify_due(spec, opt, r);
  else if (opt.suite == "interKM" || opt.suite == "impor" || opt.suite == "possibile") verify_random(spec, opt, r);
  else if (opt.suite == "tower") verify_tower(spec, opt, r);
  else throw SchemaError("unknown suite '" + opt.suite + "'");
  return r;
}

Report cmd_counts(const Options& opt) {
  Report r;
  r.command = "counts";
  r.digest = digest_of(opt, "n=" + to_string(opt.n_min) + ".." + to_string(opt.n_max) + " strict=" + yes(opt.strict_tower));
  auto& t = r.table("tower_counts", {"n", "primes", "gamma_formula", "gamma_oracle", "gamma_structural", "beta_bound",
                                     "beta_oracle", "ratio_bound", "formula_agrees", "beta_within_bound",
                                     "provenance"});
  for (const auto& row : tower::ratio_table(opt.n_min, opt.n_max, opt.strict_tower, opt.cap_order)) {
    const auto& c = row.counts;
    const bool within = !c.beta_oracle || *c.beta_oracle <= c.beta_bound;
    t.add({to_string(row.n), primes_text(row.primes), to_string(c.gamma_formula),
           c.gamma_oracle ? to_string(*c.gamma_oracle) : "-", to_string(c.structural_classes), to_string(c.beta_bound),
           c.beta_oracle ? to_string(*c.beta_oracle) : "-", to_string(c.ratio_num) + "/" + to_string(c.ratio_den),
           c.gamma_oracle ? yes(c.formula_agrees()) : "-", c.beta_oracle ? yes(within) : "-",
           row.oracle ? "oracle" : "formula"});
    if (!within) r.failures.push_back("counts: beta_tilde exceeds the bound at n = " + to_string(row.n));
  }
  return r;
}

int run(const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    Report r;
    if (opt.command == "counts") {
      r = cmd_counts(opt);
    } else {
      if (opt.spec_path.empty() && opt.spec_text.empty()) throw SchemaError("--spec is required for " + opt.command);
      auto spec = opt.spec_path.empty() ? parse_spec(opt.spec_text) : load_spec(opt.spec_path);
      if (opt.command == "analyze") r = cmd_analyze(spec, opt);
      else if (opt.command == "verify") r = cmd_verify(spec, opt);
      else throw SchemaError("unknown command '" + opt.command + "'");
    }
    std::string format = opt.format.empty() ? (opt.command == "counts" ? "csv" : "json") : opt.format;
    if (format == "csv") out << to_csv(r);
    else if (format == "json") out << to_json(r);
    else throw SchemaError("unknown format '" + format + "'");
    if (r.status() != 0) err << "error: assertion " << r.failures.front() << "\n";
    return r.status() == 0 ? kOk : kAssertionFailure;
  } catch (const ResourceCap& e) {
    err << "error: resource-cap " << e.what() << "\n";
    return kResourceCap;
  } catch (const MalformedInput& e) {
    err << "error: schema " << e.what() << "\n";
    return kSchemaError;
  } catch (const PreconditionError& e) {
    err << "error: precondition " << e.what() << "\n";
    return kSchemaError;
  } catch (const Unsupported& e) {
    err << "error: unsupported " << e.what() << "\n";
    return kSchemaError;
  } catch (const InvariantViolation& e) {
    err << "error: invariant " << e.what() << "\n";
    return kAssertionFailure;
  }
}

}  // namespace solvint::cli
