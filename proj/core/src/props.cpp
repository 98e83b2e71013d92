#include "solvint/props.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "solvint/errors.hpp"

namespace solvint::props {

namespace mp = boost::multiprecision;

namespace {

const Real kTieTolerance{"1e-80"};

BigInt power(const BigInt& b, std::uint64_t e) { return mp::pow(b, static_cast<unsigned>(e)); }

}  // namespace

bool LogRatio::at_most(std::uint64_t num, std::uint64_t den) const {
  return power(value, den) <= power(base, num);
}

std::uint64_t LogRatio::floor_times(std::uint64_t num, std::uint64_t den) const {
  const BigInt rhs = power(value, num);
  std::uint64_t g = 0;
  BigInt step = power(base, den), lhs = step;
  while (lhs <= rhs) {
    ++g;
    lhs *= step;
  }
  return g;
}

Real LogRatio::real() const { return mp::log(Real(value)) / mp::log(Real(base)); }

std::string LogRatio::decimal(int digits) const {
  double d = static_cast<double>(real());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, d);
  return buf;
}

std::string LogRatio::certificate() const { return "log_" + base.str() + "(" + value.str() + ")"; }

int compare(const LogRatio& a, const LogRatio& b) {
  if (a.value == b.value && a.base == b.base) return 0;
  Real lhs = mp::log(Real(a.value)) * mp::log(Real(b.base));
  Real rhs = mp::log(Real(b.value)) * mp::log(Real(a.base));
  if (mp::abs(lhs - rhs) <= kTieTolerance) return 0;
  return lhs < rhs ? -1 : 1;
}

// ------------------------------------------------------------ γ-modules

namespace {

struct GammaContext {
  std::vector<ffla::Subspace> subspaces;
  std::vector<std::size_t> dims;        // dim_F
  std::vector<ElementSet> centralizers; // C_H(W) per subspace
  std::vector<ElementSet> above;        // ∩ of maximals of H containing C_H(W)
};

ElementSet centralizer_bits(const groups::MatrixGroup& h, const ffla::Subspace& w) {
  ElementSet out(h.order());
  for (ElementId x = 0; x < h.order(); ++x) {
    bool fixes = true;
    for (const auto& b : w.basis())
      if (ffla::apply(b, h[x]) != b) {
        fixes = false;
        break;
      }
    if (fixes) out.set(x);
  }
  return out;
}

GammaContext gamma_context(const groups::MatrixGroup& h, const ffla::EndField& f, const GammaOptions& opt) {
  // a line has only the subspaces 0 and V, so the caps do not apply
  const bool line = f.field_dim_of_module() == 1;
  if (!line && f.field_dim_of_module() > opt.max_f_dim)
    throw ResourceCap("gamma: dim_F V = " + std::to_string(f.field_dim_of_module()) + " exceeds the cap " +
                      std::to_string(opt.max_f_dim));
  if (!line && f.order() > opt.max_field_order)
    throw ResourceCap("gamma: |F| = " + std::to_string(f.order()) + " exceeds the cap " +
                      std::to_string(opt.max_field_order));
  GammaContext ctx;
  ctx.subspaces = ffla::enumerate_f_subspaces(f);
  auto oracle = h.oracle("H");
  auto maxes = groups::maximal_subgroups(oracle);
  for (const auto& w : ctx.subspaces) {
    ctx.dims.push_back(f.f_dim(w));
    auto c = centralizer_bits(h, w);
    ElementSet inter = groups::whole_group(oracle).bits();
    for (const auto& m : maxes)
      if (c.is_subset_of(m.bits())) inter &= m.bits();
    ctx.centralizers.push_back(std::move(c));
    ctx.above.push_back(std::move(inter));
  }
  return ctx;
}

// First W* (subspace order) with dim_F W* <= limit satisfying the condition for W.
std::optional<std::size_t> find_witness(const GammaContext& ctx, std::size_t w, std::size_t limit, bool strong) {
  for (std::size_t s = 0; s < ctx.subspaces.size() && ctx.dims[s] <= limit; ++s) {
    if (strong) {
      if (ctx.centralizers[s] == ctx.centralizers[w]) return s;
    } else if ((ctx.centralizers[s] & ctx.above[w]) == ctx.centralizers[w]) {
      return s;
    }
  }
  return std::nullopt;
}

ffla::EndField end_field(const groups::MatrixGroup& h) {
  return ffla::endomorphism_field(h.modulus(), h.dim(), h.generators());
}

}  // namespace

GammaReport gamma_min(const groups::MatrixGroup& h, std::string label, const GammaOptions& opt) {
  auto f = end_field(h);
  GammaReport r;
  r.label = std::move(label);
  r.field_order = f.order();
  r.f_dim = f.field_dim_of_module();
  auto ctx = gamma_context(h, f, opt);
  std::size_t strong_raw = 0;
  for (std::size_t w = 0; w < ctx.subspaces.size(); ++w) {
    auto weak = find_witness(ctx, w, ctx.dims[w], false);
    auto strong = find_witness(ctx, w, ctx.dims[w], true);
    if (!weak || !strong) throw InvariantViolation("gamma: W itself failed as a witness");
    r.raw_gamma = std::max(r.raw_gamma, ctx.dims[*weak]);
    strong_raw = std::max(strong_raw, ctx.dims[*strong]);
    r.witnesses.push_back({ctx.subspaces[w], ctx.subspaces[*weak]});
  }
  r.gamma_min = std::max<std::size_t>(1, r.raw_gamma);
  r.strong_gamma_min = std::max<std::size_t>(1, strong_raw);
  return r;
}

bool is_gamma_module(const groups::MatrixGroup& h, std::size_t gamma, bool strong, const GammaOptions& opt) {
  if (gamma == 0) return false;
  auto f = end_field(h);
  if (f.field_dim_of_module() <= gamma) return true;
  auto ctx = gamma_context(h, f, opt);
  for (std::size_t w = 0; w < ctx.subspaces.size(); ++w)
    if (!find_witness(ctx, w, gamma, strong)) return false;
  return true;
}

groups::MatrixGroup action_group(const sdp::SectionModule& v) {
  return groups::MatrixGroup::generate(v.p(), v.dim(), v.action());
}

// -------------------------------------------------------- η-intersections

namespace {

struct EtaSearch {
  const groups::SubgroupLattice& lattice;
  ElementSet target;
  std::size_t target_order;
  std::vector<std::size_t> cands;
  std::vector<std::uint64_t> idx;
  std::vector<ElementSet> suffix;
  std::optional<std::uint64_t> best;
  std::vector<std::size_t> best_family;
  std::vector<std::size_t> chosen;

  void run(std::size_t pos, const ElementSet& cur, std::uint64_t product) {
    const std::size_t order = cur.count();
    if (order == target_order) {
      if (!best || product < *best) {
        best = product;
        best_family = chosen;
      }
      return;
    }
    if (pos == cands.size() || (cur & suffix[pos]).count() != target_order) return;
    // any family from here multiplies the product by at least |cur : H|
    if (best && product * (order / target_order) >= *best) return;
    for (std::size_t i = pos; i < cands.size(); ++i) {
      if (best && product * idx[i] >= *best) break;
      ElementSet next = cur & lattice[cands[i]].bits();
      if (next.count() == order) continue;
      chosen.push_back(cands[i]);
      run(i + 1, next, product * idx[i]);
      chosen.pop_back();
    }
  }
};

}  // namespace

EtaRow eta_of_intersection(const groups::SubgroupLattice& lattice, std::size_t h) {
  if (h >= lattice.size()) throw PreconditionError("eta: lattice id out of range");
  if (h == lattice.whole()) throw PreconditionError("eta: H = G is excluded");
  if (!lattice.is_maximal_intersection(h)) throw PreconditionError("eta: H is not an intersection of maximal subgroups");
  EtaSearch s{lattice, lattice[h].bits(), lattice[h].order(), {}, {}, {}, std::nullopt, {}, {}};
  for (auto m : lattice.maximals())
    if (lattice[h].is_subgroup_of(lattice[m])) s.cands.push_back(m);
  std::stable_sort(s.cands.begin(), s.cands.end(),
                   [&](std::size_t a, std::size_t b) { return lattice.index(a) < lattice.index(b); });
  for (auto m : s.cands) s.idx.push_back(lattice.index(m));
  s.suffix.assign(s.cands.size() + 1, lattice[lattice.whole()].bits());
  for (std::size_t i = s.cands.size(); i-- > 0;) s.suffix[i] = s.suffix[i + 1] & lattice[s.cands[i]].bits();
  s.run(0, lattice[lattice.whole()].bits(), 1);
  if (!s.best) throw InvariantViolation("eta: no realizing family found");
  EtaRow row;
  row.subgroup = h;
  row.index = lattice.index(h);
  row.product = *s.best;
  row.family = std::move(s.best_family);
  return row;
}

LogRatio EtaReport::eta_min() const {
  if (!argmax) return {2, 2};
  return rows[*argmax].eta();
}

EtaReport eta_min(const groups::SubgroupLattice& lattice) {
  EtaReport r;
  for (const auto& cls : lattice.classes()) {
    auto h = cls.representative;
    if (h == lattice.whole() || !lattice.is_maximal_intersection(h)) continue;
    r.rows.push_back(eta_of_intersection(lattice, h));
    if (!r.argmax || compare(r.rows.back().eta(), r.rows[*r.argmax].eta()) > 0) r.argmax = r.rows.size() - 1;
  }
  return r;
}

bool has_eta_property(const EtaReport& report, std::uint64_t num, std::uint64_t den) {
  return std::all_of(report.rows.begin(), report.rows.end(),
                     [&](const EtaRow& row) { return row.eta().at_most(num, den); });
}

// ---------------------------------------------------------- finite forms

bool ThunoReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ThunoRow& r) { return r.pass; });
}

ThunoReport verify_thuno(const groups::SubgroupLattice& lattice, const GammaOptions& opt) {
  const auto& g = lattice.group();
  if (!groups::is_solvable(g)) throw Unsupported("verify_thuno: group is not solvable");
  auto classes = sdp::module_classes(lattice);
  ThunoReport r;
  for (std::size_t k = 0; k < classes.size(); ++k)
    r.modules.push_back(gamma_min(action_group(classes[k].module), "V" + std::to_string(k), opt));
  auto eta = eta_min(lattice);
  for (auto& e : eta.rows) {
    ThunoRow row;
    row.subgroup = e.subgroup;
    for (auto m : lattice.maximals())
      if (lattice[e.subgroup].is_subgroup_of(lattice[m])) row.module_classes.push_back(sdp::class_of_maximal(classes, m));
    std::sort(row.module_classes.begin(), row.module_classes.end());
    row.module_classes.erase(std::unique(row.module_classes.begin(), row.module_classes.end()), row.module_classes.end());
    for (auto k : row.module_classes) row.gamma_h = std::max(row.gamma_h, r.modules[k].gamma_min);
    row.pass = e.eta().at_most(row.gamma_h + 1, 1);
    row.eta = std::move(e);
    r.rows.push_back(std::move(row));
  }
  return r;
}

DueReport verify_due(const sdp::SdGroup& gamma, const GammaOptions& opt, std::size_t order_cap) {
  if (gamma.t() != 1) throw PreconditionError("verify_due: needs a primitive group V ⋊ H (t = 1)");
  auto oracle = sdp::embed_as_oracle(gamma, order_cap);
  auto lattice = groups::SubgroupLattice::build(oracle, order_cap);
  DueReport r;
  r.gamma = gamma_min(gamma.h(), "V", opt);
  r.eta = eta_min(lattice).eta_min();
  auto verdict = [&](std::uint64_t num, std::uint64_t den, std::uint64_t* bound) {
    std::uint64_t b = r.eta.floor_times(num, den);
    if (bound) *bound = b;
    bool pw = power(BigInt(gamma.order()), den) <= power(BigInt(gamma.v_order()), num);
    return std::pair{r.gamma.gamma_min <= b, pw};
  };
  auto [g, pw] = verdict(3243, 1000, &r.bound);
  r.gamma_pass = g;
  r.palfy_wolf_pass = pw;
  const bool at_c = g && pw;
  for (auto [num, den] : {std::pair<std::uint64_t, std::uint64_t>{324, 100}, {325, 100}}) {
    auto [g2, pw2] = verdict(num, den, nullptr);
    if ((g2 && pw2) != at_c) r.flips = true;
  }
  return r;
}

LogRatio alpha(const groups::CountTable& counts) {
  LogRatio best{1, 2};
  for (const auto& [k, c] : counts) {
    if (c.maximal < 2) continue;
    LogRatio cand{c.maximal, k};
    if (compare(cand, best) > 0) best = cand;
  }
  return best;
}

BigInt propo_bound(std::uint64_t n, const LogRatio& alpha, const LogRatio& eta) {
  if (n == 0) throw PreconditionError("propo_bound: n must be positive");
  const Real ln_n = mp::log(Real(n));
  const Real ne = mp::exp(eta.real() * ln_n);
  const Real nea = mp::exp(eta.real() * alpha.real() * ln_n);
  Real v = ne * (ne + 1) / 2 * nea;
  // guard against the last digit of the transcendental evaluation
  v *= Real(1) + Real("1e-60");
  return static_cast<BigInt>(mp::floor(v));
}

std::vector<PropoRow> check_propo(const groups::CountTable& counts, const LogRatio& alpha, const LogRatio& eta) {
  const Real a = alpha.real();
  for (const auto& [k, c] : counts) {
    if (c.maximal == 0) continue;
    if (mp::log(Real(c.maximal)) > a * mp::log(Real(k)) + kTieTolerance)
      throw PreconditionError("check_propo: m_" + std::to_string(k) + " = " + std::to_string(c.maximal) +
                              " exceeds k^alpha");
  }
  std::vector<PropoRow> out;
  for (const auto& [n, c] : counts) {
    PropoRow row;
    row.n = n;
    row.c_n = c.intersections;
    row.bound = propo_bound(n, alpha, eta);
    row.pass = BigInt(row.c_n) <= row.bound;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace solvint::props
