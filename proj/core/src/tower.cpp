#include "solvint/tower.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "solvint/errors.hpp"

namespace solvint::tower {

namespace mp = boost::multiprecision;

bool is_probable_prime(const BigInt& n) {
  static constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    BigInt x = mp::powm(BigInt(b), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      x = x * x % n;
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

TowerPrimes find_primes(std::size_t n, bool strict, const BigInt& ceiling) {
  if (n == 0) throw PreconditionError("find_primes: n must be at least 1");
  TowerPrimes out;
  out.n = n;
  out.strict = strict;
  BigInt product = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    const BigInt step = BigInt(1) << m;
    BigInt lower = out.primes.empty() ? BigInt(3) : out.primes.back() + 1;
    if (strict && m > 1) lower = std::max(lower, (BigInt(1) << (m - 1)) * product + 1);
    // smallest r·2^m + 1 >= lower
    BigInt candidate = (lower - 1 + step - 1) / step * step + 1;
    while (!is_probable_prime(candidate)) {
      candidate += step;
      if (candidate >= ceiling) throw ResourceCap("find_primes: search passed the primality ceiling");
    }
    if (candidate >= ceiling) throw ResourceCap("find_primes: search passed the primality ceiling");
    out.primes.push_back(candidate);
    product *= candidate;
  }
  return out;
}

bool is_valid(const TowerPrimes& tp) {
  if (tp.n == 0 || tp.primes.size() != tp.n) return false;
  BigInt product = 1;
  for (std::size_t m = 1; m <= tp.n; ++m) {
    const BigInt& p = tp.primes[m - 1];
    if (!is_probable_prime(p) || (p - 1) % (BigInt(1) << m) != 0) return false;
    if (m > 1 && p <= tp.primes[m - 2]) return false;
    if (tp.strict && m > 1 && p <= (BigInt(1) << (m - 1)) * product) return false;
    product *= p;
  }
  return true;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

TowerGroup TowerGroup::build(const TowerPrimes& primes) {
  if (!is_valid(primes)) throw PreconditionError("tower: primes violate the admissibility conditions");
  if (primes.n > 20) throw ResourceCap("tower: n above 20 is not supported");
  TowerGroup g;
  g.n_ = primes.n;
  for (const auto& p : primes.primes) {
    if (p >= (BigInt(1) << 31)) throw ResourceCap("tower: primes must be below 2^31 to build the group");
    g.p_.push_back(static_cast<std::uint64_t>(p));
  }
  BigInt w = 1;
  for (auto p : g.p_) w *= p;
  if ((w << g.n_) >= (BigInt(1) << 62)) throw ResourceCap("tower: group order exceeds 2^62");
  g.w_order_ = static_cast<std::uint64_t>(w);

  const std::uint64_t h = std::uint64_t{1} << g.n_;
  for (std::size_t m = 1; m <= g.n_; ++m) {
    const std::uint64_t p = g.p_[m - 1];
    std::uint64_t z = 2;
    // exact order 2^m iff z^{2^{m-1}} = -1
    while (powmod(z, std::uint64_t{1} << (m - 1), p) != p - 1) ++z;
    g.zeta_.push_back(z);
    std::vector<std::uint64_t> pw(h);
    pw[0] = 1;
    for (std::uint64_t e = 1; e < h; ++e) pw[e] = pw[e - 1] * z % p;
    g.zeta_pow_.push_back(std::move(pw));
  }
  for (std::size_t m = 1; m <= g.n_; ++m) {
    auto c = g.centralizer_exponents(m);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t e = 0; e < h; e += std::uint64_t{1} << m) expect.push_back(e);
    if (c != expect) throw InvariantViolation("tower: C_H(V_" + std::to_string(m) + ") is not <x^{2^m}>");
  }
  return g;
}

ElementId TowerGroup::id_of(const std::vector<std::uint64_t>& a, std::uint64_t e) const {
  if (a.size() != n_ || e >= h_order()) throw PreconditionError("tower: element out of range");
  std::uint64_t w = 0;
  for (std::size_t m = 0; m < n_; ++m) {
    if (a[m] >= p_[m]) throw PreconditionError("tower: coordinate out of range");
    w = w * p_[m] + a[m];
  }
  return static_cast<ElementId>(e * w_order_ + w);
}

std::pair<std::vector<std::uint64_t>, std::uint64_t> TowerGroup::element(ElementId id) const {
  std::uint64_t e = id / w_order_, w = id % w_order_;
  std::vector<std::uint64_t> a(n_);
  for (std::size_t m = n_; m-- > 0;) {
    a[m] = w % p_[m];
    w /= p_[m];
  }
  return {std::move(a), e};
}

ElementId TowerGroup::mul(ElementId x, ElementId y) const {
  auto [a, e] = element(x);
  auto [b, f] = element(y);
  for (std::size_t m = 0; m < n_; ++m) a[m] = (a[m] * zeta_pow_[m][f] + b[m]) % p_[m];
  return id_of(a, (e + f) % h_order());
}

groups::OracleGroup TowerGroup::oracle(std::size_t order_cap) const {
  if (order() > order_cap)
    throw ResourceCap("tower: |G_n| = " + std::to_string(order()) + " exceeds the oracle cap " + std::to_string(order_cap));
  return groups::OracleGroup::from_multiplication(
      static_cast<std::size_t>(order()), [this](ElementId x, ElementId y) { return mul(x, y); },
      "G_" + std::to_string(n_));
}

std::vector<TowerMaximal> TowerGroup::maximal_subgroups() const {
  std::vector<TowerMaximal> out{{0, 0}};
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::uint64_t v = 0; v < p_[i - 1]; ++v) out.push_back({i, v});
  return out;
}

namespace {

void require_enumerable(const TowerGroup& g) {
  if (g.order() > (std::uint64_t{1} << 26)) throw ResourceCap("tower: group too large for elementwise sets");
}

}  // namespace

ElementSet TowerGroup::element_set(const TowerMaximal& m) const {
  require_enumerable(*this);
  if (m.level > n_ || (m.level > 0 && m.translate >= p_[m.level - 1]))
    throw PreconditionError("tower: maximal subgroup descriptor out of range");
  ElementSet out(static_cast<std::size_t>(order()));
  for (ElementId x = 0; x < order(); ++x) {
    auto [a, e] = element(x);
    bool in;
    if (m.level == 0) {
      in = e % 2 == 0;
    } else {
      // W_i ⋊ H^v: coordinate i equals v - v·ζ_i^e
      const std::size_t i = m.level - 1;
      const std::uint64_t p = p_[i];
      in = a[i] == (m.translate + p - m.translate * zeta_pow_[i][e] % p) % p;
    }
    if (in) out.set(x);
  }
  return out;
}

ElementSet TowerGroup::standard_subgroup(const std::vector<std::size_t>& j, std::size_t a) const {
  require_enumerable(*this);
  if (a > n_) throw PreconditionError("tower: complement exponent out of range");
  for (auto l : j)
    if (l == 0 || l > n_) throw PreconditionError("tower: level out of range");
  ElementSet out(static_cast<std::size_t>(order()));
  const std::uint64_t step = std::uint64_t{1} << a;
  for (ElementId x = 0; x < order(); ++x) {
    auto [v, e] = element(x);
    if (e % step) continue;
    if (std::all_of(j.begin(), j.end(), [&](std::size_t l) { return v[l - 1] == 0; })) out.set(x);
  }
  return out;
}

std::vector<std::uint64_t> TowerGroup::centralizer_exponents(std::size_t m) const {
  if (m == 0 || m > n_) throw PreconditionError("tower: level out of range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t e = 0; e < h_order(); ++e)
    if (zeta_pow_[m - 1][e] == 1) out.push_back(e);
  return out;
}

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::X: return "X";
    case ClassKind::Y: return "Y";
    case ClassKind::Z: return "Z";
  }
  return "?";
}

std::string IntersectionClass::label() const {
  std::string s = to_string(kind) + "_{";
  for (std::size_t t = 0; t < j.size(); ++t) s += (t ? "," : "") + std::to_string(j[t]);
  s += "}";
  if (kind == ClassKind::Z) s += "," + std::to_string(i);
  return s;
}

std::vector<IntersectionClass> classify_intersections(const TowerGroup& g) {
  const std::size_t n = g.n();
  std::vector<IntersectionClass> out;
  auto levels = [&](std::uint64_t mask) {
    std::vector<std::size_t> j;
    for (std::size_t l = 1; l <= n; ++l)
      if (mask >> (l - 1) & 1) j.push_back(l);
    return j;
  };
  auto base = [&](ClassKind kind, std::uint64_t mask, std::uint64_t factor) {
    IntersectionClass c;
    c.kind = kind;
    c.j = levels(mask);
    c.index = factor;
    for (auto l : c.j) {
      c.index *= g.primes()[l - 1];
      c.family.push_back({l, 0});
    }
    return c;
  };
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) out.push_back(base(ClassKind::X, mask, 1));
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    auto c = base(ClassKind::Y, mask, 2);
    c.family.insert(c.family.begin(), TowerMaximal{0, 0});
    out.push_back(std::move(c));
  }
  for (std::size_t i = 2; i <= n; ++i)
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      if (!(mask >> (i - 1) & 1)) continue;
      auto c = base(ClassKind::Z, mask, std::uint64_t{1} << i);
      c.i = i;
      // a second translate in V_i cuts the complement down to C_H(V_i)
      c.family.push_back({i, 1});
      out.push_back(std::move(c));
    }
  return out;
}

std::size_t complement_exponent(const IntersectionClass& c) {
  switch (c.kind) {
    case ClassKind::X: return 0;
    case ClassKind::Y: return 1;
    case ClassKind::Z: return c.i;
  }
  return 0;
}

ElementSet family_intersection(const TowerGroup& g, const IntersectionClass& c) {
  if (c.family.empty()) throw PreconditionError("tower: empty realizing family");
  ElementSet out = g.element_set(c.family.front());
  for (std::size_t t = 1; t < c.family.size(); ++t) out &= g.element_set(c.family[t]);
  return out;
}

bool TowerCounts::formula_agrees() const {
  return gamma_formula == (gamma_oracle ? *gamma_oracle : structural_classes);
}

TowerCounts formula_counts(std::size_t n) {
  if (n == 0 || n > 60) throw PreconditionError("tower: n out of range for the formulas");
  TowerCounts c;
  c.n = n;
  const std::uint64_t h = std::uint64_t{1} << n;
  c.gamma_formula = (h / 2) * (n + 2) - 1;
  c.beta_bound = 2 * h - 1;
  c.structural_classes = (h - 1) + h + (n - 1) * (h / 2);
  std::uint64_t d = std::gcd<std::uint64_t>(4, n + 2);
  c.ratio_num = 4 / d;
  c.ratio_den = (n + 2) / d;
  return c;
}

TowerCounts tilde_counts(const TowerGroup& g, std::size_t order_cap) {
  TowerCounts c = formula_counts(g.n());
  auto classes = classify_intersections(g);
  c.structural_classes = classes.size();
  if (g.order() > order_cap) return c;

  auto oracle = g.oracle(order_cap);
  auto lattice = groups::SubgroupLattice::build(oracle, order_cap);
  std::set<std::size_t> oracle_classes;
  std::uint64_t beta = 0;
  for (std::size_t k = 0; k < lattice.classes().size(); ++k) {
    std::size_t rep = lattice.classes()[k].representative;
    if (rep == lattice.whole()) continue;
    if (lattice.is_maximal_intersection(rep)) oracle_classes.insert(k);
    if (lattice.mobius(rep) != 0) ++beta;
  }
  c.gamma_oracle = oracle_classes.size();
  c.beta_oracle = beta;

  bool match = true;
  std::set<std::size_t> seen;
  for (const auto& cls : classes) {
    auto bits = family_intersection(g, cls);
    if (!(bits == g.standard_subgroup(cls.j, complement_exponent(cls)))) match = false;
    if (oracle.order() / bits.count() != cls.index) match = false;
    auto id = lattice.find(bits);
    if (!id || !lattice.is_maximal_intersection(*id)) {
      match = false;
      continue;
    }
    if (!seen.insert(lattice.class_of(*id)).second) match = false;
  }
  c.structural_matches_oracle = match && seen == oracle_classes;
  return c;
}

std::vector<MuZeroRow> verify_mu_zero(const TowerGroup& g, std::size_t order_cap) {
  auto oracle = g.oracle(order_cap);
  auto lattice = groups::SubgroupLattice::build(oracle, order_cap);
  std::vector<MuZeroRow> out;
  for (const auto& cls : classify_intersections(g)) {
    if (cls.kind != ClassKind::Z) continue;
    auto id = lattice.find(family_intersection(g, cls));
    if (!id) throw InvariantViolation("tower: " + cls.label() + " is not a subgroup");
    out.push_back({cls.label(), lattice.mobius(*id)});
  }
  return out;
}

std::vector<RatioRow> ratio_table(std::size_t n_min, std::size_t n_max, bool strict, std::size_t order_cap) {
  if (n_min == 0 || n_min > n_max) throw PreconditionError("ratio_table: need 1 <= n_min <= n_max");
  std::vector<RatioRow> out;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    RatioRow row;
    row.n = n;
    row.primes = find_primes(n, strict);
    BigInt order = BigInt(1) << n;
    for (const auto& p : row.primes.primes) order *= p;
    if (order <= order_cap) {
      row.counts = tilde_counts(TowerGroup::build(row.primes), order_cap);
      row.oracle = true;
    } else {
      row.counts = formula_counts(n);
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace solvint::tower
