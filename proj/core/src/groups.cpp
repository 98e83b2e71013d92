#include "solvint/groups.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "solvint/errors.hpp"
#include "solvint/parallel.hpp"

namespace solvint::groups {

namespace {

bool is_prime_small(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<ElementId> closure_list(const OracleGroup& g, const std::vector<ElementId>& gens, ElementSet& bits) {
  std::vector<ElementId> elems{OracleGroup::identity()};
  bits = ElementSet(g.order());
  bits.set(OracleGroup::identity());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto s : gens) {
      ElementId y = g.mul(elems[i], s);
      if (!bits.test(y)) {
        bits.set(y);
        elems.push_back(y);
      }
    }
  }
  return elems;
}

ElementSet closure_bits(const OracleGroup& g, const std::vector<ElementId>& gens) {
  ElementSet bits;
  closure_list(g, gens, bits);
  return bits;
}

// Normal closure of gens inside the subgroup generated by `within`.
Subgroup normal_closure_in(const OracleGroup& g, const std::vector<ElementId>& within,
                           const std::vector<ElementId>& gens) {
  std::vector<ElementId> current = gens;
  ElementSet bits = closure_bits(g, current);
  for (std::size_t i = 0; i < current.size(); ++i) {
    for (auto w : within) {
      ElementId y = g.conj(current[i], w);
      if (!bits.test(y)) {
        current.push_back(y);
        bits = closure_bits(g, current);
      }
    }
  }
  return from_members(g, bits);
}

std::vector<ElementId> commutators(const OracleGroup& g, const std::vector<ElementId>& a,
                                   const std::vector<ElementId>& b) {
  std::vector<ElementId> out;
  for (auto x : a)
    for (auto y : b) {
      ElementId c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
      if (c != OracleGroup::identity()) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- OracleGroup

OracleGroup OracleGroup::from_table(const std::vector<std::vector<ElementId>>& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw MalformedInput("multiplication table is empty");
  if (n > 65535) throw ResourceCap("oracle groups are limited to order 65535");
  OracleGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw MalformedInput("multiplication table is not square");
    std::vector<bool> seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      ElementId v = table[a][b];
      if (v >= n) throw MalformedInput("multiplication table entry out of range");
      if (seen[v]) throw MalformedInput("multiplication table row is not a permutation");
      seen[v] = true;
      g.table_[a * n + b] = static_cast<std::uint16_t>(v);
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<bool> seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[table[a][b]]) throw MalformedInput("multiplication table column is not a permutation");
      seen[table[a][b]] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw MalformedInput("element 0 is not the identity");

  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return g.mul(g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b)), static_cast<ElementId>(c)) ==
           g.mul(static_cast<ElementId>(a), g.mul(static_cast<ElementId>(b), static_cast<ElementId>(c)));
  };
  if (n <= 512) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw MalformedInput("multiplication table is not associative");
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 100000; ++i)
      if (!assoc(pick(rng), pick(rng), pick(rng))) throw MalformedInput("multiplication table is not associative");
  }
  g.finish();
  return g;
}

OracleGroup OracleGroup::from_multiplication(std::size_t order,
                                             const std::function<ElementId(ElementId, ElementId)>& mul,
                                             std::string name) {
  if (order > 65535) throw ResourceCap("oracle groups are limited to order 65535");
  std::vector<std::vector<ElementId>> table(order, std::vector<ElementId>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      table[a][b] = mul(static_cast<ElementId>(a), static_cast<ElementId>(b));
  return from_table(table, std::move(name));
}

void OracleGroup::finish() {
  inverse_.assign(n_, 0);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (table_[a * n_ + b] == 0) {
        inverse_[a] = static_cast<ElementId>(b);
        break;
      }
  orders_.assign(n_, 1);
  for (std::size_t a = 1; a < n_; ++a) {
    ElementId x = static_cast<ElementId>(a);
    std::size_t k = 1;
    while (x != 0) {
      x = mul(x, static_cast<ElementId>(a));
      ++k;
    }
    orders_[a] = k;
  }

  std::vector<ElementId> by_order(n_);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](ElementId x, ElementId y) { return orders_[x] > orders_[y]; });
  ElementSet bits(n_);
  bits.set(0);
  std::size_t covered = 1;
  for (auto x : by_order) {
    if (covered == n_) break;
    if (bits.test(x)) continue;
    generators_.push_back(x);
    ElementSet next;
    closure_list(*this, generators_, next);
    bits = next;
    covered = bits.count();
  }
}

ElementId OracleGroup::pow(ElementId a, std::uint64_t e) const {
  ElementId r = identity(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(ElementSet bits, std::vector<ElementId> generators)
    : bits_(std::move(bits)), members_(bits_.members()), generators_(std::move(generators)) {}

Subgroup subgroup_closure(const OracleGroup& g, const std::vector<ElementId>& gens) {
  for (auto x : gens)
    if (x >= g.order()) throw MalformedInput("generator outside the group");
  std::vector<ElementId> cleaned;
  for (auto x : gens)
    if (x != OracleGroup::identity()) cleaned.push_back(x);
  return Subgroup(closure_bits(g, cleaned), cleaned);
}

Subgroup from_members(const OracleGroup& g, const ElementSet& bits) {
  auto members = bits.members();
  std::stable_sort(members.begin(), members.end(),
                   [&](ElementId x, ElementId y) { return g.element_order(x) > g.element_order(y); });
  std::vector<ElementId> gens;
  ElementSet current(g.order());
  current.set(0);
  const std::size_t target = bits.count();
  for (auto x : members) {
    if (current.count() == target) break;
    if (current.test(x)) continue;
    gens.push_back(x);
    current = closure_bits(g, gens);
  }
  if (current != bits) throw InvariantViolation("from_members: member set is not closed");
  return Subgroup(bits, gens);
}

Subgroup trivial_subgroup(const OracleGroup& g) {
  ElementSet b(g.order());
  b.set(0);
  return Subgroup(b, {});
}

Subgroup whole_group(const OracleGroup& g) {
  ElementSet b(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) b.set(static_cast<ElementId>(i));
  return Subgroup(b, g.generators());
}

Subgroup intersection(const OracleGroup& g, const Subgroup& a, const Subgroup& b) {
  return from_members(g, a.bits() & b.bits());
}

Subgroup join(const OracleGroup& g, const Subgroup& a, const Subgroup& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return subgroup_closure(g, gens);
}

Subgroup conjugate(const OracleGroup& g, const Subgroup& s, ElementId by) {
  ElementSet bits(g.order());
  for (auto x : s.members()) bits.set(g.conj(x, by));
  std::vector<ElementId> gens;
  for (auto x : s.generators()) gens.push_back(g.conj(x, by));
  return Subgroup(bits, gens);
}

Subgroup normal_closure(const OracleGroup& g, const std::vector<ElementId>& gens) {
  return normal_closure_in(g, g.generators(), gens);
}

bool is_normal(const OracleGroup& g, const Subgroup& s) {
  for (auto x : s.generators())
    for (auto w : g.generators())
      if (!s.contains(g.conj(x, w))) return false;
  return true;
}

std::size_t product_size(const Subgroup& a, const Subgroup& b) {
  return a.order() * b.order() / a.bits().intersection_count(b.bits());
}

Subgroup derived_subgroup(const OracleGroup& g, const Subgroup& s) {
  return normal_closure_in(g, s.generators(), commutators(g, s.generators(), s.generators()));
}

bool is_solvable(const OracleGroup& g) {
  Subgroup s = whole_group(g);
  while (s.order() > 1) {
    Subgroup d = derived_subgroup(g, s);
    if (d.order() == s.order()) return false;
    s = d;
  }
  return true;
}

bool is_nilpotent(const OracleGroup& g, const Subgroup& s) {
  Subgroup term = s;
  while (term.order() > 1) {
    Subgroup next = normal_closure_in(g, s.generators(), commutators(g, term.generators(), s.generators()));
    if (next.order() == term.order()) return false;
    term = next;
  }
  return true;
}

bool is_maximal_subgroup(const OracleGroup& g, const Subgroup& m) {
  if (m.order() == g.order()) return false;
  ElementSet covered = m.bits();
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto xe = static_cast<ElementId>(x);
    if (covered.test(xe)) continue;
    for (auto y : m.members()) covered.set(g.mul(y, xe));
    auto gens = m.generators();
    gens.push_back(xe);
    if (closure_bits(g, gens).count() != g.order()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- lattice

namespace {

std::vector<Subgroup> enumerate_subgroups(const OracleGroup& g) {
  const std::size_t n = g.order();
  const bool solvable = is_solvable(g);
  std::vector<Subgroup> found{trivial_subgroup(g)};
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  seen.emplace(found[0].bits(), 0);
  for (std::size_t qi = 0; qi < found.size(); ++qi) {
    const Subgroup s = found[qi];
    ElementSet covered = s.bits();
    for (std::size_t x = 0; x < n; ++x) {
      auto xe = static_cast<ElementId>(x);
      if (covered.test(xe)) continue;
      ElementSet t_bits;
      if (solvable) {
        // Extend only by x normalizing S with |<S, x> : S| prime; every subgroup
        // of a solvable group is reached through such a chain.
        bool normalizes = true;
        for (auto y : s.generators())
          if (!s.contains(g.conj(y, xe))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        std::size_t r = 1;
        ElementId power = xe;
        while (!s.contains(power)) {
          power = g.mul(power, xe);
          ++r;
        }
        if (!is_prime_small(r)) continue;
        t_bits = ElementSet(n);
        for (auto y : s.members()) {
          ElementId z = y;
          for (std::size_t i = 0; i < r; ++i) {
            t_bits.set(z);
            z = g.mul(z, xe);
          }
        }
        // Every element of <S, x> \ S generates the same prime-index extension.
        covered |= t_bits;
      } else {
        for (auto y : s.members()) covered.set(g.mul(xe, y));
        auto gens = s.generators();
        gens.push_back(xe);
        t_bits = closure_bits(g, gens);
      }
      if (seen.count(t_bits)) continue;
      auto gens = s.generators();
      gens.push_back(xe);
      seen.emplace(t_bits, found.size());
      found.emplace_back(t_bits, std::move(gens));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

SubgroupLattice SubgroupLattice::build(const OracleGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw ResourceCap("group order " + std::to_string(g.order()) + " exceeds the order cap " +
                      std::to_string(order_cap));
  SubgroupLattice lat;
  lat.group_ = &g;
  lat.subgroups_ = enumerate_subgroups(g);
  const std::size_t count = lat.subgroups_.size();
  for (std::size_t i = 0; i < count; ++i) lat.lookup_.emplace(lat.subgroups_[i].bits(), i);

  lat.supers_.assign(count, {});
  parallel_for(count, [&](std::size_t i) {
    const auto& s = lat.subgroups_[i];
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto& t = lat.subgroups_[j];
      if (t.order() == s.order() || t.order() % s.order() != 0) continue;
      if (s.is_subgroup_of(t)) lat.supers_[i].push_back(j);
    }
  });

  const std::size_t top = count - 1;
  lat.is_maximal_.assign(count, false);
  for (std::size_t i = 0; i < top; ++i)
    if (lat.supers_[i].size() == 1) {
      lat.is_maximal_[i] = true;
      lat.maximals_.push_back(i);
    }

  lat.mobius_.assign(count, 0);
  lat.mobius_[top] = 1;
  for (std::size_t i = top; i-- > 0;) {
    std::int64_t acc = 0;
    for (auto j : lat.supers_[i]) acc += lat.mobius_[j];
    lat.mobius_[i] = -acc;
  }

  lat.is_max_intersection_.assign(count, false);
  lat.max_closure_.assign(count, top);
  for (std::size_t i = 0; i < top; ++i) {
    ElementSet bits = lat.subgroups_[top].bits();
    for (auto m : lat.maximals_)
      if (lat.subgroups_[i].is_subgroup_of(lat.subgroups_[m])) bits &= lat.subgroups_[m].bits();
    lat.max_closure_[i] = lat.id_of(bits);
    lat.is_max_intersection_[i] = lat.max_closure_[i] == i;
  }

  lat.class_of_.assign(count, count);
  for (std::size_t i = 0; i < count; ++i) {
    if (lat.class_of_[i] != count) continue;
    SubgroupClass cls;
    cls.representative = i;
    const std::size_t cid = lat.classes_.size();
    std::vector<std::size_t> orbit{i};
    lat.class_of_[i] = cid;
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      const auto& s = lat.subgroups_[orbit[qi]];
      for (auto w : g.generators()) {
        ElementSet bits(g.order());
        for (auto x : s.members()) bits.set(g.conj(x, w));
        std::size_t j = lat.id_of(bits);
        if (lat.class_of_[j] == count) {
          lat.class_of_[j] = cid;
          orbit.push_back(j);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cls.members = orbit;
    cls.size = orbit.size();
    lat.classes_.push_back(std::move(cls));
  }
  return lat;
}

std::optional<std::size_t> SubgroupLattice::find(const ElementSet& bits) const {
  auto it = lookup_.find(bits);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::id_of(const ElementSet& bits) const {
  auto id = find(bits);
  if (!id) throw PreconditionError("element set is not a subgroup in the lattice");
  return *id;
}

std::vector<Subgroup> all_subgroups(const OracleGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw ResourceCap("group order " + std::to_string(g.order()) + " exceeds the order cap " +
                      std::to_string(order_cap));
  return enumerate_subgroups(g);
}

std::vector<ClassRepresentative> conjugacy_classes_of_subgroups(const OracleGroup& g, std::size_t order_cap) {
  auto lat = SubgroupLattice::build(g, order_cap);
  std::vector<ClassRepresentative> out;
  for (const auto& c : lat.classes()) out.push_back({lat[c.representative], c.size});
  return out;
}

std::vector<Subgroup> maximal_subgroups(const OracleGroup& g, std::size_t order_cap) {
  auto lat = SubgroupLattice::build(g, order_cap);
  std::vector<Subgroup> out;
  for (auto m : lat.maximals()) out.push_back(lat[m]);
  return out;
}

Subgroup frattini(const OracleGroup& g, std::size_t order_cap) {
  if (g.order() == 1) return whole_group(g);
  ElementSet bits = whole_group(g).bits();
  for (const auto& m : maximal_subgroups(g, order_cap)) bits &= m.bits();
  return from_members(g, bits);
}

CoreAndSocle core_and_socle(const OracleGroup& g, const Subgroup& m) {
  if (!is_solvable(g)) throw Unsupported("core_and_socle: group is not solvable");
  if (!is_maximal_subgroup(g, m)) throw PreconditionError("core_and_socle: subgroup is not maximal");
  ElementSet core_bits = m.bits();
  for (std::size_t x = 0; x < g.order(); ++x) {
    ElementSet c(g.order());
    for (auto y : m.members()) c.set(g.conj(y, static_cast<ElementId>(x)));
    core_bits &= c;
  }
  Subgroup core = from_members(g, core_bits);
  // In a primitive solvable group the socle has order |G : M|.
  const std::size_t target = core.order() * (g.order() / m.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto xe = static_cast<ElementId>(x);
    if (m.contains(xe)) continue;
    auto gens = core.generators();
    gens.push_back(xe);
    Subgroup n = normal_closure(g, gens);
    if (n.order() == target) return {core, n};
  }
  throw InvariantViolation("core_and_socle: no minimal normal subgroup of order |G:M| above the core");
}

std::int64_t mobius(const OracleGroup& g, const ElementSet& h, std::size_t node_cap) {
  if (h.universe() != g.order() || !h.test(0)) throw PreconditionError("mobius: H is not a subgroup of G");
  Subgroup hs = from_members(g, closure_bits(g, h.members()));
  if (hs.bits() != h) throw PreconditionError("mobius: H is not a subgroup of G");

  std::vector<Subgroup> nodes{hs};
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen{{hs.bits(), 0}};
  for (std::size_t qi = 0; qi < nodes.size(); ++qi) {
    const Subgroup s = nodes[qi];
    ElementSet covered = s.bits();
    for (std::size_t x = 0; x < g.order(); ++x) {
      auto xe = static_cast<ElementId>(x);
      if (covered.test(xe)) continue;
      for (auto y : s.members()) covered.set(g.mul(xe, y));
      auto gens = s.generators();
      gens.push_back(xe);
      ElementSet t = closure_bits(g, gens);
      if (seen.count(t)) continue;
      seen.emplace(t, nodes.size());
      nodes.emplace_back(t, gens);
      if (nodes.size() > node_cap)
        throw ResourceCap("mobius: overgroup lattice exceeds " + std::to_string(node_cap) + " nodes");
    }
  }
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[b] < nodes[a]; });
  std::vector<std::int64_t> mu(nodes.size(), 0);
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t s = order[oi];
    if (nodes[s].order() == g.order()) {
      mu[s] = 1;
      continue;
    }
    std::int64_t acc = 0;
    for (std::size_t oj = 0; oj < oi; ++oj) {
      std::size_t t = order[oj];
      if (nodes[t].order() > nodes[s].order() && nodes[s].is_subgroup_of(nodes[t])) acc += mu[t];
    }
    mu[s] = -acc;
  }
  return mu[0];
}

CountTable counts(const SubgroupLattice& lattice) {
  CountTable table;
  const std::uint64_t n = lattice.group().order();
  for (std::uint64_t d = 2; d <= n; ++d)
    if (n % d == 0) table[d] = {};
  for (std::size_t i = 0; i < lattice.whole(); ++i) {
    auto& row = table[lattice.index(i)];
    if (lattice.is_maximal(i)) ++row.maximal;
    if (lattice.mobius(i) != 0) ++row.nonzero_mobius;
    if (lattice.is_maximal_intersection(i)) ++row.intersections;
  }
  return table;
}

CountTable counts(const OracleGroup& g, std::size_t order_cap) {
  return counts(SubgroupLattice::build(g, order_cap));
}

bool is_maximal_intersection(const OracleGroup& g, const Subgroup& h, std::size_t order_cap) {
  auto lat = SubgroupLattice::build(g, order_cap);
  return lat.is_maximal_intersection(lat.id_of(h.bits()));
}

// ---------------------------------------------------------------- builders

OracleGroup cyclic_group(std::size_t n) {
  return OracleGroup::from_multiplication(
      n, [n](ElementId a, ElementId b) { return static_cast<ElementId>((a + b) % n); }, "C" + std::to_string(n));
}

OracleGroup cyclic_semidirect(std::size_t n, std::size_t m, std::size_t r, std::string name) {
  std::vector<std::size_t> powers(m, 1);
  for (std::size_t i = 1; i < m; ++i) powers[i] = powers[i - 1] * r % n;
  if (powers[m - 1] * r % n != 1 % n) throw MalformedInput("cyclic_semidirect: r^m is not 1 mod n");
  // Element (a, b) has id b * n + a; (a1, b1)(a2, b2) = (a1 r^b2 + a2, b1 + b2).
  auto mul = [n, m, powers](ElementId x, ElementId y) {
    std::size_t a1 = x % n, b1 = x / n, a2 = y % n, b2 = y / n;
    std::size_t a = (a1 * powers[b2] + a2) % n;
    std::size_t b = (b1 + b2) % m;
    return static_cast<ElementId>(b * n + a);
  };
  if (name.empty()) name = "C" + std::to_string(n) + ":C" + std::to_string(m);
  return OracleGroup::from_multiplication(n * m, mul, std::move(name));
}

OracleGroup dihedral_group(std::size_t n) { return cyclic_semidirect(n, 2, n - 1, "D" + std::to_string(2 * n)); }

OracleGroup direct_product(const OracleGroup& a, const OracleGroup& b, std::string name) {
  const std::size_t nb = b.order();
  auto mul = [&a, &b, nb](ElementId x, ElementId y) {
    return static_cast<ElementId>(a.mul(x / static_cast<ElementId>(nb), y / static_cast<ElementId>(nb)) * nb +
                                  b.mul(x % static_cast<ElementId>(nb), y % static_cast<ElementId>(nb)));
  };
  if (name.empty()) name = a.name() + "x" + b.name();
  return OracleGroup::from_multiplication(a.order() * nb, mul, std::move(name));
}

}  // namespace solvint::groups
