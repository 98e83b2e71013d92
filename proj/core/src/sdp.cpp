#include "solvint/sdp.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "solvint/errors.hpp"

namespace solvint::sdp {

namespace {

// Coefficients y with sum_i y_i rows_i = target, or nullopt. Deterministic:
// the nullspace basis vector owning the target column is used.
std::optional<Vec> solve_combination(std::uint32_t p, const std::vector<Vec>& rows, std::span<const ffla::Scalar> target) {
  ffla::PrimeField f(p);
  const std::size_t m = rows.size();
  std::vector<Vec> equations(target.size(), Vec(m + 1, 0));
  for (std::size_t j = 0; j < target.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) equations[j][i] = rows[i][j];
    equations[j][m] = f.neg(target[j]);
  }
  for (const auto& y : ffla::nullspace(p, m + 1, equations)) {
    if (y[m] == 0) continue;
    ffla::Scalar s = f.inv(y[m]);
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = f.mul(s, y[i]);
    return out;
  }
  return std::nullopt;
}

Vec combine(std::uint32_t p, const std::vector<Vec>& rows, std::span<const ffla::Scalar> coeffs, std::size_t begin,
            std::size_t end, std::size_t n) {
  ffla::PrimeField f(p);
  Vec out(n, 0);
  for (std::size_t i = begin; i < end; ++i) out = ffla::add(f, out, ffla::scale(f, coeffs[i], rows[i]));
  return out;
}

void check_vector(const SdGroup& g, std::span<const ffla::Scalar> v) {
  if (v.size() != g.dim()) throw MalformedInput("translate has the wrong length");
  for (auto x : v)
    if (x >= g.p()) throw MalformedInput("translate entry out of range");
}

void check_subspace(const SdGroup& g, const Subspace& s, std::size_t dim) {
  if (s.ambient_dim() != dim || s.modulus() != g.p()) throw MalformedInput("subspace dimension or modulus mismatch");
}

}  // namespace

// ---------------------------------------------------------------- SdGroup

SdGroup SdGroup::create(std::uint32_t p, std::size_t k, std::size_t t, const std::vector<Matrix>& h_generators,
                        std::uint64_t order_cap) {
  ffla::PrimeField field(p);
  if (k == 0) throw MalformedInput("module dimension k must be positive");
  for (const auto& m : h_generators) {
    if (m.modulus() != p || m.rows() != k || m.cols() != k)
      throw MalformedInput("H generator must be a " + std::to_string(k) + "x" + std::to_string(k) + " matrix over F_" +
                           std::to_string(p));
    if (m.rank() != k) throw ValidationError("invertibility", "H generator is singular");
  }

  std::uint64_t v_order = 1, module_order = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (v_order > order_cap / p) throw ResourceCap("|V| exceeds the order cap " + std::to_string(order_cap));
    v_order *= p;
  }
  for (std::size_t i = 0; i < t; ++i) {
    if (module_order > order_cap / v_order) throw ResourceCap("|V^t| exceeds the order cap " + std::to_string(order_cap));
    module_order *= v_order;
  }

  SdGroup g;
  g.p_ = p;
  g.k_ = k;
  g.t_ = t;
  g.v_order_ = v_order;
  g.module_order_ = module_order;
  g.h_ = groups::MatrixGroup::generate(p, k, h_generators);
  if (g.h_.order() > order_cap / module_order)
    throw ResourceCap("|V^t ⋊ H| exceeds the order cap " + std::to_string(order_cap));

  if (!ffla::is_irreducible(p, k, h_generators))
    throw ValidationError("irreducibility", "V has a proper nonzero H-invariant subspace");
  std::size_t trivial = 0;
  for (const auto& m : g.h_.elements()) trivial += m.is_identity();
  if (trivial != 1) throw ValidationError("faithfulness", "a non-identity element of H acts trivially on V");
  g.h_oracle_ = g.h_.oracle("H");
  if (!groups::is_solvable(g.h_oracle_)) throw ValidationError("solvability", "H is not solvable");
  g.field_ = ffla::endomorphism_field(p, k, h_generators);

  if (h_generators.empty()) {
    g.phi_ = Matrix::identity(p, k);
  } else {
    auto phi = ffla::module_isomorphism(h_generators, h_generators);
    if (!phi) throw InvariantViolation("no H-isomorphism between V and a coordinate block");
    g.phi_ = *phi;
  }
  g.phi_inv_ = g.phi_.inverse();
  for (auto id : g.h_.generator_ids()) g.lifted_gens_.push_back(g.lifted(id));
  return g;
}

Vec SdGroup::act(std::span<const ffla::Scalar> v, ElementId h) const {
  const Matrix& m = h_[h];
  Vec out(v.size());
  for (std::size_t b = 0; b < t_; ++b) {
    Vec part = ffla::apply(v.subspan(b * k_, k_), m);
    std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(b * k_));
  }
  return out;
}

Matrix SdGroup::lifted(ElementId h) const {
  const Matrix& m = h_[h];
  Matrix out(p_, dim(), dim());
  for (std::size_t b = 0; b < t_; ++b)
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t c = 0; c < k_; ++c) out(b * k_ + r, b * k_ + c) = m(r, c);
  return out;
}

SdElement SdGroup::mul(const SdElement& a, const SdElement& b) const {
  ffla::PrimeField f(p_);
  return {ffla::add(f, act(a.w, b.h), b.w), h_.mul(a.h, b.h)};
}

SdElement SdGroup::inverse(const SdElement& a) const {
  ffla::PrimeField f(p_);
  ElementId hi = h_.id_of(h_[a.h].inverse());
  Vec w = act(a.w, hi);
  for (auto& x : w) x = f.neg(x);
  return {w, hi};
}

std::uint64_t SdGroup::vector_id(std::span<const ffla::Scalar> w) const {
  std::uint64_t id = 0;
  for (auto x : w) id = id * p_ + x;
  return id;
}

Vec SdGroup::vector_of(std::uint64_t id) const {
  Vec w(dim());
  for (std::size_t i = dim(); i-- > 0;) {
    w[i] = static_cast<ffla::Scalar>(id % p_);
    id /= p_;
  }
  return w;
}

ElementId SdGroup::id_of(const SdElement& e) const {
  return static_cast<ElementId>(e.h * module_order_ + vector_id(e.w));
}

SdElement SdGroup::element(ElementId id) const {
  return {vector_of(id % module_order_), static_cast<ElementId>(id / module_order_)};
}

bool SdGroup::is_submodule(const Subspace& u) const {
  check_subspace(*this, u, dim());
  for (const auto& b : u.basis())
    for (auto id : h_.generator_ids())
      if (!u.contains(act(b, id))) return false;
  return true;
}

Subspace SdGroup::fixed_space(const std::vector<ElementId>& x) const {
  auto sub = groups::subgroup_closure(h_oracle_, x);
  // Fixed vectors of V under the generators, repeated on each block.
  ffla::PrimeField f(p_);
  std::vector<Vec> equations;
  for (auto h : sub.generators()) {
    const Matrix& m = h_[h];
    for (std::size_t c = 0; c < k_; ++c) {
      Vec e(k_);
      for (std::size_t r = 0; r < k_; ++r) e[r] = f.sub(m(r, c), r == c ? 1 : 0);
      equations.push_back(e);
    }
  }
  auto fixed_v = ffla::nullspace(p_, k_, equations);
  std::vector<Vec> rows;
  for (std::size_t b = 0; b < t_; ++b)
    for (const auto& z : fixed_v) {
      Vec r(dim(), 0);
      std::copy(z.begin(), z.end(), r.begin() + static_cast<std::ptrdiff_t>(b * k_));
      rows.push_back(r);
    }
  return ffla::rref(p_, dim(), rows);
}

std::vector<ElementId> SdGroup::centralizer(const std::vector<ElementId>& x, const Subspace& z) const {
  check_subspace(*this, z, k_);
  std::vector<ElementId> out;
  for (auto h : x) {
    bool fixes = true;
    for (const auto& b : z.basis())
      if (ffla::apply(b, h_[h]) != b) {
        fixes = false;
        break;
      }
    if (fixes) out.push_back(h);
  }
  return out;
}

std::vector<ElementId> SdGroup::all_h() const {
  std::vector<ElementId> out(h_.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<ElementId>(i);
  return out;
}

Subspace SdGroup::block(std::size_t i) const {
  std::vector<Vec> rows;
  for (std::size_t c = 0; c < k_; ++c) {
    Vec r(dim(), 0);
    r[i * k_ + c] = 1;
    rows.push_back(r);
  }
  return ffla::rref(p_, dim(), rows);
}

Vec SdGroup::embed_in_block(std::span<const ffla::Scalar> z, std::size_t i) const {
  Vec img = ffla::apply(z, phi_);
  Vec out(dim(), 0);
  std::copy(img.begin(), img.end(), out.begin() + static_cast<std::ptrdiff_t>(i * k_));
  return out;
}

Vec SdGroup::extract_from_block(std::span<const ffla::Scalar> u, std::size_t i) const {
  for (std::size_t c = 0; c < dim(); ++c)
    if (u[c] != 0 && c / k_ != i) throw PreconditionError("vector does not lie in the coordinate block");
  return ffla::apply(u.subspan(i * k_, k_), phi_inv_);
}

// ---------------------------------------------------------------- descriptors

MaximalSupplement make_supplement(const SdGroup& g, Subspace w, Vec v) {
  check_subspace(g, w, g.dim());
  check_vector(g, v);
  if (w.dim() + g.k() != g.dim() || !g.is_submodule(w))
    throw PreconditionError("W is not a maximal submodule of V^t");
  Subspace mod = ffla::sum(w, g.fixed_space(g.h().generator_ids()));
  Vec rep = mod.reduce(v);
  return {std::move(w), std::move(rep)};
}

StructuredSubgroup make_structured(const SdGroup& g, Subspace u, std::vector<ElementId> x, Vec v) {
  check_subspace(g, u, g.dim());
  check_vector(g, v);
  std::sort(x.begin(), x.end());
  Subspace mod = ffla::sum(u, g.fixed_space(x));
  Vec rep = mod.reduce(v);
  return {std::move(u), std::move(x), std::move(rep)};
}

StructuredSubgroup as_structured(const SdGroup& g, const MaximalSupplement& m) {
  return make_structured(g, m.w, g.all_h(), m.v);
}

StructuredSubgroup as_structured(const SdGroup& g, const CanonicalIntersection& c) {
  return make_structured(g, c.u, g.centralizer(g.all_h(), c.z), c.v);
}

// ---------------------------------------------------------------- enumeration

std::vector<Subspace> enumerate_maximal_submodules(const SdGroup& g) {
  const auto& field = g.field();
  const std::size_t k = g.k(), t = g.t();
  std::vector<Matrix> elems{Matrix(g.p(), k, k)};
  for (const auto& u : field.nonzero_elements()) elems.push_back(u);
  const std::size_t q = elems.size();

  std::vector<Subspace> out;
  for (std::size_t lead = 0; lead < t; ++lead) {
    const std::size_t tail = t - lead - 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < tail; ++i) combos *= q;
    for (std::uint64_t c = 0; c < combos; ++c) {
      // a = (0, ..., 0, 1, a_{lead+1}, ..., a_{t-1}).
      std::vector<std::size_t> a(t, 0);
      a[lead] = 1;
      std::uint64_t rest = c;
      for (std::size_t i = t; i-- > lead + 1;) {
        a[i] = static_cast<std::size_t>(rest % q);
        rest /= q;
      }
      // Kernel of y -> sum_i y_i A_i: columns of the stacked map are the equations.
      std::vector<Vec> equations(k, Vec(g.dim(), 0));
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t col = 0; col < k; ++col) equations[col][i * k + r] = elems[a[i]](r, col);
      out.push_back(ffla::rref(g.p(), g.dim(), ffla::nullspace(g.p(), g.dim(), equations)));
    }
  }
  std::sort(out.begin(), out.end());
  for (const auto& w : out)
    if (w.dim() + k != g.dim() || !g.is_submodule(w))
      throw InvariantViolation("hyperplane kernel is not a maximal submodule");
  return out;
}

std::vector<Subspace> enumerate_submodules(const SdGroup& g) {
  auto maxes = enumerate_maximal_submodules(g);
  std::set<Subspace> seen{Subspace::full(g.p(), g.dim())};
  std::vector<Subspace> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier)
      for (const auto& w : maxes) {
        Subspace i = ffla::intersect(s, w);
        if (seen.insert(i).second) next.push_back(i);
      }
    frontier = std::move(next);
  }
  std::vector<Subspace> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  return out;
}

std::vector<MaximalSupplement> enumerate_maximal_supplements(const SdGroup& g) {
  std::vector<MaximalSupplement> out;
  for (const auto& w : enumerate_maximal_submodules(g)) {
    const std::size_t i0 = complement_block(g, w);
    std::set<Vec> reps;
    for (std::uint64_t zid = 0; zid < g.v_order(); ++zid) {
      Vec z(g.k());
      std::uint64_t rest = zid;
      for (std::size_t c = g.k(); c-- > 0;) {
        z[c] = static_cast<ffla::Scalar>(rest % g.p());
        rest /= g.p();
      }
      Vec v(g.dim(), 0);
      std::copy(z.begin(), z.end(), v.begin() + static_cast<std::ptrdiff_t>(i0 * g.k()));
      auto m = make_supplement(g, w, v);
      if (reps.insert(m.v).second) out.push_back(std::move(m));
    }
  }
  return out;
}

std::size_t complement_block(const SdGroup& g, const Subspace& w) {
  for (std::size_t i = 0; i < g.t(); ++i)
    if (!w.contains(g.block(i))) return i;
  throw PreconditionError("W contains every coordinate block");
}

// ---------------------------------------------------------------- intersections

StructuredSubgroup intersect_case_i(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m) {
  if (!ffla::sum(k.u, m.w).is_full()) throw DispatchError("case i requires W1 + W2 = V^t");
  ffla::PrimeField f(g.p());
  // v2 - v1 = w1 + w2; the intersection is conjugate by v1 + w1.
  Vec d = ffla::sub(f, m.v, k.v);
  std::vector<Vec> rows = k.u.basis();
  rows.insert(rows.end(), m.w.basis().begin(), m.w.basis().end());
  auto y = solve_combination(g.p(), rows, d);
  if (!y) throw InvariantViolation("case i: translate difference not in W1 + W2");
  Vec w1 = combine(g.p(), rows, *y, 0, k.u.dim(), g.dim());
  return make_structured(g, ffla::intersect(k.u, m.w), k.x, ffla::add(f, k.v, w1));
}

CaseTwoResult intersect_case_ii(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m) {
  if (!m.w.contains(k.u)) throw DispatchError("case ii requires W1 ⊆ W2");
  ffla::PrimeField f(g.p());
  const std::size_t i0 = complement_block(g, m.w);
  const Subspace b = g.block(i0);
  Vec d = ffla::sub(f, m.v, k.v);
  std::vector<Vec> rows = m.w.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  auto y = solve_combination(g.p(), rows, d);
  if (!y) throw InvariantViolation("case ii: W2 and the block do not span V^t");
  Vec u = combine(g.p(), rows, *y, m.w.dim(), rows.size(), g.dim());
  Vec z = g.field().line_representative(g.extract_from_block(u, i0));
  Subspace zs = ffla::rref(g.p(), g.k(), {z});
  auto x = g.centralizer(k.x, zs);
  const bool unchanged = x.size() == k.x.size();
  return {make_structured(g, k.u, std::move(x), k.v), std::move(z), unchanged};
}

StructuredSubgroup intersect(const SdGroup& g, const StructuredSubgroup& k, const MaximalSupplement& m) {
  const bool spans = ffla::sum(k.u, m.w).is_full();
  const bool inside = m.w.contains(k.u);
  if (spans == inside) throw InvariantViolation("interKM dispatch: expected exactly one case to apply");
  return spans ? intersect_case_i(g, k, m) : intersect_case_ii(g, k, m).result;
}

CanonicalIntersection canonicalize_intersection(const SdGroup& g, const std::vector<MaximalSupplement>& ms) {
  if (ms.empty()) throw PreconditionError("canonicalize_intersection needs a nonempty family");
  StructuredSubgroup k = make_structured(g, Subspace::full(g.p(), g.dim()), g.all_h(), Vec(g.dim(), 0));
  std::vector<bool> done(ms.size(), false);
  // Phase 1: shrink the submodule part while some W_j does not contain it.
  for (;;) {
    std::size_t pick = ms.size();
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (!done[j] && !ms[j].w.contains(k.u)) {
        pick = j;
        break;
      }
    if (pick == ms.size()) break;
    k = intersect_case_i(g, k, ms[pick]);
    done[pick] = true;
  }
  // Phase 2: every remaining W_j contains U; each one cuts the complement.
  std::vector<Vec> witnesses;
  for (std::size_t j = 0; j < ms.size(); ++j) {
    if (done[j]) continue;
    auto r = intersect_case_ii(g, k, ms[j]);
    if (!ffla::is_zero(r.witness)) witnesses.push_back(r.witness);
    k = std::move(r.result);
  }
  Subspace z = g.field().f_span(witnesses);
  if (g.centralizer(g.all_h(), z) != k.x) throw InvariantViolation("canonicalize: C_H(Z) differs from the cut complement");
  Subspace mod = ffla::sum(k.u, g.fixed_space(k.x));
  return {k.u, mod.reduce(k.v), std::move(z)};
}

namespace {

std::vector<Subspace> greedy_cover(const SdGroup& g, const Subspace& u) {
  std::vector<Subspace> chosen;
  Subspace cur = Subspace::full(g.p(), g.dim());
  for (const auto& w : enumerate_maximal_submodules(g)) {
    if (cur == u) break;
    if (w.contains(u) && !w.contains(cur)) {
      chosen.push_back(w);
      cur = ffla::intersect(cur, w);
    }
  }
  if (cur != u) throw PreconditionError("U is not an intersection of maximal submodules");
  return chosen;
}

}  // namespace

std::size_t submodule_depth(const SdGroup& g, const Subspace& u) {
  check_subspace(g, u, g.dim());
  if (!g.is_submodule(u)) throw PreconditionError("U is not an H-submodule");
  return greedy_cover(g, u).size();
}

std::vector<MaximalSupplement> realize_intersection(const SdGroup& g, const Subspace& u, const Subspace& z) {
  check_subspace(g, u, g.dim());
  check_subspace(g, z, g.k());
  if (!g.is_submodule(u)) throw PreconditionError("U is not an H-submodule");
  if (!g.field().is_closed(z)) throw PreconditionError("Z is not closed under End_H(V)");
  auto chosen = greedy_cover(g, u);
  auto zb = g.field().f_basis(z);
  if (chosen.empty() && !zb.empty())
    throw PreconditionError("realization needs a maximal submodule above U, but U = V^t and Z is nonzero");
  std::vector<MaximalSupplement> out;
  for (const auto& w : chosen) out.push_back(make_supplement(g, w, Vec(g.dim(), 0)));
  if (!zb.empty()) {
    const Subspace& a = chosen.front();
    const std::size_t i0 = complement_block(g, a);
    for (const auto& zj : zb) out.push_back(make_supplement(g, a, g.embed_in_block(zj, i0)));
  }
  return out;
}

// ---------------------------------------------------------------- element sets

ElementSet element_set(const SdGroup& g, const StructuredSubgroup& s) {
  ffla::PrimeField f(g.p());
  ElementSet out(static_cast<std::size_t>(g.order()));
  auto us = s.u.elements();
  for (auto h : s.x) {
    Vec base = ffla::sub(f, s.v, g.act(s.v, h));
    for (const auto& u : us) out.set(g.id_of({ffla::add(f, u, base), h}));
  }
  return out;
}

ElementSet element_set(const SdGroup& g, const MaximalSupplement& m) { return element_set(g, as_structured(g, m)); }

ElementSet element_set(const SdGroup& g, const CanonicalIntersection& c) {
  return element_set(g, as_structured(g, c));
}

groups::OracleGroup embed_as_oracle(const SdGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw ResourceCap("group order " + std::to_string(g.order()) + " exceeds the oracle cap " +
                      std::to_string(order_cap));
  const std::size_t n = static_cast<std::size_t>(g.order());
  std::vector<SdElement> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = g.element(static_cast<ElementId>(i));
  return groups::OracleGroup::from_multiplication(
      n, [&](ElementId a, ElementId b) { return g.id_of(g.mul(elems[a], elems[b])); },
      "V^" + std::to_string(g.t()) + ":H");
}

}  // namespace solvint::sdp
