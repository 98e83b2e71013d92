#include "solvint/ffla.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "solvint/errors.hpp"

namespace solvint::ffla {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw MalformedInput("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(r);
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw PreconditionError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
  return m;
}

Matrix Matrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
  PrimeField f(p);
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MalformedInput("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.reduce(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_vectors(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MalformedInput("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw MalformedInput("matrix product shape or modulus mismatch");
  Matrix out(p_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t l = 0; l < cols_; ++l) acc += static_cast<std::uint64_t>((*this)(i, l)) * o(l, j) % p_;
      out(i, j) = static_cast<Scalar>(acc % p_);
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw MalformedInput("matrix sum shape mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + o.data_[i]) % p_;
  return out;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix out(*this);
  for (auto& x : out.data_) x = static_cast<Scalar>(static_cast<std::uint64_t>(x) * s % p_);
  return out;
}

Matrix Matrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw MalformedInput("power of a non-square matrix");
  Matrix r = identity(p_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix out(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
  PrimeField f(p_);
  std::size_t n = rows_;
  Matrix a(*this), inv = identity(p_, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw PreconditionError("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Scalar s = f.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = f.mul(a(c, j), s);
      inv(c, j) = f.mul(inv(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Scalar m = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = f.sub(a(r, j), f.mul(m, a(c, j)));
        inv(r, j) = f.sub(inv(r, j), f.mul(m, inv(c, j)));
      }
    }
  }
  return inv;
}

std::size_t Matrix::rank() const {
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < rows_; ++r) rows.emplace_back(row(r).begin(), row(r).end());
  return rref(p_, cols_, rows).dim();
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

// ---------------------------------------------------------------- vectors

Vec apply(std::span<const Scalar> v, const Matrix& m) {
  if (v.size() != m.rows()) throw MalformedInput("vector length does not match matrix rows");
  const std::uint64_t p = m.modulus();
  Vec out(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) acc += static_cast<std::uint64_t>(v[i]) * m(i, j) % p;
    out[j] = static_cast<Scalar>(acc % p);
  }
  return out;
}

Vec add(const PrimeField& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

Vec sub(const PrimeField& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

Vec scale(const PrimeField& f, Scalar s, std::span<const Scalar> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(s, v[i]);
  return out;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::uint32_t p, std::size_t ambient_dim) : p_(p), n_(ambient_dim) {}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient_dim) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Vec e(ambient_dim, 0);
    e[i] = 1;
    rows.push_back(std::move(e));
  }
  return rref(p, ambient_dim, rows);
}

Vec Subspace::reduce(std::span<const Scalar> v) const {
  if (v.size() != n_) throw MalformedInput("vector length does not match ambient dimension");
  PrimeField f(p_);
  Vec out(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Scalar c = out[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t j = pivots_[i]; j < n_; ++j) out[j] = f.sub(out[j], f.mul(c, basis_[i][j]));
  }
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const { return ffla::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.n_ != n_ || other.p_ != p_) throw MalformedInput("subspace dimension or modulus mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& b) { return contains(b); });
}

std::optional<Vec> Subspace::coordinates(std::span<const Scalar> v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

std::vector<Vec> Subspace::elements() const {
  PrimeField f(p_);
  std::vector<Vec> out;
  std::size_t d = basis_.size();
  Vec coeff(d, 0);
  while (true) {
    Vec v(n_, 0);
    for (std::size_t i = 0; i < d; ++i)
      if (coeff[i])
        for (std::size_t j = 0; j < n_; ++j) v[j] = f.add(v[j], f.mul(coeff[i], basis_[i][j]));
    out.push_back(std::move(v));
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++coeff[pos] < p_) break;
      coeff[pos] = 0;
      if (pos == 0) return out;
    }
    if (d == 0) return out;
  }
}

Subspace rref(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
  PrimeField f(p);
  std::vector<Vec> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw MalformedInput("vector length does not match ambient dimension");
    for (auto x : v)
      if (x >= p) throw MalformedInput("vector entry not reduced mod p");
    m.push_back(v);
  }
  Subspace out(p, ambient_dim);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient_dim && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Scalar s = f.inv(m[r][c]);
    for (std::size_t j = c; j < ambient_dim; ++j) m[r][j] = f.mul(m[r][j], s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar k = m[i][c];
      for (std::size_t j = c; j < ambient_dim; ++j) m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
    }
    out.pivots_.push_back(c);
    ++r;
  }
  m.resize(r);
  out.basis_ = std::move(m);
  return out;
}

namespace {
void check_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.modulus() != b.modulus())
    throw MalformedInput("subspace dimension or modulus mismatch");
}
}  // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  std::vector<Vec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return rref(a.modulus(), a.ambient_dim(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  const std::uint32_t p = a.modulus();
  const std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace(p, n);
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  // Relations sum_i x_i a_i + sum_j y_j b_j = 0; each gives sum_i x_i a_i in A ∩ B.
  std::size_t da = a.dim(), db = b.dim();
  std::vector<Vec> equations(n, Vec(da + db, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < da; ++i) equations[c][i] = a.basis()[i][c];
    for (std::size_t j = 0; j < db; ++j) equations[c][da + j] = b.basis()[j][c];
  }
  PrimeField f(p);
  std::vector<Vec> span;
  for (const auto& rel : nullspace(p, da + db, equations)) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < da; ++i)
      if (rel[i])
        for (std::size_t c = 0; c < n; ++c) v[c] = f.add(v[c], f.mul(rel[i], a.basis()[i][c]));
    span.push_back(std::move(v));
  }
  return rref(p, n, span);
}

Subspace complement_in(const Subspace& a, const Subspace& ambient) {
  check_compatible(a, ambient);
  if (!ambient.contains(a)) throw PreconditionError("complement_in: A is not contained in the ambient");
  Subspace current = a;
  std::vector<Vec> chosen;
  for (const auto& v : ambient.basis()) {
    if (current.contains(v)) continue;
    chosen.push_back(v);
    current = sum(current, rref(a.modulus(), a.ambient_dim(), {v}));
  }
  return rref(a.modulus(), a.ambient_dim(), chosen);
}

std::vector<Vec> nullspace(std::uint32_t p, std::size_t unknowns, const std::vector<Vec>& equations) {
  Subspace rows = rref(p, unknowns, equations);
  PrimeField f(p);
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : rows.pivots()) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    Vec x(unknowns, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < rows.dim(); ++i) x[rows.pivots()[i]] = f.neg(rows.basis()[i][free]);
    out.push_back(std::move(x));
  }
  return out;
}

Subspace spin(std::uint32_t p, std::span<const Scalar> seed, std::span<const Matrix> generators) {
  if (is_zero(seed)) throw PreconditionError("spin: zero seed");
  const std::size_t n = seed.size();
  for (const auto& g : generators)
    if (g.rows() != n || g.cols() != n || g.modulus() != p)
      throw MalformedInput("spin: generator shape or modulus mismatch");
  Subspace span = rref(p, n, {Vec(seed.begin(), seed.end())});
  std::vector<Vec> queue{Vec(seed.begin(), seed.end())};
  std::vector<Vec> basis_rows = queue;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& g : generators) {
      Vec img = ffla::apply(queue[qi], g);
      if (span.contains(img)) continue;
      basis_rows.push_back(img);
      span = rref(p, n, basis_rows);
      queue.push_back(std::move(img));
    }
  }
  return span;
}

bool is_irreducible(std::uint32_t p, std::size_t dim, std::span<const Matrix> generators) {
  if (dim == 0) return false;
  double points = 1;
  for (std::size_t i = 0; i < dim; ++i) points *= p;
  if (points > 4194304.0) throw ResourceCap("irreducibility check: |V| exceeds 2^22");
  // Enumerate projective points: first nonzero coordinate equal to 1.
  for (std::size_t lead = 0; lead < dim; ++lead) {
    Vec v(dim, 0);
    v[lead] = 1;
    while (true) {
      if (spin(p, v, generators).dim() != dim) return false;
      std::size_t pos = dim;
      bool done = true;
      while (pos > lead + 1) {
        --pos;
        if (++v[pos] < p) {
          done = false;
          break;
        }
        v[pos] = 0;
      }
      if (done) break;
    }
  }
  return true;
}

Matrix induced_action(const Subspace& a, const Matrix& g) {
  Matrix out(a.modulus(), a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto c = a.coordinates(ffla::apply(a.basis()[i], g));
    if (!c) throw PreconditionError("induced_action: subspace is not invariant");
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = (*c)[j];
  }
  return out;
}

// ---------------------------------------------------------------- EndField

Matrix EndField::element(std::span<const Scalar> coefficients) const {
  Matrix m(p_, k_, k_);
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if (coefficients[j]) m = m + basis_[j].scaled(coefficients[j]);
  return m;
}

Subspace EndField::f_span(const std::vector<Vec>& vectors) const {
  std::vector<Vec> rows;
  for (const auto& v : vectors)
    for (const auto& b : basis_) rows.push_back(ffla::apply(v, b));
  return rref(p_, k_, rows);
}

bool EndField::is_closed(const Subspace& z) const { return f_span(z.basis()) == z; }

std::size_t EndField::f_dim(const Subspace& z) const {
  if (!is_closed(z)) throw PreconditionError("subspace is not closed under End_H(V)");
  return z.dim() / basis_.size();
}

std::vector<Vec> EndField::f_basis(const Subspace& z) const {
  std::vector<Vec> chosen;
  Subspace current(p_, k_);
  for (const auto& v : z.basis()) {
    if (current.contains(v)) continue;
    chosen.push_back(v);
    current = f_span(chosen);
  }
  if (current != z) throw PreconditionError("subspace is not closed under End_H(V)");
  return chosen;
}

Vec EndField::line_representative(std::span<const Scalar> v) const {
  Vec best(v.begin(), v.end());
  if (ffla::is_zero(v)) return best;
  for (const auto& u : units_) {
    Vec w = ffla::apply(v, u);
    if (w < best) best = std::move(w);
  }
  return best;
}

namespace {
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace

EndField endomorphism_field(std::uint32_t p, std::size_t dim, std::span<const Matrix> generators) {
  PrimeField f(p);
  for (const auto& g : generators)
    if (g.rows() != dim || g.cols() != dim || g.modulus() != p)
      throw MalformedInput("endomorphism_field: generator shape or modulus mismatch");
  if (!is_irreducible(p, dim, generators))
    throw PreconditionError("endomorphism_field: module is reducible");

  // Unknown X with entry (a, b) at a * dim + b; equations (Xg - gX)_{ij} = 0.
  std::vector<Vec> equations;
  for (const auto& g : generators) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        Vec row(dim * dim, 0);
        for (std::size_t l = 0; l < dim; ++l) {
          row[i * dim + l] = f.add(row[i * dim + l], g(l, j));
          row[l * dim + j] = f.sub(row[l * dim + j], g(i, l));
        }
        equations.push_back(std::move(row));
      }
    }
  }
  EndField out;
  out.p_ = p;
  out.k_ = dim;
  for (const auto& sol : nullspace(p, dim * dim, equations)) {
    Matrix m(p, dim, dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) m(a, b) = sol[a * dim + b];
    out.basis_.push_back(std::move(m));
  }
  const std::size_t e = out.basis_.size();
  if (e == 0 || dim % e != 0) throw InvariantViolation("centralizer degree does not divide dim V");
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = i + 1; j < e; ++j)
      if (out.basis_[i] * out.basis_[j] != out.basis_[j] * out.basis_[i])
        throw InvariantViolation("centralizer algebra is not commutative");

  std::uint64_t q = 1;
  for (std::size_t i = 0; i < e; ++i) q *= p;
  out.order_ = q;
  const auto factors = prime_factors(q - 1);
  const Matrix one = Matrix::identity(p, dim);

  // Lexicographic enumeration of coefficient vectors, most significant first.
  Vec coeff(e, 0);
  bool found = false;
  for (std::uint64_t m = 1; m < q && !found; ++m) {
    std::uint64_t x = m;
    for (std::size_t j = e; j-- > 0;) {
      coeff[j] = static_cast<Scalar>(x % p);
      x /= p;
    }
    Matrix cand = out.element(coeff);
    if (cand.pow(q - 1) != one) continue;
    bool primitive = true;
    for (auto r : factors)
      if (cand.pow((q - 1) / r) == one) {
        primitive = false;
        break;
      }
    if (!primitive) continue;
    out.primitive_ = cand;
    found = true;
  }
  if (!found) throw InvariantViolation("centralizer algebra has no element of order p^e - 1");
  Matrix power = one;
  for (std::uint64_t i = 0; i + 1 < q; ++i) {
    out.units_.push_back(power);
    power = power * out.primitive_;
  }
  return out;
}

std::vector<Subspace> enumerate_f_subspaces(const EndField& f, std::size_t max_count) {
  const std::uint32_t p = f.p();
  const std::size_t k = f.module_dim();
  Subspace whole = Subspace::full(p, k);
  const auto all_vectors = whole.elements();
  std::vector<Subspace> out;
  std::vector<Subspace> level{Subspace(p, k)};
  while (!level.empty()) {
    out.insert(out.end(), level.begin(), level.end());
    if (out.size() > max_count) throw ResourceCap("F-subspace enumeration exceeds cap " + std::to_string(max_count));
    std::set<Subspace> next;
    for (const auto& s : level) {
      if (s.is_full()) continue;
      for (const auto& v : all_vectors) {
        if (s.reduce(v) != v || ffla::is_zero(v)) continue;
        std::vector<Vec> gens = s.basis();
        gens.push_back(v);
        next.insert(f.f_span(gens));
        if (next.size() + out.size() > max_count)
          throw ResourceCap("F-subspace enumeration exceeds cap " + std::to_string(max_count));
      }
    }
    level.assign(next.begin(), next.end());
  }
  return out;
}

std::optional<Matrix> module_isomorphism(std::span<const Matrix> action_a, std::span<const Matrix> action_b) {
  if (action_a.size() != action_b.size()) throw MalformedInput("module_isomorphism: generator count mismatch");
  if (action_a.empty()) throw MalformedInput("module_isomorphism: needs at least one generator");
  const std::size_t da = action_a.front().rows(), db = action_b.front().rows();
  const std::uint32_t p = action_a.front().modulus();
  if (da != db || p != action_b.front().modulus()) return std::nullopt;
  PrimeField f(p);
  const std::size_t d = da;
  if (d == 0) return Matrix(p, 0, 0);

  // Unknown T with entry (i, j) at i * d + j; equations (A T - T B)_{ij} = 0.
  std::vector<Vec> equations;
  for (std::size_t g = 0; g < action_a.size(); ++g) {
    const auto& A = action_a[g];
    const auto& B = action_b[g];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        Vec row(d * d, 0);
        for (std::size_t l = 0; l < d; ++l) {
          row[l * d + j] = f.add(row[l * d + j], A(i, l));
          row[i * d + l] = f.sub(row[i * d + l], B(l, j));
        }
        equations.push_back(std::move(row));
      }
    }
  }
  const auto sols = nullspace(p, d * d, equations);
  const std::size_t s = sols.size();
  if (s == 0) return std::nullopt;
  double candidates = 1;
  for (std::size_t i = 0; i < s; ++i) candidates *= p;
  if (candidates > 16777216.0) throw ResourceCap("module_isomorphism: solution space too large to enumerate");

  const auto total = static_cast<std::uint64_t>(candidates);
  Vec coeff(s, 0);
  for (std::uint64_t m = 1; m < total; ++m) {
    std::uint64_t x = m;
    for (std::size_t j = s; j-- > 0;) {
      coeff[j] = static_cast<Scalar>(x % p);
      x /= p;
    }
    Matrix t(p, d, d);
    for (std::size_t j = 0; j < s; ++j) {
      if (!coeff[j]) continue;
      for (std::size_t e = 0; e < d * d; ++e)
        t(e / d, e % d) = f.add(t(e / d, e % d), f.mul(coeff[j], sols[j][e]));
    }
    if (t.rank() == d) return t;
  }
  return std::nullopt;
}

Vec ModuleMap::apply(std::span<const Scalar> v) const {
  auto c = domain_.coordinates(v);
  if (!c) throw PreconditionError("ModuleMap::apply: vector outside the domain");
  Vec img = ffla::apply(*c, coords_);
  PrimeField f(codomain_.modulus());
  Vec out(codomain_.ambient_dim(), 0);
  for (std::size_t j = 0; j < img.size(); ++j)
    if (img[j])
      for (std::size_t x = 0; x < out.size(); ++x) out[x] = f.add(out[x], f.mul(img[j], codomain_.basis()[j][x]));
  return out;
}

std::optional<ModuleMap> module_isomorphism(const Subspace& a, std::span<const Matrix> gens_a, const Subspace& b,
                                            std::span<const Matrix> gens_b) {
  if (a.dim() != b.dim() || a.modulus() != b.modulus()) return std::nullopt;
  if (gens_a.size() != gens_b.size()) throw MalformedInput("module_isomorphism: generator count mismatch");
  std::vector<Matrix> act_a, act_b;
  for (const auto& g : gens_a) act_a.push_back(induced_action(a, g));
  for (const auto& g : gens_b) act_b.push_back(induced_action(b, g));
  if (act_a.empty()) {
    // Trivial group: any invertible map is equivariant; take the identity in coordinates.
    return ModuleMap(a, b, Matrix::identity(a.modulus(), a.dim()));
  }
  auto t = module_isomorphism(std::span<const Matrix>(act_a), std::span<const Matrix>(act_b));
  if (!t) return std::nullopt;
  return ModuleMap(a, b, *t);
}

}  // namespace solvint::ffla
