#pragma once

// Exact linear algebra over prime fields F_p with a runtime modulus.
//
// Vectors are row vectors and matrices act on the right: v -> v * g. A
// group of matrices therefore acts on F_p^k as a right module, which is
// the convention used for every module in the library.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace solvint::ffla {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// Arithmetic in Z/pZ for a prime p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const;
  /// Throws PreconditionError on zero.
  Scalar inv(Scalar a) const;
  Scalar reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static Matrix identity(std::uint32_t p, std::size_t n);
  /// Entries are reduced mod p; every row must have the same length.
  static Matrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_vectors(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows);

  std::uint32_t modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Scalar>& data() const { return data_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix scaled(Scalar s) const;
  Matrix pow(std::uint64_t e) const;
  Matrix transpose() const;
  /// Throws PreconditionError if singular.
  Matrix inverse() const;
  std::size_t rank() const;
  bool is_identity() const;
  bool is_zero() const;

  auto operator<=>(const Matrix&) const = default;
  bool operator==(const Matrix&) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// v * m for a row vector v of length m.rows().
Vec apply(std::span<const Scalar> v, const Matrix& m);
Vec add(const PrimeField& f, std::span<const Scalar> a, std::span<const Scalar> b);
Vec sub(const PrimeField& f, std::span<const Scalar> a, std::span<const Scalar> b);
Vec scale(const PrimeField& f, Scalar s, std::span<const Scalar> v);
bool is_zero(std::span<const Scalar> v);

/// Subspace of F_p^n stored as its reduced row-echelon basis. The RREF basis
/// is unique, so equality and ordering of subspaces are equality and
/// ordering of the bases.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of F_p^n.
  Subspace(std::uint32_t p, std::size_t ambient_dim);

  static Subspace full(std::uint32_t p, std::size_t ambient_dim);

  std::uint32_t modulus() const { return p_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == n_; }

  /// Canonical representative of the coset v + this: zero in every pivot column.
  Vec reduce(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the RREF basis, or nullopt if v is not in the span.
  std::optional<Vec> coordinates(std::span<const Scalar> v) const;
  /// Every vector of the subspace, in order of their coefficient vectors.
  std::vector<Vec> elements() const;

  auto operator<=>(const Subspace&) const = default;
  bool operator==(const Subspace&) const = default;

 private:
  friend Subspace rref(std::uint32_t, std::size_t, const std::vector<Vec>&);
  std::uint32_t p_ = 2;
  std::size_t n_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical RREF basis of the span. Throws MalformedInput on entries >= p or
/// vectors of the wrong length.
Subspace rref(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vec>& vectors);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// B with A ∩ B = 0 and A + B = ambient; B is spanned by ambient basis rows
/// taken greedily in RREF order. Requires A ⊆ ambient.
Subspace complement_in(const Subspace& a, const Subspace& ambient);

/// Basis of {x : e·x = 0 for every equation row e}, taken from the RREF of
/// the equations (one basis vector per free column, in column order).
std::vector<Vec> nullspace(std::uint32_t p, std::size_t unknowns, const std::vector<Vec>& equations);

/// Smallest subspace containing `seed` and invariant under right
/// multiplication by every generator. Throws PreconditionError on a zero seed.
Subspace spin(std::uint32_t p, std::span<const Scalar> seed, std::span<const Matrix> generators);

/// True iff F_p^dim has no proper nonzero invariant subspace. Exhaustive over
/// projective points; dim 0 is not irreducible.
bool is_irreducible(std::uint32_t p, std::size_t dim, std::span<const Matrix> generators);

/// Matrix of g restricted to the invariant subspace A, in A's basis coordinates.
Matrix induced_action(const Subspace& a, const Matrix& g);

/// The centralizer algebra End_H(V) of an irreducible matrix group, which is a
/// finite field F_{p^e} by Schur's lemma.
class EndField {
 public:
  std::uint32_t p() const { return p_; }
  std::size_t degree() const { return basis_.size(); }
  std::uint64_t order() const { return order_; }
  std::size_t module_dim() const { return k_; }
  /// dim_F V.
  std::size_t field_dim_of_module() const { return k_ / basis_.size(); }

  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& primitive_element() const { return primitive_; }
  /// Powers of the primitive element, exponents 0..q-2.
  const std::vector<Matrix>& nonzero_elements() const { return units_; }
  Matrix element(std::span<const Scalar> coefficients) const;

  /// F-span of a set of vectors of V.
  Subspace f_span(const std::vector<Vec>& vectors) const;
  bool is_closed(const Subspace& z) const;
  /// dim_F Z; throws PreconditionError if Z is not F-closed.
  std::size_t f_dim(const Subspace& z) const;
  /// Greedy F-basis of an F-closed subspace, taken from its RREF basis rows.
  std::vector<Vec> f_basis(const Subspace& z) const;
  /// Lexicographically smallest vector of the F-line through v (zero stays zero).
  Vec line_representative(std::span<const Scalar> v) const;

 private:
  friend EndField endomorphism_field(std::uint32_t, std::size_t, std::span<const Matrix>);
  std::uint32_t p_ = 2;
  std::size_t k_ = 0;
  std::uint64_t order_ = 0;
  std::vector<Matrix> basis_;
  Matrix primitive_;
  std::vector<Matrix> units_;
};

/// Solves X g = g X for every generator. Throws PreconditionError if the
/// module is reducible and InvariantViolation if the centralizer is not a field.
EndField endomorphism_field(std::uint32_t p, std::size_t dim, std::span<const Matrix> generators);

/// Every F-subspace of V = F_p^k, ordered by F-dimension and then by RREF
/// basis. Throws ResourceCap when more than `max_count` subspaces exist.
std::vector<Subspace> enumerate_f_subspaces(const EndField& f, std::size_t max_count = 100000);

/// Invertible T (dA x dB) with A_i T = T B_i for all i, taking the first
/// invertible solution in lexicographic order of nullspace coefficients.
std::optional<Matrix> module_isomorphism(std::span<const Matrix> action_a,
                                         std::span<const Matrix> action_b);

/// H-isomorphism between two invariant subspaces, possibly of different ambients.
class ModuleMap {
 public:
  ModuleMap(Subspace domain, Subspace codomain, Matrix coords)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), coords_(std::move(coords)) {}

  const Subspace& domain() const { return domain_; }
  const Subspace& codomain() const { return codomain_; }
  /// Matrix in basis coordinates: row i is the image of the i-th domain basis vector.
  const Matrix& coords() const { return coords_; }

  /// Throws PreconditionError if v is not in the domain.
  Vec apply(std::span<const Scalar> v) const;

 private:
  Subspace domain_;
  Subspace codomain_;
  Matrix coords_;
};

/// gens_a / gens_b act on the ambients of A / B (same number of generators).
std::optional<ModuleMap> module_isomorphism(const Subspace& a, std::span<const Matrix> gens_a,
                                            const Subspace& b, std::span<const Matrix> gens_b);

}  // namespace solvint::ffla
