#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modrep/field.hpp"
#include "modrep/matrix.hpp"
#include "modrep/random.hpp"

namespace modrep {

/// Univariate polynomial over GF(q), coefficients low-to-high, always trimmed.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  /// x^n
  static Poly monomial(FieldPtr field, std::size_t n);
  /// x - root
  static Poly linear(FieldPtr field, Elem root);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }
  Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  Poly monic() const;
  Poly derivative() const;
  std::string to_string() const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  /// Canonical order: by degree, then coefficients from the top down.
  bool operator<(const Poly& o) const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<Elem> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);

/// p(M) by Horner's rule.
Matrix evaluate(const Poly& p, const Matrix& m);

/// Characteristic polynomial via Krylov segments (product of the relative
/// minimal polynomials of a chain of cyclic subspaces).
Poly charpoly(const Matrix& a);

struct PolyFactor {
  Poly factor;  // monic irreducible
  unsigned multiplicity = 1;
  bool operator==(const PolyFactor&) const = default;
};

/// Factorization of a monic polynomial into monic irreducibles, sorted in the
/// canonical Poly order: square-free, then distinct-degree, then
/// Cantor-Zassenhaus equal-degree splitting.
std::vector<PolyFactor> factor(const Poly& f, Rng& rng);
std::vector<PolyFactor> factor(const Poly& f);

/// Certificate used by tests: x^(q^d) == x mod f holds for d == deg f and for
/// no proper divisor-free smaller d (Rabin).
bool is_irreducible(const Poly& f);

/// Charpoly of a square matrix, factored.
std::vector<PolyFactor> charpoly_and_factor(const Matrix& a);

}  // namespace modrep
