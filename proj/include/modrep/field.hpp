#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace modrep {

/// Field elements are stored as their base-p digit vector read as an integer,
/// so 0..p-1 are the prime subfield and 0/1 are zero/one in every field.
using Elem = std::uint8_t;

/// Characteristic, degree and defining polynomial of GF(p^deg).
struct FieldSpec {
  unsigned p = 2;
  unsigned deg = 1;
  /// Monic, low-to-high, length deg+1. Empty means "use the built-in default".
  std::vector<unsigned> minpoly;

  bool operator==(const FieldSpec&) const = default;
};

/// Built-in defining polynomial for GF(p^deg) (Conway polynomials for the
/// small fields), or an empty vector when none is shipped.
std::vector<unsigned> default_minpoly(unsigned p, unsigned deg);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Table-driven arithmetic in GF(q), q <= 256. Instances are interned: two
/// calls with the same spec return the same pointer.
class Field {
 public:
  static FieldPtr get(const FieldSpec& spec);
  static FieldPtr get(unsigned p, unsigned deg = 1) { return get(FieldSpec{p, deg, {}}); }

  unsigned p() const { return spec_.p; }
  unsigned deg() const { return spec_.deg; }
  unsigned q() const { return q_; }
  const FieldSpec& spec() const { return spec_; }
  std::string name() const;

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  /// Throws DomainError for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// The unique b with b^p == a.
  Elem pth_root(Elem a) const { return root_[a]; }
  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const;
  /// A fixed generator of the multiplicative group.
  Elem primitive() const { return primitive_; }

  /// Row tables for inner loops.
  const Elem* add_table() const { return add_.data(); }
  const Elem* mul_row(Elem a) const { return mul_.data() + a * q_; }

  /// Matrix of multiplication by a on the prime-field basis 1, x, ..., x^(deg-1)
  /// (row i is the digit vector of x^i * a).
  std::vector<unsigned> prime_field_matrix(Elem a) const;

  explicit Field(const FieldSpec& spec);

 private:
  FieldSpec spec_;
  unsigned q_ = 0;
  Elem primitive_ = 1;
  std::vector<Elem> add_, mul_, neg_, inv_, root_;
};

/// True iff `poly` (low-to-high, over GF(p)) is irreducible of its degree.
bool is_irreducible_over_prime(unsigned p, const std::vector<unsigned>& poly);

bool is_prime(unsigned n);

}  // namespace modrep
