#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "modrep/field.hpp"
#include "modrep/random.hpp"

namespace modrep {

using Word = std::uint64_t;

/// Dense matrix over a small finite field.
///
/// Rows are packed into 64-bit words: one bit per entry over GF(2), one byte
/// per entry otherwise. Padding past the last column is always zero, so two
/// matrices are equal iff their storage is equal. Vectors are 1 x n matrices
/// (rows); matrices act on the right.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Entries given as element codes (for prime fields: integers mod p).
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows);
  static Matrix random(FieldPtr field, std::size_t rows, std::size_t cols, Rng& rng);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t stride() const { return stride_; }
  bool bit_packed() const { return field_ && field_->q() == 2; }

  Elem operator()(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Elem v);

  Word* row_data(std::size_t r) { return data_.data() + r * stride_; }
  const Word* row_data(std::size_t r) const { return data_.data() + r * stride_; }

  bool row_is_zero(std::size_t r) const;
  bool is_zero() const;
  bool is_identity() const;
  /// A single row as a 1 x cols matrix.
  Matrix row(std::size_t r) const;
  Matrix row_range(std::size_t begin, std::size_t count) const;
  /// Submatrix of the given column range.
  Matrix col_range(std::size_t begin, std::size_t count) const;
  std::vector<Elem> row_values(std::size_t r) const;
  void set_row(std::size_t r, const Word* src);
  void append_row(const Word* src);
  void append_rows(const Matrix& other);
  void resize_rows(std::size_t rows);

  bool operator==(const Matrix& other) const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<Word> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Row kernels on raw packed storage.
namespace rowops {
std::size_t words_for(const Field& f, std::size_t cols);
Elem get(const Field& f, const Word* row, std::size_t col);
void set(const Field& f, Word* row, std::size_t col, Elem v);
/// dst += a * src, touching only columns >= from_col (rounded down to a word).
void axpy(const Field& f, Word* dst, const Word* src, Elem a, std::size_t cols, std::size_t from_col = 0);
void scale(const Field& f, Word* row, Elem a, std::size_t cols);
/// First nonzero column >= from, or cols if none.
std::size_t first_nonzero(const Field& f, const Word* row, std::size_t cols, std::size_t from = 0);
bool is_zero(const Word* row, std::size_t words);
/// row * M for a 1 x n row and n x m matrix, written to out (m columns).
void times_matrix(const Field& f, const Word* row, const Matrix& m, Word* out);
}  // namespace rowops

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix scaled(const Matrix& a, Elem s);
Matrix transpose(const Matrix& a);
Matrix power(const Matrix& a, std::uint64_t e);
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);

/// Reduced row echelon form: pivot entries 1, pivot columns zero elsewhere.
struct EchelonForm {
  Matrix matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

EchelonForm rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Basis (as rows) of the left nullspace {v : v * a == 0}.
Matrix nullspace(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
/// Throws DomainError when singular.
Matrix invert(const Matrix& a);
bool same_row_space(const Matrix& a, const Matrix& b);

/// Incrementally built row space in semi-echelon form (each basis row has a
/// leading 1 at its pivot and zeros at the pivots of earlier rows).
class RowSpace {
 public:
  RowSpace(FieldPtr field, std::size_t cols);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t cols() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduce vec in place against the basis.
  void reduce(Word* vec) const;
  /// Reduce and record the coefficients removed (vec_in = sum coeff_i * row_i + residue).
  void reduce(Word* vec, std::vector<Elem>& coeff) const;
  bool contains(const Word* vec) const;
  /// Add vec if it is not in the span; returns true if the dimension grew.
  bool add(const Word* vec);
  void add_rows(const Matrix& m);
  /// Coordinates of a vector known to lie in the span.
  std::vector<Elem> coordinates(const Word* vec) const;
  EchelonForm echelon() const;

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Word> scratch_;
};

}  // namespace modrep
