#include "modrep/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <ostream>

#include "modrep/errors.hpp"

namespace modrep {

namespace rowops {

std::size_t words_for(const Field& f, std::size_t cols) {
  return f.q() == 2 ? (cols + 63) / 64 : (cols + 7) / 8;
}

Elem get(const Field& f, const Word* row, std::size_t col) {
  if (f.q() == 2) return static_cast<Elem>((row[col >> 6] >> (col & 63)) & 1u);
  return reinterpret_cast<const Elem*>(row)[col];
}

void set(const Field& f, Word* row, std::size_t col, Elem v) {
  if (f.q() == 2) {
    const Word bit = Word{1} << (col & 63);
    if (v & 1)
      row[col >> 6] |= bit;
    else
      row[col >> 6] &= ~bit;
    return;
  }
  reinterpret_cast<Elem*>(row)[col] = v;
}

void axpy(const Field& f, Word* dst, const Word* src, Elem a, std::size_t cols, std::size_t from_col) {
  if (a == 0) return;
  if (f.q() == 2) {
    const std::size_t words = (cols + 63) / 64;
    for (std::size_t w = from_col >> 6; w < words; ++w) dst[w] ^= src[w];
    return;
  }
  Elem* d = reinterpret_cast<Elem*>(dst);
  const Elem* s = reinterpret_cast<const Elem*>(src);
  const Elem* add = f.add_table();
  const unsigned q = f.q();
  if (a == 1) {
    for (std::size_t i = from_col; i < cols; ++i) d[i] = add[d[i] * q + s[i]];
  } else {
    const Elem* m = f.mul_row(a);
    for (std::size_t i = from_col; i < cols; ++i) d[i] = add[d[i] * q + m[s[i]]];
  }
}

void scale(const Field& f, Word* row, Elem a, std::size_t cols) {
  if (a == 1) return;
  if (f.q() == 2) {
    if (a == 0) std::fill(row, row + (cols + 63) / 64, Word{0});
    return;
  }
  Elem* d = reinterpret_cast<Elem*>(row);
  const Elem* m = f.mul_row(a);
  for (std::size_t i = 0; i < cols; ++i) d[i] = m[d[i]];
}

std::size_t first_nonzero(const Field& f, const Word* row, std::size_t cols, std::size_t from) {
  if (from >= cols) return cols;
  if (f.q() == 2) {
    const std::size_t words = (cols + 63) / 64;
    std::size_t w = from >> 6;
    Word cur = row[w] & (~Word{0} << (from & 63));
    while (true) {
      if (cur) {
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(cur));
        return c < cols ? c : cols;
      }
      if (++w >= words) return cols;
      cur = row[w];
    }
  }
  const Elem* d = reinterpret_cast<const Elem*>(row);
  std::size_t i = from;
  // byte-wise until word aligned, then skip zero words
  while (i < cols && (i & 7)) {
    if (d[i]) return i;
    ++i;
  }
  while (i + 8 <= cols && row[i >> 3] == 0) i += 8;
  for (; i < cols; ++i)
    if (d[i]) return i;
  return cols;
}

bool is_zero(const Word* row, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w)
    if (row[w]) return false;
  return true;
}

void times_matrix(const Field& f, const Word* row, const Matrix& m, Word* out) {
  const std::size_t out_words = words_for(f, m.cols());
  std::fill(out, out + out_words, Word{0});
  if (f.q() == 2) {
    const std::size_t words = (m.rows() + 63) / 64;
    for (std::size_t w = 0; w < words; ++w) {
      Word bits = row[w];
      while (bits) {
        const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const Word* src = m.row_data(i);
        for (std::size_t k = 0; k < out_words; ++k) out[k] ^= src[k];
      }
    }
    return;
  }
  const Elem* r = reinterpret_cast<const Elem*>(row);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (r[i]) axpy(f, out, m.row_data(i), r[i], m.cols());
}

}  // namespace rowops

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  stride_ = rowops::words_for(*field_, cols);
  data_.assign(rows_ * stride_, 0);
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      const int v = rows[i][j];
      Elem e;
      if (field->deg() == 1) {
        e = field->from_int(v);
      } else {
        if (v < 0 || static_cast<unsigned>(v) >= field->q()) throw DomainError("element code out of range");
        e = static_cast<Elem>(v);
      }
      m.set(i, j, e);
    }
  }
  return m;
}

Matrix Matrix::random(FieldPtr field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng.element(*field));
  return m;
}

Elem Matrix::operator()(std::size_t r, std::size_t c) const { return rowops::get(*field_, row_data(r), c); }

void Matrix::set(std::size_t r, std::size_t c, Elem v) { rowops::set(*field_, row_data(r), c, v); }

bool Matrix::row_is_zero(std::size_t r) const { return rowops::is_zero(row_data(r), stride_); }

bool Matrix::is_zero() const { return rowops::is_zero(data_.data(), data_.size()); }

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    if ((*this)(i, i) != 1) return false;
    if (rowops::first_nonzero(*field_, row_data(i), cols_, 0) != i) return false;
    if (rowops::first_nonzero(*field_, row_data(i), cols_, i + 1) != cols_) return false;
  }
  return true;
}

Matrix Matrix::row(std::size_t r) const { return row_range(r, 1); }

Matrix Matrix::row_range(std::size_t begin, std::size_t count) const {
  Matrix m(field_, count, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * stride_),
            data_.begin() + static_cast<std::ptrdiff_t>((begin + count) * stride_), m.data_.begin());
  return m;
}

Matrix Matrix::col_range(std::size_t begin, std::size_t count) const {
  Matrix m(field_, rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m.set(i, j, (*this)(i, begin + j));
  return m;
}

std::vector<Elem> Matrix::row_values(std::size_t r) const {
  std::vector<Elem> out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
  return out;
}

void Matrix::set_row(std::size_t r, const Word* src) { std::copy(src, src + stride_, row_data(r)); }

void Matrix::append_row(const Word* src) {
  data_.insert(data_.end(), src, src + stride_);
  ++rows_;
}

void Matrix::append_rows(const Matrix& other) {
  if (other.cols_ != cols_) throw DimensionError("append_rows: column mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

void Matrix::resize_rows(std::size_t rows) {
  rows_ = rows;
  data_.resize(rows_ * stride_, 0);
}

bool Matrix::operator==(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  if (field_ != other.field_) return false;
  return data_ == other.data_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.field().q() > 10 && j) os << ' ';
      os << static_cast<unsigned>(m(i, j));
    }
    os << '\n';
  }
  return os;
}

namespace {

void check_same_field(const Matrix& a, const Matrix& b, const char* what) {
  if (a.field_ptr() != b.field_ptr()) throw DimensionError(std::string(what) + ": field mismatch");
}

Matrix multiply_gf2(const Matrix& a, const Matrix& b) {
  Matrix c(a.field_ptr(), a.rows(), b.cols());
  const std::size_t k = a.cols();
  const std::size_t sw = b.stride();
  std::vector<Word> table(256 * sw);
  for (std::size_t kb = 0; kb < k; kb += 8) {
    const std::size_t nb = std::min<std::size_t>(8, k - kb);
    const std::size_t entries = std::size_t{1} << nb;
    std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(sw), Word{0});
    for (std::size_t idx = 1; idx < entries; ++idx) {
      const Word* prev = table.data() + (idx & (idx - 1)) * sw;
      const Word* brow = b.row_data(kb + static_cast<std::size_t>(std::countr_zero(idx)));
      Word* dst = table.data() + idx * sw;
      for (std::size_t w = 0; w < sw; ++w) dst[w] = prev[w] ^ brow[w];
    }
    const std::size_t word = kb >> 6, shift = kb & 63;
    const Word mask = entries - 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const std::size_t sel = static_cast<std::size_t>((a.row_data(i)[word] >> shift) & mask);
      if (!sel) continue;
      const Word* src = table.data() + sel * sw;
      Word* dst = c.row_data(i);
      for (std::size_t w = 0; w < sw; ++w) dst[w] ^= src[w];
    }
  }
  return c;
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "multiply");
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
  if (a.field().q() == 2) return multiply_gf2(a, b);
  Matrix c(a.field_ptr(), a.rows(), b.cols());
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Elem* ai = reinterpret_cast<const Elem*>(a.row_data(i));
    Word* ci = c.row_data(i);
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (ai[k]) rowops::axpy(f, ci, b.row_data(k), ai[k], b.cols());
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) rowops::axpy(a.field(), c.row_data(i), b.row_data(i), 1, a.cols());
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "subtract");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("subtract: shape mismatch");
  Matrix c = a;
  const Elem m1 = a.field().neg(1);
  for (std::size_t i = 0; i < a.rows(); ++i) rowops::axpy(a.field(), c.row_data(i), b.row_data(i), m1, a.cols());
  return c;
}

Matrix operator-(const Matrix& a) { return scaled(a, a.field().neg(1)); }

Matrix scaled(const Matrix& a, Elem s) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) rowops::scale(a.field(), c.row_data(i), s, a.cols());
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.field_ptr(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Word* row = a.row_data(i);
    for (std::size_t j = rowops::first_nonzero(a.field(), row, a.cols()); j < a.cols();
         j = rowops::first_nonzero(a.field(), row, a.cols(), j + 1))
      t.set(j, i, rowops::get(a.field(), row, j));
  }
  return t;
}

Matrix power(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) throw DimensionError("power: matrix not square");
  Matrix result = Matrix::identity(a.field_ptr(), a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "kronecker");
  const Field& f = a.field();
  Matrix k(a.field_ptr(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem x = a(i, j);
      if (!x) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
          const Elem y = b(r, c);
          if (y) k.set(i * b.rows() + r, j * b.cols() + c, f.mul(x, y));
        }
    }
  return k;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "vstack");
  if (a.cols() != b.cols()) throw DimensionError("vstack: column mismatch");
  Matrix c = a;
  c.append_rows(b);
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b, "hstack");
  if (a.rows() != b.rows()) throw DimensionError("hstack: row mismatch");
  Matrix c(a.field_ptr(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) c.set(i, a.cols() + j, b(i, j));
  }
  return c;
}

namespace {

void swap_rows(Matrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  std::swap_ranges(m.row_data(i), m.row_data(i) + m.stride(), m.row_data(j));
}

/// Gauss-Jordan on the first `pivot_cols` columns. Returns pivot columns;
/// rows [0, rank) carry the pivots.
std::vector<std::size_t> gauss_jordan(Matrix& m, std::size_t pivot_cols) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && rowops::get(f, m.row_data(piv), c) == 0) ++piv;
    if (piv == m.rows()) continue;
    swap_rows(m, r, piv);
    rowops::scale(f, m.row_data(r), f.inv(rowops::get(f, m.row_data(r), c)), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Elem x = rowops::get(f, m.row_data(i), c);
      if (x) rowops::axpy(f, m.row_data(i), m.row_data(r), f.neg(x), m.cols(), c);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

EchelonForm rref(const Matrix& a) {
  Matrix m = a;
  auto pivots = gauss_jordan(m, m.cols());
  m.resize_rows(pivots.size());
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& a) {
  RowSpace space(a.field_ptr(), a.cols());
  space.add_rows(a);
  return space.dim();
}

Matrix nullspace(const Matrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  Matrix aug = hstack(a, Matrix::identity(a.field_ptr(), n));
  const auto pivots = gauss_jordan(aug, m);
  Matrix tail = aug.row_range(pivots.size(), n - pivots.size()).col_range(m, n);
  return rref(tail).matrix;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("inverse: matrix not square");
  const std::size_t n = a.rows();
  Matrix aug = hstack(a, Matrix::identity(a.field_ptr(), n));
  const auto pivots = gauss_jordan(aug, n);
  if (pivots.size() != n) return std::nullopt;
  return aug.col_range(n, n);
}

Matrix invert(const Matrix& a) {
  auto inv = inverse(a);
  if (!inv) throw DomainError("matrix is singular");
  return std::move(*inv);
}

bool same_row_space(const Matrix& a, const Matrix& b) { return rref(a).matrix == rref(b).matrix; }

RowSpace::RowSpace(FieldPtr field, std::size_t cols) : basis_(field, 0, cols) {
  scratch_.resize(rowops::words_for(*field, cols));
}

void RowSpace::reduce(Word* vec) const {
  const Field& f = basis_.field();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = rowops::get(f, vec, pivots_[i]);
    if (c) rowops::axpy(f, vec, basis_.row_data(i), f.neg(c), basis_.cols(), pivots_[i]);
  }
}

void RowSpace::reduce(Word* vec, std::vector<Elem>& coeff) const {
  const Field& f = basis_.field();
  coeff.assign(pivots_.size(), 0);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = rowops::get(f, vec, pivots_[i]);
    coeff[i] = c;
    if (c) rowops::axpy(f, vec, basis_.row_data(i), f.neg(c), basis_.cols(), pivots_[i]);
  }
}

bool RowSpace::contains(const Word* vec) const {
  std::vector<Word> tmp(vec, vec + basis_.stride());
  reduce(tmp.data());
  return rowops::is_zero(tmp.data(), tmp.size());
}

bool RowSpace::add(const Word* vec) {
  const Field& f = basis_.field();
  std::copy(vec, vec + basis_.stride(), scratch_.begin());
  reduce(scratch_.data());
  const std::size_t piv = rowops::first_nonzero(f, scratch_.data(), basis_.cols());
  if (piv == basis_.cols()) return false;
  rowops::scale(f, scratch_.data(), f.inv(rowops::get(f, scratch_.data(), piv)), basis_.cols());
  basis_.append_row(scratch_.data());
  pivots_.push_back(piv);
  return true;
}

void RowSpace::add_rows(const Matrix& m) {
  if (m.cols() != basis_.cols()) throw DimensionError("RowSpace: column mismatch");
  for (std::size_t i = 0; i < m.rows(); ++i) add(m.row_data(i));
}

std::vector<Elem> RowSpace::coordinates(const Word* vec) const {
  std::vector<Word> tmp(vec, vec + basis_.stride());
  std::vector<Elem> coeff;
  reduce(tmp.data(), coeff);
  if (!rowops::is_zero(tmp.data(), tmp.size()))
    throw DimensionError("coordinates: vector not in the row space");
  return coeff;
}

EchelonForm RowSpace::echelon() const { return rref(basis_); }

}  // namespace modrep
