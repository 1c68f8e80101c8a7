#include <algorithm>

#include "modrep/errors.hpp"
#include "modrep/structure.hpp"

namespace modrep {

namespace {

// Right regular representation of a unital matrix algebra:
// rho[a] row i = coordinates of basis[i] * basis[a].
struct RegularRep {
  FieldPtr field;
  std::size_t n = 0;  // size of the matrices
  std::vector<Matrix> basis;
  bool added_identity = false;
  std::vector<std::pair<std::size_t, std::size_t>> keys;  // entries determining coordinates
  Matrix key_inv;
  std::vector<Matrix> rho;

  std::size_t dim() const { return basis.size(); }

  std::vector<Elem> key_values(const Matrix& z) const {
    std::vector<Elem> v;
    for (const auto& [r, c] : keys) v.push_back(z(r, c));
    return v;
  }
  Matrix coordinates_of_keys(const std::vector<Elem>& v) const {
    Matrix row(field, 1, v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) row.set(0, i, v[i]);
    return row * key_inv;
  }
  Matrix combine(const Matrix& coords) const {
    Matrix acc(field, n, n);
    for (std::size_t i = 0; i < coords.cols(); ++i) {
      const Elem c = coords(0, i);
      if (c) acc = acc + (c == 1 ? basis[i] : scaled(basis[i], c));
    }
    return acc;
  }
};

void choose_keys(RegularRep& rr) {
  const std::size_t d = rr.dim(), n = rr.n;
  Matrix flat(rr.field, d, n * n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const Elem v = rr.basis[i](r, c);
        if (v) flat.set(i, r * n + c, v);
      }
  const auto ef = rref(flat);
  if (ef.rank() != d) throw DomainError("algebra basis is linearly dependent");
  rr.keys.clear();
  Matrix key(rr.field, d, d);
  for (std::size_t t = 0; t < d; ++t) {
    rr.keys.emplace_back(ef.pivots[t] / n, ef.pivots[t] % n);
    for (std::size_t i = 0; i < d; ++i) {
      const Elem v = flat(i, ef.pivots[t]);
      if (v) key.set(i, t, v);
    }
  }
  rr.key_inv = invert(key);
}

RegularRep regular_rep(const std::vector<Matrix>& basis, Rng& rng) {
  RegularRep rr;
  if (basis.empty()) throw DomainError("algebra_radical: empty basis");
  rr.field = basis[0].field_ptr();
  rr.n = basis[0].rows();
  for (const auto& b : basis)
    if (!b.is_square() || b.rows() != rr.n || b.field_ptr() != rr.field)
      throw DimensionError("algebra basis matrices must be square of one size over one field");
  rr.basis = basis;
  choose_keys(rr);
  const Matrix id = Matrix::identity(rr.field, rr.n);
  if (!(rr.combine(rr.coordinates_of_keys(rr.key_values(id))) == id)) {
    rr.basis.push_back(id);
    rr.added_identity = true;
    choose_keys(rr);
  }

  const Field& f = *rr.field;
  const std::size_t d = rr.dim(), n = rr.n;
  // rows of basis[i] and columns of basis[a] touched by the key entries
  std::vector<std::vector<std::vector<Elem>>> rows(d), cols(d);
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& [r, c] : rr.keys) {
      std::vector<Elem> rv(n), cv(n);
      for (std::size_t k = 0; k < n; ++k) {
        rv[k] = rr.basis[i](r, k);
        cv[k] = rr.basis[i](k, c);
      }
      rows[i].push_back(std::move(rv));
      cols[i].push_back(std::move(cv));
    }
  rr.rho.assign(d, Matrix(rr.field, d, d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Elem> v(d, 0);
      for (std::size_t t = 0; t < d; ++t) {
        Elem s = 0;
        const auto& x = rows[i][t];
        const auto& y = cols[a][t];
        for (std::size_t k = 0; k < n; ++k)
          if (x[k] && y[k]) s = f.add(s, f.mul(x[k], y[k]));
        v[t] = s;
      }
      const Matrix coords = rr.coordinates_of_keys(v);
      rr.rho[a].set_row(i, coords.row_data(0));
    }

  // closure checks: every basis product for small algebras, random products otherwise
  if (d <= 16) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t a = 0; a < d; ++a)
        if (!(rr.combine(rr.rho[a].row(i)) == rr.basis[i] * rr.basis[a]))
          throw DomainError("algebra basis is not closed under multiplication");
  } else {
    for (int t = 0; t < 8; ++t) {
      const Matrix x = Matrix::random(rr.field, 1, d, rng), y = Matrix::random(rr.field, 1, d, rng);
      Matrix yr(rr.field, d, d);
      for (std::size_t a = 0; a < d; ++a)
        if (y(0, a)) yr = yr + scaled(rr.rho[a], y(0, a));
      if (!(rr.combine(x * yr) == rr.combine(x) * rr.combine(y)))
        throw DomainError("algebra basis is not closed under multiplication");
    }
  }
  return rr;
}

Matrix regular_matrix(const std::vector<Matrix>& rho, const Matrix& coords) {
  Matrix acc(rho[0].field_ptr(), rho.size(), rho.size());
  for (std::size_t s = 0; s < rho.size(); ++s) {
    const Elem c = coords(0, s);
    if (c) acc = acc + (c == 1 ? rho[s] : scaled(rho[s], c));
  }
  return acc;
}

// Integer matrices mod m for the trace forms.
using IntMat = std::vector<long long>;

IntMat int_mul(const IntMat& a, const IntMat& b, std::size_t n, long long mod) {
  IntMat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const long long x = a[i * n + k];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
      if (k % 64 == 63)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] %= mod;
    }
  for (auto& v : c) v %= mod;
  return c;
}

// Prime-field image of rho(x) for x = beta_t * basis[i]: each entry becomes
// the block of multiplication by that field element.
IntMat prime_image(const Field& f, const Matrix& m) {
  const std::size_t d = m.rows(), e = f.deg(), n = d * e;
  IntMat out(n * n, 0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) {
      const Elem v = m(r, s);
      if (!v) continue;
      const auto blk = f.prime_field_matrix(v);
      for (std::size_t a = 0; a < e; ++a)
        for (std::size_t b = 0; b < e; ++b) out[(r * e + a) * n + s * e + b] = blk[a * e + b];
    }
  return out;
}

// Trace-form peeling. I_{-1} = A; I_i = { a in I_{i-1} : g_i(ab) = 0 for all
// b in A } with g_i(x) = Tr(x^(p^i)) / p^i mod p computed on integer lifts;
// I_l = J(A) for p^l <= n < p^(l+1). Works over the prime field, so
// extension-field algebras are first written over GF(p).
// Returns J in coordinates of the rho basis, or nullopt if a trace value is
// not divisible as the theory requires.
std::optional<Matrix> trace_form_radical(const FieldPtr& fq, const std::vector<Matrix>& rho) {
  const Field& f = *fq;
  const unsigned p = f.p(), e = f.deg();
  const std::size_t d = rho.size();
  if (d == 0) return Matrix(fq, 0, 0);
  const FieldPtr fp = Field::get(p);
  const std::size_t big = d * e, n = d * e;

  // prime-field basis u = (i, t) <-> beta_t * basis[i], beta_t = x^t
  std::vector<IntMat> y(big);
  for (std::size_t i = 0; i < d; ++i) {
    unsigned code = 1;  // x^t has code p^t
    for (unsigned t = 0; t < e; ++t, code *= p) y[i * e + t] = prime_image(f, scaled(rho[i], static_cast<Elem>(code)));
  }

  Matrix ideal = Matrix::identity(fp, big);  // rows: prime-field coordinates
  long long pi = 1;                           // p^i
  for (unsigned level = 0; pi <= static_cast<long long>(n); ++level, pi *= p) {
    const long long mod = pi * p;
    Matrix g(fp, ideal.rows(), big);
    for (std::size_t r = 0; r < ideal.rows(); ++r) {
      IntMat a(n * n, 0);
      for (std::size_t u = 0; u < big; ++u) {
        const Elem c = ideal(r, u);
        if (!c) continue;
        for (std::size_t k = 0; k < n * n; ++k) a[k] += c * y[u][k];
      }
      for (auto& v : a) v %= p;
      for (std::size_t s = 0; s < big; ++s) {
        IntMat x = int_mul(a, y[s], n, p);
        // x^(p^level) mod p^(level+1)
        for (unsigned j = 0; j < level; ++j) {
          IntMat acc = x;
          for (unsigned q = 1; q < p; ++q) acc = int_mul(acc, x, n, mod);
          x = std::move(acc);
        }
        long long tr = 0;
        for (std::size_t k = 0; k < n; ++k) tr += x[k * n + k];
        tr %= mod;
        if (tr % pi != 0) return std::nullopt;
        const long long v = (tr / pi) % p;
        if (v) g.set(r, s, static_cast<Elem>(v));
      }
    }
    ideal = nullspace(g) * ideal;
    if (ideal.rows() == 0) break;
  }

  // back to coordinates over GF(q): digit t of coordinate i is entry (i, t)
  Matrix out(fq, ideal.rows(), d);
  for (std::size_t r = 0; r < ideal.rows(); ++r)
    for (std::size_t i = 0; i < d; ++i) {
      unsigned code = 0, place = 1;
      for (unsigned t = 0; t < e; ++t, place *= p) code += ideal(r, i * e + t) * place;
      if (code) out.set(r, i, static_cast<Elem>(code));
    }
  return rref(out).matrix;
}

bool nilpotent_subspace(const std::vector<Matrix>& rho, const Matrix& v) {
  Matrix cur = rref(v).matrix;
  while (cur.rows() > 0) {
    RowSpace next(rho[0].field_ptr(), rho.size());
    for (std::size_t a = 0; a < cur.rows(); ++a)
      for (std::size_t b = 0; b < v.rows(); ++b) next.add_rows(cur.row(a) * regular_matrix(rho, v.row(b)));
    if (next.dim() >= cur.rows()) return false;
    cur = next.basis();
  }
  return true;
}

Matrix brute_force_radical(const FieldPtr& fq, const std::vector<Matrix>& rho) {
  const Field& f = *fq;
  const std::size_t d = rho.size();
  double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= f.q();
  if (count > 65536) throw ResourceError("brute-force radical limited to q^dim <= 2^16");
  RowSpace j(fq, d);
  std::vector<Elem> digits(d, 0);
  for (std::size_t idx = 1; idx < static_cast<std::size_t>(count); ++idx) {
    for (std::size_t i = 0; i < d; ++i) {
      if (++digits[i] < f.q()) break;
      digits[i] = 0;
    }
    Matrix a(fq, 1, d);
    for (std::size_t i = 0; i < d; ++i)
      if (digits[i]) a.set(0, i, digits[i]);
    if (j.contains(a.row_data(0))) continue;
    Matrix ideal(fq, 0, d);
    for (std::size_t s = 0; s < d; ++s) ideal.append_rows(a * rho[s]);
    if (nilpotent_subspace(rho, ideal)) j.add(a.row_data(0));
  }
  return j.echelon().matrix;
}

bool is_two_sided_ideal(const std::vector<Matrix>& rho, const Matrix& j) {
  RowSpace rs(rho[0].field_ptr(), rho.size());
  rs.add_rows(j);
  const std::size_t d = rho.size();
  for (std::size_t r = 0; r < j.rows(); ++r) {
    const Matrix x = j.row(r);
    const Matrix rx = regular_matrix(rho, x);
    for (std::size_t a = 0; a < d; ++a) {
      if (!rs.contains((x * rho[a]).row_data(0))) return false;
      if (!rs.contains(rx.row_data(a))) return false;  // basis[a] * x
    }
  }
  return true;
}

std::vector<Matrix> quotient_rho(const std::vector<Matrix>& rho, const Matrix& j) {
  const Submodule sj{rref(j)};
  const std::size_t d = rho.size();
  const auto cols = quotient_columns(sj, d);
  std::vector<Matrix> out;
  for (std::size_t a : cols) {
    Matrix rows(rho[0].field_ptr(), 0, d);
    for (std::size_t c : cols) rows.append_row(rho[a].row_data(c));
    out.push_back(quotient_coordinates(sj, rows, d));
  }
  return out;
}

// J is a nilpotent two-sided ideal and the quotient has zero radical.
bool verify_radical(const FieldPtr& f, const std::vector<Matrix>& rho, const Matrix& j) {
  if (j.rows() == 0) {
    auto again = trace_form_radical(f, rho);
    return again && again->rows() == 0;
  }
  if (!is_two_sided_ideal(rho, j) || !nilpotent_subspace(rho, j)) return false;
  if (j.rows() == rho.size()) return false;  // a unital algebra is never nilpotent
  const auto qr = quotient_rho(rho, j);
  auto jq = trace_form_radical(f, qr);
  return jq && jq->rows() == 0;
}

AlgebraRadical finish(const RegularRep& rr, Matrix j, bool brute) {
  const FieldPtr& f = rr.field;
  std::size_t d = rr.dim();
  if (rr.added_identity) {
    // J(A) = J(A + k1) intersected with A: drop combinations involving the identity
    Matrix last(f, j.rows(), 1);
    for (std::size_t r = 0; r < j.rows(); ++r)
      if (j(r, d - 1)) last.set(r, 0, j(r, d - 1));
    j = j.rows() == 0 ? j : (nullspace(last) * j);
    --d;
    j = j.col_range(0, d);
  }
  AlgebraRadical out;
  out.coordinates = rref(j).matrix;
  out.brute_force = brute;
  for (std::size_t r = 0; r < out.coordinates.rows(); ++r) {
    Matrix acc(f, rr.n, rr.n);
    for (std::size_t i = 0; i < d; ++i) {
      const Elem c = out.coordinates(r, i);
      if (c) acc = acc + (c == 1 ? rr.basis[i] : scaled(rr.basis[i], c));
    }
    out.basis.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

AlgebraRadical algebra_radical(const std::vector<Matrix>& basis) {
  if (basis.empty()) return {};
  Rng rng(kReferenceSeed);
  const RegularRep rr = regular_rep(basis, rng);
  auto j = trace_form_radical(rr.field, rr.rho);
  if (j && verify_radical(rr.field, rr.rho, *j)) return finish(rr, std::move(*j), false);
  double count = 1;
  for (std::size_t i = 0; i < rr.dim(); ++i) count *= rr.field->q();
  if (rr.dim() <= 12 && count <= 65536) return finish(rr, brute_force_radical(rr.field, rr.rho), true);
  throw DomainError("algebra radical: trace-form result failed verification");
}

AlgebraRadical algebra_radical_brute_force(const std::vector<Matrix>& basis) {
  if (basis.empty()) return {};
  Rng rng(kReferenceSeed);
  const RegularRep rr = regular_rep(basis, rng);
  return finish(rr, brute_force_radical(rr.field, rr.rho), true);
}

namespace {

// Rank of x^(2^k) once it stops dropping, and that power.
std::pair<std::size_t, Matrix> stable_power(Matrix x) {
  std::size_t r = rank(x);
  while (r > 0) {
    Matrix y = x * x;
    const std::size_t ry = rank(y);
    if (ry == r) break;
    x = std::move(y);
    r = ry;
  }
  return {r, std::move(x)};
}

struct Piece {
  Representation rep;
  Matrix basis;
};

}  // namespace

std::vector<Summand> indecomposable_summands(const Representation& m, std::uint64_t seed, const PeakwordTable* pw) {
  std::vector<Summand> out;
  Rng rng(seed);
  std::vector<Piece> work{{m, Matrix::identity(m.field_ptr(), m.dim())}};
  while (!work.empty()) {
    Piece pc = std::move(work.back());
    work.pop_back();
    if (pc.rep.dim() == 0) continue;
    Summand s{pc.rep, pc.basis, 0, 0, false, ""};
    const HomBasis e = pw ? hom_space(pc.rep, pc.rep, *pw) : hom_space(pc.rep, pc.rep);
    s.end_dim = e.dim();
    if (e.dim() == 1) {
      s.certified = true;
      out.push_back(std::move(s));
      continue;
    }
    auto try_split = [&]() {
      const Matrix c = Matrix::random(m.field_ptr(), 1, e.dim(), rng);
      Matrix x(m.field_ptr(), pc.rep.dim(), pc.rep.dim());
      for (std::size_t i = 0; i < e.dim(); ++i) {
        const Elem ci = c(0, i);
        if (ci) x = x + (ci == 1 ? e.basis[i] : scaled(e.basis[i], ci));
      }
      const auto [rx, y] = stable_power(std::move(x));
      if (rx == 0 || rx == pc.rep.dim()) return false;
      const Submodule image{rref(y)};
      const Submodule kernel{rref(nullspace(y))};
      work.push_back({submodule_action(pc.rep, image), image.basis.matrix * pc.basis});
      work.push_back({submodule_action(pc.rep, kernel), kernel.basis.matrix * pc.basis});
      return true;
    };
    // cheap attempts first; the radical is only needed to certify
    bool split = false;
    for (int t = 0; t < 8 && !split; ++t) split = try_split();
    if (split) continue;
    try {
      s.radical_dim = algebra_radical(e.basis).basis.size();
    } catch (const std::exception& ex) {
      s.note = std::string("endomorphism ring radical failed: ") + ex.what();
      out.push_back(std::move(s));
      continue;
    }
    if (e.dim() - s.radical_dim == 1) {
      s.certified = true;
      out.push_back(std::move(s));
      continue;
    }
    for (int t = 0; t < 200 && !split; ++t) split = try_split();
    if (!split) {
      s.note = "no splitting endomorphism found; residue field larger than " + m.field().name();
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::optional<HeadSplit> try_split_by_heads(const Representation& m, const Submodule& n, const PeakwordTable& pw,
                                            std::uint64_t seed) {
  if (n.dim() == 0 || n.dim() == m.dim()) return std::nullopt;
  const Representation nrep = submodule_action(m, n);
  const Representation qrep = quotient_action(m, n);
  const auto hn = head(nrep, pw).head;
  const auto hq = head(qrep, pw).head;
  for (const auto& [a, x] : hn)
    for (const auto& [b, y] : hq)
      if (a == b) return std::nullopt;
  const HomBasis homs = hom_space(m, nrep, pw);
  if (homs.dim() == 0) return std::nullopt;
  Rng rng(seed);
  for (int t = 0; t < 64; ++t) {
    Matrix pi(m.field_ptr(), m.dim(), n.dim());
    const Matrix c = Matrix::random(m.field_ptr(), 1, homs.dim(), rng);
    for (std::size_t i = 0; i < homs.dim(); ++i) {
      const Elem ci = c(0, i);
      if (ci) pi = pi + (ci == 1 ? homs.basis[i] : scaled(homs.basis[i], ci));
    }
    if (rank(pi) != n.dim()) continue;
    // the inclusion followed by pi must be an automorphism of N
    if (rank(n.basis.matrix * pi) != n.dim()) return std::nullopt;
    return HeadSplit{n, Submodule{rref(nullspace(pi))}, std::move(pi)};
  }
  return std::nullopt;
}

}  // namespace modrep
