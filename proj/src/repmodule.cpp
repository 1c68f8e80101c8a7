#include "modrep/repmodule.hpp"

#include <algorithm>

#include "modrep/errors.hpp"
#include "modrep/spin.hpp"

namespace modrep {

Representation::Representation(PermGroupPtr group, FieldPtr field, std::vector<Matrix> gens, std::string label)
    : Representation(group, field, gens.empty() ? 0 : gens[0].rows(), gens, std::move(label)) {}

Representation::Representation(PermGroupPtr group, FieldPtr field, std::size_t dim, std::vector<Matrix> gens,
                               std::string label)
    : group_(std::move(group)), field_(std::move(field)), dim_(dim), gens_(std::move(gens)), label_(std::move(label)) {
  check_shapes();
  for (const auto& g : gens_)
    if (rank(g) != dim_) throw DomainError("generator matrix is singular");
}

Representation Representation::trusted(PermGroupPtr group, FieldPtr field, std::size_t dim, std::vector<Matrix> gens,
                                       std::string label) {
  Representation r;
  r.group_ = std::move(group);
  r.field_ = std::move(field);
  r.dim_ = dim;
  r.gens_ = std::move(gens);
  r.label_ = std::move(label);
  r.check_shapes();
  return r;
}

void Representation::check_shapes() const {
  if (gens_.size() != group_->generators().size()) throw DimensionError("need one matrix per group generator");
  for (const auto& g : gens_) {
    if (g.rows() != dim_ || g.cols() != dim_) throw DimensionError("generator matrices must be square of equal size");
    if (g.field_ptr() != field_) throw DimensionError("generator matrix over a different field");
  }
}

Representation Representation::relabeled(std::string label) const {
  Representation r = *this;
  r.label_ = std::move(label);
  return r;
}

std::vector<Matrix> Representation::elements(const std::vector<Perm>& xs) const {
  std::vector<GroupWord> words;
  for (const auto& x : xs) {
    auto w = group_->word(x);
    if (!w) throw MembershipError("element " + to_cycles(x) + " is not in the group");
    words.push_back(std::move(*w));
  }
  return group_->evaluate(
      words, gens_, Matrix::identity(field_, dim_), [](const Matrix& a, const Matrix& b) { return a * b; },
      [](const Matrix& a) { return invert(a); });
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return &a == &b || (a.degree() == b.degree() && a.generators() == b.generators());
}

void require_compatible(const Representation& m, const Representation& n) {
  if (!same_group(m.group(), n.group())) throw DimensionError("modules for different groups");
  if (m.field_ptr() != n.field_ptr()) throw DimensionError("modules over different fields");
}

Representation trivial_module(PermGroupPtr g, FieldPtr field) {
  std::vector<Matrix> gens(g->generators().size(), Matrix::identity(field, 1));
  return Representation::trusted(std::move(g), std::move(field), 1, std::move(gens), "trivial");
}

Representation perm_rep(PermGroupPtr g, FieldPtr field) {
  std::vector<Matrix> gens;
  for (const auto& x : g->generators()) {
    Matrix m(field, g->degree(), g->degree());
    for (Point i = 0; i < g->degree(); ++i) m.set(i, x[i], 1);
    gens.push_back(std::move(m));
  }
  const std::size_t n = g->degree();
  return Representation::trusted(std::move(g), std::move(field), n, std::move(gens), "permutation module");
}

Representation induce(const Representation& m, PermGroupPtr g) {
  CosetSpace cs(*g, m.group());
  const std::size_t n = cs.size(), d = m.dim();
  std::vector<Matrix> gens;
  for (const auto& x : g->generators()) {
    std::vector<std::size_t> target(n);
    std::vector<Perm> hs;
    for (std::size_t i = 0; i < n; ++i) {
      auto [j, h] = cs.act(i, x);
      target[i] = j;
      hs.push_back(std::move(h));
    }
    const auto blocks = m.elements(hs);
    Matrix big(m.field_ptr(), n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          const Elem v = blocks[i](r, c);
          if (v) big.set(i * d + r, target[i] * d + c, v);
        }
    gens.push_back(std::move(big));
  }
  return Representation::trusted(std::move(g), m.field_ptr(), n * d, std::move(gens), "induced from " + m.label());
}

Representation restrict(const Representation& m, PermGroupPtr h) {
  if (!m.group().contains(*h)) throw MembershipError("subgroup is not contained in the group");
  return Representation::trusted(h, m.field_ptr(), m.dim(), m.elements(h->generators()), m.label() + " restricted");
}

Representation dual(const Representation& m) {
  std::vector<Matrix> gens;
  for (const auto& g : m.gens()) gens.push_back(transpose(invert(g)));
  return Representation::trusted(m.group_ptr(), m.field_ptr(), m.dim(), std::move(gens), "dual of " + m.label());
}

Representation tensor(const Representation& m, const Representation& n) {
  require_compatible(m, n);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < m.gens().size(); ++i) gens.push_back(kronecker(m.gens()[i], n.gens()[i]));
  return Representation::trusted(m.group_ptr(), m.field_ptr(), m.dim() * n.dim(), std::move(gens),
                                 m.label() + " x " + n.label());
}

Representation direct_sum(const Representation& m, const Representation& n) {
  require_compatible(m, n);
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < m.gens().size(); ++i) {
    const auto& a = m.gens()[i];
    const auto& b = n.gens()[i];
    gens.push_back(vstack(hstack(a, Matrix(m.field_ptr(), a.rows(), b.cols())),
                          hstack(Matrix(m.field_ptr(), b.rows(), a.cols()), b)));
  }
  return Representation::trusted(m.group_ptr(), m.field_ptr(), m.dim() + n.dim(), std::move(gens),
                                 m.label() + " + " + n.label());
}

Representation change_basis(const Representation& m, const Matrix& b) {
  const Matrix bi = invert(b);
  std::vector<Matrix> gens;
  for (const auto& g : m.gens()) gens.push_back(b * g * bi);
  return Representation::trusted(m.group_ptr(), m.field_ptr(), m.dim(), std::move(gens), m.label());
}

EchelonForm fixed_space(const Representation& m, PermGroupPtr h) {
  const auto r = restrict(m, h);
  const Matrix id = Matrix::identity(m.field_ptr(), m.dim());
  Matrix stacked(m.field_ptr(), m.dim(), 0);
  for (const auto& g : r.gens()) stacked = hstack(stacked, g - id);
  return rref(nullspace(stacked));
}

std::size_t cofixed_dim(const Representation& m, PermGroupPtr h) { return fixed_space(dual(m), std::move(h)).rank(); }

bool satisfies_relators(const Representation& m, const std::vector<std::vector<long long>>& relators) {
  std::vector<Matrix> inv;
  for (const auto& g : m.gens()) inv.push_back(invert(g));
  for (const auto& w : relators) {
    Matrix acc = Matrix::identity(m.field_ptr(), m.dim());
    for (long long k : w) {
      const long long a = k < 0 ? -k : k;
      if (a < 1 || a > static_cast<long long>(m.gens().size())) throw DomainError("generator index out of range");
      acc = acc * (k < 0 ? inv[a - 1] : m.gens()[a - 1]);
    }
    if (!acc.is_identity()) return false;
  }
  return true;
}

bool is_invariant(const Representation& m, const Matrix& rows) {
  RowSpace rs(m.field_ptr(), m.dim());
  rs.add_rows(rows);
  for (const auto& g : m.gens()) {
    const Matrix img = rs.basis() * g;
    for (std::size_t r = 0; r < img.rows(); ++r)
      if (!rs.contains(img.row_data(r))) return false;
  }
  return true;
}

Submodule make_submodule(const Representation& m, const Matrix& rows) {
  if (rows.cols() != m.dim()) throw DimensionError("vectors do not match the module dimension");
  if (!is_invariant(m, rows)) throw DomainError("subspace is not invariant");
  return Submodule{rref(rows)};
}

Submodule spin_submodule(const Representation& m, const Matrix& seeds) { return Submodule{spin(seeds, m.gens())}; }

Submodule zero_submodule(const Representation& m) { return Submodule{rref(Matrix(m.field_ptr(), 0, m.dim()))}; }

Submodule full_submodule(const Representation& m) {
  return Submodule{rref(Matrix::identity(m.field_ptr(), m.dim()))};
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.field_ptr(), m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Elem v = m(r, cols[c]);
      if (v) out.set(r, c, v);
    }
  return out;
}

Matrix sub_coordinates(const Submodule& s, const Matrix& rows) { return select_columns(rows, s.basis.pivots); }

std::vector<std::size_t> quotient_columns(const Submodule& s, std::size_t dim) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    if (k < s.basis.pivots.size() && s.basis.pivots[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Matrix quotient_coordinates(const Submodule& s, const Matrix& rows, std::size_t dim) {
  Matrix reduced = rows;
  if (s.dim() > 0) reduced = rows - sub_coordinates(s, rows) * s.basis.matrix;
  return select_columns(reduced, quotient_columns(s, dim));
}

Matrix lift_from_quotient(const Submodule& s, const Matrix& rows, std::size_t dim) {
  const auto cols = quotient_columns(s, dim);
  Matrix out(rows.field_ptr(), rows.rows(), dim);
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Elem v = rows(r, c);
      if (v) out.set(r, cols[c], v);
    }
  return out;
}

Representation submodule_action(const Representation& m, const Submodule& s) {
  std::vector<Matrix> gens;
  for (const auto& g : m.gens()) gens.push_back(sub_coordinates(s, s.basis.matrix * g));
  return Representation::trusted(m.group_ptr(), m.field_ptr(), s.dim(), std::move(gens), "submodule of " + m.label());
}

Representation quotient_action(const Representation& m, const Submodule& s) {
  const auto cols = quotient_columns(s, m.dim());
  std::vector<Matrix> gens;
  for (const auto& g : m.gens()) {
    Matrix rows(m.field_ptr(), 0, m.dim());
    for (std::size_t c : cols) rows.append_row(g.row_data(c));
    gens.push_back(quotient_coordinates(s, rows, m.dim()));
  }
  return Representation::trusted(m.group_ptr(), m.field_ptr(), cols.size(), std::move(gens), "quotient of " + m.label());
}

Submodule preimage(const Representation& m, const Submodule& s, const Matrix& quotient_rows) {
  return Submodule{rref(vstack(s.basis.matrix, lift_from_quotient(s, quotient_rows, m.dim())))};
}

Submodule sum(const Representation& m, const Submodule& a, const Submodule& b) {
  (void)m;
  return Submodule{rref(vstack(a.basis.matrix, b.basis.matrix))};
}

Submodule intersection(const Representation& m, const Submodule& a, const Submodule& b) {
  // x in A and B iff x = u A = w B: left nullspace of [A; -B] gives the pairs.
  if (a.dim() == 0 || b.dim() == 0) return zero_submodule(m);
  const Matrix stacked = vstack(a.basis.matrix, -b.basis.matrix);
  const Matrix ns = nullspace(stacked);
  if (ns.rows() == 0) return zero_submodule(m);
  return Submodule{rref(ns.col_range(0, a.dim()) * a.basis.matrix)};
}

Submodule image_in_quotient(const Submodule& s, const Submodule& t, std::size_t dim) {
  return Submodule{rref(quotient_coordinates(t, s.basis.matrix, dim))};
}

}  // namespace modrep
