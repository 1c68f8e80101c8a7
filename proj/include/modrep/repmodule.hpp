#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modrep/matrix.hpp"
#include "modrep/permgroup.hpp"

namespace modrep {

/// A kG-module given by one invertible matrix per generator of G, acting on
/// row vectors from the right.
class Representation {
 public:
  Representation() = default;
  /// Throws DimensionError for non-square or mismatched matrices, DomainError
  /// for a singular generator.
  Representation(PermGroupPtr group, FieldPtr field, std::vector<Matrix> gens, std::string label = "");
  /// Needed when the group has no generators.
  Representation(PermGroupPtr group, FieldPtr field, std::size_t dim, std::vector<Matrix> gens, std::string label = "");
  /// Skips the invertibility check; for matrices that are invertible by construction.
  static Representation trusted(PermGroupPtr group, FieldPtr field, std::size_t dim, std::vector<Matrix> gens,
                                std::string label = "");

  const PermGroupPtr& group_ptr() const { return group_; }
  const PermGroup& group() const { return *group_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& gens() const { return gens_; }
  const std::string& label() const { return label_; }
  Representation relabeled(std::string label) const;

  /// Matrices of arbitrary group elements (evaluated through stabilizer-chain
  /// words). Throws MembershipError for non-members.
  std::vector<Matrix> elements(const std::vector<Perm>& xs) const;
  Matrix element(const Perm& x) const { return elements({x})[0]; }

 private:
  void check_shapes() const;

  PermGroupPtr group_;
  FieldPtr field_;
  std::size_t dim_ = 0;
  std::vector<Matrix> gens_;
  std::string label_;
};

/// An invariant subspace, stored in reduced echelon form.
struct Submodule {
  EchelonForm basis;
  std::size_t dim() const { return basis.rank(); }
};

bool same_group(const PermGroup& a, const PermGroup& b);
void require_compatible(const Representation& m, const Representation& n);

Representation trivial_module(PermGroupPtr g, FieldPtr field);
Representation perm_rep(PermGroupPtr g, FieldPtr field);
/// Induced module along the cosets of M's group in G; identity coset first.
Representation induce(const Representation& m, PermGroupPtr g);
Representation restrict(const Representation& m, PermGroupPtr h);
Representation dual(const Representation& m);
Representation tensor(const Representation& m, const Representation& n);
Representation direct_sum(const Representation& m, const Representation& n);
/// Same module in the basis given by the rows of `b` (invertible): gens b g b^-1.
Representation change_basis(const Representation& m, const Matrix& b);

/// Vectors fixed by every element of H (H a subgroup of M's group).
EchelonForm fixed_space(const Representation& m, PermGroupPtr h);
/// dim Hom(M restricted to H, k).
std::size_t cofixed_dim(const Representation& m, PermGroupPtr h);

/// Each relator is a 1-based signed generator word; true iff every relator
/// evaluates to the identity.
bool satisfies_relators(const Representation& m, const std::vector<std::vector<long long>>& relators);

bool is_invariant(const Representation& m, const Matrix& rows);
/// Throws DomainError if the rows do not span an invariant subspace.
Submodule make_submodule(const Representation& m, const Matrix& rows);
Submodule spin_submodule(const Representation& m, const Matrix& seeds);
Submodule zero_submodule(const Representation& m);
Submodule full_submodule(const Representation& m);

/// Columns of `m` in the given order.
Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols);
/// Coordinates of rows lying in the submodule with respect to its echelon basis.
Matrix sub_coordinates(const Submodule& s, const Matrix& rows);
/// Non-pivot columns of the submodule's echelon form (the quotient basis).
std::vector<std::size_t> quotient_columns(const Submodule& s, std::size_t dim);
/// Image of rows in M/S, in quotient coordinates.
Matrix quotient_coordinates(const Submodule& s, const Matrix& rows, std::size_t dim);
/// Rows in quotient coordinates lifted to M (zero on pivot columns).
Matrix lift_from_quotient(const Submodule& s, const Matrix& rows, std::size_t dim);

Representation submodule_action(const Representation& m, const Submodule& s);
Representation quotient_action(const Representation& m, const Submodule& s);
/// Submodule T/S of M/S given in quotient coordinates, pulled back to T.
Submodule preimage(const Representation& m, const Submodule& s, const Matrix& quotient_rows);
/// Sum and intersection of submodules.
Submodule sum(const Representation& m, const Submodule& a, const Submodule& b);
Submodule intersection(const Representation& m, const Submodule& a, const Submodule& b);
/// Image of S in M/T, as a submodule of quotient_action(m, t).
Submodule image_in_quotient(const Submodule& s, const Submodule& t, std::size_t dim);

}  // namespace modrep
