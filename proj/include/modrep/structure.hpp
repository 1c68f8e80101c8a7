#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modrep/meataxe.hpp"
#include "modrep/repmodule.hpp"

namespace modrep {

/// (simple id, multiplicity) pairs in catalog order.
using Multiset = std::vector<std::pair<std::string, std::size_t>>;

/// Basis of Hom_kG(source, target): matrices X with g_source X = X g_target.
struct HomBasis {
  Representation source, target;
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Solves the intertwining system directly. Fine for small modules.
HomBasis hom_space(const Representation& m, const Representation& n);

/// For simple S: a word w and an irreducible factor f such that the stable
/// kernel of f(w) has dimension endo_dim(S) on S and is zero on every other
/// simple of the catalog.
struct Peakword {
  std::string id;
  std::size_t word = 0;
  Poly factor;
  std::size_t endo_dim = 1;
};

/// Peak words for a snapshot of a catalog. The catalog must outlive the table.
class PeakwordTable {
 public:
  PeakwordTable() = default;
  /// Throws ResourceError if some simple has no peak word within the budget.
  explicit PeakwordTable(const SimpleCatalog& catalog, std::uint64_t seed = kReferenceSeed,
                         std::size_t budget = 2000);

  const SimpleCatalog& catalog() const { return *catalog_; }
  /// Catalog size when the table was built.
  std::size_t size() const { return words_.size(); }
  const std::vector<Peakword>& words() const { return words_; }
  const Peakword& at(const std::string& id) const;
  /// f(w) evaluated on m.
  Matrix element(const Representation& m, const std::string& id) const;
  /// Stable kernel of f(w) on m in echelon form; its dimension is [m:S]·endo_dim(S).
  Matrix stable_kernel(const Representation& m, const std::string& id) const;

 private:
  const SimpleCatalog* catalog_ = nullptr;
  std::uint64_t seed_ = 0;
  std::vector<Peakword> words_;
};

/// Same result as hom_space(m, n), but the source is generated from stable
/// peak kernels, which keeps the unknowns small. Throws DomainError when m has
/// composition factors outside the table.
HomBasis hom_space(const Representation& m, const Representation& n, const PeakwordTable& pw);

/// An isomorphism m -> n drawn at random from Hom(m, n), or nullopt when none
/// turned up within `tries` draws. For indecomposable m with split End(m) a
/// miss has probability at most q^-tries.
std::optional<Matrix> find_isomorphism(const Representation& m, const Representation& n, const PeakwordTable& pw,
                                       std::uint64_t seed = kReferenceSeed, std::size_t tries = 64);

struct HeadData {
  Submodule radical;
  Multiset head;  // constituents of m / rad(m)
};

/// rad(m) as the common kernel of all maps to simples.
HeadData head(const Representation& m, const PeakwordTable& pw);
Submodule radical(const Representation& m, const PeakwordTable& pw);
/// Chops m into the catalog first.
Submodule radical(const Representation& m, SimpleCatalog& catalog);

struct SocleData {
  Submodule socle;
  Multiset constituents;
};
/// soc(m) as the sum of images of maps from simples.
SocleData socle_data(const Representation& m, const PeakwordTable& pw);
Submodule socle(const Representation& m, const PeakwordTable& pw);
Submodule socle(const Representation& m, SimpleCatalog& catalog);

struct LoewyData {
  Representation module;
  std::vector<Multiset> layers;  // layer i = rad^i(M) / rad^(i+1)(M)
  std::vector<Matrix> series;    // echelon bases of rad^i(M), i = 0..length, in module coordinates
  std::size_t length() const { return layers.size(); }
};

LoewyData loewy(const Representation& m, const PeakwordTable& pw);
LoewyData loewy(const Representation& m, SimpleCatalog& catalog);

/// rad(p) / soc(p). Throws DomainError if soc(p) is not inside rad(p).
Representation heart(const Representation& p, const PeakwordTable& pw);

/// The Jacobson radical of the algebra spanned by a list of square matrices.
struct AlgebraRadical {
  std::vector<Matrix> basis;  // J as matrices
  Matrix coordinates;         // J in coordinates of the input basis (rows, echelonized)
  bool brute_force = false;
};

/// Trace-form peeling over the prime field on the regular representation.
/// Falls back to brute force for small algebras if the result does not verify.
/// Throws DomainError if the span is not closed under multiplication.
AlgebraRadical algebra_radical(const std::vector<Matrix>& basis);
/// J = { a : aE is nilpotent }, by enumeration. Requires q^dim <= 2^16.
AlgebraRadical algebra_radical_brute_force(const std::vector<Matrix>& basis);

struct Summand {
  Representation module;
  Matrix basis;  // rows: the summand inside the split module
  std::size_t end_dim = 0;
  std::size_t radical_dim = 0;
  /// End ring local with residue field GF(q), i.e. dim End/J = 1.
  bool certified = false;
  std::string note;
};

/// Fitting splitting with random endomorphisms until every piece has a local
/// endomorphism ring. Pass peak words to speed up the endomorphism rings.
std::vector<Summand> indecomposable_summands(const Representation& m, std::uint64_t seed = kReferenceSeed,
                                            const PeakwordTable* pw = nullptr);

/// M = iota(N) + ker(pi) for an epimorphism pi: M -> N restricting to an
/// automorphism of N.
struct HeadSplit {
  Submodule image;
  Submodule complement;
  Matrix projection;  // M -> N, in N's echelon coordinates
};

/// Succeeds only when the heads of N and M/N share no simple and an
/// epimorphism M -> N exists. A miss proves nothing.
std::optional<HeadSplit> try_split_by_heads(const Representation& m, const Submodule& n, const PeakwordTable& pw,
                                            std::uint64_t seed = kReferenceSeed);

/// A projective indecomposable module. The basis is the spin of a generator:
/// row 0 generates and `steps` rebuild every basis vector from it.
struct PIM {
  std::string head;
  Representation module;
  std::vector<SpinStep> steps;
  std::string source;  // the projective module it was cut from
  std::size_t source_dim = 0;
  std::size_t dim() const { return module.dim(); }
};

/// Catalog, peak words, projective sources and PIMs for one (group, field).
class Workspace {
 public:
  /// `pprime` must have order prime to p. Without `sylow` a Sylow p-subgroup
  /// is searched for.
  Workspace(PermGroupPtr group, FieldPtr field, PermGroupPtr pprime, PermGroupPtr sylow = nullptr,
            std::uint64_t seed = kReferenceSeed);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const PermGroupPtr& group_ptr() const { return group_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned p() const { return field_->p(); }
  std::uint64_t seed() const { return seed_; }
  const PermGroupPtr& pprime() const { return pprime_; }
  const PermGroupPtr& sylow() const { return sylow_; }
  SimpleCatalog& catalog() { return *catalog_; }
  const SimpleCatalog& catalog() const { return *catalog_; }

  CompositionData chop(const Representation& m);
  /// Peak words for the current catalog, rebuilt after the catalog grows.
  /// Older tables stay alive, so references remain valid but may not cover
  /// simples found later.
  const PeakwordTable& peakwords();
  /// Free over the Sylow subgroup, which for kG-modules means projective.
  bool is_projective(const Representation& m) const;

  /// Ind from the p'-subgroup of its simple number i (0 = trivial).
  const Representation& source(std::size_t i);
  std::size_t source_count();
  /// P(S), cached. Throws ResourceError listing the heads seen when S is
  /// not the head of any projective source.
  const PIM& projective_cover(const std::string& id);
  const PIM* cached_cover(const std::string& id) const;

  /// Chops every projective source of dimension <= max_dim, so that the
  /// catalog holds every simple when all sources are within the cap.
  /// Returns false if some source was skipped.
  bool chop_all_sources(std::size_t max_dim);

 private:
  void ensure_subgroup_simples();

  PermGroupPtr group_;
  FieldPtr field_;
  PermGroupPtr pprime_, sylow_;
  std::uint64_t seed_;
  std::unique_ptr<SimpleCatalog> catalog_;
  std::vector<std::unique_ptr<PeakwordTable>> peak_;
  std::unique_ptr<SimpleCatalog> sub_catalog_;  // simples of the p'-subgroup
  std::vector<std::string> sub_ids_;
  std::map<std::size_t, Representation> sources_;
  std::map<std::size_t, bool> source_chopped_;
  std::map<std::string, PIM> pims_;
};

Representation heart(const PIM& p, Workspace& ws);

/// Omega(M): kernel of the projective cover of M, built from the PIMs of its head.
Representation omega(const Representation& m, Workspace& ws);

struct CartanMatrix {
  std::vector<std::string> simples;
  std::vector<std::vector<std::size_t>> entries;  // entries[s][t] = [P(s) : t]
  std::size_t at(const std::string& s, const std::string& t) const;
  bool symmetric() const;
};

/// Rows for the given simples (catalog order when empty: every simple).
CartanMatrix cartan_matrix(Workspace& ws, std::vector<std::string> simples = {});
long long determinant(const CartanMatrix& c);

struct BlockPartition {
  std::vector<std::vector<std::string>> blocks;
  std::size_t principal = 0;  // index of the part containing the trivial module
  /// Parts {S} with c_SS = 1.
  std::vector<std::string> defect_zero(const CartanMatrix& c) const;
};

BlockPartition block_partition(const CartanMatrix& c);

/// Simples linked to the trivial module, found by closing under composition
/// factors of PIMs. The trivial module comes first, then catalog order.
std::vector<std::string> principal_block_simples(Workspace& ws);

struct Rational {
  long long num = 0, den = 1;
  bool operator==(const Rational&) const = default;
  bool is_integer() const { return den == 1; }
};

/// dim P(S) / |G|_p.
Rational c_invariant(Workspace& ws, const std::string& id);

struct KmuReport {
  std::size_t fixed_dim = 0;
  std::size_t cofixed_dim = 0;
  bool frattini_restriction_indecomposable = false;
  /// U is not cyclic, dihedral, semidihedral or quaternion.
  bool hypothesis_holds = false;
  bool degenerate = false;  // dim S = 1
  bool passes = false;
};

KmuReport kmu_check(const Representation& s, PermGroupPtr u, PermGroupPtr frattini, std::uint64_t seed = kReferenceSeed);

struct LlpropVerdict {
  std::size_t loewy_length = 0;
  bool applicable = false;  // LL(P(k)) <= 4
  bool heart_simple = false;
  std::string heart_id;
  /// "i", "ii_a", "ii_b", "none" (LL > 4) or "violated".
  std::string case_label;
  std::uint64_t sylow_order = 0;
};

/// p odd and p | |G|.
LlpropVerdict check_llprop(Workspace& ws);

}  // namespace modrep
