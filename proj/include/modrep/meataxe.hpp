#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "modrep/poly.hpp"
#include "modrep/repmodule.hpp"
#include "modrep/spin.hpp"

namespace modrep {

/// Seeded schedule of "random" algebra elements: word k is a sum of up to
/// three scaled products of generators (and possibly the identity).
class WordGenerator {
 public:
  struct Term {
    std::size_t coeff;                // index of a nonzero field element, 1..q-1
    std::vector<std::size_t> factors;  // generator indices; empty = identity
  };
  using Recipe = std::vector<Term>;

  explicit WordGenerator(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }
  /// Deterministic in (seed, k, number of generators).
  Recipe recipe(std::size_t k, std::size_t ngens) const;
  Matrix evaluate(std::size_t k, const std::vector<Matrix>& gens, const FieldPtr& field, std::size_t dim) const;

 private:
  std::uint64_t seed_;
};

/// Transcript of a successful Norton irreducibility test.
struct NortonCertificate {
  std::uint64_t seed = 0;
  std::size_t word = 0;
  Poly factor;
  std::size_t nullity = 0;
  Matrix witness;       // 1 x dim, spins to the whole module
  Matrix dual_witness;  // 1 x dim, spins to the whole transposed module
};

/// Outcome of a Norton test: either a proper nonzero submodule or a certificate.
struct NortonResult {
  std::optional<Submodule> submodule;
  std::optional<NortonCertificate> certificate;
};

inline constexpr std::size_t kDefaultWordBudget = 200;

/// Throws ResourceError when `budget` words pass without a verdict.
NortonResult norton_test(const Representation& m, std::uint64_t seed, std::size_t budget = kDefaultWordBudget);
/// Re-runs a certificate: same factor, nullity, and both spins full.
bool replay_certificate(const Representation& m, const NortonCertificate& cert);

/// A word and factor whose null space has dimension endo_dim(S); the basis of
/// the standard-basis isomorphism test.
struct IdWord {
  std::uint64_t seed = 0;
  std::size_t word = 0;
  Poly factor;
  std::size_t nullity = 0;
};

/// Canonical data of a certified simple module.
struct SimpleData {
  Representation module;  // in standard basis
  NortonCertificate certificate;
  std::size_t endo_dim = 1;
  IdWord idword;
  Matrix seed_vector;               // nonzero vector of the idword null space (original basis)
  Matrix std_basis;                 // rows: standard basis in the original coordinates
  std::vector<SpinStep> std_steps;  // standard-basis spin transcript
  std::vector<std::vector<PolyFactor>> fingerprint;
};

/// Analyse a certified simple module: endomorphism dimension, id word and
/// standard basis.
SimpleData analyse_simple(const Representation& s, const NortonCertificate& cert, std::uint64_t seed,
                          std::size_t budget = kDefaultWordBudget);
std::vector<std::vector<PolyFactor>> fingerprint(const Representation& s);

/// Isomorphism test against analysed simple data; returns X with
/// X * g_T == g_S * X when T is isomorphic to S.
std::optional<Matrix> isomorphism(const SimpleData& s, const Representation& t);
/// Both inputs must be irreducible (DomainError otherwise).
std::optional<Matrix> is_isomorphic(const Representation& s, const Representation& t,
                                    std::uint64_t seed = kReferenceSeed);
std::size_t endo_dim(const Representation& s, std::uint64_t seed = kReferenceSeed);

/// Registry of pairwise non-isomorphic simple modules of one (group, field).
/// The trivial module is always entry "1a". Insertion is serialized.
class SimpleCatalog {
 public:
  struct Entry {
    std::string id;
    SimpleData data;
    std::size_t dim() const { return data.module.dim(); }
  };

  SimpleCatalog(PermGroupPtr group, FieldPtr field, std::uint64_t seed = kReferenceSeed);

  const PermGroupPtr& group_ptr() const { return group_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint64_t seed() const { return seed_; }

  /// Find the entry isomorphic to s, inserting a new one if needed. Returns its id.
  std::string classify(const Representation& s, const NortonCertificate& cert);
  /// Entry lookup by id; throws DomainError for unknown ids. References stay valid.
  const Entry& entry(const std::string& id) const;
  /// Snapshot of all entries in insertion order.
  std::vector<Entry> entries() const;
  std::vector<std::string> ids() const;
  std::size_t size() const;
  /// All entries have endo_dim 1.
  bool is_splitting() const;
  /// Ids ordered by (dimension, insertion order).
  std::vector<std::string> sorted_ids() const;

 private:
  std::optional<std::string> find(const Representation& s, const std::vector<std::vector<PolyFactor>>& fp) const;

  PermGroupPtr group_;
  FieldPtr field_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::deque<Entry> entries_;  // stable references
  std::map<std::size_t, std::size_t> per_dim_;
};

/// Composition factors with multiplicities, in catalog insertion order.
struct CompositionData {
  std::vector<std::pair<std::string, std::size_t>> factors;
  std::size_t multiplicity(const std::string& id) const;
  std::size_t total_dim(const SimpleCatalog& cat) const;
};

CompositionData chop(const Representation& m, SimpleCatalog& catalog, std::uint64_t seed = kReferenceSeed,
                     std::size_t budget = kDefaultWordBudget);

/// Label for the n-th (0-based) simple of a given dimension: 4a, 4b, ..., 4z, 4aa, ...
std::string simple_label(std::size_t dim, std::size_t n);

}  // namespace modrep
