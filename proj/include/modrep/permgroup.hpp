#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modrep/random.hpp"

namespace modrep {

using Point = std::uint32_t;

/// Permutation of {0..n-1}, acting on the right: x^(ab) = (x^a)^b.
class Perm {
 public:
  Perm() = default;
  /// 0-based images; throws DomainError if not a bijection.
  explicit Perm(std::vector<Point> images);
  static Perm identity(std::size_t n);
  /// 1-based image list as used in group files.
  static Perm from_images(const std::vector<long long>& one_based);

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }
  std::vector<long long> one_based() const;

  Perm inverse() const;
  bool is_identity() const;
  std::uint64_t order() const;
  /// Smallest moved point, or degree() for the identity.
  Point first_moved() const;
  Perm pow(std::uint64_t e) const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<Point> img_;
};

Perm operator*(const Perm& a, const Perm& b);
/// a^-1 b^-1 a b
Perm commutator(const Perm& a, const Perm& b);
std::string to_cycles(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

/// Straight-line program over a group's generators. Node ids index `nodes`;
/// children always have smaller ids than their parents.
class Slp {
 public:
  enum class Op : std::uint8_t { Gen, GenInv, Mul };
  struct Node {
    Op op;
    std::size_t a, b;
  };

  std::size_t gen(std::size_t i);
  std::size_t mul(std::size_t a, std::size_t b);
  std::size_t inverse(std::size_t a);
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::size_t push(Node n);
  std::vector<Node> nodes_;
  std::unordered_map<std::size_t, std::size_t> gen_, inv_;
};

/// A group element as a product of stabilizer-chain transversal nodes.
struct GroupWord {
  std::vector<std::size_t> nodes;
};

/// Permutation group with a deterministic Schreier-Sims stabilizer chain
/// (base points chosen as smallest moved points). Immutable after
/// construction. Transversal elements carry straight-line programs in the
/// generators, so any element can be evaluated in another representation.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::uint64_t order() const { return order_; }
  const std::vector<Point>& base() const { return base_; }
  std::vector<std::size_t> basic_orbit_lengths() const;

  bool contains(const Perm& g) const;
  bool contains(const PermGroup& h) const;
  /// Word for g in this group's generators; nullopt if g is not a member.
  std::optional<GroupWord> word(const Perm& g) const;
  Perm random_element(Rng& rng) const;
  /// All elements, in chain order; only sensible for small groups.
  std::vector<Perm> elements() const;

  /// Evaluate words in another realization of the generators.
  template <class T, class MulFn, class InvFn>
  std::vector<T> evaluate(const std::vector<GroupWord>& words, const std::vector<T>& gens, const T& one,
                          MulFn mul, InvFn inv) const;

  // Chain access for coset canonicalization.
  std::size_t levels() const { return levels_.size(); }
  Point level_base(std::size_t i) const { return levels_[i].base; }
  const std::vector<Point>& level_orbit(std::size_t i) const { return levels_[i].orbit; }
  const Perm& transversal(std::size_t i, Point pt) const;

 private:
  struct Level {
    Point base;
    std::vector<std::size_t> strong;  // indices into strong_
    std::vector<Point> orbit;
    std::vector<std::int32_t> where;  // point -> index into orbit or -1
    std::vector<Perm> u;              // transversal, parallel to orbit
    std::vector<std::size_t> u_node;
  };
  struct Strong {
    Perm perm;
    std::size_t node;
  };

  void build();
  void extend_orbit(Level& lv);
  // Sift from `from`; returns (level reached, residue, transversal nodes used).
  std::size_t sift(Perm& g, std::size_t from, std::vector<std::size_t>* used) const;

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<Strong> strong_;
  std::vector<Level> levels_;
  std::vector<Point> base_;
  std::uint64_t order_ = 1;
  Slp slp_;
};

using PermGroupPtr = std::shared_ptr<const PermGroup>;

/// Right cosets Hx of H in G with deterministic representatives: the identity
/// first, then breadth-first order under G's generators.
class CosetSpace {
 public:
  CosetSpace(const PermGroup& g, const PermGroup& h);

  std::size_t size() const { return reps_.size(); }
  const std::vector<Perm>& reps() const { return reps_; }
  std::size_t index_of(const Perm& x) const;
  /// r_i g = h r_j; returns (j, h).
  std::pair<std::size_t, Perm> act(std::size_t i, const Perm& g) const;
  /// Permutations of the cosets induced by G's generators.
  std::vector<Perm> generator_action() const;

 private:
  Perm canonical(const Perm& x) const;

  const PermGroup& g_;
  const PermGroup& h_;
  std::vector<Perm> reps_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
};

std::vector<Perm> coset_reps(const PermGroup& g, const PermGroup& h);
/// Action of G on the cosets of H (for normal H: the quotient G/H).
PermGroup coset_action(const PermGroup& g, const PermGroup& h);

PermGroup trivial_group(std::size_t degree);
PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& s);
PermGroup derived_subgroup(const PermGroup& g);
bool is_p_power(std::uint64_t n, unsigned p);
std::uint64_t p_part(std::uint64_t n, unsigned p);
/// Throws DomainError if |U| is not a power of p.
PermGroup frattini_pgroup(const PermGroup& u, unsigned p);
bool is_normal(const PermGroup& g, const PermGroup& n);
bool is_abelian(const PermGroup& g);

enum class SubgroupMode { SylowP, HallPPrimeHeuristic };
/// Randomized ascent. SylowP throws ResourceError when the full p-part is not
/// reached within `trials` random elements.
PermGroup p_subgroup_search(const PermGroup& g, unsigned p, SubgroupMode mode, std::uint64_t seed,
                            std::size_t trials = 4000);

/// Element-order counts (order -> count); enumerates the group.
std::vector<std::pair<std::uint64_t, std::uint64_t>> order_profile(const PermGroup& g);
bool is_cyclic(const PermGroup& g);

enum class TwoGroupType { Cyclic, Dihedral, SemiDihedral, Quaternion, Other };
/// Classification of a 2-group from its order profile (Klein four counts as
/// dihedral). Groups above 64 elements are reported as Other unless cyclic.
TwoGroupType two_group_type(const PermGroup& u);

template <class T, class MulFn, class InvFn>
std::vector<T> PermGroup::evaluate(const std::vector<GroupWord>& words, const std::vector<T>& gens, const T& one,
                                   MulFn mul, InvFn inv) const {
  const auto& nodes = slp_.nodes();
  std::vector<char> need(nodes.size(), 0);
  for (const auto& w : words)
    for (std::size_t n : w.nodes) need[n] = 1;
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (!need[i] || nodes[i].op != Slp::Op::Mul) continue;
    need[nodes[i].a] = need[nodes[i].b] = 1;
  }
  std::vector<std::optional<T>> val(nodes.size());
  std::vector<std::optional<T>> gen_inv(gens.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!need[i]) continue;
    const auto& nd = nodes[i];
    switch (nd.op) {
      case Slp::Op::Gen:
        val[i] = gens[nd.a];
        break;
      case Slp::Op::GenInv:
        if (!gen_inv[nd.a]) gen_inv[nd.a] = inv(gens[nd.a]);
        val[i] = *gen_inv[nd.a];
        break;
      case Slp::Op::Mul:
        val[i] = mul(*val[nd.a], *val[nd.b]);
        break;
    }
  }
  std::vector<T> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    if (w.nodes.empty()) {
      out.push_back(one);
      continue;
    }
    T acc = *val[w.nodes[0]];
    for (std::size_t k = 1; k < w.nodes.size(); ++k) acc = mul(acc, *val[w.nodes[k]]);
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace modrep
