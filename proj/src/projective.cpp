#include <algorithm>
#include <numeric>

#include "modrep/errors.hpp"
#include "modrep/spin.hpp"
#include "modrep/structure.hpp"

namespace modrep {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Rows of t span a submodule; is it free over the Sylow subgroup?
bool free_over(const Matrix& t, const std::vector<Matrix>& sylow_gens, std::uint64_t sylow_order) {
  if (sylow_order == 1) return true;
  Matrix stacked(t.field_ptr(), t.rows(), 0);
  for (const auto& u : sylow_gens) {
    const Matrix tu = t * u;
    stacked = hstack(stacked, tu - t);
  }
  return nullspace(stacked).rows() * sylow_order == t.rows();
}

}  // namespace

Workspace::Workspace(PermGroupPtr group, FieldPtr field, PermGroupPtr pprime, PermGroupPtr sylow, std::uint64_t seed)
    : group_(std::move(group)), field_(std::move(field)), pprime_(std::move(pprime)), sylow_(std::move(sylow)),
      seed_(seed) {
  if (!group_->contains(*pprime_)) throw MembershipError("p'-subgroup is not contained in the group");
  if (pprime_->order() % field_->p() == 0) throw DomainError("p'-subgroup order is divisible by p");
  if (!sylow_)
    sylow_ = std::make_shared<const PermGroup>(p_subgroup_search(*group_, field_->p(), SubgroupMode::SylowP, seed_));
  if (!group_->contains(*sylow_)) throw MembershipError("Sylow subgroup is not contained in the group");
  if (sylow_->order() != p_part(group_->order(), field_->p())) throw DomainError("Sylow subgroup has the wrong order");
  catalog_ = std::make_unique<SimpleCatalog>(group_, field_, seed_);
}

CompositionData Workspace::chop(const Representation& m) { return modrep::chop(m, *catalog_, seed_); }

const PeakwordTable& Workspace::peakwords() {
  if (peak_.empty() || peak_.back()->size() != catalog_->size())
    peak_.push_back(std::make_unique<PeakwordTable>(*catalog_, seed_));
  return *peak_.back();
}

bool Workspace::is_projective(const Representation& m) const {
  const std::uint64_t order = sylow_->order();
  return fixed_space(m, sylow_).rank() * order == m.dim();
}

void Workspace::ensure_subgroup_simples() {
  if (sub_catalog_) return;
  sub_catalog_ = std::make_unique<SimpleCatalog>(pprime_, field_, seed_);
  auto one = std::make_shared<const PermGroup>(trivial_group(group_->degree()));
  modrep::chop(induce(trivial_module(one, field_), pprime_), *sub_catalog_, seed_);
  sub_ids_ = sub_catalog_->sorted_ids();
}

std::size_t Workspace::source_count() {
  ensure_subgroup_simples();
  return sub_ids_.size();
}

const Representation& Workspace::source(std::size_t i) {
  ensure_subgroup_simples();
  auto it = sources_.find(i);
  if (it == sources_.end()) {
    const auto& u = sub_catalog_->entry(sub_ids_.at(i)).data.module;
    it = sources_.emplace(i, induce(u, group_).relabeled("Ind(" + sub_ids_[i] + ")")).first;
  }
  return it->second;
}

const PIM* Workspace::cached_cover(const std::string& id) const {
  auto it = pims_.find(id);
  return it == pims_.end() ? nullptr : &it->second;
}

const PIM& Workspace::projective_cover(const std::string& id) {
  if (auto* p = cached_cover(id)) return *p;
  const Representation& s = catalog_->entry(id).data.module;
  const Representation s_h = restrict(s, pprime_);
  std::string tried;
  for (std::size_t i = 0; i < source_count(); ++i) {
    const auto& u = sub_catalog_->entry(sub_ids_[i]).data.module;
    // Hom(Ind U, S) = Hom(U, S restricted): zero means S is not a head of Ind U
    if (hom_space(u, s_h).dim() == 0) continue;
    const Representation& q = source(i);
    tried += " " + q.label();
    if (!source_chopped_[i]) {
      chop(q);
      source_chopped_[i] = true;
    }
    const Matrix k = peakwords().stable_kernel(q, id);
    if (k.rows() == 0) continue;
    const auto sylow_gens = q.elements(sylow_->generators());
    Rng rng(seed_ ^ fnv1a(id) ^ (0x9E3779B97F4A7C15ull * (i + 1)));
    // a generic vector of the peak kernel maps P(S) injectively; bad vectors
    // form a proper subspace
    for (int t = 0; t < 64; ++t) {
      const Matrix v = Matrix::random(field_, 1, k.rows(), rng) * k;
      if (v.is_zero()) continue;
      auto tr = spin_transcript(v, q.gens());
      if (!free_over(tr.vectors, sylow_gens, sylow_->order())) continue;
      // action on the spin basis, read off on the pivot columns
      const auto cols = rref(tr.vectors).pivots;
      const Matrix tinv = invert(select_columns(tr.vectors, cols));
      std::vector<Matrix> gens;
      for (const auto& g : q.gens()) gens.push_back(select_columns(tr.vectors * g, cols) * tinv);
      const std::size_t dim = tr.dim();
      PIM pim{id, Representation::trusted(group_, field_, dim, std::move(gens), "P(" + id + ")"), std::move(tr.steps),
              q.label(), q.dim()};
      return pims_.emplace(id, std::move(pim)).first->second;
    }
  }
  throw ResourceError("no projective cover found for " + id + "; sources tried:" + (tried.empty() ? " none" : tried));
}

bool Workspace::chop_all_sources(std::size_t max_dim) {
  bool complete = true;
  const std::uint64_t index = group_->order() / pprime_->order();
  for (std::size_t i = 0; i < source_count(); ++i) {
    const std::size_t dim = index * sub_catalog_->entry(sub_ids_[i]).dim();
    if (dim > max_dim) {
      complete = false;
      continue;
    }
    if (!source_chopped_[i]) {
      chop(source(i));
      source_chopped_[i] = true;
    }
  }
  return complete;
}

Representation heart(const PIM& p, Workspace& ws) { return heart(p.module, ws.peakwords()); }

Representation omega(const Representation& m, Workspace& ws) {
  ws.chop(m);
  const Multiset hd = head(m, ws.peakwords()).head;
  std::vector<const PIM*> pims;
  for (const auto& [id, mult] : hd) pims.push_back(&ws.projective_cover(id));
  const PeakwordTable& pw = ws.peakwords();
  const Submodule rad = radical(m, pw);

  RowSpace covered(m.field_ptr(), m.dim());
  covered.add_rows(rad.basis.matrix);
  Matrix map(m.field_ptr(), 0, m.dim());
  std::optional<Representation> sum;
  for (std::size_t h = 0; h < hd.size(); ++h) {
    const auto& [id, mult] = hd[h];
    const Matrix k = pw.stable_kernel(m, id);
    std::size_t chosen = 0;
    for (std::size_t r = 0; r < k.rows() && chosen < mult; ++r) {
      if (covered.contains(k.row_data(r))) continue;
      const Matrix x = replay(pims[h]->steps, k.row(r), m.gens());
      covered.add_rows(x);
      map.append_rows(x);
      sum = sum ? direct_sum(*sum, pims[h]->module) : pims[h]->module;
      ++chosen;
    }
    if (chosen != mult) throw DomainError("omega: head constituent " + id + " not covered");
  }
  if (!sum) return Representation::trusted(m.group_ptr(), m.field_ptr(), 0, std::vector<Matrix>(m.gens().size(), Matrix(m.field_ptr(), 0, 0)), "omega");
  if (rank(map) != m.dim()) throw DomainError("omega: cover map is not onto");
  const Submodule kernel{rref(nullspace(map))};
  return submodule_action(*sum, kernel).relabeled("omega(" + m.label() + ")");
}

std::size_t CartanMatrix::at(const std::string& s, const std::string& t) const {
  auto is = std::find(simples.begin(), simples.end(), s);
  auto it = std::find(simples.begin(), simples.end(), t);
  if (is == simples.end() || it == simples.end()) throw DomainError("cartan: unknown simple");
  return entries[is - simples.begin()][it - simples.begin()];
}

bool CartanMatrix::symmetric() const {
  for (std::size_t i = 0; i < simples.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (entries[i][j] != entries[j][i]) return false;
  return true;
}

CartanMatrix cartan_matrix(Workspace& ws, std::vector<std::string> simples) {
  const bool all = simples.empty();
  std::map<std::string, CompositionData> rows;
  for (;;) {
    if (all) simples = ws.catalog().ids();
    const std::size_t before = ws.catalog().size();
    for (const auto& s : simples)
      if (!rows.count(s)) rows[s] = ws.chop(ws.projective_cover(s).module);
    if (!all || ws.catalog().size() == before) break;
  }
  CartanMatrix c{simples, {}};
  for (const auto& s : simples) {
    std::vector<std::size_t> row;
    for (const auto& t : simples) row.push_back(rows[s].multiplicity(t));
    c.entries.push_back(std::move(row));
  }
  return c;
}

long long determinant(const CartanMatrix& c) {
  const std::size_t n = c.simples.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<__int128>(c.entries[i][j]);
  // Bareiss fraction-free elimination
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * static_cast<long long>(a[n - 1][n - 1]);
}

std::vector<std::string> BlockPartition::defect_zero(const CartanMatrix& c) const {
  std::vector<std::string> out;
  for (const auto& b : blocks)
    if (b.size() == 1 && c.at(b[0], b[0]) == 1) out.push_back(b[0]);
  return out;
}

BlockPartition block_partition(const CartanMatrix& c) {
  const std::size_t n = c.simples.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c.entries[i][j]) parent[find(i)] = find(j);
  BlockPartition bp;
  std::map<std::size_t, std::size_t> part;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = part.find(r);
    if (it == part.end()) {
      it = part.emplace(r, bp.blocks.size()).first;
      bp.blocks.emplace_back();
    }
    bp.blocks[it->second].push_back(c.simples[i]);
    if (c.simples[i] == "1a") bp.principal = it->second;
  }
  return bp;
}

std::vector<std::string> principal_block_simples(Workspace& ws) {
  std::vector<std::string> found{"1a"};
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto cd = ws.chop(ws.projective_cover(found[i]).module);
    for (const auto& [t, mult] : cd.factors)
      if (std::find(found.begin(), found.end(), t) == found.end()) found.push_back(t);
  }
  const auto ids = ws.catalog().ids();
  std::sort(found.begin() + 1, found.end(), [&](const std::string& a, const std::string& b) {
    return std::find(ids.begin(), ids.end(), a) < std::find(ids.begin(), ids.end(), b);
  });
  return found;
}

Rational c_invariant(Workspace& ws, const std::string& id) {
  const long long dim = static_cast<long long>(ws.projective_cover(id).dim());
  const long long pp = static_cast<long long>(p_part(ws.group_ptr()->order(), ws.p()));
  const long long g = std::gcd(dim, pp);
  return Rational{dim / g, pp / g};
}

KmuReport kmu_check(const Representation& s, PermGroupPtr u, PermGroupPtr frattini, std::uint64_t seed) {
  if (!s.group().contains(*u)) throw MembershipError("kmu_check: U is not a subgroup of the group");
  if (!u->contains(*frattini)) throw MembershipError("kmu_check: Phi(U) is not a subgroup of U");
  KmuReport r;
  r.fixed_dim = fixed_space(s, u).rank();
  r.cofixed_dim = cofixed_dim(s, u);
  const auto parts = indecomposable_summands(restrict(s, frattini), seed);
  r.frattini_restriction_indecomposable = parts.size() == 1 && parts[0].certified;
  const unsigned p = s.field().p();
  const bool cyclic = is_cyclic(*u);
  r.hypothesis_holds = !cyclic && !(p == 2 && two_group_type(*u) != TwoGroupType::Other);
  r.degenerate = s.dim() == 1;
  r.passes = r.fixed_dim == 1 && r.cofixed_dim == 1 && r.frattini_restriction_indecomposable;
  return r;
}

LlpropVerdict check_llprop(Workspace& ws) {
  const unsigned p = ws.p();
  const std::uint64_t order = ws.group_ptr()->order();
  if (p == 2 || order % p != 0) throw DomainError("check_llprop needs an odd p dividing the group order");
  LlpropVerdict v;
  v.sylow_order = p_part(order, p);
  const PIM& pk = ws.projective_cover("1a");
  v.loewy_length = loewy(pk.module, ws.peakwords()).length();
  if (v.loewy_length > 4) {
    v.case_label = "none";
    return v;
  }
  v.applicable = true;
  const Representation h = heart(pk, ws);
  const auto hf = ws.chop(h);
  v.heart_simple = hf.factors.size() == 1 && hf.factors[0].second == 1;
  if (!v.heart_simple || v.loewy_length != 3) {
    v.case_label = "violated";
    return v;
  }
  v.heart_id = hf.factors[0].first;
  if (v.heart_id == "1a") {
    v.case_label = p == 3 && v.sylow_order == 3 ? "i" : "violated";
    return v;
  }
  const Representation hs = heart(ws.projective_cover(v.heart_id), ws);
  const auto hsf = ws.chop(hs);
  if (hsf.factors.size() == 1 && hsf.factors[0] == std::pair<std::string, std::size_t>{"1a", 1}) {
    v.case_label = p == 3 && v.sylow_order == 3 ? "ii_a" : "violated";
    return v;
  }
  const auto parts = indecomposable_summands(hs, ws.seed(), &ws.peakwords());
  bool has_trivial = false;
  for (const auto& s : parts) {
    bool trivial = s.module.dim() == 1;
    for (const auto& g : s.module.gens()) trivial = trivial && g.is_identity();
    has_trivial = has_trivial || trivial;
  }
  v.case_label = parts.size() >= 2 && has_trivial ? "ii_b" : "violated";
  return v;
}

}  // namespace modrep
