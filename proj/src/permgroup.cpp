#include "modrep/permgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "modrep/errors.hpp"

namespace modrep {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) throw DomainError("image list is not a bijection");
    seen[x] = 1;
  }
}

Perm Perm::identity(std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::from_images(const std::vector<long long>& one_based) {
  std::vector<Point> img(one_based.size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const long long v = one_based[i];
    if (v < 1 || v > static_cast<long long>(img.size()))
      throw DomainError("image " + std::to_string(v) + " out of range 1.." + std::to_string(img.size()));
    img[i] = static_cast<Point>(v - 1);
  }
  return Perm(std::move(img));
}

std::vector<long long> Perm::one_based() const {
  std::vector<long long> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
  return out;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
  return r;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::uint64_t Perm::order() const {
  std::vector<char> seen(img_.size(), 0);
  std::uint64_t o = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = img_[x]) {
      seen[x] = 1;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

Point Perm::first_moved() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(img_.size());
}

Perm Perm::pow(std::uint64_t e) const {
  Perm result = identity(img_.size()), base = *this;
  for (; e; e >>= 1) {
    if (e & 1) result = result * base;
    base = base * base;
  }
  return result;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw DimensionError("permutation degrees differ");
  std::vector<Point> img(a.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = b[a[static_cast<Point>(i)]];
  return Perm(std::move(img));
}

Perm commutator(const Perm& a, const Perm& b) { return a.inverse() * b.inverse() * a * b; }

std::string to_cycles(const Perm& p) {
  std::ostringstream os;
  std::vector<char> seen(p.degree(), 0);
  for (Point i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) continue;
    os << '(';
    for (Point x = i; !seen[x]; x = p[x]) {
      if (x != i) os << ',';
      os << x + 1;
      seen[x] = 1;
    }
    os << ')';
  }
  const auto s = os.str();
  return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
  return static_cast<std::size_t>(h);
}

std::size_t Slp::push(Node n) {
  nodes_.push_back(n);
  return nodes_.size() - 1;
}

std::size_t Slp::gen(std::size_t i) {
  auto it = gen_.find(i);
  if (it != gen_.end()) return it->second;
  return gen_[i] = push({Op::Gen, i, 0});
}

std::size_t Slp::mul(std::size_t a, std::size_t b) {
  if (a == kNone) return b;
  if (b == kNone) return a;
  return push({Op::Mul, a, b});
}

std::size_t Slp::inverse(std::size_t a) {
  if (a == kNone) return kNone;
  auto it = inv_.find(a);
  if (it != inv_.end()) return it->second;
  const Node nd = nodes_[a];
  std::size_t r;
  switch (nd.op) {
    case Op::Gen:
      r = push({Op::GenInv, nd.a, 0});
      break;
    case Op::GenInv:
      r = gen(nd.a);
      break;
    default: {
      const std::size_t ib = inverse(nd.b);
      const std::size_t ia = inverse(nd.a);
      r = mul(ib, ia);
    }
  }
  inv_[a] = r;
  inv_[r] = a;
  return r;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators) : degree_(degree), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DimensionError("generator degree does not match group degree");
  build();
}

void PermGroup::extend_orbit(Level& lv) {
  if (lv.orbit.empty()) {
    lv.where.assign(degree_, -1);
    lv.orbit.push_back(lv.base);
    lv.where[lv.base] = 0;
    lv.u.push_back(Perm::identity(degree_));
    lv.u_node.push_back(kNone);
  }
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    for (std::size_t si : lv.strong) {
      const Strong& s = strong_[si];
      const Point g = s.perm[lv.orbit[k]];
      if (lv.where[g] >= 0) continue;
      lv.where[g] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(g);
      lv.u.push_back(lv.u[k] * s.perm);
      lv.u_node.push_back(slp_.mul(lv.u_node[k], s.node));
    }
  }
}

std::size_t PermGroup::sift(Perm& g, std::size_t from, std::vector<std::size_t>* used) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::int32_t w = lv.where[g[lv.base]];
    if (w < 0) return l;
    g = g * lv.u[w].inverse();
    if (used) used->push_back(lv.u_node[w]);
  }
  return levels_.size();
}

void PermGroup::build() {
  auto fixes_base = [&](const Perm& p, std::size_t upto) {
    for (std::size_t l = 0; l < upto; ++l)
      if (p[levels_[l].base] != levels_[l].base) return false;
    return true;
  };
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].is_identity()) continue;
    strong_.push_back({gens_[i], slp_.gen(i)});
    if (fixes_base(gens_[i], levels_.size())) levels_.push_back(Level{gens_[i].first_moved(), {}, {}, {}, {}, {}});
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (std::size_t si = 0; si < strong_.size(); ++si)
      if (fixes_base(strong_[si].perm, l)) levels_[l].strong.push_back(si);
    extend_orbit(levels_[l]);
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool grew = false;
    Level* lv = &levels_[i];
    for (std::size_t k = 0; !grew && k < lv->orbit.size(); ++k) {
      for (std::size_t si : lv->strong) {
        const Strong& s = strong_[si];
        const Point beta = lv->orbit[k];
        const std::int32_t wg = lv->where[s.perm[beta]];
        Perm h = lv->u[k] * s.perm * lv->u[wg].inverse();
        if (h.is_identity()) continue;
        std::vector<std::size_t> used;
        const std::size_t j = sift(h, static_cast<std::size_t>(i) + 1, &used);
        if (j == levels_.size() && h.is_identity()) continue;

        std::size_t node = slp_.mul(slp_.mul(lv->u_node[k], s.node), slp_.inverse(lv->u_node[wg]));
        for (std::size_t n : used) node = slp_.mul(node, slp_.inverse(n));
        strong_.push_back({h, node});
        if (j == levels_.size()) levels_.push_back(Level{h.first_moved(), {}, {}, {}, {}, {}});
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].strong.push_back(strong_.size() - 1);
          extend_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        grew = true;
        break;
      }
    }
    if (!grew) --i;
  }

  order_ = 1;
  for (const auto& lv : levels_) {
    base_.push_back(lv.base);
    if (order_ > UINT64_MAX / lv.orbit.size()) throw ResourceError("group order exceeds 64 bits");
    order_ *= lv.orbit.size();
  }
}

std::vector<std::size_t> PermGroup::basic_orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) throw DimensionError("permutation degree does not match group degree");
  Perm h = g;
  return sift(h, 0, nullptr) == levels_.size() && h.is_identity();
}

bool PermGroup::contains(const PermGroup& h) const {
  if (h.degree() != degree_) return false;
  return std::all_of(h.generators().begin(), h.generators().end(), [&](const Perm& g) { return contains(g); });
}

std::optional<GroupWord> PermGroup::word(const Perm& g) const {
  if (g.degree() != degree_) throw DimensionError("permutation degree does not match group degree");
  Perm h = g;
  std::vector<std::size_t> used;
  if (sift(h, 0, &used) != levels_.size() || !h.is_identity()) return std::nullopt;
  GroupWord w;
  for (auto it = used.rbegin(); it != used.rend(); ++it)
    if (*it != kNone) w.nodes.push_back(*it);
  return w;
}

const Perm& PermGroup::transversal(std::size_t i, Point pt) const {
  const std::int32_t w = levels_[i].where[pt];
  if (w < 0) throw DomainError("point not in basic orbit");
  return levels_[i].u[w];
}

Perm PermGroup::random_element(Rng& rng) const {
  Perm g = Perm::identity(degree_);
  for (const auto& lv : levels_) g = lv.u[rng.below(lv.u.size())] * g;
  return g;
}

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out{Perm::identity(degree_)};
  for (const auto& lv : levels_) {
    std::vector<Perm> next;
    next.reserve(out.size() * lv.u.size());
    for (const auto& u : lv.u)
      for (const auto& x : out) next.push_back(u * x);
    out = std::move(next);
  }
  return out;
}

CosetSpace::CosetSpace(const PermGroup& g, const PermGroup& h) : g_(g), h_(h) {
  if (!g.contains(h)) throw MembershipError("subgroup is not contained in the group");
  const std::uint64_t n = g.order() / h.order();
  reps_.push_back(Perm::identity(g.degree()));
  index_.emplace(canonical(reps_[0]), 0);
  for (std::size_t i = 0; i < reps_.size() && reps_.size() < n; ++i) {
    for (const auto& x : g.generators()) {
      Perm y = reps_[i] * x;
      Perm c = canonical(y);
      if (index_.count(c)) continue;
      index_.emplace(std::move(c), reps_.size());
      reps_.push_back(std::move(y));
    }
  }
}

// Among the elements of Hx, the one whose images of H's base points are
// lexicographically smallest.
Perm CosetSpace::canonical(const Perm& x) const {
  Perm y = x;
  for (std::size_t l = 0; l < h_.levels(); ++l) {
    Point best = 0, best_img = static_cast<Point>(-1);
    for (Point pt : h_.level_orbit(l)) {
      if (y[pt] < best_img) {
        best_img = y[pt];
        best = pt;
      }
    }
    y = h_.transversal(l, best) * y;
  }
  return y;
}

std::size_t CosetSpace::index_of(const Perm& x) const {
  auto it = index_.find(canonical(x));
  if (it == index_.end()) throw MembershipError("element is not in the group");
  return it->second;
}

std::pair<std::size_t, Perm> CosetSpace::act(std::size_t i, const Perm& g) const {
  Perm y = reps_[i] * g;
  const std::size_t j = index_of(y);
  return {j, y * reps_[j].inverse()};
}

std::vector<Perm> CosetSpace::generator_action() const {
  std::vector<Perm> out;
  for (const auto& x : g_.generators()) {
    std::vector<Point> img(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) img[i] = static_cast<Point>(index_of(reps_[i] * x));
    out.emplace_back(std::move(img));
  }
  return out;
}

std::vector<Perm> coset_reps(const PermGroup& g, const PermGroup& h) { return CosetSpace(g, h).reps(); }

PermGroup coset_action(const PermGroup& g, const PermGroup& h) {
  CosetSpace cs(g, h);
  return PermGroup(cs.size(), cs.generator_action());
}

PermGroup trivial_group(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& s) {
  std::vector<Perm> gens;
  for (const auto& x : s) {
    if (!g.contains(x)) throw MembershipError("element is not in the group");
    if (!x.is_identity()) gens.push_back(x);
  }
  PermGroup n(g.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& x : g.generators()) {
      Perm c = x.inverse() * gens[i] * x;
      if (n.contains(c)) continue;
      gens.push_back(std::move(c));
      n = PermGroup(g.degree(), gens);
    }
  }
  return n;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) comms.push_back(commutator(gs[i], gs[j]));
  return normal_closure(g, comms);
}

bool is_p_power(std::uint64_t n, unsigned p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::uint64_t p_part(std::uint64_t n, unsigned p) {
  std::uint64_t r = 1;
  while (n && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

PermGroup frattini_pgroup(const PermGroup& u, unsigned p) {
  if (!is_p_power(u.order(), p))
    throw DomainError("group order " + std::to_string(u.order()) + " is not a power of " + std::to_string(p));
  std::vector<Perm> s;
  const auto& gs = u.generators();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    s.push_back(gs[i].pow(p));
    for (std::size_t j = i + 1; j < gs.size(); ++j) s.push_back(commutator(gs[i], gs[j]));
  }
  return normal_closure(u, s);
}

bool is_normal(const PermGroup& g, const PermGroup& n) {
  if (!g.contains(n)) return false;
  for (const auto& x : g.generators())
    for (const auto& y : n.generators())
      if (!n.contains(x.inverse() * y * x)) return false;
  return true;
}

bool is_abelian(const PermGroup& g) {
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (!(gs[i] * gs[j] == gs[j] * gs[i])) return false;
  return true;
}

PermGroup p_subgroup_search(const PermGroup& g, unsigned p, SubgroupMode mode, std::uint64_t seed,
                            std::size_t trials) {
  Rng rng(seed);
  const bool sylow = mode == SubgroupMode::SylowP;
  const std::uint64_t target = sylow ? p_part(g.order(), p) : g.order() / p_part(g.order(), p);
  std::vector<Perm> gens;
  PermGroup cur = trivial_group(g.degree());
  for (std::size_t t = 0; t < trials && cur.order() < target; ++t) {
    const Perm x = g.random_element(rng);
    const std::uint64_t o = x.order(), pp = p_part(o, p);
    const Perm y = sylow ? x.pow(o / pp) : x.pow(pp);
    if (y.is_identity() || cur.contains(y)) continue;
    gens.push_back(y);
    PermGroup next(g.degree(), gens);
    const bool ok = sylow ? is_p_power(next.order(), p) : next.order() % p != 0;
    if (ok) {
      cur = std::move(next);
    } else {
      gens.pop_back();
    }
  }
  if (sylow && cur.order() != target)
    throw ResourceError("Sylow " + std::to_string(p) + "-subgroup not found after " + std::to_string(trials) +
                        " trials (reached order " + std::to_string(cur.order()) +
                        "); supply sylow_subgroup in the group file");
  return cur;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> order_profile(const PermGroup& g) {
  if (g.order() > 1000000) throw ResourceError("order profile needs an enumerable group");
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& x : g.elements()) ++counts[x.order()];
  return {counts.begin(), counts.end()};
}

bool is_cyclic(const PermGroup& g) {
  const auto prof = order_profile(g);
  return prof.back().first == g.order();
}

TwoGroupType two_group_type(const PermGroup& u) {
  if (!is_p_power(u.order(), 2)) throw DomainError("not a 2-group");
  if (is_cyclic(u)) return TwoGroupType::Cyclic;
  const std::uint64_t n = u.order();
  if (n > 64) return TwoGroupType::Other;
  std::uint64_t max_order = 0, involutions = 0;
  for (const auto& [o, c] : order_profile(u)) {
    max_order = std::max(max_order, o);
    if (o == 2) involutions = c;
  }
  if (max_order != n / 2) return TwoGroupType::Other;
  if (n >= 4 && involutions == n / 2 + 1) return TwoGroupType::Dihedral;
  if (n >= 8 && involutions == 1) return TwoGroupType::Quaternion;
  if (n >= 16 && involutions == n / 4 + 1) return TwoGroupType::SemiDihedral;
  return TwoGroupType::Other;
}

}  // namespace modrep
