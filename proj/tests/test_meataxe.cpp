#include <algorithm>
#include <map>

#include "doctest.h"
#include "modrep/errors.hpp"
#include "modrep/meataxe.hpp"
#include "support.hpp"

using namespace modrep;
using namespace modrep::testing;

namespace {

using Factors = std::vector<std::pair<std::string, std::size_t>>;

std::map<std::size_t, std::size_t> dim_profile(const CompositionData& cd, const SimpleCatalog& cat) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& [id, m] : cd.factors) out[cat.entry(id).dim()] += m;
  return out;
}

}  // namespace

TEST_CASE("chop examples") {
  auto f3 = Field::get(3);
  auto c3 = make_group(3, {cycle(3, {1, 2, 3})});
  SimpleCatalog cat(c3, f3);
  CHECK(chop(trivial_module(c3, f3), cat).factors == Factors{{"1a", 1}});
  CHECK(chop(perm_rep(c3, f3), cat).factors == Factors{{"1a", 3}});

  auto f2 = Field::get(2);
  auto s6 = group_of(job("s6"));
  SimpleCatalog c6(s6, f2);
  CHECK(chop(perm_rep(s6, f2), c6).factors == Factors{{"1a", 2}, {"4a", 1}});
}

TEST_CASE("isomorphism examples") {
  auto f3 = Field::get(3);
  auto s3 = make_group(3, {cycle(3, {1, 2, 3}), cycle(3, {1, 2})});
  auto k = trivial_module(s3, f3);
  auto x = is_isomorphic(k, k);
  REQUIRE(x);
  Representation sgn(s3, f3, {Matrix::identity(f3, 1), Matrix::from_rows(f3, {{2}})});
  CHECK_FALSE(is_isomorphic(k, sgn));

  auto f2 = Field::get(2);
  auto j = job("s6");
  auto s6 = group_of(j);
  SimpleCatalog cat(s6, f2);
  auto ind = induce(trivial_module(subgroup_of(j, j.pprime_subgroup), f2), s6);
  chop(ind, cat);
  chop(tensor(perm_rep(s6, f2), perm_rep(s6, f2)), cat);
  auto ids = cat.ids();
  REQUIRE(std::count(ids.begin(), ids.end(), "4b") == 1);
  const auto& a = cat.entry("4a").data.module;
  const auto& b = cat.entry("4b").data.module;
  CHECK_FALSE(is_isomorphic(a, b));
  // intertwiner check on a conjugated copy
  Rng rng(8);
  Matrix p;
  do p = Matrix::random(f2, 4, 4, rng);
  while (rank(p) < 4);
  auto a2 = change_basis(a, p);
  auto iso = is_isomorphic(a, a2);
  REQUIRE(iso);
  for (std::size_t i = 0; i < a.gens().size(); ++i) CHECK(*iso * a2.gens()[i] == a.gens()[i] * *iso);
  CHECK_THROWS_AS(is_isomorphic(perm_rep(s6, f2), a), DomainError);
}

TEST_CASE("endo_dim examples") {
  auto f3 = Field::get(3);
  auto f2 = Field::get(2);
  auto c3 = make_group(3, {cycle(3, {1, 2, 3})});
  CHECK(endo_dim(trivial_module(c3, f3)) == 1);
  CHECK(endo_dim(Representation(c3, f2, {Matrix::from_rows(f2, {{0, 1}, {1, 1}})})) == 2);

  auto q8 = group_of(job("q8"));
  SimpleCatalog cat(q8, f3);
  chop(perm_rep(q8, f3), cat);  // regular module: every simple appears
  std::size_t found = 0;
  for (const auto& e : cat.entries())
    if (e.dim() == 2) {
      ++found;
      CHECK(e.data.endo_dim == 1);
      CHECK(endo_dim(e.data.module) == 1);
    }
  CHECK(found == 1);
  CHECK(cat.size() == 5);
  CHECK(cat.is_splitting());
}

TEST_CASE("chop conserves dimension and is seed independent") {
  struct Case {
    const char* name;
    unsigned p;
  };
  const std::vector<Case> cases = {{"s3", 3}, {"c3c3_q8", 3}, {"psl2_8", 3}, {"s6", 2}, {"a5", 2}, {"sl3_2", 2},
                                   {"d8", 2}, {"sl2_5", 5}, {"q8", 3}, {"c3", 3}};
  std::size_t iterations = 0;
  for (const auto& c : cases) {
    auto j = job(c.name);
    auto g = group_of(j);
    auto f = Field::get(j.field);
    SimpleCatalog shared(g, f);
    auto pm = perm_rep(g, f);
    auto ind = induce(trivial_module(subgroup_of(j, j.pprime_subgroup), f), g);
    std::vector<Representation> mods{pm, dual(pm), ind};
    if (pm.dim() <= 9) mods.push_back(tensor(pm, pm));
    for (const auto& m : mods) {
      CompositionData first;
      std::map<std::size_t, std::size_t> profile;
      for (std::uint64_t seed = 1; seed <= 3; ++seed, ++iterations) {
        auto cd = chop(m, shared, seed);
        CHECK(cd.total_dim(shared) == m.dim());
        if (seed == 1) first = cd;
        CHECK(cd.factors == first.factors);
        SimpleCatalog fresh(g, f, seed * 77);
        auto cf = chop(m, fresh, seed * 77);
        CHECK(cf.total_dim(fresh) == m.dim());
        if (seed == 1) profile = dim_profile(cf, fresh);
        CHECK(dim_profile(cf, fresh) == profile);
      }
    }
  }
  CHECK(iterations >= 100);
}

TEST_CASE("catalog invariants and certificate replay") {
  auto j = job("psl2_8");
  auto g = group_of(j);
  auto f = Field::get(3);
  SimpleCatalog cat(g, f);
  chop(induce(trivial_module(subgroup_of(j, j.pprime_subgroup), f), g), cat);
  auto es = cat.entries();
  CHECK(es[0].id == "1a");
  for (std::size_t a = 0; a < es.size(); ++a) {
    CHECK(replay_certificate(es[a].data.module, es[a].data.certificate));
    for (std::size_t b = a + 1; b < es.size(); ++b) CHECK_FALSE(isomorphism(es[a].data, es[b].data.module));
  }
  // standard bases are canonical: a random conjugate lands on the same entry
  Rng rng(12);
  for (const auto& e : es) {
    const auto& m = e.data.module;
    Matrix p;
    do p = Matrix::random(f, m.dim(), m.dim(), rng);
    while (rank(p) < m.dim());
    auto c = change_basis(m, p);
    auto r = norton_test(c, 99);
    REQUIRE(r.certificate);
    CHECK(cat.classify(c, *r.certificate) == e.id);
  }
}

TEST_CASE("norton test finds submodules and respects the budget") {
  auto j = job("s6");
  auto g = group_of(j);
  auto f = Field::get(2);
  auto pm = perm_rep(g, f);
  auto r = norton_test(pm, 1);
  REQUIRE(r.submodule);
  CHECK(r.submodule->dim() > 0);
  CHECK(r.submodule->dim() < 6);
  CHECK(is_invariant(pm, r.submodule->basis.matrix));
  CHECK_THROWS_AS(norton_test(pm, 1, 0), ResourceError);
  CHECK(simple_label(4, 0) == "4a");
  CHECK(simple_label(4, 1) == "4b");
  CHECK(simple_label(7, 26) == "7aa");
}
