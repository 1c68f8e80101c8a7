#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "modrep/errors.hpp"
#include "modrep/job.hpp"
#include "modrep/permgroup.hpp"

using namespace modrep;

namespace {

Perm P(std::vector<long long> one_based) { return Perm::from_images(one_based); }

Perm cycle(std::size_t n, std::vector<Point> pts) {
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = i;
  for (std::size_t k = 0; k < pts.size(); ++k) img[pts[k] - 1] = pts[(k + 1) % pts.size()] - 1;
  return Perm(img);
}

// Closure by breadth-first multiplication; independent of the chain.
std::set<Perm> closure(std::size_t n, const std::vector<Perm>& gens) {
  std::set<Perm> seen{Perm::identity(n)};
  std::vector<Perm> queue{Perm::identity(n)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      Perm x = queue[i] * g;
      if (seen.insert(x).second) queue.push_back(x);
    }
  return seen;
}

GroupJob job(const std::string& name) { return load_group(std::string(MODREP_DATA_DIR) + "/groups/" + name + ".json"); }

PermGroup s_n(std::size_t n) {
  std::vector<Point> c(n);
  for (Point i = 0; i < n; ++i) c[i] = i + 1;
  return PermGroup(n, {cycle(n, c), cycle(n, {1, 2})});
}

}  // namespace

TEST_CASE("group_order examples") {
  CHECK(s_n(6).order() == 720);
  CHECK(trivial_group(5).order() == 1);
  CHECK(job("su3_3").group().order() == 6048);
}

TEST_CASE("membership examples") {
  PermGroup a5(5, {cycle(5, {1, 2, 3}), cycle(5, {1, 2, 3, 4, 5})});
  CHECK(a5.order() == 60);
  CHECK(a5.contains(Perm::identity(5)));
  CHECK_FALSE(a5.contains(cycle(5, {1, 2})));
  Rng rng(1);
  Perm x = Perm::identity(5);
  for (int i = 0; i < 20; ++i) x = x * a5.generators()[rng.below(2)];
  CHECK(a5.contains(x));
  CHECK_THROWS_AS(a5.contains(Perm::identity(4)), DimensionError);
}

TEST_CASE("chain agrees with brute-force closure") {
  for (const char* name : {"c3", "s3", "q8", "d8", "a5", "s6", "sl3_2", "c3c3_q8", "psl2_8", "sl2_5"}) {
    CAPTURE(name);
    auto j = job(name);
    auto g = j.group();
    auto all = closure(j.degree, j.generators);
    CHECK(g.order() == all.size());
    std::size_t prod = 1;
    for (auto l : g.basic_orbit_lengths()) prod *= l;
    CHECK(prod == g.order());
    for (const auto& x : all) CHECK(g.contains(x));
    // membership of non-members: random permutations of the same degree
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      std::vector<Point> img(j.degree);
      for (Point i = 0; i < j.degree; ++i) img[i] = i;
      for (std::size_t i = img.size(); i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
      Perm x(img);
      CHECK(g.contains(x) == (all.count(x) == 1));
    }
    // elements() enumerates the group exactly once
    auto els = g.elements();
    CHECK(std::set<Perm>(els.begin(), els.end()) == all);
  }
}

TEST_CASE("order is independent of generator order and redundancy") {
  auto j = job("psl2_8_3");
  auto g = j.group();
  CHECK(g.order() == 1512);
  Rng rng(17);
  for (int t = 0; t < 5; ++t) {
    std::vector<Perm> gens{g.random_element(rng), g.random_element(rng), g.random_element(rng)};
    gens.push_back(j.generators[1]);
    gens.push_back(j.generators[0]);
    CHECK(PermGroup(j.degree, gens).order() == 1512);
  }
}

TEST_CASE("words evaluate back to their elements") {
  for (const char* name : {"s6", "su3_3", "psl2_8_3"}) {
    auto j = job(name);
    auto g = j.group();
    Rng rng(3);
    std::vector<Perm> xs;
    std::vector<GroupWord> ws;
    for (int t = 0; t < 40; ++t) {
      xs.push_back(g.random_element(rng));
      auto w = g.word(xs.back());
      REQUIRE(w);
      ws.push_back(*w);
    }
    auto back = g.evaluate(
        ws, j.generators, Perm::identity(j.degree), [](const Perm& a, const Perm& b) { return a * b; },
        [](const Perm& a) { return a.inverse(); });
    CHECK(back == xs);
  }
  PermGroup a4(4, {cycle(4, {1, 2, 3}), cycle(4, {2, 3, 4})});
  CHECK_FALSE(a4.word(cycle(4, {1, 2})));
}

TEST_CASE("coset_reps examples and invariants") {
  PermGroup c3(3, {cycle(3, {1, 2, 3})});
  CHECK(coset_reps(c3, c3) == std::vector<Perm>{Perm::identity(3)});
  CHECK(coset_reps(c3, trivial_group(3)).size() == 3);
  auto s3 = s_n(3);
  auto reps = coset_reps(s3, c3);
  CHECK(reps.size() == 2);
  CHECK(reps[0].is_identity());
  CHECK_THROWS_AS(coset_reps(c3, PermGroup(3, {cycle(3, {1, 2})})), MembershipError);

  for (const char* name : {"s6", "psl2_8", "su3_3", "c3c3_q8"}) {
    auto j = job(name);
    auto g = j.group();
    PermGroup h(j.degree, j.pprime_subgroup);
    CosetSpace cs(g, h);
    CHECK(cs.size() * h.order() == g.order());
    CHECK(cs.reps()[0].is_identity());
    if (cs.size() <= 100) {
      for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b) CHECK_FALSE(h.contains(cs.reps()[a] * cs.reps()[b].inverse()));
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (const auto& x : j.generators) {
        auto [k, hh] = cs.act(i, x);
        CHECK(h.contains(hh));
        CHECK(hh * cs.reps()[k] == cs.reps()[i] * x);
      }
  }
}

TEST_CASE("normal_closure and derived_subgroup examples") {
  auto s3 = s_n(3);
  CHECK(normal_closure(s3, {Perm::identity(3)}).order() == 1);
  CHECK(normal_closure(s3, {cycle(3, {1, 2, 3})}).order() == 3);
  CHECK(normal_closure(s3, s3.generators()).order() == 6);
  CHECK_THROWS_AS(normal_closure(PermGroup(3, {cycle(3, {1, 2, 3})}), {cycle(3, {1, 2})}), MembershipError);

  PermGroup c2c2(4, {cycle(4, {1, 2}), cycle(4, {3, 4})});
  CHECK(derived_subgroup(c2c2).order() == 1);
  CHECK(derived_subgroup(s3).order() == 3);
  auto q8 = job("q8").group();
  auto dq = derived_subgroup(q8);
  CHECK(dq.order() == 2);
  // the derived subgroup of Q8 is its centre
  for (const auto& z : dq.elements())
    for (const auto& x : q8.generators()) CHECK(z * x == x * z);
  CHECK(derived_subgroup(s_n(6)).order() == 360);
}

TEST_CASE("frattini_pgroup examples") {
  PermGroup c3c3(6, {cycle(6, {1, 2, 3}), cycle(6, {4, 5, 6})});
  CHECK(frattini_pgroup(c3c3, 3).order() == 1);
  auto d8 = job("d8").group();
  auto phi = frattini_pgroup(d8, 2);
  REQUIRE(phi.order() == 2);
  for (const auto& z : phi.elements())
    for (const auto& x : d8.generators()) CHECK(z * x == x * z);
  PermGroup c9(9, {cycle(9, {1, 2, 3, 4, 5, 6, 7, 8, 9})});
  CHECK(frattini_pgroup(c9, 3).order() == 3);
  CHECK_THROWS_AS(frattini_pgroup(s_n(3), 3), DomainError);
}

TEST_CASE("Frattini quotients are elementary abelian") {
  for (const char* name : {"s6", "su3_3", "psl2_8_3", "c3c3_q8", "d8", "q8", "g2_2"}) {
    CAPTURE(name);
    auto j = job(name);
    REQUIRE(j.sylow_subgroup);
    PermGroup u(j.degree, *j.sylow_subgroup);
    if (u.order() == 1) continue;
    auto phi = frattini_pgroup(u, j.p);
    CHECK(is_normal(u, phi));
    CHECK(is_p_power(u.order() / phi.order(), j.p));
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
      auto x = u.random_element(rng), y = u.random_element(rng);
      CHECK(phi.contains(x.pow(j.p)));
      CHECK(phi.contains(commutator(x, y)));
    }
  }
}

TEST_CASE("p_subgroup_search examples") {
  CHECK(p_subgroup_search(s_n(6), 2, SubgroupMode::SylowP, kReferenceSeed).order() == 16);
  PermGroup c3(3, {cycle(3, {1, 2, 3})});
  CHECK(p_subgroup_search(c3, 3, SubgroupMode::SylowP, kReferenceSeed).order() == 3);
  auto su = job("su3_3").group();
  auto u = p_subgroup_search(su, 2, SubgroupMode::SylowP, kReferenceSeed);
  CHECK(u.order() == 32);
  CHECK(su.contains(u));
  auto h = p_subgroup_search(su, 2, SubgroupMode::HallPPrimeHeuristic, kReferenceSeed);
  CHECK(h.order() % 2 == 1);
  CHECK(su.contains(h));
  CHECK_THROWS_AS(p_subgroup_search(su, 2, SubgroupMode::SylowP, kReferenceSeed, 1), ResourceError);
}

TEST_CASE("Sylow subgroup shapes") {
  auto sl = job("sl2_5");
  auto u5 = PermGroup(sl.degree, *sl.sylow_subgroup);
  CHECK(u5.order() == 5);
  CHECK(is_cyclic(u5));
  auto ps = job("psl2_8");
  auto u9 = PermGroup(ps.degree, *ps.sylow_subgroup);
  CHECK(u9.order() == 9);
  CHECK(is_cyclic(u9));
  auto ps3 = job("psl2_8_3");
  auto u27 = PermGroup(ps3.degree, *ps3.sylow_subgroup);
  CHECK(u27.order() == 27);
  CHECK_FALSE(is_abelian(u27));
  // extraspecial of exponent 9: some element of order 9
  auto prof = order_profile(u27);
  CHECK(prof.back().first == 9);

  CHECK(two_group_type(PermGroup(job("a5").degree, *job("a5").sylow_subgroup)) == TwoGroupType::Dihedral);
  CHECK(two_group_type(PermGroup(job("sl3_2").degree, *job("sl3_2").sylow_subgroup)) == TwoGroupType::Dihedral);
  CHECK(two_group_type(job("d8").group()) == TwoGroupType::Dihedral);
  CHECK(two_group_type(job("q8").group()) == TwoGroupType::Quaternion);
  // x -> x+1 and x -> 3x on Z/8
  PermGroup sd16(8, {P({2, 3, 4, 5, 6, 7, 8, 1}), P({1, 4, 7, 2, 5, 8, 3, 6})});
  CHECK(sd16.order() == 16);
  CHECK(two_group_type(sd16) == TwoGroupType::SemiDihedral);
  CHECK(two_group_type(PermGroup(job("s6").degree, *job("s6").sylow_subgroup)) == TwoGroupType::Other);
  CHECK(two_group_type(PermGroup(job("su3_3").degree, *job("su3_3").sylow_subgroup)) == TwoGroupType::Other);  // C4 wr C2
}

TEST_CASE("coset action gives the quotient") {
  auto j = job("c3c3_q8");
  auto g = j.group();
  PermGroup n(j.degree, *j.normal_subgroup);
  auto q = coset_action(g, n);
  CHECK(q.degree() == 8);
  CHECK(q.order() == 8);
  CHECK(two_group_type(q) == TwoGroupType::Quaternion);
}

TEST_CASE("group file validation") {
  CHECK(job("s3").degree == 3);
  auto bad = [](const std::string& text) { return parse_group(text, "inline"); };
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"generators":[[1,1,2]],"p":3,"pprime_subgroup":[]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"generators":[[2,3,1]],"p":3,"pprime_subgroup":[[2,3,1]]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"generators":[[2,3,1]],"p":4,"pprime_subgroup":[]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"order":4,"generators":[[2,3,1]],"p":3,"pprime_subgroup":[]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"generators":[[2,3,1]],"p":3,"pprime_subgroup":[],"expected":{"bogus":1}})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name":"x","degree":3,"generators":[[2,1,3]],"p":3,"pprime_subgroup":[[2,3,1]]})"), InputError);
  CHECK_THROWS_AS(bad(R"({"name": "x",)"), InputError);
  auto ok = bad(R"({"name":"x","degree":3,"generators":[[2,3,1],[2,1,3]],"p":3,"pprime_subgroup":[{"word":[2]}]})");
  CHECK(ok.pprime_subgroup[0] == cycle(3, {1, 2}));
}
