#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "modrep/errors.hpp"
#include "modrep/report.hpp"
#include "modrep/structure.hpp"
#include "support.hpp"

using namespace modrep;
using namespace modrep::testing;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.expect(secs < limit_s, "runtime " + std::to_string(secs) + " s over " + std::to_string(limit_s) + " s");
  if (!o.ok) ++failures;
  std::printf("[%s] %2d  %-58s %8.2f s%s%s\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), secs, o.ok ? "" : "  ",
              o.why.str().c_str());
  std::fflush(stdout);
}

RunOptions fresh() {
  RunOptions o;
  o.use_cache = false;
  return o;
}

json report_of(const std::string& name) { return run_job(job(name), fresh()).report; }

std::vector<std::size_t> b0_dims(const json& r) { return r["principal_block"]["dims_sorted"].get<std::vector<std::size_t>>(); }

std::size_t ll(const json& r, const std::string& id) { return r["pims"][id]["loewy_length"].get<std::size_t>(); }

json heart_verdict(const json& r, const std::string& id) { return r["pims"][id]["heart"]["indecomposable"]; }

// ids of the principal block in report order
std::vector<std::string> b0(const json& r) { return r["principal_block"]["simples"].get<std::vector<std::string>>(); }

void expect_all_ll(Outcome& o, const json& r, std::size_t want) {
  for (const auto& id : b0(r)) o.expect(ll(r, id) == want, "LL(P(" + id + ")) = " + std::to_string(ll(r, id)));
}

void expect_hearts_indecomposable(Outcome& o, const json& r) {
  for (const auto& id : b0(r))
    o.expect(heart_verdict(r, id) == true, "heart of P(" + id + ") verdict " + heart_verdict(r, id).dump());
}

struct Ws {
  GroupJob job;
  PermGroupPtr group;
  FieldPtr field;
  std::unique_ptr<Workspace> ws;
};

Ws workspace(const std::string& name, std::uint64_t seed = kReferenceSeed) {
  Ws w{job(name), nullptr, nullptr, nullptr};
  w.group = group_of(w.job);
  w.field = Field::get(w.job.field);
  PermGroupPtr syl = w.job.sylow_subgroup ? subgroup_of(w.job, *w.job.sylow_subgroup) : nullptr;
  w.ws = std::make_unique<Workspace>(w.group, w.field, subgroup_of(w.job, w.job.pprime_subgroup), syl, seed);
  return w;
}

bool heart_is_indecomposable(Workspace& ws, const std::string& id) {
  const auto h = heart(ws.projective_cover(id), ws);
  const auto parts = indecomposable_summands(h, ws.seed(), &ws.peakwords());
  return parts.size() == 1 && parts[0].certified;
}

// Cartan matrix read off a Fitting splitting of the regular module.
std::map<std::string, std::map<std::string, std::size_t>> cartan_from_regular(Ws& w) {
  auto& ws = *w.ws;
  auto one = make_group(w.job.degree, {});
  const auto reg = induce(trivial_module(one, w.field), w.group);
  ws.chop(reg);
  const auto& pw = ws.peakwords();
  std::map<std::string, std::map<std::string, std::size_t>> rows;
  for (const auto& part : indecomposable_summands(reg, ws.seed(), &pw)) {
    if (!part.certified) throw DomainError("uncertified summand of the regular module");
    const auto hd = head(part.module, pw).head;
    if (hd.size() != 1 || hd[0].second != 1) throw DomainError("regular summand with non-simple head");
    for (const auto& [t, m] : ws.chop(part.module).factors) rows[hd[0].first][t] = m;
  }
  return rows;
}

// Property suites.

void fflinalg_laws(Outcome& o) {
  const std::vector<FieldPtr> fields = {Field::get(2), Field::get(3), Field::get(2, 2), Field::get(5), Field::get(3, 2)};
  Rng rng(kReferenceSeed);
  for (int it = 0; it < 100; ++it) {
    const auto& f = fields[it % fields.size()];
    const std::size_t a = 1 + rng.below(40), b = 1 + rng.below(40), c = 1 + rng.below(40), d = 1 + rng.below(20);
    const Matrix x = Matrix::random(f, a, b, rng), y = Matrix::random(f, b, c, rng), z = Matrix::random(f, c, d, rng);
    const Matrix y2 = Matrix::random(f, b, c, rng);
    o.expect((x * y) * z == x * (y * z), "associativity");
    o.expect(x * (y + y2) == x * y + x * y2, "distributivity");
    o.expect(transpose(x * y) == transpose(y) * transpose(x), "transpose of a product");
    const Matrix n = nullspace(x);
    o.expect(rank(x) + n.rows() == x.rows(), "rank-nullity");
    o.expect((n * x).is_zero(), "nullspace annihilates");
    if (!o.ok) return;
  }
}

std::map<std::size_t, std::size_t> dim_profile(const CompositionData& cd, const SimpleCatalog& cat) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& [id, m] : cd.factors) out[cat.entry(id).dim()] += m;
  return out;
}

void chop_properties(Outcome& o) {
  const std::vector<std::string> names = {"s3", "a5", "sl3_2", "psl2_8", "s6", "c3c3_q8", "sl2_5"};
  std::map<std::string, std::vector<std::map<std::size_t, std::size_t>>> reference;
  for (int it = 0; it < 100; ++it) {
    const auto& name = names[it % names.size()];
    auto j = job(name);
    auto g = group_of(j);
    auto f = Field::get(j.field);
    const std::uint64_t seed = kReferenceSeed + 104729ull * it;
    SimpleCatalog cat(g, f, seed);
    std::vector<Representation> mods = {perm_rep(g, f),
                                        induce(trivial_module(subgroup_of(j, j.pprime_subgroup), f), g)};
    std::vector<std::map<std::size_t, std::size_t>> profiles;
    for (const auto& m : mods) {
      const auto cd = chop(m, cat, seed);
      o.expect(cd.total_dim(cat) == m.dim(), name + ": chop loses dimension");
      profiles.push_back(dim_profile(cd, cat));
    }
    auto [pos, fresh_entry] = reference.emplace(name, profiles);
    if (!fresh_entry) o.expect(pos->second == profiles, name + ": factor multiset depends on the seed");
    if (!o.ok) return;
  }
}

void pim_properties(Outcome& o) {
  const std::vector<std::string> names = {"c3", "s3", "a5", "sl3_2", "sl2_5", "c3c3_q8", "psl2_8", "d8"};
  for (int it = 0; it < 100; ++it) {
    const auto& name = names[it % names.size()];
    auto w = workspace(name, kReferenceSeed + 7919ull * it);
    auto& ws = *w.ws;
    ws.chop_all_sources(1000);
    const auto c = cartan_matrix(ws);
    o.expect(c.symmetric(), name + ": Cartan matrix not symmetric");
    const std::uint64_t pp = p_part(w.group->order(), ws.p());
    for (const auto& id : c.simples) {
      const PIM& p = ws.projective_cover(id);
      const auto& pw = ws.peakwords();
      o.expect(p.dim() % pp == 0, name + ": |G|_p does not divide dim P(" + id + ")");
      o.expect(head(p.module, pw).head == Multiset{{id, 1}}, name + ": head of P(" + id + ")");
      o.expect(socle_data(p.module, pw).constituents == Multiset{{id, 1}}, name + ": socle of P(" + id + ")");
    }
    const auto& pk = ws.projective_cover("1a").module;
    const auto pkd = dual(pk);
    ws.chop(pkd);
    const auto& pw = ws.peakwords();
    o.expect(loewy(pk, pw).length() == loewy(pkd, pw).length(), name + ": LL(P(k)) differs from LL(P(k)*)");
    const auto h = heart(ws.projective_cover("1a"), ws);
    if (h.dim() > 0) {
      const auto hd = dual(h);
      ws.chop(hd);
      o.expect(loewy(h, ws.peakwords()).length() == loewy(hd, ws.peakwords()).length(), name + ": LL(H) vs LL(H*)");
    }
    o.expect(find_isomorphism(pk, pkd, ws.peakwords(), ws.seed()).has_value(), name + ": P(k)* not isomorphic to P(k)");
    if (!o.ok) return;
  }
}

void c_multiplicativity(Outcome& o) {
  for (int it = 0; it < 100; ++it) {
    const std::uint64_t seed = kReferenceSeed + 31337ull * it;
    auto w = workspace("c3c3_q8", seed);
    auto& ws = *w.ws;
    ws.chop_all_sources(10000);
    auto n = subgroup_of(w.job, *w.job.normal_subgroup);
    Workspace wn(n, w.field, make_group(w.job.degree, {}), nullptr, seed);
    const Rational ckn = c_invariant(wn, "1a");
    auto q = std::make_shared<const PermGroup>(coset_action(*w.group, *n));
    Workspace wq(q, w.field, q, make_group(q->degree(), {}), seed);
    wq.chop_all_sources(10000);
    std::set<std::string> seen;
    for (const auto& qid : wq.catalog().ids()) {
      Representation inflated(w.group, w.field, wq.catalog().entry(qid).data.module.gens());
      std::string gid;
      for (const auto& id : ws.catalog().ids())
        if (is_isomorphic(ws.catalog().entry(id).data.module, inflated)) gid = id;
      o.expect(!gid.empty(), "inflation of " + qid + " not in the catalog");
      if (gid.empty()) return;
      seen.insert(gid);
      const Rational cs = c_invariant(ws, gid), cb = c_invariant(wq, qid);
      o.expect(cs.num * ckn.den * cb.den == ckn.num * cb.num * cs.den, "c(" + gid + ") != c(k_N) c(S bar)");
    }
    o.expect(seen.size() == 5 && ws.catalog().size() == 5, "expected five simples");
    if (!o.ok) return;
  }
}

}  // namespace

int main() {
  json su3, g2;

  criterion(1, "SL2(5), p=5: blocks, LL(P(k))=3, p-3 decomposable hearts", 10, [](Outcome& o) {
    const json r = report_of("sl2_5");
    const auto& b = r["blocks"];
    o.expect(b["positive_defect_block_sizes"] == json::array({2, 2}), "positive defect blocks " + b["positive_defect_block_sizes"].dump());
    o.expect(b["defect_zero_dims"].size() == 1, "defect zero blocks " + b["defect_zero_dims"].dump());
    o.expect(ll(r, "1a") == 3, "LL(P(k)) = " + std::to_string(ll(r, "1a")));
    o.expect(r["llprop"]["heart_simple"] == true, "heart(P(k)) not simple");
    o.expect(b["decomposable_heart_count"] == 5 - 3, "decomposable hearts " + b["decomposable_heart_count"].dump());
  });

  criterion(2, "PSL2(8), p=3: B0 {k,7}, LL 3/5, heart(P(7)) decomposable", 30, [](Outcome& o) {
    const json r = report_of("psl2_8");
    o.expect(b0_dims(r) == std::vector<std::size_t>{1, 7}, "B0 dims");
    o.expect(ll(r, "1a") == 3, "LL(P(k))");
    o.expect(ll(r, "7a") == 5, "LL(P(7))");
    o.expect(heart_verdict(r, "1a") == true, "heart(P(k)) should be indecomposable");
    o.expect(heart_verdict(r, "7a") == false, "heart(P(7)) should be decomposable");
  });

  criterion(3, "PSL2(8):3, p=3: B0 {k,7}, LL 5/7, hearts indecomposable", 120, [](Outcome& o) {
    const json r = report_of("psl2_8_3");
    o.expect(b0_dims(r) == std::vector<std::size_t>{1, 7}, "B0 dims");
    o.expect(ll(r, "1a") == 5, "LL(P(k))");
    o.expect(ll(r, "7a") == 7, "LL(P(7))");
    expect_hearts_indecomposable(o, r);
  });

  criterion(4, "S6, p=2: B0 {k,4a,4b}, LL 10, one defect-0 block (16, c=1)", 120, [](Outcome& o) {
    const json r = report_of("s6");
    o.expect(b0_dims(r) == std::vector<std::size_t>{1, 4, 4}, "B0 dims");
    expect_all_ll(o, r, 10);
    expect_hearts_indecomposable(o, r);
    o.expect(r["blocks"]["defect_zero_dims"] == json::array({16}), "defect zero " + r["blocks"]["defect_zero_dims"].dump());
    o.expect(r["c_invariants"]["16a"] == 1, "c(16a) = " + r["c_invariants"]["16a"].dump());
  });

  criterion(5, "SU3(3), p=2: B0 {k,6,14}, LL 19, hearts indecomposable", 600, [&](Outcome& o) {
    su3 = report_of("su3_3");
    o.expect(b0_dims(su3) == std::vector<std::size_t>{1, 6, 14}, "B0 dims");
    expect_all_ll(o, su3, 19);
    expect_hearts_indecomposable(o, su3);
  });

  criterion(6, "G2(2), p=2: B0 {k,6,14}, LL 20, hearts indecomposable", 1800, [&](Outcome& o) {
    g2 = report_of("g2_2");
    o.expect(b0_dims(g2) == std::vector<std::size_t>{1, 6, 14}, "B0 dims");
    expect_all_ll(o, g2, 20);
    expect_hearts_indecomposable(o, g2);
  });

  criterion(7, "C3^2:Q8, p=3: c11=2, LL(P(S))=5 for all of B0", 30, [](Outcome& o) {
    const json r = report_of("c3c3_q8");
    o.expect(r["principal_block"]["c11"] == 2, "c11 = " + r["principal_block"]["c11"].dump());
    o.expect(ll(r, "1a") == 5, "LL(P(k))");
    expect_all_ll(o, r, 5);
    o.expect(r["principal_block"]["ll_b0"] == 5, "LL(B0)");
  });

  criterion(8, "S3, C3, p=3: Cartan [[2,1],[1,2]], det 3, cases i / ii", 5, [](Outcome& o) {
    auto s = workspace("s3");
    auto& ws = *s.ws;
    const auto c = cartan_matrix(ws);
    o.expect(c.entries == std::vector<std::vector<std::size_t>>{{2, 1}, {1, 2}}, "Cartan matrix");
    o.expect(determinant(c) == 3, "det");
    auto oracle = cartan_from_regular(s);
    for (const auto& a : c.simples)
      for (const auto& b : c.simples) o.expect(oracle[a][b] == c.at(a, b), "regular-module Cartan entry " + a + "," + b);
    const auto v = check_llprop(ws);
    o.expect(v.case_label == "ii_a", "S3 case " + v.case_label);
    const auto& sgn = ws.catalog().entry(v.heart_id).data.module;
    o.expect(sgn.dim() == 1 && !sgn.gens()[1].is_identity(), "heart(P(k)) is not sgn");
    o.expect(ws.chop(heart(ws.projective_cover(v.heart_id), ws)).factors == Multiset{{"1a", 1}}, "H(sgn) is not k");

    auto c3 = workspace("c3");
    const auto vc = check_llprop(*c3.ws);
    o.expect(vc.case_label == "i", "C3 case " + vc.case_label);
    auto oc = cartan_from_regular(c3);
    o.expect(oc["1a"]["1a"] == 3, "C3 regular-module Cartan");
  });

  criterion(9, "heart(P(k)) decomposable iff p=2 with dihedral Sylow", 60, [](Outcome& o) {
    for (const char* name : {"a5", "sl3_2"}) {
      auto w = workspace(name);
      o.expect(!heart_is_indecomposable(*w.ws, "1a"), std::string(name) + ": heart should decompose");
      auto u = w.ws->sylow();
      o.expect(two_group_type(*u) == TwoGroupType::Dihedral ||
                   (u->order() == 4 && !is_cyclic(*u)),
               std::string(name) + ": Sylow 2-subgroup not dihedral");
    }
    for (const char* name : {"c3", "s3", "sl2_5", "psl2_8", "psl2_8_3", "c3c3_q8"}) {
      auto w = workspace(name);
      o.expect(heart_is_indecomposable(*w.ws, "1a"), std::string(name) + ": heart should be indecomposable");
    }
  });

  criterion(10, "KMU check on SU3(3) and G2(2) simples 6, 14", 300, [&](Outcome& o) {
    for (const json* r : {&su3, &g2}) {
      if (r->is_null() || !r->contains("kmu")) {
        o.expect(false, "missing report");
        continue;
      }
      for (const char* id : {"6a", "14a"}) {
        const auto& k = (*r)["kmu"][id];
        const std::string tag = (*r)["job"].get<std::string>() + " " + id;
        o.expect(k["fixed_dim"] == 1 && k["cofixed_dim"] == 1, tag + ": fixed/cofixed");
        o.expect(k["frattini_restriction_indecomposable"] == true, tag + ": restriction to Phi(U)");
        o.expect(k["passes"] == true, tag + ": kmu");
        o.expect(k["hypothesis_holds"] == true, tag + ": U excluded type");
        o.expect(k.value("heart_consistent", false), tag + ": heart verdict");
      }
    }
  });

  criterion(11, "property suites (100 iterations each)", 300, [](Outcome& o) {
    fflinalg_laws(o);
    chop_properties(o);
    pim_properties(o);
    c_multiplicativity(o);
  });

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
