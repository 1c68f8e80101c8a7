#include "modrep/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "modrep/errors.hpp"
#include "modrep/structure.hpp"

namespace modrep {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

class Stopwatch {
 public:
  explicit Stopwatch(json& out) : out_(out) {}
  void lap(const std::string& stage) {
    const auto now = Clock::now();
    out_[stage] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  void total() { out_["total"] = std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  json& out_;
  Clock::time_point start_ = Clock::now(), last_ = start_;
};

json perm_list(const std::vector<Perm>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.one_based());
  return out;
}

json canonical(const GroupJob& job) {
  json j;
  j["name"] = job.name;
  j["degree"] = job.degree;
  j["order"] = job.order ? json(*job.order) : json();
  j["generators"] = perm_list(job.generators);
  j["p"] = job.p;
  j["field"] = {{"p", job.field.p}, {"deg", job.field.deg}, {"minpoly", job.field.minpoly}};
  j["pprime_subgroup"] = perm_list(job.pprime_subgroup);
  j["sylow_subgroup"] = job.sylow_subgroup ? perm_list(*job.sylow_subgroup) : json();
  j["normal_subgroup"] = job.normal_subgroup ? perm_list(*job.normal_subgroup) : json();
  j["expected"] = json::parse(job.expected_json);
  return j;
}

json multiset(const Multiset& m) {
  json out = json::array();
  for (const auto& [id, k] : m) out.push_back({id, k});
  return out;
}

json rational(const Rational& r) {
  if (r.is_integer()) return r.num;
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

json heart_report(Workspace& ws, const PIM& p, bool splitting) {
  json h;
  const std::size_t sdim = ws.catalog().entry(p.head).dim();
  if (p.dim() == sdim) {
    h["dim"] = 0;
    h["summand_dims"] = json::array();
    h["indecomposable"] = nullptr;
    h["note"] = "P(S) = S";
    return h;
  }
  const Representation heart_rep = heart(p, ws);
  const auto parts = indecomposable_summands(heart_rep, ws.seed(), &ws.peakwords());
  h["dim"] = heart_rep.dim();
  json dims = json::array();
  bool certified = true;
  for (const auto& s : parts) {
    dims.push_back(s.module.dim());
    certified = certified && s.certified;
  }
  h["summand_dims"] = dims;
  h["certified"] = certified;
  // a verdict needs certified summands over a splitting field
  if (!certified || !splitting) {
    h["indecomposable"] = nullptr;
    h["note"] = splitting ? "summands not certified" : "over " + ws.field_ptr()->name() + " only";
  } else {
    h["indecomposable"] = parts.size() == 1;
  }
  return h;
}

json pim_report(Workspace& ws, const std::string& id, bool splitting) {
  const PIM& p = ws.projective_cover(id);
  const auto ld = loewy(p.module, ws.peakwords());
  json j;
  j["dim"] = p.dim();
  j["source"] = p.source;
  j["source_dim"] = p.source_dim;
  j["loewy_length"] = ld.length();
  json layers = json::array();
  for (const auto& l : ld.layers) layers.push_back(multiset(l));
  j["layers"] = layers;
  j["heart"] = heart_report(ws, p, splitting);
  j["c_invariant"] = rational(c_invariant(ws, id));
  return j;
}

json cartan_json(const CartanMatrix& c) {
  json rows = json::array();
  for (const auto& r : c.entries) rows.push_back(r);
  return rows;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

json at_path(const json& r, std::initializer_list<const char*> path) {
  const json* cur = &r;
  for (const char* k : path) {
    if (!cur->is_object() || !cur->contains(k)) return nullptr;
    cur = &(*cur)[k];
  }
  return *cur;
}

// Actual value for an expectation key, shaped like the expected value.
json actual_value(const std::string& key, const json& expected, const json& r) {
  auto per_simple = [&](std::function<json(const std::string&)> get) {
    json out = json::object();
    if (expected.is_object())
      for (const auto& [id, v] : expected.items()) out[id] = get(id);
    return out;
  };
  if (key == "principal_block_dims") return at_path(r, {"principal_block", "dims_sorted"});
  if (key == "loewy_length") return per_simple([&](const std::string& id) { return at_path(r, {"pims", id.c_str(), "loewy_length"}); });
  if (key == "heart_indecomposable")
    return per_simple([&](const std::string& id) {
      json v = at_path(r, {"pims", id.c_str(), "heart", "indecomposable"});
      return v.is_null() ? at_path(r, {"blocks", "hearts", id.c_str(), "indecomposable"}) : v;
    });
  if (key == "positive_defect_block_sizes") return at_path(r, {"blocks", "positive_defect_block_sizes"});
  if (key == "defect_zero_dims") return at_path(r, {"blocks", "defect_zero_dims"});
  if (key == "decomposable_heart_count") return at_path(r, {"blocks", "decomposable_heart_count"});
  if (key == "llprop_case") return at_path(r, {"llprop", "case"});
  if (key == "c11") return at_path(r, {"principal_block", "c11"});
  if (key == "ll_b0") return at_path(r, {"principal_block", "ll_b0"});
  if (key == "cartan") return at_path(r, {"principal_block", "cartan"});
  if (key == "cartan_det") return at_path(r, {"principal_block", "cartan_det"});
  if (key == "c_invariant") return per_simple([&](const std::string& id) { return at_path(r, {"c_invariants", id.c_str()}); });
  if (key == "kmu_pass") return per_simple([&](const std::string& id) { return at_path(r, {"kmu", id.c_str(), "passes"}); });
  return nullptr;
}

void analyse(const GroupJob& job, const RunOptions& opt, json& r, Stopwatch& sw, std::string& stage) {
  stage = "group";
  auto g = std::make_shared<const PermGroup>(job.group());
  auto field = Field::get(job.field);
  r["order"] = g->order();
  r["field"] = field->name();
  const unsigned p = field->p();
  auto pprime = std::make_shared<const PermGroup>(job.degree, job.pprime_subgroup);
  PermGroupPtr sylow =
      job.sylow_subgroup ? std::make_shared<const PermGroup>(job.degree, *job.sylow_subgroup) : nullptr;
  sw.lap(stage);

  stage = "catalog";
  Workspace ws(g, field, pprime, sylow, opt.seed);
  ws.chop(perm_rep(g, field));
  const bool full = ws.chop_all_sources(opt.full_analysis_cap);
  sw.lap(stage);

  stage = "principal_block";
  const auto b0 = principal_block_simples(ws);
  sw.lap(stage);

  // every later module has its factors in the catalog, so the table is final
  json cat = json::array();
  for (const auto& id : ws.catalog().sorted_ids()) {
    const auto& e = ws.catalog().entry(id);
    cat.push_back({{"id", id}, {"dim", e.dim()}, {"endo_dim", e.data.endo_dim}});
  }
  r["catalog"] = {{"simples", cat}, {"splitting", ws.catalog().is_splitting()}, {"complete", full}};

  bool b0_splitting = true;
  for (const auto& id : b0) b0_splitting = b0_splitting && ws.catalog().entry(id).data.endo_dim == 1;

  stage = "pims";
  json pims = json::object();
  json cinv = json::object();
  std::size_t ll_b0 = 0;
  for (const auto& id : b0) {
    pims[id] = pim_report(ws, id, b0_splitting);
    cinv[id] = pims[id]["c_invariant"];
    ll_b0 = std::max<std::size_t>(ll_b0, pims[id]["loewy_length"].get<std::size_t>());
  }
  r["pims"] = pims;
  sw.lap(stage);

  stage = "cartan";
  const CartanMatrix cb = cartan_matrix(ws, b0);
  std::vector<std::size_t> dims;
  for (const auto& id : b0) dims.push_back(ws.catalog().entry(id).dim());
  r["principal_block"] = {{"simples", b0},
                          {"dims", dims},
                          {"dims_sorted", sorted(dims)},
                          {"cartan", cartan_json(cb)},
                          {"cartan_det", determinant(cb)},
                          {"c11", cb.at("1a", "1a")},
                          {"ll_b0", ll_b0},
                          {"b0_splitting", b0_splitting}};
  sw.lap(stage);

  if (full) {
    stage = "blocks";
    const CartanMatrix c = cartan_matrix(ws);
    const BlockPartition bp = block_partition(c);
    const auto dz = bp.defect_zero(c);
    json blocks = json::array();
    std::vector<std::size_t> pos_sizes, dz_dims;
    json hearts = json::object();
    std::size_t decomposable = 0;
    bool all_split = true;
    for (const auto& id : c.simples) all_split = all_split && ws.catalog().entry(id).data.endo_dim == 1;
    for (const auto& b : bp.blocks) {
      blocks.push_back(b);
      const bool zero = b.size() == 1 && std::find(dz.begin(), dz.end(), b[0]) != dz.end();
      if (zero) {
        dz_dims.push_back(ws.catalog().entry(b[0]).dim());
        continue;
      }
      pos_sizes.push_back(b.size());
      for (const auto& id : b) {
        json h = pims.contains(id) ? pims[id]["heart"] : heart_report(ws, ws.projective_cover(id), all_split);
        if (h["indecomposable"] == false) ++decomposable;
        hearts[id] = h;
      }
    }
    for (const auto& id : c.simples)
      if (!cinv.contains(id)) cinv[id] = rational(c_invariant(ws, id));
    r["blocks"] = {{"simples", c.simples},
                   {"cartan", cartan_json(c)},
                   {"blocks", blocks},
                   {"principal", bp.principal},
                   {"positive_defect_block_sizes", sorted(pos_sizes)},
                   {"defect_zero_dims", sorted(dz_dims)},
                   {"hearts", hearts},
                   {"decomposable_heart_count", decomposable}};
    sw.lap(stage);
  }
  r["c_invariants"] = cinv;

  if (p != 2 && g->order() % p == 0) {
    stage = "llprop";
    const auto v = check_llprop(ws);
    r["llprop"] = {{"loewy_length", v.loewy_length}, {"applicable", v.applicable}, {"heart_simple", v.heart_simple},
                   {"heart_id", v.heart_id},         {"case", v.case_label},       {"sylow_order", v.sylow_order}};
    sw.lap(stage);
  }

  if (job.sylow_subgroup && g->order() % p == 0) {
    stage = "kmu";
    auto u = ws.sylow();
    auto phi = std::make_shared<const PermGroup>(frattini_pgroup(*u, p));
    json kmu = json::object();
    for (const auto& id : b0) {
      const auto k = kmu_check(ws.catalog().entry(id).data.module, u, phi, opt.seed);
      json entry = {{"fixed_dim", k.fixed_dim},
                    {"cofixed_dim", k.cofixed_dim},
                    {"frattini_restriction_indecomposable", k.frattini_restriction_indecomposable},
                    {"hypothesis_holds", k.hypothesis_holds},
                    {"degenerate", k.degenerate},
                    {"passes", k.passes}};
      // consistency with the heart verdict when the hypothesis applies
      if (k.passes && k.hypothesis_holds && !k.degenerate)
        entry["heart_consistent"] = pims[id]["heart"]["indecomposable"] == true;
      kmu[id] = entry;
    }
    r["kmu"] = kmu;
    sw.lap(stage);
  }
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

void write_atomic(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp." + hex64(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw ResourceError("cannot write " + tmp);
  }
  fs::rename(tmp, path);
}

std::string describe(const json& v) { return v.dump(); }

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string cache_key(const GroupJob& job, std::uint64_t seed) {
  json k = {{"schema_version", kReportSchemaVersion}, {"seed", seed}, {"job", canonical(job)}};
  return hex64(fnv1a64(k.dump()));
}

int combine_exit_codes(int a, int b) {
  auto rank = [](int c) { return c == kExitInput ? 3 : c == kExitResource ? 2 : c == kExitMismatch ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

JobReport run_job(const GroupJob& job, const RunOptions& opt) {
  JobReport out;
  fs::path cache_path;
  if (opt.use_cache) {
    cache_path = fs::path(opt.cache_dir) / (cache_key(job, opt.seed) + ".json");
    std::ifstream in(cache_path, std::ios::binary);
    if (in) {
      try {
        const json cached = json::parse(in);
        out.report = cached.at("report");
        out.timings = cached.at("timings");
        out.timings["cache_hit"] = true;
        out.exit_code = cached.at("exit_code").get<int>();
        out.cached = true;
        return out;
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  }

  json& r = out.report;
  r["schema_version"] = kReportSchemaVersion;
  r["job"] = job.name;
  r["seed"] = opt.seed;
  r["p"] = job.p;
  Stopwatch sw(out.timings);
  std::string stage;
  try {
    analyse(job, opt, r, sw, stage);
  } catch (const InputError& e) {
    r["error"] = {{"stage", stage}, {"message", e.what()}};
    out.exit_code = kExitInput;
  } catch (const ResourceError& e) {
    r["error"] = {{"stage", stage}, {"message", e.what()}};
    out.exit_code = kExitResource;
  } catch (const std::exception& e) {
    r["error"] = {{"stage", stage}, {"message", e.what()}};
    out.exit_code = kExitMismatch;
  }
  sw.total();

  const json expected = json::parse(job.expected_json);
  json checks = json::array();
  bool all = true;
  for (const auto& [key, value] : expected.items()) {
    const json actual = actual_value(key, value, r);
    const bool ok = actual == value;
    all = all && ok;
    checks.push_back({{"key", key}, {"expected", value}, {"actual", actual}, {"pass", ok}});
  }
  r["expectations"] = checks;
  if (!all) out.exit_code = combine_exit_codes(out.exit_code, kExitMismatch);
  r["pass"] = out.exit_code == kExitPass;

  if (opt.use_cache && out.exit_code != kExitInput && out.exit_code != kExitResource) {
    try {
      json entry = {{"report", out.report}, {"timings", out.timings}, {"exit_code", out.exit_code}};
      write_atomic(cache_path, entry.dump());
    } catch (const std::exception&) {
      // the cache is an optimisation; a read-only directory is not an error
    }
  }
  return out;
}

SuiteFile load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open suite file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("jobs") || !j["jobs"].is_array())
    throw InputError(path + ": field 'jobs': expected an array of paths");
  for (const auto& [k, v] : j.items())
    if (k != "jobs" && k != "seed") throw InputError(path + ": field '" + k + "': unknown field");
  SuiteFile s;
  const fs::path base = fs::path(path).parent_path();
  for (const auto& p : j["jobs"]) {
    if (!p.is_string()) throw InputError(path + ": field 'jobs': expected strings");
    const fs::path jp(p.get<std::string>());
    s.jobs.push_back(jp.is_absolute() ? jp.string() : (base / jp).lexically_normal().string());
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError(path + ": field 'seed': expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  return s;
}

SuiteReport run_suite(const std::vector<std::string>& job_paths, const RunOptions& opt, std::size_t parallelism) {
  const std::size_t n = job_paths.size();
  std::vector<JobReport> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run_job(load_group(job_paths[i]), opt);
      } catch (const std::exception& e) {
        JobReport jr;
        jr.report = {{"schema_version", kReportSchemaVersion},
                     {"job", fs::path(job_paths[i]).stem().string()},
                     {"seed", opt.seed},
                     {"error", {{"stage", "load"}, {"message", e.what()}}},
                     {"expectations", json::array()},
                     {"pass", false}};
        jr.timings = json::object();
        jr.exit_code = kExitInput;
        results[i] = std::move(jr);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(parallelism, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport s;
  s.report = {{"schema_version", kReportSchemaVersion}, {"seed", opt.seed}, {"jobs", json::array()}};
  s.timings = json::object();
  for (auto& jr : results) {
    s.exit_code = combine_exit_codes(s.exit_code, jr.exit_code);
    s.timings[jr.report["job"].get<std::string>()] = jr.timings;
    s.report["jobs"].push_back(std::move(jr.report));
  }
  s.report["pass"] = s.exit_code == kExitPass;
  s.report["exit_code"] = s.exit_code;
  return s;
}

std::string render_text(const json& report) {
  std::ostringstream os;
  auto one = [&](const json& r) {
    os << r.value("job", "?");
    if (r.contains("field")) os << "  " << r["field"].get<std::string>() << "  |G| = " << r["order"];
    os << "\n";
    if (r.contains("principal_block")) {
      const auto& pb = r["principal_block"];
      os << "  B0:";
      for (const auto& id : pb["simples"]) os << " " << id.get<std::string>();
      os << "   c11 = " << pb["c11"] << "   LL(B0) = " << pb["ll_b0"] << "   det C = " << pb["cartan_det"] << "\n";
      for (const auto& id : pb["simples"]) {
        const auto& pim = r["pims"][id.get<std::string>()];
        const auto& h = pim["heart"];
        os << "  P(" << id.get<std::string>() << "): dim " << pim["dim"] << ", LL " << pim["loewy_length"] << ", heart dim "
           << h["dim"] << " ";
        if (h["indecomposable"].is_null())
          os << "(" << h.value("note", "no verdict") << ")";
        else
          os << (h["indecomposable"].get<bool>() ? "indecomposable" : "decomposable " + describe(h["summand_dims"]));
        os << ", c = " << describe(pim["c_invariant"]) << "\n";
      }
    }
    if (r.contains("blocks")) {
      const auto& b = r["blocks"];
      os << "  blocks: " << describe(b["blocks"]) << "   defect zero dims " << describe(b["defect_zero_dims"]) << "\n";
    }
    if (r.contains("llprop")) os << "  LL(P(k)) classification: " << r["llprop"]["case"].get<std::string>() << "\n";
    if (r.contains("kmu"))
      for (const auto& [id, k] : r["kmu"].items())
        os << "  kmu " << id << ": fixed " << k["fixed_dim"] << ", cofixed " << k["cofixed_dim"] << ", Phi(U) restriction "
           << (k["frattini_restriction_indecomposable"].get<bool>() ? "indecomposable" : "decomposable")
           << (k["hypothesis_holds"].get<bool>() ? "" : ", hypothesis fails") << (k["degenerate"].get<bool>() ? ", degenerate" : "")
           << " -> "
           << (k["passes"].get<bool>() ? "pass" : "fail") << "\n";
    if (r.contains("error"))
      os << "  error in " << r["error"]["stage"].get<std::string>() << ": " << r["error"]["message"].get<std::string>()
         << "\n";
    for (const auto& c : r["expectations"])
      if (!c["pass"].get<bool>())
        os << "  MISMATCH " << c["key"].get<std::string>() << ": expected " << describe(c["expected"]) << ", got "
           << describe(c["actual"]) << "\n";
    os << "  " << (r.value("pass", false) ? "PASS" : "FAIL") << " (" << r["expectations"].size() << " expectations)\n";
  };
  if (report.contains("jobs")) {
    for (const auto& r : report["jobs"]) one(r);
    os << (report.value("pass", false) ? "suite PASS" : "suite FAIL") << "\n";
  } else {
    one(report);
  }
  return os.str();
}

}  // namespace modrep
