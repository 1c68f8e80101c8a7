#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modrep/errors.hpp"
#include "modrep/job.hpp"
#include "modrep/report.hpp"
#include "modrep/structure.hpp"

using namespace modrep;
using nlohmann::json;

namespace {

struct Options {
  std::string seed = "0x5EED";
  std::string out;
  std::size_t jobs = 1;
  std::string format = "text";
  bool no_cache = false;
  std::string cache_dir = ".modrep-cache";
  std::size_t cap = 1000;
  std::vector<std::string> inputs;
  std::string simple;
};

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("--seed: not an unsigned integer: " + s);
  }
}

void emit(const Options& o, const json& report, const std::string& text, const json* timings = nullptr) {
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    out << report.dump(2) << "\n";
    if (!out) throw ResourceError("cannot write " + o.out);
    if (timings) std::ofstream(o.out + ".timings.json") << timings->dump(2) << "\n";
  }
  if (o.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

struct Loaded {
  GroupJob job;
  PermGroupPtr group;
  FieldPtr field;
  std::unique_ptr<Workspace> ws;
};

Loaded open_job(const Options& o) {
  Loaded l{load_group(o.inputs.at(0)), nullptr, nullptr, nullptr};
  l.group = std::make_shared<const PermGroup>(l.job.group());
  l.field = Field::get(l.job.field);
  auto pprime = std::make_shared<const PermGroup>(l.job.degree, l.job.pprime_subgroup);
  PermGroupPtr sylow =
      l.job.sylow_subgroup ? std::make_shared<const PermGroup>(l.job.degree, *l.job.sylow_subgroup) : nullptr;
  l.ws = std::make_unique<Workspace>(l.group, l.field, pprime, sylow, parse_seed(o.seed));
  return l;
}

int cmd_order(const Options& o) {
  const auto job = load_group(o.inputs.at(0));
  const auto g = job.group();
  json r = {{"job", job.name}, {"degree", job.degree}, {"order", g.order()}};
  if (job.order) r["declared_order"] = *job.order;
  std::ostringstream os;
  os << job.name << ": degree " << job.degree << ", order " << g.order() << "\n";
  emit(o, r, os.str());
  return kExitPass;
}

int cmd_chop(const Options& o) {
  auto l = open_job(o);
  auto& ws = *l.ws;
  const auto perm = ws.chop(perm_rep(l.group, l.field));
  const bool complete = ws.chop_all_sources(o.cap);
  json simples = json::array();
  std::ostringstream os;
  os << l.job.name << " over " << l.field->name() << (complete ? "" : " (sources over the cap skipped)") << "\n";
  for (const auto& id : ws.catalog().sorted_ids()) {
    const auto& e = ws.catalog().entry(id);
    simples.push_back({{"id", id}, {"dim", e.dim()}, {"endo_dim", e.data.endo_dim}});
    os << "  " << id << "  dim " << e.dim() << "  endo " << e.data.endo_dim << "\n";
  }
  json factors = json::array();
  os << "  permutation module:";
  for (const auto& [id, m] : perm.factors) {
    factors.push_back({id, m});
    os << " " << id << "^" << m;
  }
  os << "\n";
  emit(o, {{"job", l.job.name}, {"simples", simples}, {"permutation_factors", factors}, {"complete", complete}},
       os.str());
  return kExitPass;
}

int cmd_pims(const Options& o, bool layers) {
  auto l = open_job(o);
  auto& ws = *l.ws;
  std::vector<std::string> ids = o.simple.empty() ? principal_block_simples(ws) : std::vector<std::string>{o.simple};
  if (!o.simple.empty()) {
    ws.chop_all_sources(o.cap);
    const auto known = ws.catalog().ids();
    if (std::find(known.begin(), known.end(), o.simple) == known.end())
      throw InputError("--simple: unknown simple " + o.simple);
  }
  for (const auto& id : ids) ws.chop(ws.projective_cover(id).module);
  const auto& pw = ws.peakwords();
  json out = json::array();
  std::ostringstream os;
  for (const auto& id : ids) {
    const PIM& p = ws.projective_cover(id);
    const auto ld = loewy(p.module, pw);
    json entry = {{"head", id}, {"dim", p.dim()}, {"source", p.source}, {"loewy_length", ld.length()}};
    os << "P(" << id << "): dim " << p.dim() << ", LL " << ld.length() << ", from " << p.source << "\n";
    if (layers) {
      json ls = json::array();
      for (std::size_t i = 0; i < ld.layers.size(); ++i) {
        json layer = json::array();
        os << "  " << i << ":";
        for (const auto& [t, m] : ld.layers[i]) {
          layer.push_back({t, m});
          os << " " << t << (m > 1 ? "^" + std::to_string(m) : "");
        }
        os << "\n";
        ls.push_back(layer);
      }
      entry["layers"] = ls;
    }
    out.push_back(entry);
  }
  emit(o, {{"job", l.job.name}, {"pims", out}}, os.str());
  return kExitPass;
}

int cmd_verify(const Options& o) {
  RunOptions ro;
  ro.seed = parse_seed(o.seed);
  ro.use_cache = !o.no_cache;
  ro.cache_dir = o.cache_dir;
  ro.full_analysis_cap = o.cap;
  std::vector<std::string> paths;
  for (const auto& in : o.inputs) {
    std::ifstream f(in);
    if (!f) throw InputError(in + ": cannot open");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      throw InputError(in + ": " + e.what());
    }
    if (j.is_object() && j.contains("jobs")) {
      const auto suite = load_suite(in);
      if (suite.seed && o.seed == "0x5EED") ro.seed = *suite.seed;
      paths.insert(paths.end(), suite.jobs.begin(), suite.jobs.end());
    } else {
      paths.push_back(in);
    }
  }
  const auto s = run_suite(paths, ro, o.jobs);
  emit(o, s.report, render_text(s.report), &s.timings);
  return s.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular representations of finite groups: projective indecomposables, Loewy series and hearts"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "random seed (decimal or 0x-hex)")->capture_default_str();
  app.add_option("--out", o.out, "write the JSON report to this path");
  app.add_option("--jobs", o.jobs, "parallel jobs")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--cap", o.cap, "largest projective source chopped for full block analysis")->capture_default_str();

  auto* order = app.add_subcommand("order", "group order by Schreier-Sims");
  order->add_option("group", o.inputs, "group file")->required()->expected(1);
  auto* chop = app.add_subcommand("chop", "simple modules found in the permutation and projective modules");
  chop->add_option("group", o.inputs, "group file")->required()->expected(1);
  auto* pims = app.add_subcommand("pims", "projective indecomposables of the principal block");
  pims->add_option("group", o.inputs, "group file")->required()->expected(1);
  pims->add_option("--simple", o.simple, "only P(S) for this simple");
  auto* loewy = app.add_subcommand("loewy", "Loewy layers of the principal block projectives");
  loewy->add_option("group", o.inputs, "group file")->required()->expected(1);
  loewy->add_option("--simple", o.simple, "only P(S) for this simple");
  auto* verify = app.add_subcommand("verify", "run group or suite files and compare with their expectations");
  verify->add_option("inputs", o.inputs, "group or suite files")->required();
  verify->add_flag("--no-cache", o.no_cache, "ignore and do not write the result cache");
  verify->add_option("--cache-dir", o.cache_dir, "result cache directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*order) return cmd_order(o);
    if (*chop) return cmd_chop(o);
    if (*pims) return cmd_pims(o, false);
    if (*loewy) return cmd_pims(o, true);
    if (*verify) return cmd_verify(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitPass;
}
