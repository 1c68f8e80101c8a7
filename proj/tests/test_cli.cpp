#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "doctest.h"
#include "modrep/errors.hpp"
#include "modrep/report.hpp"
#include "support.hpp"

using namespace modrep;
using namespace modrep::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string group_path(const std::string& name) { return std::string(MODREP_DATA_DIR) + "/groups/" + name + ".json"; }

fs::path scratch_dir(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("modrep-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

RunOptions no_cache() {
  RunOptions o;
  o.use_cache = false;
  return o;
}

json expectation(const json& report, const std::string& key) {
  for (const auto& c : report["expectations"])
    if (c["key"] == key) return c;
  return nullptr;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("run_job on C3") {
  auto r = run_job(job("c3"), no_cache());
  CHECK(r.exit_code == kExitPass);
  CHECK(r.report["pass"] == true);
  CHECK(r.report["schema_version"] == kReportSchemaVersion);
  CHECK(r.report["pims"]["1a"]["loewy_length"] == 3);
  CHECK(r.report["principal_block"]["c11"] == 3);
  CHECK(r.report["llprop"]["case"] == "i");
  CHECK(expectation(r.report, "c11")["pass"] == true);
  CHECK(r.timings.contains("total"));
  CHECK_FALSE(r.report.contains("timings"));
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"s3", "sl2_5", "c3c3_q8"}) {
    auto a = run_job(job(name), no_cache());
    auto b = run_job(job(name), no_cache());
    CHECK(a.report.dump() == b.report.dump());
  }
}

TEST_CASE("expectation mismatch") {
  auto j = job("s3");
  j.expected_json = R"({"cartan_det": 4, "loewy_length": {"1a": 3}})";
  auto r = run_job(j, no_cache());
  CHECK(r.exit_code == kExitMismatch);
  CHECK(r.report["pass"] == false);
  auto c = expectation(r.report, "cartan_det");
  CHECK(c["actual"] == 3);
  CHECK(c["pass"] == false);
  CHECK(expectation(r.report, "loewy_length")["pass"] == true);
  CHECK(render_text(r.report).find("MISMATCH cartan_det") != std::string::npos);
}

TEST_CASE("expectations over every simple") {
  auto r = run_job(job("sl2_5"), no_cache());
  CHECK(r.exit_code == kExitPass);
  CHECK(r.report["blocks"]["positive_defect_block_sizes"] == json::array({2, 2}));
  CHECK(r.report["blocks"]["defect_zero_dims"] == json::array({5}));
  CHECK(r.report["blocks"]["decomposable_heart_count"] == 2);

  auto q = run_job(job("q8"), no_cache());
  CHECK(q.exit_code == kExitPass);
  CHECK(q.report["pims"]["1a"]["heart"]["indecomposable"].is_null());
}

TEST_CASE("cache round trip") {
  auto dir = scratch_dir("cache");
  RunOptions o;
  o.cache_dir = dir.string();
  auto first = run_job(job("s3"), o);
  CHECK_FALSE(first.cached);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    CHECK(e.path().extension() == ".json");
    CHECK(e.path().stem().string() == cache_key(job("s3"), o.seed));
  }
  CHECK(files == 1);
  auto second = run_job(job("s3"), o);
  CHECK(second.cached);
  CHECK(second.report.dump() == first.report.dump());
  CHECK(second.exit_code == first.exit_code);

  // a corrupt entry is recomputed
  write(dir / (cache_key(job("s3"), o.seed) + ".json"), "{not json");
  auto third = run_job(job("s3"), o);
  CHECK_FALSE(third.cached);
  CHECK(third.report.dump() == first.report.dump());
  fs::remove_all(dir);
}

TEST_CASE("cache key is content addressed") {
  auto a = job("s3");
  auto b = job("s3");
  CHECK(cache_key(a, 1) == cache_key(b, 1));
  CHECK(cache_key(a, 1) != cache_key(a, 2));
  b.path = "/elsewhere/s3.json";
  CHECK(cache_key(a, 1) == cache_key(b, 1));
  b.expected_json = R"({"c11": 2})";
  CHECK(cache_key(a, 1) != cache_key(b, 1));
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("suite files") {
  auto dir = scratch_dir("suite");
  write(dir / "suite.json", R"({"jobs": [")" + group_path("c3") + R"(", "missing.json"], "seed": 7})");
  auto s = load_suite((dir / "suite.json").string());
  REQUIRE(s.jobs.size() == 2);
  CHECK(s.seed == 7u);
  CHECK(s.jobs[1] == (dir / "missing.json").string());

  auto rep = run_suite(s.jobs, no_cache(), 2);
  CHECK(rep.exit_code == kExitInput);
  CHECK(rep.report["jobs"][0]["pass"] == true);
  CHECK(rep.report["jobs"][1]["error"]["stage"] == "load");
  CHECK(rep.report["pass"] == false);

  write(dir / "bad.json", R"({"jobs": "c3.json"})");
  CHECK_THROWS_AS(load_suite((dir / "bad.json").string()), InputError);
  write(dir / "extra.json", R"({"jobs": [], "speed": 1})");
  CHECK_THROWS_AS(load_suite((dir / "extra.json").string()), InputError);
  CHECK_THROWS_AS(load_suite((dir / "none.json").string()), InputError);
  fs::remove_all(dir);
}

TEST_CASE("suite order and parallelism") {
  std::vector<std::string> paths = {group_path("s3"), group_path("c3"), group_path("a5"), group_path("d8")};
  auto serial = run_suite(paths, no_cache(), 1);
  auto parallel = run_suite(paths, no_cache(), 4);
  CHECK(serial.exit_code == kExitPass);
  CHECK(serial.report.dump() == parallel.report.dump());
  CHECK(serial.report["jobs"][0]["job"] == "s3");
  CHECK(serial.report["jobs"][3]["job"] == "d8");
  CHECK(render_text(serial.report).find("suite PASS") != std::string::npos);
}

TEST_CASE("exit code severity") {
  CHECK(combine_exit_codes(kExitPass, kExitMismatch) == kExitMismatch);
  CHECK(combine_exit_codes(kExitResource, kExitMismatch) == kExitResource);
  CHECK(combine_exit_codes(kExitResource, kExitInput) == kExitInput);
  CHECK(combine_exit_codes(kExitPass, kExitPass) == kExitPass);
}

TEST_CASE("stage failures are reported") {
  // the 3-cycle is not a p'-element at p = 3
  auto j = job("s3");
  j.pprime_subgroup = {cycle(3, {1, 2, 3})};
  auto r = run_job(j, no_cache());
  CHECK(r.exit_code == kExitMismatch);
  CHECK(r.report["error"]["stage"] == "catalog");
  CHECK(r.report["pass"] == false);
  CHECK(expectation(r.report, "cartan")["actual"].is_null());
}
