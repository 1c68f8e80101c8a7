#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "modrep/job.hpp"
#include "modrep/random.hpp"

namespace modrep {

inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kExitPass = 0, kExitMismatch = 1, kExitInput = 2, kExitResource = 3 };

struct RunOptions {
  std::uint64_t seed = kReferenceSeed;
  /// Largest projective source chopped when analysing every simple (blocks,
  /// defect zero). Jobs over the cap report the principal block only.
  std::size_t full_analysis_cap = 1000;
  bool use_cache = true;
  std::string cache_dir = ".modrep-cache";
};

/// `report` is deterministic in (job, seed); wall-clock data lives in `timings`.
struct JobReport {
  nlohmann::json report;
  nlohmann::json timings;
  int exit_code = kExitPass;
  bool cached = false;
};

JobReport run_job(const GroupJob& job, const RunOptions& opt);

struct SuiteFile {
  std::vector<std::string> jobs;  // resolved against the suite file's directory
  std::optional<std::uint64_t> seed;
};

/// {"jobs": [paths], "seed": integer}. Throws InputError.
SuiteFile load_suite(const std::string& path);

struct SuiteReport {
  nlohmann::json report;
  nlohmann::json timings;
  int exit_code = kExitPass;
};

/// Runs each job file on a pool of `parallelism` threads. Load failures are
/// reported per job with exit code 2; the suite code is the most severe one
/// (2, then 3, then 1).
SuiteReport run_suite(const std::vector<std::string>& job_paths, const RunOptions& opt, std::size_t parallelism);

/// Table of one suite or job report.
std::string render_text(const nlohmann::json& report);

std::uint64_t fnv1a64(std::string_view data);
/// Content address of a job under a seed and the current schema.
std::string cache_key(const GroupJob& job, std::uint64_t seed);

int combine_exit_codes(int a, int b);

}  // namespace modrep
