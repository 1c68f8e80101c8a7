#include "modrep/job.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modrep/errors.hpp"

namespace modrep {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& msg) {
  throw InputError(origin + ": field '" + field + "': " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& origin) {
  if (!j.contains(key)) fail(origin, key, "missing");
  return j.at(key);
}

std::vector<long long> int_list(const json& j, const std::string& field, const std::string& origin) {
  if (!j.is_array()) fail(origin, field, "expected an array of integers");
  std::vector<long long> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(origin, field, "expected an array of integers");
    out.push_back(v.get<long long>());
  }
  return out;
}

Perm parse_perm(const json& j, std::size_t degree, const std::string& field, const std::string& origin) {
  auto imgs = int_list(j, field, origin);
  if (imgs.size() != degree)
    fail(origin, field, "image list has length " + std::to_string(imgs.size()) + ", degree is " + std::to_string(degree));
  try {
    return Perm::from_images(imgs);
  } catch (const DomainError& e) {
    fail(origin, field, e.what());
  }
}

// An element given either as an image list or as {"word": [..]} with 1-based
// generator indices, negative for inverses.
Perm parse_element(const json& j, const std::vector<Perm>& gens, std::size_t degree, const std::string& field,
                   const std::string& origin) {
  if (j.is_object()) {
    auto w = int_list(require(j, "word", origin), field + ".word", origin);
    Perm g = Perm::identity(degree);
    for (long long k : w) {
      const long long a = k < 0 ? -k : k;
      if (a < 1 || a > static_cast<long long>(gens.size())) fail(origin, field, "generator index out of range");
      g = g * (k < 0 ? gens[a - 1].inverse() : gens[a - 1]);
    }
    return g;
  }
  return parse_perm(j, degree, field, origin);
}

std::vector<Perm> parse_subgroup(const json& j, const std::vector<Perm>& gens, const PermGroup& g, const std::string& field,
                                 const std::string& origin) {
  if (!j.is_array()) fail(origin, field, "expected a list of elements");
  std::vector<Perm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    Perm x = parse_element(j[i], gens, g.degree(), f, origin);
    if (!g.contains(x)) fail(origin, f, "element is not in the group");
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

GroupJob parse_group(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw InputError(origin + ": top level must be an object");

  static const std::vector<std::string> known = {"name", "provenance", "degree", "order", "generators", "p", "field",
                                                 "pprime_subgroup", "sylow_subgroup", "normal_subgroup", "expected"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) fail(origin, k, "unknown field");

  GroupJob job;
  job.path = origin;
  const auto& name = require(j, "name", origin);
  if (!name.is_string()) fail(origin, "name", "expected a string");
  job.name = name.get<std::string>();
  if (j.contains("provenance")) job.provenance = j["provenance"].is_string() ? j["provenance"].get<std::string>() : "";

  const auto& deg = require(j, "degree", origin);
  if (!deg.is_number_unsigned() || deg.get<std::size_t>() == 0) fail(origin, "degree", "expected a positive integer");
  job.degree = deg.get<std::size_t>();

  const auto& gens = require(j, "generators", origin);
  if (!gens.is_array() || gens.empty()) fail(origin, "generators", "expected a nonempty list");
  for (std::size_t i = 0; i < gens.size(); ++i)
    job.generators.push_back(parse_perm(gens[i], job.degree, "generators[" + std::to_string(i) + "]", origin));

  const auto& p = require(j, "p", origin);
  if (!p.is_number_unsigned() || !is_prime(p.get<unsigned>())) fail(origin, "p", "expected a prime");
  job.p = p.get<unsigned>();
  job.field = FieldSpec{job.p, 1, {}};
  if (j.contains("field")) {
    const auto& f = j["field"];
    if (!f.is_object()) fail(origin, "field", "expected an object");
    job.field.p = f.value("p", job.p);
    job.field.deg = f.value("deg", 1u);
    if (f.contains("minpoly")) {
      for (long long c : int_list(f["minpoly"], "field.minpoly", origin)) job.field.minpoly.push_back(static_cast<unsigned>(c));
    }
    if (job.field.p != job.p) fail(origin, "field.p", "characteristic differs from p");
    try {
      Field::get(job.field);
    } catch (const std::exception& e) {
      fail(origin, "field", e.what());
    }
  }

  const PermGroup g = job.group();
  if (j.contains("order")) {
    const auto& o = j["order"];
    if (!o.is_number_unsigned()) fail(origin, "order", "expected a positive integer");
    job.order = o.get<std::uint64_t>();
    if (*job.order != g.order())
      fail(origin, "order", "declared " + std::to_string(*job.order) + " but generators give " + std::to_string(g.order()));
  }

  job.pprime_subgroup = parse_subgroup(require(j, "pprime_subgroup", origin), job.generators, g, "pprime_subgroup", origin);
  if (PermGroup(job.degree, job.pprime_subgroup).order() % job.p == 0)
    fail(origin, "pprime_subgroup", "order is divisible by p");
  if (j.contains("sylow_subgroup")) {
    job.sylow_subgroup = parse_subgroup(j["sylow_subgroup"], job.generators, g, "sylow_subgroup", origin);
    if (PermGroup(job.degree, *job.sylow_subgroup).order() != p_part(g.order(), job.p))
      fail(origin, "sylow_subgroup", "order is not the p-part of the group order");
  }
  if (j.contains("normal_subgroup")) {
    job.normal_subgroup = parse_subgroup(j["normal_subgroup"], job.generators, g, "normal_subgroup", origin);
    if (!is_normal(g, PermGroup(job.degree, *job.normal_subgroup))) fail(origin, "normal_subgroup", "not normal");
  }

  if (j.contains("expected")) {
    const auto& e = j["expected"];
    if (!e.is_object()) fail(origin, "expected", "expected an object");
    const auto& keys = expectation_keys();
    for (const auto& [k, v] : e.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(origin, "expected." + k, "unknown expectation");
    job.expected_json = e.dump();
  }
  return job;
}

GroupJob load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group(ss.str(), path);
}

}  // namespace modrep
