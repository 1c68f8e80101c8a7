#pragma once

#include <memory>
#include <string>

#include "modrep/job.hpp"
#include "modrep/permgroup.hpp"

namespace modrep::testing {

inline GroupJob job(const std::string& name) {
  return load_group(std::string(MODREP_DATA_DIR) + "/groups/" + name + ".json");
}

inline PermGroupPtr group_of(const GroupJob& j) { return std::make_shared<const PermGroup>(j.group()); }

inline PermGroupPtr subgroup_of(const GroupJob& j, const std::vector<Perm>& gens) {
  return std::make_shared<const PermGroup>(j.degree, gens);
}

inline PermGroupPtr make_group(std::size_t degree, std::vector<Perm> gens) {
  return std::make_shared<const PermGroup>(degree, std::move(gens));
}

inline Perm cycle(std::size_t n, std::vector<Point> pts) {
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = i;
  for (std::size_t k = 0; k < pts.size(); ++k) img[pts[k] - 1] = pts[(k + 1) % pts.size()] - 1;
  return Perm(img);
}

}  // namespace modrep::testing
