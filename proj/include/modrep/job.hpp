#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modrep/field.hpp"
#include "modrep/permgroup.hpp"

namespace modrep {

/// Expectation vocabulary; any other key in "expected" is an input error.
inline const std::vector<std::string>& expectation_keys() {
  static const std::vector<std::string> keys = {
      "principal_block_dims", "loewy_length", "heart_indecomposable", "positive_defect_block_sizes",
      "defect_zero_dims",     "decomposable_heart_count", "llprop_case", "c11", "ll_b0", "cartan",
      "cartan_det",           "c_invariant", "kmu_pass"};
  return keys;
}

/// One group file.
struct GroupJob {
  std::string name;
  std::string provenance;
  std::string path;
  std::size_t degree = 0;
  std::optional<std::uint64_t> order;
  std::vector<Perm> generators;
  unsigned p = 2;
  FieldSpec field;
  std::vector<Perm> pprime_subgroup;
  std::optional<std::vector<Perm>> sylow_subgroup;
  std::optional<std::vector<Perm>> normal_subgroup;
  /// Raw JSON text of the "expected" object (keys validated on load).
  std::string expected_json = "{}";

  PermGroup group() const { return PermGroup(degree, generators); }
};

/// Parse and validate a group file: schema, permutation bijectivity, declared
/// order, subgroup membership. Throws InputError with the offending field.
GroupJob load_group(const std::string& path);
GroupJob parse_group(const std::string& text, const std::string& origin);

}  // namespace modrep
