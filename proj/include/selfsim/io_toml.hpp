#pragma once

// Minimal TOML subset used by the system-definition and element-spec files:
// key = value pairs, [table] and [[array-of-table]] headers, strings,
// integers, floats, booleans and (nested, possibly multi-line) arrays.

#include "selfsim/core_rep.hpp"

#include <map>
#include <string>
#include <vector>

namespace selfsim {

struct TomlValue {
  enum Kind { Str, Int, Real, Boolean, Arr, Table } kind = Table;
  std::string s;
  long i = 0;
  double d = 0;
  bool b = false;
  std::vector<TomlValue> arr;
  std::vector<std::pair<std::string, TomlValue>> table;

  const TomlValue* find(const std::string& key) const;
  const TomlValue& at(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
};

struct TomlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TomlValue toml_parse(const std::string& text);
TomlValue toml_parse_file(const std::string& path);

// Exact scalar from a TOML value: integer literal or "p/q"/"p/q+r/s*sqrt3".
Quad toml_scalar(const TomlValue& v);

// System definition: dimension, scalar = "rational"|"quadratic-sqrt3",
// branches = [[matrix, offset], ...], optional seed and name.
SelfSimilarSystem system_from_toml(const TomlValue& root, const std::string& fallback_name);
SelfSimilarSystem load_system(const std::string& name_or_path);

// Element spec: [[level]] blocks with n plus either a polynomial coefficient
// grid (n = 0) or the two Z-member generators f, g of a rank-one (n >= 1).
GradedCoreElement element_from_toml(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                    const TomlValue& root);
GradedCoreElement load_element(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                               const std::string& path);

}  // namespace selfsim
