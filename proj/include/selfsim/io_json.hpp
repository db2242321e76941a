#pragma once

// Ordered JSON tree with deterministic serialization: object keys keep
// insertion order and every float renders as %.12e, so identical configs
// produce byte-identical reports.

#include <string>
#include <utility>
#include <vector>

namespace selfsim {

class JsonValue {
 public:
  enum Kind { Null, Bool, Int, Real, Str, Arr, Obj };

  JsonValue() : kind_(Null) {}
  static JsonValue boolean(bool b);
  static JsonValue integer(long v);
  static JsonValue real(double v);
  static JsonValue str(std::string s);
  static JsonValue array();
  static JsonValue object();

  Kind kind() const { return kind_; }

  JsonValue& push(JsonValue v);                      // Arr
  JsonValue& set(const std::string& k, JsonValue v); // Obj

  std::string dump(int indent = 2) const;

 private:
  void write(std::string& out, int indent, int depth) const;
  Kind kind_;
  bool b_ = false;
  long i_ = 0;
  double d_ = 0;
  std::string s_;
  std::vector<JsonValue> arr_;
  std::vector<std::pair<std::string, JsonValue>> obj_;
};

std::string format_real(double v);  // %.12e

}  // namespace selfsim
