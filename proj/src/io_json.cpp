#include "selfsim/io_json.hpp"

#include <cstdio>
#include <stdexcept>

namespace selfsim {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Bool;
  v.b_ = b;
  return v;
}

JsonValue JsonValue::integer(long i) {
  JsonValue v;
  v.kind_ = Int;
  v.i_ = i;
  return v;
}

JsonValue JsonValue::real(double d) {
  JsonValue v;
  v.kind_ = Real;
  v.d_ = d;
  return v;
}

JsonValue JsonValue::str(std::string s) {
  JsonValue v;
  v.kind_ = Str;
  v.s_ = std::move(s);
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Arr;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Obj;
  return v;
}

JsonValue& JsonValue::push(JsonValue v) {
  if (kind_ != Arr) throw std::logic_error("push on non-array json value");
  arr_.push_back(std::move(v));
  return *this;
}

JsonValue& JsonValue::set(const std::string& k, JsonValue v) {
  if (kind_ != Obj) throw std::logic_error("set on non-object json value");
  obj_.emplace_back(k, std::move(v));
  return *this;
}

static void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void JsonValue::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (kind_) {
    case Null: out += "null"; break;
    case Bool: out += b_ ? "true" : "false"; break;
    case Int: out += std::to_string(i_); break;
    case Real: out += format_real(d_); break;
    case Str: write_escaped(out, s_); break;
    case Arr: {
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (size_t i = 0; i < arr_.size(); ++i) {
        out += pad_in;
        arr_[i].write(out, indent, depth + 1);
        if (i + 1 < arr_.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      break;
    }
    case Obj: {
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (size_t i = 0; i < obj_.size(); ++i) {
        out += pad_in;
        write_escaped(out, obj_[i].first);
        out += ": ";
        obj_[i].second.write(out, indent, depth + 1);
        if (i + 1 < obj_.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      break;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace selfsim
