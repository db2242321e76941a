#include "selfsim/io_toml.hpp"

#include "selfsim/bimodule.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace selfsim {

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) {}

  void skip_space_and_comments(bool skip_newlines) {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || (skip_newlines && c == '\n')) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_space_and_comments(true);
    return pos >= text.size();
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string bare_key() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-'))
      ++pos;
    if (start == pos) throw TomlError("expected key at offset " + std::to_string(start));
    return text.substr(start, pos - start);
  }

  std::string quoted_string() {
    if (!consume('"')) throw TomlError("expected string");
    std::string out;
    while (pos < text.size() && text[pos] != '"') {
      char c = text[pos++];
      if (c == '\\' && pos < text.size()) {
        char e = text[pos++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: out += e;
        }
      } else {
        out += c;
      }
    }
    if (!consume('"')) throw TomlError("unterminated string");
    return out;
  }

  TomlValue value() {
    skip_space_and_comments(true);
    char c = peek();
    if (c == '"') {
      TomlValue v;
      v.kind = TomlValue::Str;
      v.s = quoted_string();
      return v;
    }
    if (c == '[') {
      ++pos;
      TomlValue v;
      v.kind = TomlValue::Arr;
      skip_space_and_comments(true);
      if (consume(']')) return v;
      while (true) {
        v.arr.push_back(value());
        skip_space_and_comments(true);
        if (consume(']')) break;
        if (!consume(',')) throw TomlError("expected ',' or ']' in array");
        skip_space_and_comments(true);
        if (consume(']')) break;  // trailing comma
      }
      return v;
    }
    if (c == 't' || c == 'f') {
      std::string word = bare_key();
      TomlValue v;
      v.kind = TomlValue::Boolean;
      if (word == "true")
        v.b = true;
      else if (word == "false")
        v.b = false;
      else
        throw TomlError("unexpected bare word: " + word);
      return v;
    }
    // number: integer or float
    size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '+' ||
            text[pos] == '-' || text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E' ||
            text[pos] == '_'))
      ++pos;
    if (start == pos) throw TomlError("expected value at offset " + std::to_string(start));
    std::string num = text.substr(start, pos - start);
    std::string clean;
    for (char ch : num)
      if (ch != '_') clean += ch;
    TomlValue v;
    if (clean.find('.') != std::string::npos || clean.find('e') != std::string::npos ||
        clean.find('E') != std::string::npos) {
      v.kind = TomlValue::Real;
      v.d = std::stod(clean);
    } else {
      v.kind = TomlValue::Int;
      v.i = std::stol(clean);
    }
    return v;
  }
};

TomlValue* find_mut(TomlValue& t, const std::string& key) {
  for (auto& [k, v] : t.table)
    if (k == key) return &v;
  return nullptr;
}

}  // namespace

const TomlValue* TomlValue::find(const std::string& key) const {
  for (const auto& [k, v] : table)
    if (k == key) return &v;
  return nullptr;
}

const TomlValue& TomlValue::at(const std::string& key) const {
  const TomlValue* v = find(key);
  if (!v) throw TomlError("missing key: " + key);
  return *v;
}

TomlValue toml_parse(const std::string& text) {
  TomlValue root;
  root.kind = TomlValue::Table;
  TomlValue* current = &root;
  Lexer lex(text);
  while (!lex.eof()) {
    if (lex.consume('[')) {
      bool array_table = lex.consume('[');
      lex.skip_space_and_comments(false);
      std::string name = lex.bare_key();
      lex.skip_space_and_comments(false);
      if (!lex.consume(']')) throw TomlError("expected ']' after table name");
      if (array_table && !lex.consume(']')) throw TomlError("expected ']]' after table name");
      if (array_table) {
        TomlValue* arr = find_mut(root, name);
        if (!arr) {
          TomlValue a;
          a.kind = TomlValue::Arr;
          root.table.emplace_back(name, std::move(a));
          arr = find_mut(root, name);
        }
        TomlValue tbl;
        tbl.kind = TomlValue::Table;
        arr->arr.push_back(std::move(tbl));
        current = &arr->arr.back();
      } else {
        TomlValue tbl;
        tbl.kind = TomlValue::Table;
        root.table.emplace_back(name, std::move(tbl));
        current = find_mut(root, name);
      }
      continue;
    }
    std::string key = lex.bare_key();
    lex.skip_space_and_comments(false);
    if (!lex.consume('=')) throw TomlError("expected '=' after key " + key);
    current->table.emplace_back(key, lex.value());
  }
  return root;
}

TomlValue toml_parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TomlError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return toml_parse(ss.str());
}

Quad toml_scalar(const TomlValue& v) {
  switch (v.kind) {
    case TomlValue::Int:
      return Quad(Rational(v.i));
    case TomlValue::Str:
      return quad_from_string(v.s);
    default:
      throw TomlError("exact scalar must be an integer or a \"p/q\" string");
  }
}

static QVec toml_point(const TomlValue& v, int dim) {
  if (v.kind != TomlValue::Arr || static_cast<int>(v.arr.size()) != dim)
    throw TomlError("point must be an array of " + std::to_string(dim) + " exact scalars");
  QVec p(dim);
  for (int i = 0; i < dim; ++i) p[i] = toml_scalar(v.arr[i]);
  return p;
}

SelfSimilarSystem system_from_toml(const TomlValue& root, const std::string& fallback_name) {
  int dim = static_cast<int>(root.at("dimension").i);
  if (dim < 1 || dim > 3) throw TomlError("dimension must be 1, 2 or 3");
  std::string scalar = root.has("scalar") ? root.at("scalar").s : "rational";
  bool quadratic = scalar == "quadratic-sqrt3";
  if (!quadratic && scalar != "rational")
    throw TomlError("scalar must be \"rational\" or \"quadratic-sqrt3\"");
  std::string name = root.has("name") ? root.at("name").s : fallback_name;

  const TomlValue& branches = root.at("branches");
  if (branches.kind != TomlValue::Arr || branches.arr.size() < 2)
    throw TomlError("branches must be an array of at least two [matrix, offset] pairs");
  std::vector<AffineMap> maps;
  for (const auto& b : branches.arr) {
    if (b.kind != TomlValue::Arr || b.arr.size() != 2)
      throw TomlError("each branch must be [matrix, offset]");
    const TomlValue& mat = b.arr[0];
    if (mat.kind != TomlValue::Arr || static_cast<int>(mat.arr.size()) != dim)
      throw TomlError("branch matrix must have one row per dimension");
    AffineMap m;
    m.matrix.resize(dim);
    for (int r = 0; r < dim; ++r) {
      const TomlValue& row = mat.arr[r];
      if (row.kind != TomlValue::Arr || static_cast<int>(row.arr.size()) != dim)
        throw TomlError("branch matrix row has wrong width");
      m.matrix[r].resize(dim);
      for (int c = 0; c < dim; ++c) m.matrix[r][c] = toml_scalar(row.arr[c]);
    }
    m.offset = toml_point(b.arr[1], dim);
    if (!quadratic) {
      for (const auto& row : m.matrix)
        for (const auto& q : row)
          if (!q.is_rational()) throw TomlError("sqrt3 coefficient in a rational-scalar system");
    }
    maps.push_back(std::move(m));
  }
  std::optional<QVec> seed;
  if (root.has("seed")) seed = toml_point(root.at("seed"), dim);
  return finish_system(name, dim, quadratic, std::move(maps), seed);
}

SelfSimilarSystem load_system(const std::string& name_or_path) {
  if (is_builtin_name(name_or_path)) return builtin_system(name_or_path);
  return system_from_toml(toml_parse_file(name_or_path), name_or_path);
}

static Poly toml_poly(const TomlValue& v, int dim) {
  // 1-D: flat coefficient list (ascending powers of x);
  // 2-D: list of rows, outer index = power of y, inner = power of x
  auto scalar_of = [](const TomlValue& c) -> Cplx {
    switch (c.kind) {
      case TomlValue::Int: return Cplx(static_cast<double>(c.i));
      case TomlValue::Real: return Cplx(c.d);
      case TomlValue::Str: return Cplx(quad_from_string(c.s).to_double());
      default: throw TomlError("polynomial coefficient must be a number or exact string");
    }
  };
  if (v.kind != TomlValue::Arr || v.arr.empty()) throw TomlError("polynomial must be an array");
  if (dim == 1) {
    std::vector<Cplx> coef;
    for (const auto& c : v.arr) coef.push_back(scalar_of(c));
    return Poly::from_coeffs(1, static_cast<int>(coef.size()), 1, std::move(coef));
  }
  int ny = static_cast<int>(v.arr.size());
  int nx = 0;
  for (const auto& row : v.arr) {
    if (row.kind != TomlValue::Arr) throw TomlError("2-D polynomial rows must be arrays");
    nx = std::max(nx, static_cast<int>(row.arr.size()));
  }
  std::vector<Cplx> coef(static_cast<size_t>(nx) * ny, Cplx(0));
  for (int ey = 0; ey < ny; ++ey)
    for (int ex = 0; ex < static_cast<int>(v.arr[ey].arr.size()); ++ex)
      coef[ex + nx * ey] = scalar_of(v.arr[ey].arr[ex]);
  return Poly::from_coeffs(dim, nx, ny, std::move(coef));
}

GradedCoreElement element_from_toml(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                    const TomlValue& root) {
  const TomlValue* levels = root.find("level");
  if (!levels || levels->kind != TomlValue::Arr || levels->arr.empty())
    throw TomlError("element spec needs at least one [[level]] block");
  int max_n = 0;
  for (const auto& blk : levels->arr) max_n = std::max(max_n, static_cast<int>(blk.at("n").i));

  GradedCoreElement t = GradedCoreElement::zero(sys, max_n);
  for (const auto& blk : levels->arr) {
    int n = static_cast<int>(blk.at("n").i);
    if (n < 0) throw TomlError("level n must be >= 0");
    if (n == 0) {
      t.comp[0] = mf_add(t.comp[0], MatrixField::scalar(sys, toml_poly(blk.at("poly"), sys.dimension)));
      continue;
    }
    LevelStructure ls = level_structure(sys, oracle, n);
    auto field_of = [&](const TomlValue& arr) {
      if (arr.kind != TomlValue::Arr) throw TomlError("field generator must be an array");
      VectorField f = VectorField::zero(sys, n);
      if (static_cast<int>(arr.arr.size()) != f.n_dim)
        throw TomlError("field generator needs N^n components");
      for (int i = 0; i < f.n_dim; ++i) f.comp[i] = toml_poly(arr.arr[i], sys.dimension);
      return z_project(sys, ls, std::move(f));
    };
    VectorField f = field_of(blk.at("f"));
    VectorField g = field_of(blk.at("g"));
    t.comp[n] = mf_add(t.comp[n], rank_one(sys, f, g));
  }
  return t;
}

GradedCoreElement load_element(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                               const std::string& path) {
  return element_from_toml(sys, oracle, toml_parse_file(path));
}

}  // namespace selfsim
