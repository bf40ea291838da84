#include "keller/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace keller {

ParseError::ParseError(const std::string& message, int line, int column)
    : StructuralError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr unsigned kMaxExponent = 4096;

enum class Tok { number, name, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src, int line, int column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < src.size()) {
      const char c = src[i];
      if (c == '\n') {
        ++line;
        column = 1;
        ++i;
      } else if (c == '#') {
        while (i < src.size() && src[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++column;
        ++i;
      } else {
        break;
      }
    }
    if (i == src.size()) {
      out.push_back({Tok::end, "", line, column});
      return out;
    }
    const char c = src[i];
    const int start_col = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), line, start_col});
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::name, std::string(src.substr(i, j - i)), line, start_col});
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
    }
    out.push_back({kind, std::string(1, c), line, start_col});
    ++column;
    ++i;
  }
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>& vars)
      : toks_(std::move(toks)), vars_(vars) {}

  MultiPoly parse() {
    if (peek().kind == Tok::end) fail("empty expression");
    MultiPoly p = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      MultiPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Token op = take();
      const Token& at = peek();
      MultiPoly rhs = unary();
      if (op.kind == Tok::star) {
        acc *= rhs;
        continue;
      }
      if (!rhs.is_constant()) fail_at(at, "division by a non-constant expression");
      const BigRat d = rhs.constant_term();
      if (d == 0) fail_at(at, "division by zero");
      acc *= BigRat(1) / d;
    }
    return acc;
  }

  MultiPoly unary() {
    if (peek().kind == Tok::minus) {
      take();
      return -unary();
    }
    if (peek().kind == Tok::plus) {
      take();
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (peek().kind != Tok::caret) return base;
    take();
    return pow(base, exponent());
  }

  unsigned exponent() {
    const Token& t = peek();
    if (t.kind == Tok::minus) fail("negative exponent");
    if (t.kind != Tok::number) fail("exponent must be a nonnegative integer literal");
    take();
    BigInt e(t.text);
    if (peek().kind == Tok::caret) {
      take();
      const unsigned rest = exponent();
      if (e > 1 && rest > 0) {
        // e^rest, bounded before expanding.
        BigInt v = 1;
        for (unsigned i = 0; i < rest && v <= kMaxExponent; ++i) v *= e;
        e = v;
      } else if (rest == 0) {
        e = 1;
      }
    }
    if (e > kMaxExponent) fail_at(t, "exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  MultiPoly atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        take();
        return MultiPoly::constant(vars_.size(), BigRat(BigInt(t.text)));
      case Tok::name: {
        take();
        const auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it == vars_.end()) fail_at(t, "unknown variable '" + t.text + "'");
        return MultiPoly::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
      }
      case Tok::lparen: {
        take();
        MultiPoly inner = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        take();
        return inner;
      }
      case Tok::end:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

struct Definition {
  std::string name;
  std::string rhs;
  int line;
  int column;
};

std::vector<Definition> definitions(std::string_view text) {
  std::vector<Definition> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = strip_comment(raw);
    if (blank(body)) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = expression'", line, 1);
    std::string name = body.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t\r") + 1);
    if (name.empty() || !std::all_of(name.begin(), name.end(), [](unsigned char c) {
          return std::isalnum(c) || c == '_';
        })) {
      throw ParseError("invalid component name", line, 1);
    }
    out.push_back({name, body.substr(eq + 1), line, static_cast<int>(eq) + 2});
  }
  return out;
}

}  // namespace

MultiPoly parse_expression(std::string_view text, const std::vector<std::string>& variables,
                           int first_line, int first_column) {
  Parser parser(tokenize(text, first_line, first_column), variables);
  return parser.parse();
}

std::vector<std::string> identifiers_in(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text, 1, 1)) {
    if (t.kind == Tok::name && std::find(out.begin(), out.end(), t.text) == out.end()) {
      out.push_back(t.text);
    }
  }
  return out;
}

std::vector<std::string> infer_variables(const std::vector<std::string>& names, std::size_t arity) {
  std::vector<std::string> indexed;
  for (std::size_t i = 1; i <= arity; ++i) indexed.push_back("x" + std::to_string(i));
  const bool all_indexed = !names.empty() && std::all_of(names.begin(), names.end(), [&](const auto& n) {
    return std::find(indexed.begin(), indexed.end(), n) != indexed.end();
  });
  if (all_indexed) return indexed;
  switch (arity) {
    case 1: return {"x"};
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    default: return indexed;
  }
}

MapFile parse_map(std::string_view text) {
  const auto defs = definitions(text);
  if (defs.empty()) throw ParseError("map file has no components", 1, 1);
  std::vector<std::string> names;
  for (const auto& d : defs) {
    for (auto& id : identifiers_in(d.rhs)) {
      if (std::find(names.begin(), names.end(), id) == names.end()) names.push_back(id);
    }
  }
  MapFile mf;
  mf.variables = infer_variables(names, defs.size());
  std::vector<MultiPoly> comps;
  for (const auto& d : defs) {
    mf.names.push_back(d.name);
    comps.push_back(parse_expression(d.rhs, mf.variables, d.line, d.column));
  }
  mf.map = PolyMap(std::move(comps));
  return mf;
}

MultiPoly parse_polynomial_text(std::string_view text, const std::vector<std::string>& variables) {
  // Either a bare expression or one `name = expression` line.
  bool has_definition = false;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    if (strip_comment(raw).find('=') != std::string::npos) has_definition = true;
  }
  if (!has_definition) return parse_expression(text, variables);
  const auto defs = definitions(text);
  if (defs.size() != 1) throw ParseError("expected a single polynomial definition", 1, 1);
  return parse_expression(defs[0].rhs, variables, defs[0].line, defs[0].column);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MapFile load_map_file(const std::string& path) { return parse_map(read_text_file(path)); }

MultiPoly load_polynomial_file(const std::string& path, const std::vector<std::string>& variables) {
  return parse_polynomial_text(read_text_file(path), variables);
}

}  // namespace keller
