#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "keller/parser.hpp"

using namespace keller;
using corpus::c;
namespace {
const MultiPoly x = corpus::x(), y = corpus::y();
}  // namespace

namespace {

const std::vector<std::string> xy{"x", "y"};

MultiPoly parse(const std::string& s) { return parse_expression(s, xy); }

void expect_error_at(const std::string& text, int line, int column) {
  try {
    parse_map(text);
    FAIL("no error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("expression examples") {
  CHECK(parse("x + y^2") == x + y * y);
  CHECK(parse("(x - y)*(x + y)") == x * x - y * y);
  CHECK(parse("1/2*x^2 - 3/4") == make_rat(1, 2) * x * x - make_rat(3, 4) * c(1));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("-x^2") == -(x * x));
  CHECK(parse("2*x^2*y") == c(2) * x * x * y);
  CHECK(parse("x - y - 1") == x - y - c(1));
  CHECK(parse("2^3^2") == c(512));
  CHECK(parse("(x + 1)^2 / 4") == make_rat(1, 4) * (x * x + c(2) * x + c(1)));
  CHECK(parse("x/2/3") == make_rat(1, 6) * x);
  CHECK(parse("+x") == x);
  CHECK(parse("  x   *y ") == x * y);
}

TEST_CASE("expression errors") {
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("x^-1"), ParseError);
  CHECK_THROWS_AS(parse("x / y"), ParseError);
  CHECK_THROWS_AS(parse("x / 0"), ParseError);
  CHECK_THROWS_AS(parse("q + 1"), ParseError);
  CHECK_THROWS_AS(parse("(x + 1"), ParseError);
  CHECK_THROWS_AS(parse("x $ y"), ParseError);
  CHECK_THROWS_AS(parse("x^99999"), ParseError);
  try {
    parse("x + w");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
    CHECK(std::string(e.what()).find("1:5:") == 0);
  }
}

TEST_CASE("map files") {
  const auto m = parse_map("# shear\nf = x + y^2\n\ng = y   # second\n");
  CHECK(m.names == std::vector<std::string>{"f", "g"});
  CHECK(m.variables == xy);
  CHECK(m.map == PolyMap({x + y * y, y}));

  const auto m3 = parse_map("a = x1\nb = x2 + x1^2\nc = x3\n");
  CHECK(m3.variables == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(m3.map.arity() == 3);

  const auto m1 = parse_map("f = y\ng = x\n");
  CHECK(m1.map == PolyMap({y, x}));
}

TEST_CASE("map file errors carry line and column") {
  expect_error_at("f = x\ng = x + q\n", 2, 9);
  expect_error_at("f = x\ng y\n", 2, 1);
  expect_error_at("f = x +\ng = y\n", 1, 8);
  CHECK_THROWS_AS(parse_map("# nothing\n"), ParseError);
  // Two components using three variables cannot be a square map.
  CHECK_THROWS_AS(parse_map("f = x + z\ng = y\n"), ParseError);
}

TEST_CASE("single polynomial text") {
  const std::vector<std::string> xyz{"x", "y", "z"};
  const MultiPoly X = MultiPoly::variable(3, 0), Y = MultiPoly::variable(3, 1), Z = MultiPoly::variable(3, 2);
  CHECK(parse_polynomial_text("A = z^2 - (x^2 + y)\n", xyz) == Z * Z - X * X - Y);
  CHECK(parse_polynomial_text("z - x", xyz) == Z - X);
  CHECK_THROWS_AS(parse_polynomial_text("a = x\nb = y\n", xyz), ParseError);
}

TEST_CASE("printing and parsing round trip") {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 100; ++i) {
    MultiPoly p(2);
    for (int k = 0; k < 5; ++k) {
      const auto ex = static_cast<unsigned>(corpus::uniform(rng, 0, 4));
      const auto ey = static_cast<unsigned>(corpus::uniform(rng, 0, 4));
      p += make_rat(corpus::uniform(rng, -9, 9), corpus::uniform(rng, 1, 4)) * pow(x, ex) * pow(y, ey);
    }
    const std::string text = to_string(p);
    CHECK(parse(text) == p);
    CHECK(to_string(parse(text)) == text);
  }
}

TEST_CASE("variable inference") {
  CHECK(infer_variables({"x"}, 2) == xy);
  CHECK(infer_variables({}, 2) == xy);
  CHECK(infer_variables({"x1", "x2"}, 2) == std::vector<std::string>{"x1", "x2"});
  CHECK(infer_variables({"x", "y"}, 4) == std::vector<std::string>{"x1", "x2", "x3", "x4"});
}
