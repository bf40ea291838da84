#pragma once

// Text input: polynomial expressions over Q and map files.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' exponent)?
//   exponent := INT ('^' exponent)?        right-associative
//   atom  := INT | NAME | '(' expr ')'
//
// Multiplication is always explicit. '/' only divides by a nonzero
// constant, which covers rational literals such as 3/4. '#' starts a
// comment that runs to the end of the line.

#include <string>
#include <string_view>
#include <vector>

#include "keller/errors.hpp"
#include "keller/poly.hpp"

namespace keller {

class ParseError : public StructuralError {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses text in the ring whose variables are `variables` (in order).
/// first_line and first_column place the text inside a larger file for
/// error messages.
MultiPoly parse_expression(std::string_view text, const std::vector<std::string>& variables,
                           int first_line = 1, int first_column = 1);

/// Identifiers occurring in text, in order of first appearance.
std::vector<std::string> identifiers_in(std::string_view text);

/// Variable list for a ring of the given arity: x1..xn when every name is
/// one of those, otherwise x (arity 1), x, y (arity 2), x, y, z (arity 3)
/// or x1..xn. Names outside the list are reported later by the parser.
std::vector<std::string> infer_variables(const std::vector<std::string>& names, std::size_t arity);

struct MapFile {
  std::vector<std::string> names;
  std::vector<std::string> variables;
  PolyMap map;
};

/// Lines of the form `name = expression`; blank lines and comments are
/// skipped. There must be as many components as variables.
MapFile parse_map(std::string_view text);
MapFile load_map_file(const std::string& path);

/// A single polynomial: the whole text, or the right-hand side of one
/// `name = expression` line.
MultiPoly parse_polynomial_text(std::string_view text, const std::vector<std::string>& variables);
MultiPoly load_polynomial_file(const std::string& path, const std::vector<std::string>& variables);

std::string read_text_file(const std::string& path);

}  // namespace keller
