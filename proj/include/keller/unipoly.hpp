#pragma once

// Dense univariate polynomials over Q, and the univariate algorithms the
// specialization arguments need: gcd, squarefree part, rational roots,
// resultants and complete factorization over Z.

#include <string>
#include <utility>
#include <vector>

#include "keller/arith.hpp"
#include "keller/poly.hpp"

namespace keller {

class UniPoly {
 public:
  UniPoly() = default;
  /// Ascending coefficients; trailing zeros are trimmed.
  explicit UniPoly(std::vector<BigRat> coeffs);
  UniPoly(std::initializer_list<long> ascending);

  static UniPoly constant(const BigRat& c);
  /// The polynomial z - root.
  static UniPoly linear_root(const BigRat& root);

  /// kZeroDegree for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<BigRat>& coeffs() const { return coeffs_; }
  /// Coefficient of z^i (zero beyond the degree).
  BigRat operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }
  const BigRat& leading() const;
  bool has_integer_coefficients() const;

  BigRat operator()(const BigRat& z) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const BigRat& c);
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

 private:
  void trim();
  std::vector<BigRat> coeffs_;
};

/// Quotient and remainder over Q. Throws DomainError when b is zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly derivative(const UniPoly& p);
UniPoly make_monic(const UniPoly& p);
UniPoly pow(const UniPoly& p, unsigned e);

/// For integer-coefficient p != 0: (content, primitive part) with
/// content * primitive = p and the primitive part's leading coefficient
/// positive (the content carries the sign).
std::pair<BigInt, UniPoly> content_primitive(const UniPoly& p);

/// Rational-coefficient version: p = c * q with q primitive in Z[z], lc(q) > 0.
std::pair<BigRat, UniPoly> rational_content_primitive(const UniPoly& p);

/// Monic gcd over Q. Throws DomainError when both inputs are zero.
UniPoly uni_gcd(const UniPoly& p, const UniPoly& q);

/// p / gcd(p, p'), monic.
UniPoly squarefree_part(const UniPoly& p);

/// Squarefree decomposition p = c * prod g_i^i (Yun). Factors are monic
/// and nonconstant; multiplicities ascending.
std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& p);

/// All rational roots with multiplicity, ascending. Candidates are +-d/e
/// with d | trailing and e | leading coefficient of the primitive integer
/// form; each candidate is verified by exact evaluation.
std::vector<BigRat> rational_roots(const UniPoly& p);

/// Integer members of rational_roots(p), with multiplicity.
std::vector<BigInt> integer_roots(const UniPoly& p);

/// Resultant as the Sylvester determinant with the rows of p first:
/// Res(p, q) = lc(p)^deg(q) * prod_{p(a)=0} q(a).
BigRat uni_resultant(const UniPoly& p, const UniPoly& q);

struct Factorization {
  BigRat unit;
  /// Primitive integer polynomials, positive leading coefficient, irreducible
  /// over Q. Sorted by degree, then coefficients.
  std::vector<std::pair<UniPoly, unsigned>> factors;

  UniPoly expand() const;
  std::size_t factor_count_with_multiplicity() const;
};

/// Complete factorization over Z of a polynomial of degree >= 1 (rational
/// coefficients are accepted; denominators go into the unit).
/// Zassenhaus: modular factorization, Hensel lifting, subset recombination.
Factorization factor_over_Z(const UniPoly& p);

bool is_irreducible_q(const UniPoly& p);

/// Conversion helpers between MultiPoly (one free variable) and UniPoly.
UniPoly to_unipoly(const MultiPoly& p, std::size_t var);
MultiPoly to_multipoly(const UniPoly& p, std::size_t arity, std::size_t var);

std::string to_string(const UniPoly& p, const std::string& var = "z");
std::string to_string(const Factorization& f, const std::string& var = "z");

}  // namespace keller
