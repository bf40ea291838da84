#pragma once

// Sparse multivariate polynomials over Q and polynomial maps.
//
// Terms are kept in a vector sorted ascending in graded lexicographic order
// (total degree first, then x1 > x2 > ... > xn). Zero coefficients are never
// stored, so two polynomials are equal iff their term vectors are equal.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "keller/arith.hpp"

namespace keller {

inline constexpr std::size_t kMaxVars = 8;

/// Degree of the zero polynomial. Compares below every real degree.
inline constexpr int kZeroDegree = -1;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity);
  Monomial(std::initializer_list<unsigned> exponents);

  static Monomial variable(std::size_t arity, std::size_t var, unsigned power = 1);

  std::size_t arity() const { return arity_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, unsigned e);
  unsigned total_degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// True iff this divides other (componentwise <=).
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) from the divisor side; see MultiPoly::divide_exact.
  Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exp_ == b.exp_ && a.arity_ == b.arity_;
  }
  /// Graded lexicographic.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
  std::uint8_t arity_ = 0;
};

class MultiPoly {
 public:
  using Term = std::pair<Monomial, BigRat>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity);

  static MultiPoly constant(std::size_t arity, const BigRat& c);
  static MultiPoly variable(std::size_t arity, std::size_t var);
  static MultiPoly monomial(const Monomial& m, const BigRat& c);
  /// Sorts, merges duplicates and drops zero coefficients.
  static MultiPoly from_terms(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; kZeroDegree for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;

  BigRat coefficient(const Monomial& m) const;
  BigRat constant_term() const;
  /// Largest term in graded lex order. Requires !is_zero().
  const Term& leading_term() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const BigRat& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const BigRat& c) { return a *= c; }
  friend MultiPoly operator*(const BigRat& c, MultiPoly a) { return a *= c; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  /// Multiplies every exponent vector by m (monomial shift).
  MultiPoly shifted(const Monomial& m) const;

  /// Same polynomial in a ring of another arity. Variable i moves to
  /// index mapping[i]; the target arity must hold every image index.
  MultiPoly reindexed(std::size_t target_arity, std::span<const std::size_t> mapping) const;

 private:
  void check_arity(const MultiPoly& other, const char* op) const;

  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned exponent);

/// Every monomial in n variables of total degree <= bound, grlex ascending.
std::vector<Monomial> monomials_up_to(std::size_t n, unsigned bound);

/// Exact value at a point; point.size() must equal the arity.
BigRat evaluate(const MultiPoly& p, std::span<const BigRat> point);

/// Composition. bindings maps variable index -> replacement polynomial; all
/// replacements share one target arity. Unbound variables pass through as
/// the variable with the same index in the target ring.
MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings);

/// Same as above with an explicit target arity (needed when bindings is empty
/// or only contains constants of another arity).
MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings,
                     std::size_t target_arity);

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var);

/// q such that p = q * d exactly, or nullopt when d does not divide p.
/// Throws DomainError when d is zero.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d);

/// Coefficients of p viewed as a polynomial in var: result[k] multiplies
/// var^k. Coefficients stay in the same ring with var-degree 0.
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var);
MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var,
                            std::size_t arity);

/// Clears denominators and removes the integer content so that all
/// coefficients are coprime integers with a positive leading coefficient.
MultiPoly integer_normalized(const MultiPoly& p);
/// Divides by the leading coefficient.
MultiPoly monic(const MultiPoly& p);

/// Default variable names: x, y for arity 2; x for arity 1; x1..xn otherwise.
std::vector<std::string> default_variable_names(std::size_t arity);

/// Canonical text: terms in descending graded lex order, explicit * and ^,
/// e.g. "y^2 + x - 3/4".
std::string to_string(const MultiPoly& p);
std::string to_string(const MultiPoly& p, std::span<const std::string> names);

class PolyMap {
 public:
  PolyMap() = default;
  /// n components, each of arity n. Throws StructuralError otherwise.
  explicit PolyMap(std::vector<MultiPoly> components);

  static PolyMap identity(std::size_t n);

  std::size_t arity() const { return components_.size(); }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<MultiPoly>& components() const { return components_; }

  /// Max total degree over components.
  int degree() const;
  bool is_identity() const;

  std::vector<BigRat> operator()(std::span<const BigRat> point) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) = default;

 private:
  std::vector<MultiPoly> components_;
};

/// (P o Q)(z) = P(Q(z)).
PolyMap compose_maps(const PolyMap& p, const PolyMap& q);

MultiPoly jacobian_det(const PolyMap& p);

struct KellerCheck {
  bool keller = false;
  /// The Jacobian determinant when it is a constant (possibly zero).
  std::optional<BigRat> constant;
  MultiPoly jacobian;
};

/// Keller iff the Jacobian determinant is a nonzero constant.
KellerCheck is_keller(const PolyMap& p);

std::string to_string(const PolyMap& p);
std::string to_string(const PolyMap& p, std::span<const std::string> names);

}  // namespace keller
