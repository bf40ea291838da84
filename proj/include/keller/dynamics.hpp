#pragma once

// Iterates, finite order, fixed points and affine classification of plane
// polynomial maps Q, typically symmetries with P o Q = P.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "keller/poly.hpp"
#include "keller/unipoly.hpp"

namespace keller {

/// Q composed with itself t times; the identity for t = 0.
PolyMap iterate_map(const PolyMap& q, unsigned t);

struct OrderResult {
  std::optional<unsigned> order;
  /// Largest t for which Q^t was compared with the identity.
  unsigned iterations_checked = 0;
  /// Iteration stopped early because deg(Q^t) exceeded the degree guard.
  bool degree_guard_hit = false;
};

inline constexpr unsigned kDefaultOrderLimit = 24;
inline constexpr int kDefaultOrderDegreeGuard = 64;

/// Smallest t <= t_max with Q^t = identity, by exact comparison. Iterates
/// whose degree passes degree_guard are not expanded further (the search
/// stops and reports the guard).
OrderResult detect_order(const PolyMap& q, unsigned t_max = kDefaultOrderLimit,
                         int degree_guard = kDefaultOrderDegreeGuard);

enum class LocusKind { empty, finite, positive_dimensional };
std::string to_string(LocusKind k);

using Point2 = std::array<BigRat, 2>;

struct FixedLocus {
  LocusKind kind = LocusKind::empty;
  /// Rational fixed points, ascending; only for zero-dimensional loci.
  std::vector<Point2> rational_points;
  /// Zero-dimensional: eliminants in x and in y (each arity 2, one variable).
  /// Positive-dimensional: the common factor of Q1 - x and Q2 - y (zero
  /// polynomial when Q is the identity).
  std::vector<MultiPoly> defining_polynomials;
  /// Both eliminants are nonconstant, so fixed points exist over C unless
  /// they escape to infinity.
  bool complex_solutions = false;
  /// The leading coefficients in the eliminated variable can vanish
  /// together, so the complex count above is not certified.
  bool leading_degenerate = false;
};

FixedLocus fixed_points(const PolyMap& q);

enum class JordanType {
  /// mu = 0: diagonalizable over Q.
  diagonal,
  /// mu = 1: a single Jordan block.
  jordan_block,
  /// Eigenvalues are not rational.
  irrational
};
std::string to_string(JordanType j);

struct LinearClassification {
  bool is_affine = true;
  std::array<std::array<BigRat, 2>, 2> matrix;
  Point2 offset;
  BigRat trace;
  BigRat determinant;
  bool det_is_one = false;
  /// z^2 - trace z + det.
  UniPoly characteristic;
  /// Rational eigenvalues with multiplicity, ascending (empty if irrational).
  std::vector<BigRat> eigenvalues;
  JordanType jordan = JordanType::irrational;
  bool has_fixed_point = false;
  /// One solution of (L - I) z = -b when it exists.
  std::optional<Point2> fixed_point;
  std::optional<unsigned> finite_order;
};

/// Q(z) = L z + b. Throws DomainError when a component has degree > 1.
LinearClassification classify_affine(const PolyMap& q, unsigned t_max = kDefaultOrderLimit);

struct PQCheck {
  bool identical = false;
  /// Nonzero components of P o Q - P.
  std::vector<MultiPoly> difference;
};

PQCheck pq_check(const PolyMap& p, const PolyMap& q);

/// Q == S^-1 o L o S, with S^-1 found by the ansatz solver. Throws
/// DomainError when L is not linear or S has no polynomial inverse.
bool check_conjugacy(const PolyMap& q, const PolyMap& s, const PolyMap& l);

}  // namespace keller
