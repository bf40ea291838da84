#pragma once

// Resultants with polynomial coefficients, multivariate gcd, and the
// annihilating polynomials Phi_i(u1, u2, z) with Phi_i(f, g, x_i) = 0.

#include <vector>

#include "keller/poly.hpp"
#include "keller/unipoly.hpp"

namespace keller {

/// Resultant of p and q with respect to var (fraction-free subresultant
/// PRS). The result lives in the same ring and does not involve var.
/// Throws DomainError when either input has degree 0 in var.
MultiPoly multi_resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var);

/// Pseudo-remainder of a by b in var: lc(b)^(da - db + 1) a mod b.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);

/// Monic (graded lex) greatest common divisor over Q; gcd(0, 0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// Gcd of the coefficients of p with respect to var.
MultiPoly content_in(const MultiPoly& p, std::size_t var);

/// Variable slots of the ring Q[u1, u2, z] that annihilators live in.
inline constexpr std::size_t kU1 = 0;
inline constexpr std::size_t kU2 = 1;
inline constexpr std::size_t kZ = 2;

struct Annihilator {
  /// Coordinate index, 1 or 2.
  unsigned coord = 1;
  /// Polynomial in Q[u1, u2, z], integer coefficients with content 1.
  MultiPoly phi;
  bool squarefree = false;
  bool verified = false;
  int deg_z = 0;
  /// phi = sum_k z_coefficients[k](u1, u2) z^k, each of arity 2.
  std::vector<MultiPoly> z_coefficients;
};

struct AnnihilatorOptions {
  /// Reject maps whose Jacobian is not a nonzero constant. Tests switch this
  /// off to exercise non-Keller maps such as (x^2, y).
  bool require_keller = true;
};

/// Eliminates the other variable from (f - u1, g - u2), renames x_coord to z,
/// strips factors free of z and factors free of (u1, u2), takes the
/// squarefree part in z, and verifies phi(f, g, x_coord) = 0.
Annihilator annihilator(const PolyMap& p, unsigned coord, AnnihilatorOptions options = {});

struct Specialization {
  UniPoly poly;
  /// The leading z-coefficient vanished at (u0, v0).
  bool degree_drop = false;
};

/// Phi(u0, v0, z). Throws DomainError when the result is identically zero.
Specialization specialize(const Annihilator& phi, const BigRat& u0, const BigRat& v0);

/// Same, returning nullopt instead of throwing on a degenerate point.
std::optional<Specialization> try_specialize(const Annihilator& phi, const BigRat& u0,
                                             const BigRat& v0);

/// Names used when printing annihilators: u1, u2, z.
std::vector<std::string> annihilator_variable_names();

}  // namespace keller
