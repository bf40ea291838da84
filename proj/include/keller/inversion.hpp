#pragma once

// Polynomial inverses of Keller maps: a bounded-degree ansatz solver (the
// authoritative answer) and the shortcut through annihilators that are
// linear in z.

#include <optional>
#include <string>

#include "keller/poly.hpp"

namespace keller {

enum class InverseStatus { inverse_found, no_inverse_within_bound, not_keller };
enum class InverseCertificate { none, annihilator_degree_one, ansatz };

struct InverseResult {
  InverseStatus status = InverseStatus::no_inverse_within_bound;
  std::optional<PolyMap> inverse;
  InverseCertificate certificate = InverseCertificate::none;
  int degree_bound_used = 0;
  /// Jacobian determinant is a nonzero constant. The solver runs on any
  /// map; non-Keller input is only flagged here.
  bool keller = false;
};

std::string to_string(InverseStatus s);
std::string to_string(InverseCertificate c);

/// deg(P)^(n - 1).
int default_inverse_degree_bound(const PolyMap& p);

/// Solves G(P(x)) = x for G of total degree <= bound (linear in the unknown
/// coefficients), then checks both compositions. A map whose Jacobian
/// vanishes identically is reported as not_keller without solving.
InverseResult ansatz_inverse(const PolyMap& p, std::optional<int> degree_bound = std::nullopt);

/// For a 2-variable Keller map whose annihilators are both linear in z,
/// a1 z + a0, returns G = (-a0/a1 for each coordinate). nullopt when either
/// annihilator has higher degree in z. Throws Anomaly when a quotient is not
/// a polynomial or the result fails to invert P.
std::optional<PolyMap> rational_inverse_from_annihilator(const PolyMap& p);

/// P o G and G o P both equal the identity.
bool verify_inverse(const PolyMap& p, const PolyMap& g);

}  // namespace keller
