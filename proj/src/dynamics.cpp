#include "keller/dynamics.hpp"

#include <algorithm>

#include "keller/elimination.hpp"
#include "keller/errors.hpp"
#include "keller/inversion.hpp"
#include "keller/linsolve.hpp"

namespace keller {

PolyMap iterate_map(const PolyMap& q, unsigned t) {
  PolyMap out = PolyMap::identity(q.arity());
  for (unsigned i = 0; i < t; ++i) out = compose_maps(out, q);
  return out;
}

OrderResult detect_order(const PolyMap& q, unsigned t_max, int degree_guard) {
  OrderResult r;
  PolyMap power = q;
  for (unsigned t = 1; t <= t_max; ++t) {
    r.iterations_checked = t;
    if (power.is_identity()) {
      r.order = t;
      return r;
    }
    if (t == t_max) break;
    if (power.degree() > degree_guard) {
      r.degree_guard_hit = true;
      break;
    }
    power = compose_maps(power, q);
  }
  return r;
}

std::string to_string(LocusKind k) {
  switch (k) {
    case LocusKind::empty: return "empty";
    case LocusKind::finite: return "finite";
    case LocusKind::positive_dimensional: return "positive_dimensional";
  }
  return "?";
}

std::string to_string(JordanType j) {
  switch (j) {
    case JordanType::diagonal: return "mu=0";
    case JordanType::jordan_block: return "mu=1";
    case JordanType::irrational: return "irrational";
  }
  return "?";
}

namespace {

void require_plane(const PolyMap& q, const char* who) {
  if (q.arity() != 2) throw StructuralError(std::string(who) + ": map must have arity 2");
}

// Eliminates var from the pair; a member free of var is already an eliminant.
MultiPoly eliminant(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  if (da > 0 && db > 0) return multi_resultant(a, b, var);
  return da == 0 ? a : b;
}

MultiPoly leading_in(const MultiPoly& p, std::size_t var) { return coefficients_in(p, var).back(); }

}  // namespace

FixedLocus fixed_points(const PolyMap& q) {
  require_plane(q, "fixed_points");
  FixedLocus out;
  const MultiPoly d1 = q[0] - MultiPoly::variable(2, 0);
  const MultiPoly d2 = q[1] - MultiPoly::variable(2, 1);

  if (d1.is_zero() && d2.is_zero()) {
    out.kind = LocusKind::positive_dimensional;
    out.defining_polynomials.push_back(MultiPoly(2));
    return out;
  }
  if (d1.is_zero() || d2.is_zero()) {
    const MultiPoly& d = d1.is_zero() ? d2 : d1;
    out.kind = d.is_constant() ? LocusKind::empty : LocusKind::positive_dimensional;
    if (!d.is_constant()) out.defining_polynomials.push_back(integer_normalized(d));
    return out;
  }
  const MultiPoly common = poly_gcd(d1, d2);
  if (!common.is_constant()) {
    out.kind = LocusKind::positive_dimensional;
    out.defining_polynomials.push_back(integer_normalized(common));
    return out;
  }

  const MultiPoly ex = eliminant(d1, d2, 1);
  const MultiPoly ey = eliminant(d1, d2, 0);
  if (ex.is_zero() || ey.is_zero()) throw InternalError("fixed_points: coprime pair with zero eliminant");
  out.defining_polynomials = {integer_normalized(ex), integer_normalized(ey)};
  if (ex.is_constant() || ey.is_constant()) {
    out.kind = LocusKind::empty;
    return out;
  }
  out.complex_solutions = true;
  out.leading_degenerate =
      (d1.degree_in(1) > 0 && d2.degree_in(1) > 0 && !leading_in(d1, 1).is_constant() &&
       !leading_in(d2, 1).is_constant()) ||
      (d1.degree_in(0) > 0 && d2.degree_in(0) > 0 && !leading_in(d1, 0).is_constant() &&
       !leading_in(d2, 0).is_constant());

  auto xs = rational_roots(to_unipoly(ex, 0));
  auto ys = rational_roots(to_unipoly(ey, 1));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      const BigRat pt[] = {a, b};
      if (evaluate(d1, pt) == 0 && evaluate(d2, pt) == 0) out.rational_points.push_back({a, b});
    }
  }
  out.kind = out.rational_points.empty() ? LocusKind::empty : LocusKind::finite;
  return out;
}

LinearClassification classify_affine(const PolyMap& q, unsigned t_max) {
  require_plane(q, "classify_affine");
  if (q.degree() > 1) throw DomainError("classify_affine: map is not affine");
  LinearClassification c;
  for (std::size_t i = 0; i < 2; ++i) {
    c.offset[i] = q[i].constant_term();
    for (std::size_t j = 0; j < 2; ++j) c.matrix[i][j] = q[i].coefficient(Monomial::variable(2, j));
  }
  const auto& m = c.matrix;
  c.trace = m[0][0] + m[1][1];
  c.determinant = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  c.det_is_one = c.determinant == 1;
  c.characteristic = UniPoly(std::vector<BigRat>{c.determinant, -c.trace, BigRat(1)});

  const BigRat disc = c.trace * c.trace - 4 * c.determinant;
  if (auto root = rational_sqrt(disc)) {
    BigRat l1 = (c.trace - *root) / 2;
    BigRat l2 = (c.trace + *root) / 2;
    c.eigenvalues = {l1, l2};
    if (l1 != l2) {
      c.jordan = JordanType::diagonal;
    } else {
      const bool scalar = m[0][1] == 0 && m[1][0] == 0;
      c.jordan = scalar ? JordanType::diagonal : JordanType::jordan_block;
    }
  }

  // (L - I) z = -b.
  RowEliminator sys(2, 1);
  bool ok = true;
  for (std::size_t i = 0; i < 2 && ok; ++i) {
    std::vector<BigRat> row{m[i][0], m[i][1], -c.offset[i]};
    row[i] -= 1;
    ok = sys.add_row(std::move(row));
  }
  if (ok) {
    const auto sol = sys.solve();
    c.has_fixed_point = true;
    c.fixed_point = Point2{(*sol)[0][0], (*sol)[0][1]};
  }
  c.finite_order = detect_order(q, t_max).order;
  return c;
}

PQCheck pq_check(const PolyMap& p, const PolyMap& q) {
  if (p.arity() != q.arity()) throw StructuralError("pq_check: arity mismatch");
  const PolyMap pq = compose_maps(p, q);
  PQCheck out;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    MultiPoly d = pq[i] - p[i];
    if (!d.is_zero()) out.difference.push_back(std::move(d));
  }
  out.identical = out.difference.empty();
  return out;
}

bool check_conjugacy(const PolyMap& q, const PolyMap& s, const PolyMap& l) {
  if (q.arity() != s.arity() || q.arity() != l.arity()) {
    throw StructuralError("check_conjugacy: arity mismatch");
  }
  for (const auto& c : l.components()) {
    if (c.degree() > 1 || c.constant_term() != 0) {
      throw DomainError("check_conjugacy: L must be linear");
    }
  }
  const InverseResult inv = ansatz_inverse(s);
  if (inv.status != InverseStatus::inverse_found) {
    throw DomainError("check_conjugacy: S has no polynomial inverse within the degree bound");
  }
  return compose_maps(*inv.inverse, compose_maps(l, s)) == q;
}

}  // namespace keller
