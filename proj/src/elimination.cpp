#include "keller/elimination.hpp"

#include <algorithm>

#include "keller/errors.hpp"

namespace keller {

namespace {

MultiPoly var_power(std::size_t arity, std::size_t var, unsigned e) {
  return MultiPoly::monomial(Monomial::variable(arity, var, e), 1);
}

MultiPoly leading_coefficient_in(const MultiPoly& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  return coeffs.empty() ? MultiPoly(p.arity()) : coeffs.back();
}

MultiPoly exact(const MultiPoly& p, const MultiPoly& d, const char* where) {
  auto q = divide_exact(p, d);
  if (!q) throw InternalError(std::string(where) + ": expected exact division");
  return std::move(*q);
}

// phi(u1, u2, z) is squarefree in z if some specialization keeping the
// z-degree is: a repeated factor A^2 with deg_z A > 0 would survive it.
bool certified_squarefree_in_z(const MultiPoly& phi, std::size_t z) {
  const int d = phi.degree_in(z);
  std::vector<MultiPoly> coeffs = coefficients_in(phi, z);
  static const long samples[][2] = {{2, 3}, {-3, 5}, {7, -2}, {-5, -11}, {13, 4}, {-17, 19}};
  for (const auto& pt : samples) {
    std::vector<BigRat> point(phi.arity(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < phi.arity() && k < 2; ++i) {
      if (i != z) point[i] = pt[k++];
    }
    std::vector<BigRat> c;
    for (const auto& m : coeffs) c.push_back(evaluate(m, point));
    const UniPoly s(std::move(c));
    if (s.degree() != d) continue;
    if (uni_gcd(s, derivative(s)).degree() == 0) return true;
  }
  return false;
}

}  // namespace

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  const int db = b.degree_in(var);
  if (db < 0) throw DomainError("pseudo_remainder: division by zero polynomial");
  int da = a.degree_in(var);
  if (da < db) return a;
  const MultiPoly lcb = leading_coefficient_in(b, var);
  unsigned pending = static_cast<unsigned>(da - db + 1);
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    const MultiPoly lr = leading_coefficient_in(r, var);
    r = lcb * r - lr * b * var_power(a.arity(), var, static_cast<unsigned>(dr - db));
    --pending;
  }
  if (pending > 0) r *= pow(lcb, pending);
  return r;
}

MultiPoly multi_resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.arity() != q.arity()) throw StructuralError("multi_resultant: arity mismatch");
  if (p.degree_in(var) <= 0 || q.degree_in(var) <= 0) {
    throw DomainError("multi_resultant: both inputs need positive degree in the variable");
  }
  const std::size_t n = p.arity();
  MultiPoly a = p;
  MultiPoly b = q;
  int sign = 1;
  if (a.degree_in(var) < b.degree_in(var)) {
    std::swap(a, b);
    if (a.degree_in(var) % 2 == 1 && b.degree_in(var) % 2 == 1) sign = -sign;
  }
  MultiPoly g = MultiPoly::constant(n, 1);
  MultiPoly h = MultiPoly::constant(n, 1);
  while (true) {
    const int da = a.degree_in(var);
    const int db = b.degree_in(var);
    const unsigned delta = static_cast<unsigned>(da - db);
    if (da % 2 == 1 && db % 2 == 1) sign = -sign;
    MultiPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return MultiPoly(n);
    a = std::move(b);
    b = exact(r, g * pow(h, delta), "multi_resultant");
    g = leading_coefficient_in(a, var);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact(pow(g, delta), pow(h, delta - 1), "multi_resultant");
    }
    if (b.degree_in(var) == 0) break;
  }
  const unsigned da = static_cast<unsigned>(a.degree_in(var));
  MultiPoly res = da == 1 ? b : exact(pow(b, da), pow(h, da - 1), "multi_resultant");
  return sign < 0 ? -res : res;
}

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  MultiPoly c(p.arity());
  for (const auto& coeff : coefficients_in(p, var)) {
    if (coeff.is_zero()) continue;
    if (coeff.is_constant()) return MultiPoly::constant(p.arity(), 1);
    c = poly_gcd(c, coeff);
    if (c.is_constant()) return c;
  }
  return c;
}

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) throw StructuralError("poly_gcd: arity mismatch");
  const std::size_t n = a.arity();
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, 1);

  std::size_t v = n;
  for (std::size_t i = n; i-- > 0;) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      v = i;
      break;
    }
  }
  if (a.degree_in(v) == 0) return poly_gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return poly_gcd(content_in(a, v), b);

  const MultiPoly ca = content_in(a, v);
  const MultiPoly cb = content_in(b, v);
  const MultiPoly c = poly_gcd(ca, cb);
  MultiPoly x = exact(a, ca, "poly_gcd");
  MultiPoly y = exact(b, cb, "poly_gcd");
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  MultiPoly g;
  while (true) {
    MultiPoly r = pseudo_remainder(x, y, v);
    if (r.is_zero()) {
      g = y;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = MultiPoly::constant(n, 1);
      break;
    }
    x = std::move(y);
    y = exact(r, content_in(r, v), "poly_gcd");
  }
  return monic(c * exact(g, content_in(g, v), "poly_gcd"));
}

std::vector<std::string> annihilator_variable_names() { return {"u1", "u2", "z"}; }

Annihilator annihilator(const PolyMap& p, unsigned coord, AnnihilatorOptions options) {
  if (p.arity() != 2) throw StructuralError("annihilator: map must have arity 2");
  if (coord != 1 && coord != 2) throw StructuralError("annihilator: coord must be 1 or 2");
  if (options.require_keller && !is_keller(p).keller) {
    throw DomainError("annihilator: the map is not a Keller map");
  }

  // Working ring Q[x, y, u1, u2].
  constexpr std::size_t kX = 0, kY = 1, kW1 = 2, kW2 = 3;
  const std::size_t lift[] = {kX, kY};
  const MultiPoly f = p[0].reindexed(4, lift) - MultiPoly::variable(4, kW1);
  const MultiPoly g = p[1].reindexed(4, lift) - MultiPoly::variable(4, kW2);
  const std::size_t eliminate = coord == 1 ? kY : kX;
  const std::size_t keep = coord == 1 ? kX : kY;

  MultiPoly res;
  const int df = f.degree_in(eliminate);
  const int dg = g.degree_in(eliminate);
  if (df > 0 && dg > 0) {
    res = multi_resultant(f, g, eliminate);
  } else if (df == 0 && dg == 0) {
    throw InputInconsistency("annihilator: neither component involves the eliminated variable");
  } else {
    // A component free of the eliminated variable already annihilates.
    res = df == 0 ? f : g;
  }
  if (res.is_zero()) {
    throw InputInconsistency(
        "annihilator: resultant vanishes identically; f - u1 and g - u2 share a factor");
  }

  std::size_t to_ring3[4];
  to_ring3[kX] = 0;
  to_ring3[kY] = 0;
  to_ring3[keep] = kZ;
  to_ring3[kW1] = kU1;
  to_ring3[kW2] = kU2;
  MultiPoly phi = res.reindexed(3, to_ring3);

  // Factors free of (u1, u2) never vanish on (f, g, x_i): drop them.
  {
    std::map<std::pair<unsigned, unsigned>, std::vector<MultiPoly::Term>> by_u;
    for (const auto& [m, c] : phi.terms()) {
      by_u[{m[kU1], m[kU2]}].emplace_back(Monomial::variable(3, kZ, m[kZ]), c);
    }
    UniPoly common;
    bool first = true;
    for (auto& [key, terms] : by_u) {
      UniPoly piece = to_unipoly(MultiPoly::from_terms(3, std::move(terms)), kZ);
      common = first ? make_monic(piece) : uni_gcd(common, piece);
      first = false;
      if (common.degree() == 0) break;
    }
    if (common.degree() > 0) phi = exact(phi, to_multipoly(common, 3, kZ), "annihilator");
  }
  // Primitive part with respect to z.
  phi = exact(phi, content_in(phi, kZ), "annihilator");
  // Squarefree part with respect to z.
  if (!certified_squarefree_in_z(phi, kZ)) {
    const MultiPoly repeated = poly_gcd(phi, partial_derivative(phi, kZ));
    if (!repeated.is_constant()) phi = exact(phi, repeated, "annihilator");
  }
  phi = integer_normalized(phi);
  // Sign convention: the top z-coefficient has a positive leading coefficient.
  if (const auto top = coefficients_in(phi, kZ); !top.empty() && !top.back().is_zero() &&
                                                  top.back().leading_term().second < 0) {
    phi = -phi;
  }

  Annihilator out;
  out.coord = coord;
  out.phi = phi;
  out.squarefree = true;
  out.deg_z = phi.degree_in(kZ);
  if (out.deg_z < 1) {
    throw InputInconsistency("annihilator: the components are algebraically dependent");
  }

  const std::map<std::size_t, MultiPoly> bindings{
      {kU1, p[0]}, {kU2, p[1]}, {kZ, MultiPoly::variable(2, coord - 1)}};
  if (!substitute(phi, bindings, 2).is_zero()) {
    throw InternalError("annihilator: phi(f, g, x) does not vanish");
  }
  out.verified = true;

  const std::size_t drop_z[] = {0, 1, 0};
  for (const auto& c : coefficients_in(phi, kZ)) out.z_coefficients.push_back(c.reindexed(2, drop_z));
  return out;
}

std::optional<Specialization> try_specialize(const Annihilator& phi, const BigRat& u0,
                                             const BigRat& v0) {
  const BigRat point[] = {u0, v0};
  std::vector<BigRat> coeffs;
  coeffs.reserve(phi.z_coefficients.size());
  for (const auto& c : phi.z_coefficients) coeffs.push_back(evaluate(c, point));
  Specialization s{UniPoly(std::move(coeffs)), false};
  if (s.poly.is_zero()) return std::nullopt;
  s.degree_drop = s.poly.degree() < phi.deg_z;
  return s;
}

Specialization specialize(const Annihilator& phi, const BigRat& u0, const BigRat& v0) {
  if (!phi.verified) throw DomainError("specialize: annihilator is not verified");
  auto s = try_specialize(phi, u0, v0);
  if (!s) {
    throw DomainError("specialize: degenerate specialization (identically zero) at (" +
                      u0.get_str() + ", " + v0.get_str() + ")");
  }
  return std::move(*s);
}

}  // namespace keller
