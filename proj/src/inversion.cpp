#include "keller/inversion.hpp"

#include <algorithm>
#include <map>

#include "keller/elimination.hpp"
#include "keller/errors.hpp"
#include "keller/linsolve.hpp"

namespace keller {

std::string to_string(InverseStatus s) {
  switch (s) {
    case InverseStatus::inverse_found: return "inverse_found";
    case InverseStatus::no_inverse_within_bound: return "no_inverse_within_bound";
    case InverseStatus::not_keller: return "not_keller";
  }
  return "?";
}

std::string to_string(InverseCertificate c) {
  switch (c) {
    case InverseCertificate::none: return "none";
    case InverseCertificate::annihilator_degree_one: return "annihilator-degree-1";
    case InverseCertificate::ansatz: return "ansatz";
  }
  return "?";
}

int default_inverse_degree_bound(const PolyMap& p) {
  const int d = std::max(p.degree(), 1);
  int bound = 1;
  for (std::size_t i = 1; i < p.arity(); ++i) bound *= d;
  return bound;
}

InverseResult ansatz_inverse(const PolyMap& p, std::optional<int> degree_bound) {
  const std::size_t n = p.arity();
  if (n == 0) throw StructuralError("ansatz_inverse: empty map");
  InverseResult result;
  const KellerCheck kc = is_keller(p);
  result.keller = kc.keller;
  const int bound = degree_bound.value_or(default_inverse_degree_bound(p));
  if (bound < 1) throw DomainError("ansatz_inverse: degree bound must be positive");
  result.degree_bound_used = bound;
  if (kc.jacobian.is_zero()) {
    result.status = InverseStatus::not_keller;
    return result;
  }

  // Column k holds P^m_k; powers are built from smaller ones one factor at
  // a time.
  const auto monos = monomials_up_to(n, static_cast<unsigned>(bound));
  std::vector<MultiPoly> columns;
  columns.reserve(monos.size());
  std::map<Monomial, std::size_t> index;
  for (const auto& m : monos) {
    std::size_t i = 0;
    while (i < n && m[i] == 0) ++i;
    if (i == n) {
      columns.push_back(MultiPoly::constant(n, 1));
    } else {
      Monomial prev = m;
      prev.set(i, m[i] - 1);
      columns.push_back(columns[index.at(prev)] * p[i]);
    }
    index.emplace(m, columns.size() - 1);
  }

  // Row r of the system: coefficient of x^r in sum_k c_k P^m_k = x_j.
  std::map<Monomial, std::vector<std::pair<std::size_t, BigRat>>> rows;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    for (const auto& [m, c] : columns[k].terms()) rows[m].emplace_back(k, c);
  }
  const std::size_t cols = columns.size();
  RowEliminator elim(cols, n);
  for (const auto& [m, entries] : rows) {
    std::vector<BigRat> row(cols + n);
    for (const auto& [k, c] : entries) row[k] = c;
    if (m.total_degree() == 1) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m[j] == 1) row[cols + j] = 1;
      }
    }
    if (!elim.add_row(std::move(row))) {
      result.status = InverseStatus::no_inverse_within_bound;
      return result;
    }
    // Full column rank pins down the only candidate; the composition check
    // below covers the rows not yet read.
    if (elim.full_rank()) break;
  }
  // A right-hand side x_j whose monomial never appears in any column.
  for (std::size_t j = 0; j < n; ++j) {
    if (!rows.count(Monomial::variable(n, j))) {
      result.status = InverseStatus::no_inverse_within_bound;
      return result;
    }
  }

  const auto solution = elim.solve();
  if (!solution) {
    result.status = InverseStatus::no_inverse_within_bound;
    return result;
  }
  std::vector<MultiPoly> comps;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<MultiPoly::Term> terms;
    for (std::size_t k = 0; k < cols; ++k) {
      if ((*solution)[j][k] != 0) terms.emplace_back(monos[k], (*solution)[j][k]);
    }
    comps.push_back(MultiPoly::from_terms(n, std::move(terms)));
  }
  PolyMap g(std::move(comps));
  if (!verify_inverse(p, g)) {
    result.status = InverseStatus::no_inverse_within_bound;
    return result;
  }
  result.status = InverseStatus::inverse_found;
  result.inverse = std::move(g);
  result.certificate = InverseCertificate::ansatz;
  return result;
}

std::optional<PolyMap> rational_inverse_from_annihilator(const PolyMap& p) {
  if (p.arity() != 2) throw StructuralError("rational_inverse_from_annihilator: arity must be 2");
  std::vector<MultiPoly> comps;
  for (unsigned coord = 1; coord <= 2; ++coord) {
    const Annihilator a = annihilator(p, coord);
    if (a.deg_z != 1) return std::nullopt;
    const MultiPoly& a0 = a.z_coefficients[0];
    const MultiPoly& a1 = a.z_coefficients[1];
    if (a1.is_zero()) throw InternalError("rational_inverse_from_annihilator: a1 vanishes");
    auto q = divide_exact(-a0, a1);
    if (!q) {
      throw Anomaly("rational_inverse_from_annihilator: -a0/a1 is not a polynomial for a Keller map");
    }
    comps.push_back(std::move(*q));
  }
  PolyMap g(std::move(comps));
  if (!verify_inverse(p, g)) {
    throw Anomaly("rational_inverse_from_annihilator: extracted map does not invert P");
  }
  return g;
}

bool verify_inverse(const PolyMap& p, const PolyMap& g) {
  if (p.arity() != g.arity()) return false;
  return compose_maps(p, g).is_identity() && compose_maps(g, p).is_identity();
}

}  // namespace keller
