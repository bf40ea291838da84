#include "keller/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "keller/errors.hpp"

namespace keller {

UniPoly::UniPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<long> ascending) {
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

UniPoly UniPoly::constant(const BigRat& c) { return UniPoly(std::vector<BigRat>{c}); }

UniPoly UniPoly::linear_root(const BigRat& root) {
  return UniPoly(std::vector<BigRat>{-root, BigRat(1)});
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigRat& UniPoly::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

bool UniPoly::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRat& c) { return is_integer(c); });
}

BigRat UniPoly::operator()(const BigRat& z) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<BigRat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigRat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const BigRat& s) {
  std::vector<BigRat> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("divmod: division by zero polynomial");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<BigRat> r = a.coeffs();
  std::vector<BigRat> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const BigRat inv = BigRat(1) / b.leading();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const std::size_t top = static_cast<std::size_t>(k + b.degree());
    if (r[top] == 0) continue;
    const BigRat f = r[top] * inv;
    q[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < bc.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * bc[j];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly derivative(const UniPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<BigRat> c(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) c[i - 1] = p.coeffs()[i] * static_cast<unsigned long>(i);
  return UniPoly(std::move(c));
}

UniPoly make_monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return p * (BigRat(1) / p.leading());
}

UniPoly pow(const UniPoly& p, unsigned e) {
  UniPoly r = UniPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

std::pair<BigInt, UniPoly> content_primitive(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("content_primitive: zero polynomial");
  if (!p.has_integer_coefficients()) {
    throw DomainError("content_primitive: coefficients must be integers");
  }
  BigInt g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c.get_num());
  if (p.leading() < 0) g = -g;
  return {g, p * (BigRat(1) / BigRat(g))};
}

std::pair<BigRat, UniPoly> rational_content_primitive(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("rational_content_primitive: zero polynomial");
  BigInt den = 1;
  BigInt num = 0;
  for (const auto& c : p.coeffs()) {
    den = lcm(den, c.get_den());
    num = gcd(num, c.get_num());
  }
  BigRat content(num, den);
  content.canonicalize();
  if (p.leading() < 0) content = -content;
  return {content, p * (BigRat(1) / content)};
}

UniPoly uni_gcd(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw DomainError("uni_gcd: both inputs are zero");
  UniPoly a = p;
  UniPoly b = q;
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    // Monic remainders keep the rational coefficients from growing.
    b = make_monic(r);
  }
  return make_monic(a);
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree_part: zero polynomial");
  if (p.degree() == 0) return UniPoly::constant(1);
  const UniPoly g = uni_gcd(p, derivative(p));
  return make_monic(divmod(p, g).first);
}

std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree_decomposition: zero polynomial");
  std::vector<std::pair<UniPoly, unsigned>> out;
  if (p.degree() < 1) return out;
  const UniPoly a = make_monic(p);
  const UniPoly b = derivative(a);
  const UniPoly c = uni_gcd(a, b);
  UniPoly w = divmod(a, c).first;
  UniPoly y = divmod(b, c).first;
  UniPoly z = y - derivative(w);
  for (unsigned i = 1; w.degree() > 0; ++i) {
    UniPoly g = uni_gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - derivative(w);
  }
  return out;
}

std::vector<BigRat> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("rational_roots: zero polynomial");
  std::vector<BigRat> roots;
  auto [content, q] = rational_content_primitive(p);
  (void)content;
  // Strip the z^k factor first so the trailing coefficient is nonzero.
  std::size_t zero_mult = 0;
  while (zero_mult < q.coeffs().size() && q.coeffs()[zero_mult] == 0) ++zero_mult;
  for (std::size_t i = 0; i < zero_mult; ++i) roots.emplace_back(0);
  q = UniPoly(std::vector<BigRat>(q.coeffs().begin() + static_cast<long>(zero_mult), q.coeffs().end()));
  if (q.degree() < 1) return roots;

  const auto num_divs = divisors(q.coeffs().front().get_num());
  const auto den_divs = divisors(q.leading().get_num());
  std::vector<BigRat> candidates;
  for (const auto& d : num_divs) {
    for (const auto& e : den_divs) {
      if (gcd(d, e) != 1) continue;
      candidates.emplace_back(d, e);
      candidates.emplace_back(-d, e);
    }
  }
  for (auto& cand : candidates) cand.canonicalize();
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    while (q.degree() >= 1 && q(r) == 0) {
      roots.push_back(r);
      q = divmod(q, UniPoly::linear_root(r)).first;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<BigInt> integer_roots(const UniPoly& p) {
  std::vector<BigInt> out;
  for (const auto& r : rational_roots(p)) {
    if (is_integer(r)) out.push_back(r.get_num());
  }
  return out;
}

BigRat uni_resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("uni_resultant: zero polynomial");
  // Euclidean recursion:
  //   Res(A, B) = (-1)^(mn) lc(B)^(m - deg R) Res(B, R),  R = A mod B
  //   Res(A, b) = b^m for a constant b.
  UniPoly a = p;
  UniPoly b = q;
  BigRat acc = 1;
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) return acc * ipow(b.leading(), static_cast<unsigned>(m));
    if (m == 0) return acc * ipow(a.leading(), static_cast<unsigned>(n));
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) return 0;
    if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
    acc *= ipow(b.leading(), static_cast<unsigned>(m - r.degree()));
    a = std::move(b);
    b = std::move(r);
  }
}

UniPoly Factorization::expand() const {
  UniPoly r = UniPoly::constant(unit);
  for (const auto& [f, m] : factors) r = r * pow(f, m);
  return r;
}

std::size_t Factorization::factor_count_with_multiplicity() const {
  std::size_t n = 0;
  for (const auto& fm : factors) n += fm.second;
  return n;
}

bool is_irreducible_q(const UniPoly& p) {
  if (p.degree() < 1) throw DomainError("is_irreducible_q: degree must be at least 1");
  if (p.degree() == 1) return true;
  const Factorization f = factor_over_Z(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

UniPoly to_unipoly(const MultiPoly& p, std::size_t var) {
  std::vector<BigRat> c;
  for (const auto& [m, coef] : p.terms()) {
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (i != var && m[i] != 0) {
        throw StructuralError("to_unipoly: polynomial depends on another variable");
      }
    }
    const std::size_t e = m[var];
    if (c.size() <= e) c.resize(e + 1);
    c[e] += coef;
  }
  return UniPoly(std::move(c));
}

MultiPoly to_multipoly(const UniPoly& p, std::size_t arity, std::size_t var) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeffs()[i] == 0) continue;
    terms.emplace_back(Monomial::variable(arity, var, static_cast<unsigned>(i)), p.coeffs()[i]);
  }
  return MultiPoly::from_terms(arity, std::move(terms));
}

std::string to_string(const UniPoly& p, const std::string& var) {
  const std::vector<std::string> names{var};
  return to_string(to_multipoly(p, 1, 0), names);
}

std::string to_string(const Factorization& f, const std::string& var) {
  std::ostringstream os;
  os << f.unit.get_str();
  for (const auto& [g, m] : f.factors) {
    os << " * (" << to_string(g, var) << ")";
    if (m > 1) os << '^' << m;
  }
  return os.str();
}

}  // namespace keller
