#include "keller/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "keller/errors.hpp"

namespace keller {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t arity) {
  if (arity > kMaxVars) {
    throw StructuralError("monomial arity " + std::to_string(arity) + " exceeds " +
                          std::to_string(kMaxVars));
  }
  arity_ = static_cast<std::uint8_t>(arity);
}

Monomial::Monomial(std::initializer_list<unsigned> exponents) : Monomial(exponents.size()) {
  std::size_t i = 0;
  for (unsigned e : exponents) set(i++, e);
}

Monomial Monomial::variable(std::size_t arity, std::size_t var, unsigned power) {
  Monomial m(arity);
  m.set(var, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= arity_) throw StructuralError("monomial index out of range");
  if (e > std::numeric_limits<std::uint16_t>::max()) {
    throw StructuralError("exponent too large");
  }
  degree_ = degree_ - exp_[i] + e;
  exp_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < arity_; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < arity_; ++i) {
    const unsigned e = unsigned(exp_[i]) + other.exp_[i];
    if (e > std::numeric_limits<std::uint16_t>::max()) {
      throw StructuralError("exponent overflow in monomial product");
    }
    r.exp_[i] = static_cast<std::uint16_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < arity_; ++i) r.exp_[i] = exp_[i] - other.exp_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  for (std::size_t i = 0; i < a.arity_; ++i) {
    if (a.exp_[i] != b.exp_[i]) return a.exp_[i] <=> b.exp_[i];
  }
  return std::strong_ordering::equal;
}

// --------------------------------------------------------------- MultiPoly

namespace {

using Term = MultiPoly::Term;

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto c = a[i].first <=> b[j].first;
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      BigRat s = a[i].second + b[j].second;
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

}  // namespace

MultiPoly::MultiPoly(std::size_t arity) : arity_(arity) {
  if (arity > kMaxVars) {
    throw StructuralError("polynomial arity " + std::to_string(arity) + " exceeds " +
                          std::to_string(kMaxVars));
  }
}

MultiPoly MultiPoly::constant(std::size_t arity, const BigRat& c) {
  MultiPoly p(arity);
  if (c != 0) p.terms_.emplace_back(Monomial(arity), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t var) {
  if (var >= arity) throw StructuralError("variable index out of range");
  MultiPoly p(arity);
  p.terms_.emplace_back(Monomial::variable(arity, var), BigRat(1));
  return p;
}

MultiPoly MultiPoly::monomial(const Monomial& m, const BigRat& c) {
  MultiPoly p(m.arity());
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t arity, std::vector<Term> terms) {
  MultiPoly p(arity);
  for (const auto& t : terms) {
    if (t.first.arity() != arity) throw StructuralError("term arity mismatch");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

int MultiPoly::degree() const {
  return terms_.empty() ? kZeroDegree : static_cast<int>(terms_.back().first.total_degree());
}

int MultiPoly::degree_in(std::size_t var) const {
  if (var >= arity_) throw StructuralError("degree_in: variable index out of range");
  int d = kZeroDegree;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[var]));
  return d;
}

BigRat MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

BigRat MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
  return 0;
}

const MultiPoly::Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading_term of the zero polynomial");
  return terms_.back();
}

void MultiPoly::check_arity(const MultiPoly& other, const char* op) const {
  if (arity_ != other.arity_) {
    throw StructuralError(std::string(op) + ": arity mismatch (" + std::to_string(arity_) +
                          " vs " + std::to_string(other.arity_) + ")");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_arity(other, "add");
  terms_ = merge_add(terms_, other.terms_);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_arity(other, "sub");
  terms_ = merge_add(terms_, (-other).terms_);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRat& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b, "mul");
  MultiPoly out(a.arity_);
  if (a.is_zero() || b.is_zero()) return out;
  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& big = a.size() <= b.size() ? b : a;

  // Shifting a sorted term list by a monomial keeps it sorted, so the
  // product is a merge of |small| sorted runs.
  std::vector<std::vector<Term>> runs;
  runs.reserve(small.size());
  for (const auto& [m, c] : small.terms_) {
    std::vector<Term> run;
    run.reserve(big.size());
    for (const auto& [bm, bc] : big.terms_) run.emplace_back(bm * m, bc * c);
    runs.push_back(std::move(run));
  }
  while (runs.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((runs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
      next.push_back(merge_add(runs[i], runs[i + 1]));
    }
    if (runs.size() % 2 == 1) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  out.terms_ = std::move(runs.front());
  return out;
}

MultiPoly MultiPoly::shifted(const Monomial& m) const {
  if (m.arity() != arity_) throw StructuralError("shifted: arity mismatch");
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

MultiPoly MultiPoly::reindexed(std::size_t target_arity,
                               std::span<const std::size_t> mapping) const {
  if (mapping.size() != arity_) throw StructuralError("reindexed: mapping size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial nm(target_arity);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (m[i] == 0) continue;
      if (mapping[i] >= target_arity) throw StructuralError("reindexed: target index out of range");
      nm.set(mapping[i], nm[mapping[i]] + m[i]);
    }
    out.emplace_back(nm, c);
  }
  return from_terms(target_arity, std::move(out));
}

MultiPoly pow(const MultiPoly& p, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(p.arity(), 1);
  MultiPoly base = p;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned bound) {
  std::vector<Monomial> out;
  // Odometer over [0, bound]^n, keeping total degree <= bound.
  std::vector<unsigned> e(n, 0);
  while (true) {
    unsigned total = 0;
    for (unsigned v : e) total += v;
    if (total <= bound) {
      Monomial m(n);
      for (std::size_t i = 0; i < n; ++i) m.set(i, e[i]);
      out.push_back(m);
    }
    std::size_t i = 0;
    while (i < n && ++e[i] > bound) e[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigRat evaluate(const MultiPoly& p, std::span<const BigRat> point) {
  if (point.size() != p.arity()) {
    throw StructuralError("evaluate: point has " + std::to_string(point.size()) +
                          " coordinates, polynomial arity is " + std::to_string(p.arity()));
  }
  // Cache powers per variable; terms are few and degrees small.
  std::vector<std::vector<BigRat>> powers(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) powers[i].push_back(BigRat(1));
  BigRat sum = 0;
  BigRat term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      const unsigned e = m[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

namespace {

struct Substituter {
  const std::vector<MultiPoly>& images;
  std::size_t target_arity;
  std::vector<std::map<unsigned, MultiPoly>> power_cache;

  const MultiPoly& power(std::size_t var, unsigned e) {
    auto& cache = power_cache[var];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    MultiPoly value = (e == 1) ? images[var] : pow(images[var], e);
    return cache.emplace(e, std::move(value)).first->second;
  }

  // Horner evaluation in images[var], recursing on the remaining variables.
  MultiPoly run(const std::vector<Term>& terms, std::size_t var) {
    if (terms.empty()) return MultiPoly(target_arity);
    if (var == images.size()) {
      BigRat s = 0;
      for (const auto& t : terms) s += t.second;
      return MultiPoly::constant(target_arity, s);
    }
    std::map<unsigned, std::vector<Term>, std::greater<>> groups;
    for (const auto& t : terms) groups[t.first[var]].push_back(t);
    MultiPoly acc(target_arity);
    std::optional<unsigned> prev;
    for (auto& [e, group] : groups) {
      if (prev) acc *= power(var, *prev - e);
      acc += run(group, var + 1);
      prev = e;
    }
    if (*prev > 0) acc *= power(var, *prev);
    return acc;
  }
};

}  // namespace

MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings,
                     std::size_t target_arity) {
  std::vector<MultiPoly> images;
  images.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) {
    auto it = bindings.find(i);
    if (it != bindings.end()) {
      if (it->second.arity() != target_arity) {
        throw StructuralError("substitute: replacement arities are inconsistent");
      }
      images.push_back(it->second);
    } else {
      if (i >= target_arity) {
        throw StructuralError("substitute: unbound variable has no slot in the target ring");
      }
      images.push_back(MultiPoly::variable(target_arity, i));
    }
  }
  for (const auto& [var, img] : bindings) {
    if (var >= p.arity()) throw StructuralError("substitute: binding for unknown variable");
  }
  Substituter s{images, target_arity, std::vector<std::map<unsigned, MultiPoly>>(p.arity())};
  return s.run(p.terms(), 0);
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& bindings) {
  std::size_t target = p.arity();
  if (!bindings.empty()) target = bindings.begin()->second.arity();
  return substitute(p, bindings, target);
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
  if (var >= p.arity()) throw StructuralError("partial_derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m[var];
    if (e == 0) continue;
    Monomial nm = m;
    nm.set(var, e - 1);
    out.emplace_back(nm, c * e);
  }
  return MultiPoly::from_terms(p.arity(), std::move(out));
}

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d) {
  if (d.is_zero()) throw DomainError("divide_exact: division by zero polynomial");
  if (p.arity() != d.arity()) throw StructuralError("divide_exact: arity mismatch");
  const auto& [dm, dc] = d.leading_term();
  std::vector<Term> quotient;
  MultiPoly r = p;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading_term();
    if (!dm.divides(rm)) return std::nullopt;
    const Monomial qm = rm / dm;
    const BigRat qc = rc / dc;
    r -= d.shifted(qm) * qc;
    quotient.emplace_back(qm, qc);
  }
  return MultiPoly::from_terms(p.arity(), std::move(quotient));
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  const int deg = p.degree_in(var);
  if (deg < 0) return {};
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    nm.set(var, 0);
    buckets[m[var]].emplace_back(nm, c);
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.arity(), std::move(b)));
  return out;
}

MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, std::size_t var,
                            std::size_t arity) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].arity() != arity) throw StructuralError("from_coefficients: arity mismatch");
    for (const auto& [m, c] : coeffs[k].terms()) {
      Monomial nm = m;
      nm.set(var, m[var] + static_cast<unsigned>(k));
      out.emplace_back(nm, c);
    }
  }
  return MultiPoly::from_terms(arity, std::move(out));
}

MultiPoly integer_normalized(const MultiPoly& p) {
  if (p.is_zero()) return p;
  BigInt den = 1;
  BigInt num = 0;
  for (const auto& t : p.terms()) {
    den = lcm(den, t.second.get_den());
    num = gcd(num, t.second.get_num());
  }
  BigRat scale(den, num);
  scale.canonicalize();
  if (p.leading_term().second < 0) scale = -scale;
  return p * scale;
}

MultiPoly monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * (BigRat(1) / p.leading_term().second);
}

std::vector<std::string> default_variable_names(std::size_t arity) {
  if (arity == 1) return {"x"};
  if (arity == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (names.size() < p.arity()) throw StructuralError("to_string: not enough variable names");
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const BigRat mag = abs(c);
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << '*';
      os << names[i];
      if (m[i] > 1) os << '^' << m[i];
      need_star = true;
    }
  }
  return os.str();
}

std::string to_string(const MultiPoly& p) {
  const auto names = default_variable_names(p.arity());
  return to_string(p, names);
}

// ----------------------------------------------------------------- PolyMap

PolyMap::PolyMap(std::vector<MultiPoly> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.arity() != components_.size()) {
      throw StructuralError("PolyMap: component arity " + std::to_string(c.arity()) +
                            " does not match component count " +
                            std::to_string(components_.size()));
    }
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(MultiPoly::variable(n, i));
  return PolyMap(std::move(comps));
}

int PolyMap::degree() const {
  int d = kZeroDegree;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

bool PolyMap::is_identity() const { return *this == identity(arity()); }

std::vector<BigRat> PolyMap::operator()(std::span<const BigRat> point) const {
  std::vector<BigRat> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(evaluate(c, point));
  return out;
}

PolyMap compose_maps(const PolyMap& p, const PolyMap& q) {
  if (p.arity() != q.arity()) throw StructuralError("compose_maps: arity mismatch");
  std::map<std::size_t, MultiPoly> bindings;
  for (std::size_t i = 0; i < q.arity(); ++i) bindings.emplace(i, q[i]);
  std::vector<MultiPoly> comps;
  comps.reserve(p.arity());
  for (const auto& c : p.components()) comps.push_back(substitute(c, bindings, q.arity()));
  return PolyMap(std::move(comps));
}

MultiPoly jacobian_det(const PolyMap& p) {
  const std::size_t n = p.arity();
  if (n == 0) return MultiPoly::constant(0, 1);
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = partial_derivative(p[i], j);
  }
  // Fraction-free (Bareiss) elimination; every division is exact.
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(n, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(n);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw InternalError("jacobian_det: inexact Bareiss division");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

KellerCheck is_keller(const PolyMap& p) {
  KellerCheck out;
  out.jacobian = jacobian_det(p);
  if (out.jacobian.is_constant()) {
    out.constant = out.jacobian.constant_term();
    out.keller = *out.constant != 0;
  }
  return out;
}

std::string to_string(const PolyMap& p, std::span<const std::string> names) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (i) s += ", ";
    s += to_string(p[i], names);
  }
  return s + ")";
}

std::string to_string(const PolyMap& p) {
  const auto names = default_variable_names(p.arity());
  return to_string(p, names);
}

}  // namespace keller
