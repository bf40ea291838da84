// Univariate factorization over Z (Zassenhaus).
//
//   1. squarefree decomposition over Q (Yun);
//   2. per squarefree part: pick a small prime p with lc(f) != 0 mod p and
//      f mod p squarefree, factor mod p (distinct-degree, then equal-degree
//      splitting with a fixed seed);
//   3. lift the modular factors to p^k > 2 |lc(f)| B with B a Mignotte-type
//      coefficient bound;
//   4. recombine exhaustively over subsets of lifted factors.

#include <algorithm>
#include <cstdint>
#include <random>

#include "keller/errors.hpp"
#include "keller/unipoly.hpp"

namespace keller {

namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<BigInt>;  // ascending, trimmed
using FpPoly = std::vector<u64>;    // ascending, trimmed

// ------------------------------------------------------------ Z[x] helpers

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  ztrim(c);
  return c;
}

// Nonnegative residues mod m.
void zmod(ZPoly& a, const BigInt& m) {
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  ztrim(a);
}

// Symmetric residues in (-m/2, m/2].
ZPoly zsymmetric(ZPoly a, const BigInt& m) {
  const BigInt half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

BigInt zcontent(const ZPoly& a) {
  BigInt g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly zprimitive(ZPoly a) {
  if (a.empty()) return a;
  BigInt g = zcontent(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

std::optional<ZPoly> zdivexact(const ZPoly& a, const ZPoly& b) {
  if (zdeg(a) < zdeg(b)) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1);
  const BigInt& lb = b.back();
  for (int k = zdeg(a) - zdeg(b); k >= 0; --k) {
    BigInt& top = r[static_cast<std::size_t>(k + zdeg(b))];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    const BigInt f = top / lb;
    q[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * b[j];
  }
  ztrim(r);
  if (!r.empty()) return std::nullopt;
  ztrim(q);
  return q;
}

// ------------------------------------------------------------ F_p[x]

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
  }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 reduce(const BigInt& c) const {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    return r.get_ui();
  }
};

void ftrim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fdeg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fmul(const Field& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  ftrim(c);
  return c;
}

FpPoly fsub(const Field& F, const FpPoly& a, const FpPoly& b) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  ftrim(c);
  return c;
}

FpPoly fadd(const Field& F, const FpPoly& a, const FpPoly& b) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  ftrim(c);
  return c;
}

std::pair<FpPoly, FpPoly> fdivmod(const Field& F, const FpPoly& a, const FpPoly& b) {
  if (fdeg(a) < fdeg(b)) return {{}, a};
  FpPoly r = a;
  FpPoly q(a.size() - b.size() + 1, 0);
  const u64 inv = F.inv(b.back());
  for (int k = fdeg(a) - fdeg(b); k >= 0; --k) {
    const u64 top = r[static_cast<std::size_t>(k + fdeg(b))];
    if (top == 0) continue;
    const u64 f = F.mul(top, inv);
    q[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& slot = r[static_cast<std::size_t>(k) + j];
      slot = F.sub(slot, F.mul(f, b[j]));
    }
  }
  ftrim(r);
  ftrim(q);
  return {q, r};
}

FpPoly fmonic(const Field& F, FpPoly a) {
  if (a.empty()) return a;
  const u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

FpPoly fgcd(const Field& F, FpPoly a, FpPoly b) {
  while (!b.empty()) {
    FpPoly r = fdivmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fmonic(F, a);
}

// s*a + t*b = 1 for coprime a, b.
void fext_gcd(const Field& F, const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b;
  FpPoly s0{1}, s1{};
  FpPoly t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fdivmod(F, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = fsub(F, s0, fmul(F, q, s1));
    FpPoly t2 = fsub(F, t0, fmul(F, q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (fdeg(r0) != 0) throw InternalError("fext_gcd: inputs are not coprime");
  const u64 inv = F.inv(r0[0]);
  s = s0;
  t = t0;
  for (auto& c : s) c = F.mul(c, inv);
  for (auto& c : t) c = F.mul(c, inv);
}

FpPoly fderivative(const Field& F, const FpPoly& a) {
  if (a.size() <= 1) return {};
  FpPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(a[i], i % F.p);
  ftrim(d);
  return d;
}

FpPoly fpowmod(const Field& F, FpPoly base, const BigInt& e, const FpPoly& mod) {
  FpPoly result{1};
  base = fdivmod(F, base, mod).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fdivmod(F, fmul(F, result, result), mod).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = fdivmod(F, fmul(F, result, base), mod).second;
  }
  return result;
}

FpPoly to_fp(const Field& F, const ZPoly& a) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.reduce(a[i]);
  ftrim(r);
  return r;
}

ZPoly from_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = BigInt(static_cast<unsigned long>(a[i]));
  return r;
}

// Distinct-degree factorization of a monic squarefree f: (product, degree).
std::vector<std::pair<FpPoly, unsigned>> distinct_degree(const Field& F, FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  const FpPoly x{0, 1};
  FpPoly h = x;
  const BigInt p(static_cast<unsigned long>(F.p));
  for (unsigned d = 1; fdeg(f) >= 2 * static_cast<int>(d); ++d) {
    h = fpowmod(F, h, p, f);
    FpPoly g = fgcd(F, f, fsub(F, h, x));
    if (fdeg(g) > 0) {
      out.emplace_back(g, d);
      f = fdivmod(F, f, g).first;
      h = fdivmod(F, h, f).second;
    }
  }
  if (fdeg(f) > 0) out.emplace_back(fmonic(F, f), static_cast<unsigned>(fdeg(f)));
  return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p).
void equal_degree(const Field& F, const FpPoly& g, unsigned d, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  if (fdeg(g) == static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const BigInt e = (ipow(BigInt(static_cast<unsigned long>(F.p)), d) - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, F.p - 1);
  while (true) {
    FpPoly a(static_cast<std::size_t>(fdeg(g)));
    for (auto& c : a) c = coef(rng);
    ftrim(a);
    if (fdeg(a) < 1) continue;
    FpPoly b = fsub(F, fpowmod(F, a, e, g), FpPoly{1});
    FpPoly h = fgcd(F, g, b);
    if (fdeg(h) > 0 && fdeg(h) < fdeg(g)) {
      equal_degree(F, h, d, rng, out);
      equal_degree(F, fdivmod(F, g, h).first, d, rng, out);
      return;
    }
  }
}

bool is_prime_small(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ------------------------------------------------------------ Hensel

struct Lift {
  ZPoly a;  // monic
  ZPoly b;  // leading coefficient = lc(F) mod M
};

// Lifts F = lc(F) * a * b (mod p) to mod p^k by linear Hensel steps.
Lift hensel_two(const Field& F, const ZPoly& target, const FpPoly& a, const FpPoly& b,
                unsigned k) {
  const BigInt p(static_cast<unsigned long>(F.p));
  const u64 lc_p = F.reduce(target.back());
  FpPoly s, t;
  fext_gcd(F, a, b, s, t);
  // s*a + t'*B = 1 with B = lc * b.
  FpPoly tprime = t;
  const u64 lc_inv = F.inv(lc_p);
  for (auto& c : tprime) c = F.mul(c, lc_inv);

  FpPoly b_lc = b;
  for (auto& c : b_lc) c = F.mul(c, lc_p);

  Lift out{from_fp(a), from_fp(b_lc)};
  BigInt m = p;
  for (unsigned step = 1; step < k; ++step) {
    const BigInt next = m * p;
    out.b.back() = target.back();
    zmod(out.b, next);
    ZPoly err = target;
    const ZPoly ab = zmul(out.a, out.b);
    if (err.size() < ab.size()) err.resize(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) err[i] -= ab[i];
    zmod(err, next);
    for (auto& c : err) {
      if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) {
        throw InternalError("hensel_two: error term not divisible by modulus");
      }
      c /= m;
    }
    const FpPoly e = to_fp(F, err);
    auto [q, r] = fdivmod(F, fmul(F, tprime, e), a);
    const FpPoly da = r;
    const FpPoly db = fadd(F, fmul(F, s, e), fmul(F, q, to_fp(F, out.b)));
    ZPoly dA = from_fp(da), dB = from_fp(db);
    if (out.a.size() < dA.size()) out.a.resize(dA.size());
    if (out.b.size() < dB.size()) out.b.resize(dB.size());
    for (std::size_t i = 0; i < dA.size(); ++i) out.a[i] += m * dA[i];
    for (std::size_t i = 0; i < dB.size(); ++i) out.b[i] += m * dB[i];
    zmod(out.a, next);
    zmod(out.b, next);
    m = next;
  }
  return out;
}

std::vector<ZPoly> hensel_lift(const Field& F, const ZPoly& f, const std::vector<FpPoly>& factors,
                               unsigned k, const BigInt& modulus) {
  std::vector<ZPoly> lifted;
  ZPoly current = f;
  zmod(current, modulus);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    FpPoly rest{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = fmul(F, rest, factors[j]);
    Lift l = hensel_two(F, current, factors[i], rest, k);
    lifted.push_back(std::move(l.a));
    current = std::move(l.b);
  }
  // Last factor: make monic modulo p^k.
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), current.back().get_mpz_t(), modulus.get_mpz_t());
  for (auto& c : current) c *= inv;
  zmod(current, modulus);
  lifted.push_back(std::move(current));
  return lifted;
}

// ------------------------------------------------------------ Zassenhaus

// Coefficient bound on factors of f times 2|lc|, so that symmetric residues
// modulo anything larger recover true factors.
BigInt lifting_bound(const ZPoly& f) {
  BigInt norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  const BigInt norm = sqrt(norm2) + 1;
  return 2 * abs(f.back()) * ipow(BigInt(2), static_cast<unsigned>(zdeg(f))) * norm;
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = zdeg(f);
  if (n <= 1) return {f};

  // Prime choice: among the first few suitable primes, the one giving the
  // fewest modular factors.
  std::optional<Field> best;
  std::vector<std::pair<FpPoly, unsigned>> best_ddf;
  std::size_t best_count = 0;
  int suitable = 0;
  for (u64 p = 3; suitable < 5 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    const Field F{p};
    if (F.reduce(f.back()) == 0) continue;
    const FpPoly fp = fmonic(F, to_fp(F, f));
    if (fdeg(fgcd(F, fp, fderivative(F, fp))) > 0) continue;
    ++suitable;
    auto ddf = distinct_degree(F, fp);
    std::size_t count = 0;
    for (const auto& [g, d] : ddf) count += static_cast<std::size_t>(fdeg(g)) / d;
    if (!best || count < best_count) {
      best = F;
      best_ddf = std::move(ddf);
      best_count = count;
    }
    if (count == 1) break;
  }
  if (!best) throw InternalError("zassenhaus: no suitable prime found");
  if (best_count == 1) return {f};

  const Field& F = *best;
  std::mt19937_64 rng(0x6b656c6c6572ULL);
  std::vector<FpPoly> modular;
  for (const auto& [g, d] : best_ddf) equal_degree(F, g, d, rng, modular);
  std::sort(modular.begin(), modular.end());

  const BigInt p(static_cast<unsigned long>(F.p));
  const BigInt bound = lifting_bound(f);
  unsigned k = 1;
  BigInt modulus = p;
  while (modulus <= bound) {
    modulus *= p;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_lift(F, f, modular, k, modulus);

  std::vector<ZPoly> found;
  ZPoly rest = f;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  std::size_t size = 1;
  while (2 * size <= alive.size()) {
    bool hit = false;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      ZPoly cand{rest.back()};
      for (std::size_t i : pick) {
        cand = zmul(cand, lifted[alive[i]]);
        zmod(cand, modulus);
      }
      cand = zprimitive(zsymmetric(cand, modulus));
      const bool constant_ok =
          rest.front() == 0 || cand.front() == 0 ||
          mpz_divisible_p(rest.front().get_mpz_t(), cand.front().get_mpz_t());
      std::optional<ZPoly> quotient;
      if (constant_ok && zdeg(cand) >= 1) quotient = zdivexact(rest, cand);
      if (quotient) {
        found.push_back(cand);
        rest = std::move(*quotient);
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < alive.size(); ++i) {
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(alive[i]);
        }
        alive = std::move(next);
        hit = true;
        break;
      }
      // next combination in lexicographic order
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == alive.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!hit) ++size;
  }
  if (zdeg(rest) >= 1) found.push_back(zprimitive(rest));
  return found;
}

ZPoly to_zpoly(const UniPoly& p) {
  ZPoly r;
  for (const auto& c : p.coeffs()) r.push_back(c.get_num());
  return r;
}

UniPoly from_zpoly(const ZPoly& p) {
  std::vector<BigRat> c;
  for (const auto& x : p) c.emplace_back(x);
  return UniPoly(std::move(c));
}

}  // namespace

Factorization factor_over_Z(const UniPoly& p) {
  if (p.degree() < 1) throw DomainError("factor_over_Z: degree must be at least 1");
  Factorization out;
  for (const auto& [g, mult] : squarefree_decomposition(p)) {
    const UniPoly prim = rational_content_primitive(g).second;
    for (const ZPoly& h : zassenhaus(to_zpoly(prim))) {
      out.factors.emplace_back(from_zpoly(h), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    if (a.first.coeffs() != b.first.coeffs()) {
      return std::lexicographical_compare(a.first.coeffs().rbegin(), a.first.coeffs().rend(),
                                          b.first.coeffs().rbegin(), b.first.coeffs().rend());
    }
    return a.second < b.second;
  });
  BigRat lead = 1;
  for (const auto& [f, m] : out.factors) lead *= ipow(f.leading(), m);
  out.unit = p.leading() / lead;
  return out;
}

}  // namespace keller
