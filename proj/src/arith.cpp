#include "keller/arith.hpp"

#include <algorithm>

#include "keller/errors.hpp"

namespace keller {

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

namespace {

std::vector<std::pair<BigInt, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<BigInt, unsigned>> out;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(BigInt(static_cast<unsigned long>(p)), e);
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (std::uint64_t p = 5; p <= n / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.emplace_back(BigInt(static_cast<unsigned long>(n)), 1u);
  return out;
}

std::vector<std::pair<BigInt, unsigned>> factor_big(BigInt n) {
  std::vector<std::pair<BigInt, unsigned>> out;
  BigInt p = 2;
  while (p * p <= n) {
    if (n.fits_ulong_p()) {
      auto rest = factor_u64(n.get_ui());
      // rest only contains primes >= p, since smaller ones were removed
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
    p += (p == 2) ? 1 : 2;
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n) {
  if (n == 0) throw DomainError("factor_integer: zero has no factorization");
  BigInt m = abs(n);
  if (m.fits_ulong_p()) return factor_u64(m.get_ui());
  return factor_big(m);
}

std::vector<BigInt> divisors(const BigInt& n) {
  if (n == 0) throw DomainError("divisors: n must be nonzero");
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t divisor_count(const BigInt& n) {
  if (n == 0) throw DomainError("divisor_count: n must be nonzero");
  std::uint64_t tau = 1;
  for (const auto& fe : factor_integer(n)) tau *= fe.second + 1;
  return tau;
}

BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("make_rat: zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

BigRat parse_rat(const std::string& text) {
  BigRat q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw DomainError("parse_rat: not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::optional<long> to_long(const BigInt& z) {
  if (!z.fits_slong_p()) return std::nullopt;
  return z.get_si();
}

std::optional<long> to_long(const BigRat& q) {
  if (!is_integer(q)) return std::nullopt;
  return to_long(q.get_num());
}

std::optional<BigRat> rational_sqrt(const BigRat& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  BigInt n = sqrt(q.get_num());
  BigInt d = sqrt(q.get_den());
  return BigRat(n, d);
}

BigInt ipow(const BigInt& base, unsigned exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigRat ipow(const BigRat& base, unsigned exp) {
  return BigRat(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
}

std::string to_string(const BigInt& z) { return z.get_str(); }
std::string to_string(const BigRat& q) { return q.get_str(); }

}  // namespace keller
