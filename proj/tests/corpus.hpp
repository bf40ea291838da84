#pragma once

// Seeded generators for randomized and acceptance tests: tame plane
// automorphisms, products of certified irreducibles, finite-order affine maps.

#include <random>
#include <string>
#include <vector>

#include "keller/poly.hpp"
#include "keller/unipoly.hpp"

namespace corpus {

using keller::BigInt;
using keller::BigRat;
using keller::MultiPoly;
using keller::PolyMap;
using keller::UniPoly;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline MultiPoly x() { return MultiPoly::variable(2, 0); }
inline MultiPoly y() { return MultiPoly::variable(2, 1); }
inline MultiPoly c(long v) { return MultiPoly::constant(2, v); }

// (x, y + p(x)) with deg p = degree, coefficients in [-height, height].
inline PolyMap elementary(std::mt19937_64& rng, unsigned degree, long height) {
  MultiPoly p(2);
  for (unsigned k = 0; k <= degree; ++k) {
    long a = uniform(rng, -height, height);
    if (k == degree && a == 0) a = uniform(rng, 0, 1) ? height : -height;
    p += c(a) * keller::pow(x(), k);
  }
  return PolyMap({x(), y() + p});
}

// z -> A z + b with A integral, det A = +-1.
inline PolyMap unimodular_affine(std::mt19937_64& rng, long height) {
  while (true) {
    long a = uniform(rng, -height, height), b = uniform(rng, -height, height);
    long d = uniform(rng, -height, height), e = uniform(rng, -height, height);
    const long det = a * e - b * d;
    if (det != 1 && det != -1) continue;
    const long s = uniform(rng, -height, height), t = uniform(rng, -height, height);
    return PolyMap({c(a) * x() + c(b) * y() + c(s), c(d) * x() + c(e) * y() + c(t)});
  }
}

struct TameMap {
  PolyMap map;
  std::vector<std::string> steps;
};

// Composition of 1..max_steps factors, each elementary or affine; the
// product of the elementary degrees is kept <= max_degree_product so the
// composite degree stays at desk scale.
inline TameMap random_tame(std::mt19937_64& rng, int max_steps = 4, unsigned max_p_degree = 3,
                           long height = 3, int max_degree_product = 9) {
  TameMap out{PolyMap::identity(2), {}};
  const int steps = static_cast<int>(uniform(rng, 1, max_steps));
  int product = 1;
  for (int i = 0; i < steps; ++i) {
    PolyMap step;
    const bool elem = uniform(rng, 0, 2) != 0;
    if (elem) {
      unsigned d = static_cast<unsigned>(uniform(rng, 1, max_p_degree));
      while (d > 1 && product * static_cast<int>(d) > max_degree_product) --d;
      product *= static_cast<int>(d);
      step = elementary(rng, d, height);
      out.steps.push_back("elementary deg " + std::to_string(d));
    } else {
      step = unimodular_affine(rng, height);
      out.steps.push_back("affine");
    }
    out.map = keller::compose_maps(step, out.map);
  }
  return out;
}

// Primitive, positive leading coefficient, Eisenstein at some prime p (so
// irreducible over Q), degree 2..4, height <= 10; or a primitive linear
// polynomial.
inline UniPoly certified_irreducible(std::mt19937_64& rng, long height = 10) {
  const int degree = static_cast<int>(uniform(rng, 1, 4));
  if (degree == 1) {
    while (true) {
      const long a = uniform(rng, 1, height), b = uniform(rng, -height, height);
      if (keller::gcd(BigInt(a), BigInt(b)) == 1) return UniPoly{b, a};
    }
  }
  static const long primes[] = {2, 3, 5, 7};
  while (true) {
    const long p = primes[uniform(rng, 0, 3)];
    std::vector<BigRat> coeffs(static_cast<std::size_t>(degree) + 1);
    long lead = 0;
    while (lead == 0 || lead % p == 0) lead = uniform(rng, 1, height);
    coeffs[static_cast<std::size_t>(degree)] = lead;
    for (int k = 1; k < degree; ++k) coeffs[static_cast<std::size_t>(k)] = p * uniform(rng, -height / p, height / p);
    long c0 = 0;
    while (c0 == 0 || c0 % (p * p) == 0) c0 = p * uniform(rng, -height / p, height / p);
    coeffs[0] = c0;
    UniPoly f(std::move(coeffs));
    return keller::content_primitive(f).second;
  }
}

// T of finite order with det 1: -I (2), order 3, order 4, order 6.
inline std::vector<std::array<std::array<long, 2>, 2>> finite_order_blocks() {
  return {{{{-1, 0}, {0, -1}}}, {{{0, -1}, {1, -1}}}, {{{0, -1}, {1, 0}}}, {{{1, -1}, {1, 0}}}};
}

inline const unsigned kBlockOrders[] = {2, 3, 4, 6};

// z -> S^-1 T S z + b with S rational invertible, b rational.
inline PolyMap conjugated_affine(std::mt19937_64& rng, const std::array<std::array<long, 2>, 2>& t) {
  auto rat = [&] { return keller::make_rat(uniform(rng, -3, 3), uniform(rng, 1, 2)); };
  BigRat s[2][2];
  BigRat det;
  do {
    for (auto& row : s) {
      for (auto& e : row) e = rat();
    }
    det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
  } while (det == 0);
  const BigRat inv[2][2] = {{s[1][1] / det, -s[0][1] / det}, {-s[1][0] / det, s[0][0] / det}};
  BigRat ts[2][2], m[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) ts[i][j] = t[i][0] * s[0][j] + t[i][1] * s[1][j];
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m[i][j] = inv[i][0] * ts[0][j] + inv[i][1] * ts[1][j];
  }
  const BigRat b0 = rat(), b1 = rat();
  return PolyMap({m[0][0] * x() + m[0][1] * y() + MultiPoly::constant(2, b0),
                  m[1][0] * x() + m[1][1] * y() + MultiPoly::constant(2, b1)});
}

}  // namespace corpus
