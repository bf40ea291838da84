#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "keller/errors.hpp"
#include "keller/unipoly.hpp"
#include "oracles.hpp"

using namespace keller;

TEST_CASE("factorization examples") {
  const auto f1 = factor_over_Z(UniPoly{-1, 0, 1});
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.unit == 1);
  CHECK(f1.factors[0].first == UniPoly{-1, 1});
  CHECK(f1.factors[1].first == UniPoly{1, 1});

  const auto f2 = factor_over_Z(UniPoly{1, 5, 6});
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0].first == UniPoly{1, 2});
  CHECK(f2.factors[1].first == UniPoly{1, 3});
  CHECK(f2.expand() == UniPoly{1, 5, 6});

  const UniPoly z4p1{1, 0, 0, 0, 1};
  const auto f3 = factor_over_Z(z4p1);
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].first == z4p1);
  // Any monic factor of degree 1 or 2 would have coefficients bounded by 2.
  CHECK_FALSE(oracle::has_monic_factor_in_box(z4p1.coeffs(), 1, 4));
  CHECK_FALSE(oracle::has_monic_factor_in_box(z4p1.coeffs(), 2, 4));

  CHECK_THROWS_AS(factor_over_Z(UniPoly{5}), DomainError);
}

TEST_CASE("irreducibility examples") {
  CHECK(is_irreducible_q(UniPoly{-2, 0, 1}));
  CHECK_FALSE(is_irreducible_q(UniPoly{-4, 0, 1}));
  CHECK(is_irreducible_q(UniPoly{1, 1, 0, 1}));
  CHECK_THROWS_AS(is_irreducible_q(UniPoly{3}), DomainError);
}

TEST_CASE("swinnerton-dyer style polynomials need recombination") {
  // x^4 - 10x^2 + 1 splits mod every prime but is irreducible over Q.
  const UniPoly sd{1, 0, -10, 0, 1};
  CHECK(is_irreducible_q(sd));
  // (x^4 - 10x^2 + 1)(x^4 - 10x^2 + 1 + x) keeps two factors.
  const UniPoly other{1, 1, -10, 0, 1};
  const auto f = factor_over_Z(sd * other);
  CHECK(f.factor_count_with_multiplicity() == 2);
  CHECK(f.expand() == sd * other);
}

TEST_CASE("multiplicities and rational input") {
  const UniPoly a{-1, 1}, b{1, 0, 1};
  const UniPoly p = pow(a, 3) * b * UniPoly::constant(make_rat(-3, 7));
  const auto f = factor_over_Z(p);
  CHECK(f.unit == make_rat(-3, 7));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<UniPoly, unsigned>{a, 3});
  CHECK(f.factors[1] == std::pair<UniPoly, unsigned>{b, 1});
  CHECK(f.factor_count_with_multiplicity() == 4);
}

TEST_CASE("random products of certified irreducibles factor back") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 120; ++i) {
    const int k = static_cast<int>(corpus::uniform(rng, 1, 4));
    std::vector<UniPoly> parts;
    UniPoly prod{1};
    for (int j = 0; j < k; ++j) {
      parts.push_back(corpus::certified_irreducible(rng));
      prod = prod * parts.back();
    }
    const auto f = factor_over_Z(prod);
    CHECK(f.expand() == prod);
    CHECK(f.factor_count_with_multiplicity() == static_cast<std::size_t>(k));
    for (const auto& [g, e] : f.factors) {
      CHECK(g.leading() > 0);
      CHECK(content_primitive(g).first == 1);
      CHECK(std::find(parts.begin(), parts.end(), g) != parts.end());
    }
  }
}

TEST_CASE("factors are irreducible against the brute-force box") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 40; ++i) {
    std::vector<BigRat> c(5);
    for (auto& v : c) v = corpus::uniform(rng, -4, 4);
    c[4] = 1;
    const UniPoly p(c);
    const auto f = factor_over_Z(p);
    CHECK(f.expand() == p);
    for (const auto& [g, e] : f.factors) {
      if (g.degree() < 2) continue;
      // Monic degree-1 factors of a monic factor are its integer roots.
      CHECK_FALSE(oracle::has_monic_factor_in_box(g.coeffs(), 1, 40));
    }
  }
}
