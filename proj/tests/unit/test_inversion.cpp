#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "keller/inversion.hpp"

using namespace keller;
using corpus::c;
namespace {
const MultiPoly x = corpus::x(), y = corpus::y();
}  // namespace

TEST_CASE("inverse examples") {
  const PolyMap shear({x + y * y, y});
  const auto r = ansatz_inverse(shear);
  CHECK(r.status == InverseStatus::inverse_found);
  CHECK(r.certificate == InverseCertificate::ansatz);
  CHECK(r.keller);
  REQUIRE(r.inverse);
  CHECK(*r.inverse == PolyMap({x - y * y, y}));

  const MultiPoly s = y + x * x;
  const PolyMap twisted({x + s * s, s});
  const auto r2 = ansatz_inverse(twisted);
  REQUIRE(r2.inverse);
  const MultiPoly first = x - y * y;
  CHECK(*r2.inverse == PolyMap({first, y - first * first}));
  CHECK(r2.degree_bound_used == 4);

  const auto r3 = ansatz_inverse(PolyMap({x * x, y}));
  CHECK(r3.status == InverseStatus::no_inverse_within_bound);
  CHECK_FALSE(r3.keller);
  CHECK_FALSE(r3.inverse);

  const auto r4 = ansatz_inverse(PolyMap({x + y, x + y}));
  CHECK(r4.status == InverseStatus::not_keller);
}

TEST_CASE("inverse through annihilators") {
  CHECK(rational_inverse_from_annihilator(PolyMap({x + y * y, y})) == PolyMap({x - y * y, y}));
  CHECK(rational_inverse_from_annihilator(PolyMap::identity(2)) == PolyMap::identity(2));
  const MultiPoly s = y + x * x;
  const PolyMap twisted({x + s * s, s});
  const auto g = rational_inverse_from_annihilator(twisted);
  if (g) CHECK(verify_inverse(twisted, *g));
}

TEST_CASE("verify_inverse examples") {
  const PolyMap shear({x + y * y, y});
  CHECK(verify_inverse(shear, PolyMap({x - y * y, y})));
  CHECK(verify_inverse(PolyMap::identity(2), PolyMap::identity(2)));
  CHECK_FALSE(verify_inverse(shear, PolyMap::identity(2)));
}

TEST_CASE("default bound") {
  CHECK(default_inverse_degree_bound(PolyMap({x + y * y * y, y})) == 3);
  const MultiPoly a = MultiPoly::variable(3, 0), b = MultiPoly::variable(3, 1), d = MultiPoly::variable(3, 2);
  CHECK(default_inverse_degree_bound(PolyMap({a, b + a * a, d})) == 4);
}

TEST_CASE("three-variable triangular map") {
  const MultiPoly a = MultiPoly::variable(3, 0), b = MultiPoly::variable(3, 1), d = MultiPoly::variable(3, 2);
  const PolyMap p({a, b + a * a, d + a * b});
  const auto r = ansatz_inverse(p);
  REQUIRE(r.inverse);
  CHECK(verify_inverse(p, *r.inverse));
}

TEST_CASE("random tame maps invert and the inverse has unit Jacobian") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 20; ++i) {
    const auto t = corpus::random_tame(rng, 3, 2, 2, 4);
    const auto r = ansatz_inverse(t.map);
    REQUIRE(r.status == InverseStatus::inverse_found);
    const PolyMap& g = *r.inverse;
    CHECK(compose_maps(t.map, g).is_identity());
    CHECK(compose_maps(g, t.map).is_identity());
    // J(G) * (J(P) o G) = 1.
    const MultiPoly jp_at_g = substitute(jacobian_det(t.map), {{0, g[0]}, {1, g[1]}});
    CHECK(jacobian_det(g) * jp_at_g == c(1));
    if (auto shortcut = rational_inverse_from_annihilator(t.map)) CHECK(*shortcut == g);
  }
}

TEST_CASE("inverse of a composition is the reversed composition of inverses") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 10; ++i) {
    const auto a = corpus::random_tame(rng, 2, 2, 2, 2).map;
    const auto b = corpus::random_tame(rng, 2, 2, 2, 2).map;
    const auto ga = ansatz_inverse(a), gb = ansatz_inverse(b), gab = ansatz_inverse(compose_maps(a, b));
    REQUIRE(ga.inverse);
    REQUIRE(gb.inverse);
    REQUIRE(gab.inverse);
    CHECK(*gab.inverse == compose_maps(*gb.inverse, *ga.inverse));
  }
}

TEST_CASE("a too-small bound reports no inverse") {
  const PolyMap p({x + y * y * y, y});
  CHECK(ansatz_inverse(p, 2).status == InverseStatus::no_inverse_within_bound);
  CHECK(ansatz_inverse(p, 3).status == InverseStatus::inverse_found);
}

TEST_CASE("status strings") {
  CHECK(to_string(InverseStatus::inverse_found) == "inverse_found");
  CHECK(to_string(InverseStatus::no_inverse_within_bound) == "no_inverse_within_bound");
  CHECK(to_string(InverseStatus::not_keller) == "not_keller");
}
