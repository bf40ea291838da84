#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "keller/dynamics.hpp"
#include "keller/errors.hpp"

using namespace keller;
using corpus::c;
namespace {
const MultiPoly x = corpus::x(), y = corpus::y();
}  // namespace

namespace {

const PolyMap swap_xy({y, x});
const PolyMap rotation({-y, x});
const PolyMap translation({x + c(1), y});

PolyMap affine(long a, long b, long d, long e) {
  return PolyMap({c(a) * x + c(b) * y, c(d) * x + c(e) * y});
}

}  // namespace

TEST_CASE("iterate examples") {
  CHECK(iterate_map(swap_xy, 2).is_identity());
  CHECK(iterate_map(PolyMap({x, y + x * x}), 3) == PolyMap({x, y + c(3) * x * x}));
  CHECK(iterate_map(rotation, 4).is_identity());
  CHECK(iterate_map(rotation, 0).is_identity());
}

TEST_CASE("order examples") {
  CHECK(detect_order(swap_xy).order == 2u);
  CHECK(detect_order(rotation).order == 4u);
  const auto t = detect_order(translation, 50);
  CHECK_FALSE(t.order);
  CHECK(t.iterations_checked == 50);
  CHECK(detect_order(PolyMap::identity(2)).order == 1u);
}

TEST_CASE("degree guard stops runaway iteration") {
  const auto r = detect_order(PolyMap({y, x + y * y}), 50, 64);
  CHECK_FALSE(r.order);
  CHECK(r.degree_guard_hit);
  CHECK(r.iterations_checked < 50);
}

TEST_CASE("order of a square divides out the common factor 2") {
  std::mt19937_64 rng(61);
  const auto blocks = corpus::finite_order_blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (int i = 0; i < 5; ++i) {
      const PolyMap q = corpus::conjugated_affine(rng, blocks[k]);
      const unsigned t = corpus::kBlockOrders[k];
      CHECK(detect_order(q).order == t);
      CHECK(detect_order(iterate_map(q, 2)).order == (t % 2 == 0 ? t / 2 : t));
    }
  }
}

TEST_CASE("fixed point examples") {
  const auto s = fixed_points(swap_xy);
  CHECK(s.kind == LocusKind::positive_dimensional);
  REQUIRE(s.defining_polynomials.size() == 1);
  CHECK(s.defining_polynomials[0] == x - y);

  const auto t = fixed_points(translation);
  CHECK(t.kind == LocusKind::empty);
  CHECK(t.rational_points.empty());

  const auto d = fixed_points(PolyMap({c(2) * x, make_rat(1, 2) * y}));
  CHECK(d.kind == LocusKind::finite);
  REQUIRE(d.rational_points.size() == 1);
  CHECK(d.rational_points[0] == Point2{0, 0});

  CHECK(fixed_points(PolyMap::identity(2)).kind == LocusKind::positive_dimensional);
}

TEST_CASE("fixed points are exact") {
  // Fixed points of (y, x^2 + y - k) satisfy y = x, x^2 = k.
  const PolyMap q1({y, x * x + y - c(4)});
  const auto f1 = fixed_points(q1);
  CHECK(f1.kind == LocusKind::finite);
  CHECK(f1.rational_points == std::vector<Point2>{{-2, -2}, {2, 2}});
  for (const auto& pt : f1.rational_points) {
    const BigRat v[] = {pt[0], pt[1]};
    const auto img = q1(v);
    CHECK(img[0] == pt[0]);
    CHECK(img[1] == pt[1]);
  }
  const auto f2 = fixed_points(PolyMap({y, x * x + y - c(2)}));
  CHECK(f2.rational_points.empty());
  CHECK(f2.complex_solutions);
}

TEST_CASE("affine classification examples") {
  const auto t = classify_affine(translation);
  CHECK(t.eigenvalues == std::vector<BigRat>{1, 1});
  CHECK(t.jordan == JordanType::diagonal);
  CHECK_FALSE(t.has_fixed_point);
  CHECK_FALSE(t.finite_order);
  CHECK(t.det_is_one);

  const auto d = classify_affine(PolyMap({c(2) * x, make_rat(1, 2) * y}));
  CHECK(d.det_is_one);
  CHECK(d.eigenvalues == std::vector<BigRat>{make_rat(1, 2), 2});
  REQUIRE(d.fixed_point);
  CHECK(*d.fixed_point == Point2{0, 0});
  CHECK_FALSE(d.finite_order);

  const auto r = classify_affine(rotation);
  CHECK(r.det_is_one);
  CHECK(r.jordan == JordanType::irrational);
  CHECK(r.has_fixed_point);
  CHECK(r.finite_order == 4u);

  const auto j = classify_affine(PolyMap({x + y, y + c(1)}));
  CHECK(j.jordan == JordanType::jordan_block);
  CHECK_FALSE(j.has_fixed_point);

  CHECK_THROWS_AS(classify_affine(PolyMap({x * x, y})), DomainError);
}

TEST_CASE("fixed point exists iff the affine system is consistent") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 60; ++i) {
    const long a = corpus::uniform(rng, -2, 2), b = corpus::uniform(rng, -2, 2);
    const long d = corpus::uniform(rng, -2, 2), e = corpus::uniform(rng, -2, 2);
    const long s = corpus::uniform(rng, -2, 2), t = corpus::uniform(rng, -2, 2);
    const PolyMap q({c(a) * x + c(b) * y + c(s), c(d) * x + c(e) * y + c(t)});
    const auto cl = classify_affine(q);
    CHECK(cl.has_fixed_point == cl.fixed_point.has_value());
    if (cl.fixed_point) {
      const BigRat v[] = {(*cl.fixed_point)[0], (*cl.fixed_point)[1]};
      const auto img = q(v);
      CHECK(img[0] == v[0]);
      CHECK(img[1] == v[1]);
    }
    // Brute force over a small grid cannot find a fixed point the
    // classification ruled out.
    if (!cl.has_fixed_point) {
      for (long u = -5; u <= 5; ++u) {
        for (long w = -5; w <= 5; ++w) {
          const BigRat v[] = {u, w};
          const auto img = q(v);
          CHECK_FALSE((img[0] == v[0] && img[1] == v[1]));
        }
      }
    }
  }
}

TEST_CASE("pq_check examples") {
  CHECK(pq_check(PolyMap({x * x, y}), PolyMap({-x, y})).identical);
  CHECK(pq_check(PolyMap({x + y * y, y}), PolyMap::identity(2)).identical);
  const auto d = pq_check(PolyMap({x + y * y, y}), PolyMap({-x, y}));
  CHECK_FALSE(d.identical);
  REQUIRE(d.difference.size() == 1);
  CHECK(d.difference[0] == c(-2) * x);
}

TEST_CASE("conjugacy examples") {
  CHECK(check_conjugacy(swap_xy, PolyMap::identity(2), swap_xy));
  const PolyMap s({x, y - x * x});
  const PolyMap l({-x, y});
  const PolyMap q = compose_maps(PolyMap({x, y + x * x}), compose_maps(l, s));
  CHECK(check_conjugacy(q, s, l));
  CHECK_FALSE(check_conjugacy(translation, PolyMap::identity(2), PolyMap::identity(2)));
  CHECK_FALSE(check_conjugacy(translation, s, l));
  CHECK_THROWS_AS(check_conjugacy(q, s, translation), DomainError);
}
