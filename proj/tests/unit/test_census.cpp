#include <doctest.h>

#include <json.hpp>
#include <random>

#include "corpus.hpp"
#include "keller/census.hpp"
#include "oracles.hpp"

using namespace keller;
using namespace keller::census;
using corpus::c;
namespace {
const MultiPoly x = corpus::x(), y = corpus::y();
}  // namespace

namespace {

MultiPoly v3(std::size_t i) { return MultiPoly::variable(3, i); }
const MultiPoly X = v3(0), Y = v3(1), Z = v3(2);

oracle::PlaneMap direct(const PolyMap& p) {
  return [p](long a, long b) {
    const BigRat pt[] = {a, b};
    const auto v = p(pt);
    return oracle::Value{v[0], v[1]};
  };
}

MultiPoly random_poly(std::mt19937_64& rng, unsigned max_deg, long height) {
  MultiPoly p(2);
  for (unsigned ex = 0; ex <= max_deg; ++ex) {
    for (unsigned ey = 0; ex + ey <= max_deg; ++ey) {
      if (corpus::uniform(rng, 0, 2) == 0) continue;
      p += c(corpus::uniform(rng, -height, height)) * pow(x, ex) * pow(y, ey);
    }
  }
  return p;
}

void same_report(const CensusReport& a, const CensusReport& b) {
  CHECK(a.total_points == b.total_points);
  CHECK(a.unique_count == b.unique_count);
  CHECK(a.multi_count == b.multi_count);
  CHECK(a.bad_pairs == b.bad_pairs);
  CHECK(a.multi_points == b.multi_points);
  REQUIRE(a.multi_records.size() == b.multi_records.size());
  for (std::size_t i = 0; i < a.multi_records.size(); ++i) {
    CHECK(a.multi_records[i].preimages == b.multi_records[i].preimages);
  }
  CHECK(to_json(a) == to_json(b));
}

void same_series(const GrowthSeries& a, const GrowthSeries& b) {
  CHECK(a.entries == b.entries);
  CHECK(a.excluded == b.excluded);
  CHECK(to_json(a) == to_json(b));
}

}  // namespace

TEST_CASE("preimage examples") {
  const PolyMap shear({x + y * y, y});
  const auto [phi, psi] = census_annihilators(shear);
  const auto r = preimage_count_at(shear, phi, psi, {3, 2});
  CHECK(r.value == std::array<BigRat, 2>{7, 2});
  CHECK(r.preimages == std::vector<IntPoint>{{3, 2}});
  CHECK(r.category() == BadPair::none);

  const PolyMap square({x * x, y});
  const auto [sphi, spsi] = census_annihilators(square);
  const auto r2 = preimage_count_at(square, sphi, spsi, {2, 5});
  CHECK(r2.preimages == std::vector<IntPoint>{{-2, 5}, {2, 5}});
  CHECK(r2.category() == BadPair::multi);
  const auto r3 = preimage_count_at(square, sphi, spsi, {0, 0});
  CHECK(r3.preimages == std::vector<IntPoint>{{0, 0}});
}

TEST_CASE("injectivity census examples") {
  const auto shear = injectivity_census(PolyMap({x + y * y, y}), 10, 2);
  CHECK(shear.total_points == 441);
  CHECK(shear.unique_count == 441);
  CHECK(shear.bad_pairs.total() == 0);

  const auto id = injectivity_census(PolyMap::identity(2), 5, 1);
  CHECK(id.unique_count == 121);

  const auto sq = injectivity_census(PolyMap({x * x, y}), 10, 3);
  CHECK(sq.total_points == 441);
  CHECK(sq.multi_count == 420);
  CHECK(sq.unique_count == 21);
  CHECK(sq.multi_points.size() == kMultiPointSample);
  CHECK(sq.multi_records.size() == 420);
}

TEST_CASE("census results do not depend on the worker count") {
  const PolyMap p({x * x - y * y, c(2) * x * y});
  const auto [phi, psi] = census_annihilators(p);
  const auto ref = reference::injectivity_census(p, phi, psi, 6);
  for (int jobs : {1, 2, 8}) same_report(injectivity_census(p, phi, psi, 6, jobs), ref);

  const MultiPoly a = Z * Z - (X * X + Y);
  const std::vector<long> ns{2, 4, 6};
  const auto rref = reference::reducibility_census(a, ns);
  const auto iref = reference::integrality_census(x * x, y, ns);
  const auto vref = reference::variety_point_count(x * x + y * y - c(25), ns);
  for (int jobs : {1, 2, 8}) {
    same_series(reducibility_census(a, ns, jobs), rref);
    same_series(integrality_census(x * x, y, ns, jobs), iref);
    same_series(variety_point_count(x * x + y * y - c(25), ns, jobs), vref);
  }
}

TEST_CASE("preimage sets agree with exhaustive search") {
  std::mt19937_64 rng(71);
  int tried = 0;
  while (tried < 12) {
    const PolyMap p({random_poly(rng, 3, 2), random_poly(rng, 3, 2)});
    if (p[0].degree() < 1 || p[1].degree() < 1) continue;
    std::pair<Annihilator, Annihilator> ann;
    try {
      ann = census_annihilators(p);
    } catch (const std::exception&) {
      continue;  // dependent components
    }
    ++tried;
    const long n = 3, r = 14;
    const auto fibers = oracle::fibers_by_search(direct(p), n, r);
    for (const auto& [pt, fiber] : fibers) {
      const auto rec = preimage_count_at(p, ann.first, ann.second, {pt[0], pt[1]});
      std::vector<oracle::Point> in_box;
      for (const auto& q : rec.preimages) {
        const BigRat v[] = {q[0], q[1]};
        const auto img = p(v);
        CHECK(img[0] == rec.value[0]);
        CHECK(img[1] == rec.value[1]);
        if (std::labs(q[0]) <= r && std::labs(q[1]) <= r) in_box.push_back({q[0], q[1]});
      }
      CHECK(in_box == fiber);
    }
  }
}

TEST_CASE("reducibility census") {
  // Counts of (x0, y0) with x0^2 + y0 a perfect square, by direct search.
  const std::vector<long> ns{10, 20, 40, 80};
  const auto s = reducibility_census(Z * Z - (X * X + Y), ns, 2);
  std::vector<std::size_t> expect;
  for (long n : ns) {
    expect.push_back(oracle::count_box(n, [](long a, long b) { return oracle::is_square(a * a + b); }));
  }
  REQUIRE(s.entries.size() == 4);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    CHECK(s.entries[i].first == ns[i]);
    CHECK(s.entries[i].second == expect[i]);
  }
  CHECK(expect == std::vector<std::size_t>{50, 109, 247, 537});

  CHECK(reducibility_census(Z - X, {3, 6}, 1).entries ==
        std::vector<std::pair<long, std::size_t>>{{3, 0}, {6, 0}});
  CHECK(reducibility_census(Z * Z - X * X, {3, 6}, 1).entries ==
        std::vector<std::pair<long, std::size_t>>{{3, 49}, {6, 169}});
}

TEST_CASE("integrality census") {
  const auto s = integrality_census(x * x, y, {5}, 1);
  const std::size_t expect =
      oracle::count_box(5, [](long a, long b) { return b != 0 && (a * a) % b == 0; });
  CHECK(s.entries[0].second == expect);
  CHECK(expect == 54);
  CHECK(s.excluded == std::vector<std::size_t>{11});

  CHECK(integrality_census(x, c(1), {2, 4}, 1).entries ==
        std::vector<std::pair<long, std::size_t>>{{2, 25}, {4, 81}});
  const auto none = integrality_census(c(1), x * x + y * y + c(2), {3, 6}, 1);
  CHECK(none.entries == std::vector<std::pair<long, std::size_t>>{{3, 0}, {6, 0}});
}

TEST_CASE("variety point counts") {
  CHECK(variety_point_count(x - y, {10}, 1).entries[0].second == 21);
  CHECK(variety_point_count(x * x + y * y - c(1), {1, 5, 9}, 2).entries ==
        std::vector<std::pair<long, std::size_t>>{{1, 4}, {5, 4}, {9, 4}});
  CHECK(variety_point_count(c(1), {4}, 1).entries[0].second == 0);
  // x*y = 12 meets [-N, N]^2 in the divisor pairs of 12.
  for (long n : {3, 6, 12}) {
    CHECK(variety_point_count(x * y - c(12), {n}, 1).entries[0].second == oracle::hyperbola_points(12, n));
  }
}

TEST_CASE("growth exponent fit") {
  CHECK_FALSE(fit_exponent({{10, 5}}).has_value());
  const auto e = fit_exponent({{10, 100}, {20, 400}, {40, 1600}});
  REQUIRE(e);
  CHECK(*e == doctest::Approx(2.0));
  const auto flat = fit_exponent({{10, 2}, {20, 2}, {40, 2}});
  REQUIRE(flat);
  CHECK(*flat == doctest::Approx(0.0));
}

TEST_CASE("symmetry probe") {
  const PolyMap square({x * x, y});
  const auto sq = injectivity_census(square, 6, 1);
  const auto d = symmetry_probe(square, sq.multi_records);
  REQUIRE(d);
  CHECK(d->q == PolyMap({-x, y}));
  CHECK(d->pq.identical);
  CHECK(d->order.order == 2u);
  CHECK(d->fixed.kind == LocusKind::positive_dimensional);
  REQUIRE(d->fixed.defining_polynomials.size() == 1);
  CHECK(d->fixed.defining_polynomials[0] == x);
  CHECK_FALSE(d->anomaly);

  const PolyMap cs({x * x - y * y, c(2) * x * y});
  const auto d2 = symmetry_probe(cs, injectivity_census(cs, 6, 1).multi_records);
  REQUIRE(d2);
  CHECK(d2->q == PolyMap({-x, -y}));
  CHECK(d2->order.order == 2u);
  CHECK(d2->fixed.rational_points == std::vector<Point2>{{0, 0}});

  const PolyMap shear({x + y * y, y});
  CHECK_FALSE(symmetry_probe(shear, injectivity_census(shear, 5, 1).multi_records));
}

TEST_CASE("report serialization") {
  const auto sq = injectivity_census(PolyMap({x * x, y}), 2, 1);
  const auto j = nlohmann::json::parse(to_json(sq));
  CHECK(j["n"] == 2);
  CHECK(j["total_points"] == 25);
  CHECK(j["multi_count"] == 20);
  CHECK(j["unique_count"] == 5);
  CHECK(j["elapsed_ms"].is_null());
  CHECK(j["multi_points"].size() == 20);
  CHECK(nlohmann::json::parse(to_json(sq, true))["elapsed_ms"].is_number());

  const auto s = variety_point_count(x - y, {1, 2}, 1);
  CHECK(to_csv(s) == "N,count\n1,3\n2,5\n");
  const auto js = nlohmann::json::parse(to_json(s));
  CHECK(js["entries"].size() == 2);
}
