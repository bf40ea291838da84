#include "keller/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "keller/errors.hpp"
#include "keller/linsolve.hpp"

namespace keller::census {

std::string to_string(BadPair b) {
  switch (b) {
    case BadPair::none: return "none";
    case BadPair::degenerate: return "degenerate";
    case BadPair::degree_drop: return "degree_drop";
    case BadPair::reducible: return "reducible";
    case BadPair::multi: return "multi";
  }
  return "?";
}

BadPair PreimageRecord::category() const {
  if (degenerate_phi || degenerate_psi) return BadPair::degenerate;
  if (degree_drop_phi || degree_drop_psi) return BadPair::degree_drop;
  if (reducible_a || reducible_b) return BadPair::reducible;
  if (preimages.size() > 1) return BadPair::multi;
  return BadPair::none;
}

namespace {

// ---------------------------------------------------------------- rows

// Runs body(i) for i in [0, count). Each index writes only its own slot, so
// the caller's in-order merge is independent of scheduling.
template <class Body>
void serial_rows(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

template <class Body>
void parallel_rows(std::size_t count, int jobs, Body&& body) {
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < static_cast<long>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
#else
  (void)jobs;
  serial_rows(count, body);
#endif
}

long to_long_checked(const BigInt& v) {
  if (!v.fits_slong_p()) throw Anomaly("census: integer root does not fit in a machine word");
  return v.get_si();
}

// ------------------------------------------------------ preimage kernel

struct SideInfo {
  bool degenerate = false;
  bool degree_drop = false;
  bool reducible = false;
  std::vector<long> roots;
};

SideInfo analyze_side(const Annihilator& a, const BigRat& u, const BigRat& v) {
  SideInfo info;
  const auto s = try_specialize(a, u, v);
  if (!s) {
    info.degenerate = true;
    return info;
  }
  info.degree_drop = s->degree_drop;
  const UniPoly& f = s->poly;
  if (f.degree() == 1) {
    const BigRat r = -f[0] / f[1];
    if (is_integer(r)) info.roots.push_back(to_long_checked(r.get_num()));
    return info;
  }
  if (f.degree() < 1) return info;
  std::size_t residual = 0;
  for (const auto& [g, mult] : factor_over_Z(f).factors) {
    if (g.degree() == 1 && g.leading() == 1) {
      info.roots.push_back(to_long_checked(-g[0].get_num()));
    } else {
      residual += mult;
    }
  }
  info.reducible = residual >= 2;
  std::sort(info.roots.begin(), info.roots.end());
  return info;
}

// Integer t with P evaluated along the line where the other coordinate is
// fixed hitting (u, v). var is the free coordinate.
std::vector<long> solve_on_line(const PolyMap& p, std::size_t var, long fixed, const BigRat& u,
                                const BigRat& v) {
  const std::size_t other = 1 - var;
  const std::map<std::size_t, MultiPoly> pin{{other, MultiPoly::constant(2, fixed)}};
  const BigRat target[] = {u, v};
  for (std::size_t i = 0; i < 2; ++i) {
    const UniPoly h = to_unipoly(substitute(p[i], pin, 2), var) - UniPoly::constant(target[i]);
    if (h.is_zero()) continue;
    std::vector<long> out;
    if (h.degree() < 1) return out;
    for (const auto& r : integer_roots(h)) out.push_back(to_long_checked(r));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  return {};
}

bool maps_to(const PolyMap& p, long a, long b, const std::array<BigRat, 2>& value) {
  const BigRat pt[] = {BigRat(a), BigRat(b)};
  return evaluate(p[0], pt) == value[0] && evaluate(p[1], pt) == value[1];
}

}  // namespace

PreimageRecord preimage_count_at(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                 IntPoint point) {
  if (p.arity() != 2) throw StructuralError("preimage_count_at: map must have arity 2");
  if (!phi.verified || !psi.verified) throw DomainError("preimage_count_at: unverified annihilator");
  PreimageRecord rec;
  rec.point = point;
  const BigRat pt[] = {BigRat(point[0]), BigRat(point[1])};
  rec.value = {evaluate(p[0], pt), evaluate(p[1], pt)};
  const SideInfo a = analyze_side(phi, rec.value[0], rec.value[1]);
  const SideInfo b = analyze_side(psi, rec.value[0], rec.value[1]);
  rec.degenerate_phi = a.degenerate;
  rec.degenerate_psi = b.degenerate;
  rec.degree_drop_phi = a.degree_drop;
  rec.degree_drop_psi = b.degree_drop;
  rec.reducible_a = a.reducible;
  rec.reducible_b = b.reducible;

  auto consider = [&](long x, long y) {
    if (maps_to(p, x, y, rec.value)) rec.preimages.push_back({x, y});
  };
  if (!a.degenerate && !b.degenerate) {
    for (long x : a.roots) {
      for (long y : b.roots) consider(x, y);
    }
  } else if (!b.degenerate) {
    for (long y : b.roots) {
      for (long x : solve_on_line(p, 0, y, rec.value[0], rec.value[1])) consider(x, y);
    }
  } else if (!a.degenerate) {
    for (long x : a.roots) {
      for (long y : solve_on_line(p, 1, x, rec.value[0], rec.value[1])) consider(x, y);
    }
  }
  std::sort(rec.preimages.begin(), rec.preimages.end());
  rec.preimages.erase(std::unique(rec.preimages.begin(), rec.preimages.end()), rec.preimages.end());
  if (!std::binary_search(rec.preimages.begin(), rec.preimages.end(), point)) {
    // Only reachable when both specializations vanish identically.
    if (!(a.degenerate && b.degenerate)) {
      throw InternalError("preimage_count_at: the point itself was not recovered");
    }
    rec.preimages.insert(std::lower_bound(rec.preimages.begin(), rec.preimages.end(), point), point);
  }
  return rec;
}

std::pair<Annihilator, Annihilator> census_annihilators(const PolyMap& p) {
  AnnihilatorOptions opts;
  opts.require_keller = false;
  return {annihilator(p, 1, opts), annihilator(p, 2, opts)};
}

namespace {

struct RowSummary {
  std::size_t unique = 0;
  std::size_t multi = 0;
  BadPairCounts bad;
  std::vector<PreimageRecord> multi_records;
};

RowSummary injectivity_row(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                           long n, long y) {
  RowSummary row;
  for (long x = -n; x <= n; ++x) {
    PreimageRecord rec = preimage_count_at(p, phi, psi, {x, y});
    switch (rec.category()) {
      case BadPair::degenerate: ++row.bad.degenerate; break;
      case BadPair::degree_drop: ++row.bad.degree_drop; break;
      case BadPair::reducible: ++row.bad.reducible; break;
      case BadPair::multi: ++row.bad.multi; break;
      case BadPair::none: break;
    }
    if (rec.preimages.size() > 1) {
      ++row.multi;
      row.multi_records.push_back(std::move(rec));
    } else {
      ++row.unique;
    }
  }
  return row;
}

CensusReport merge_rows(long n, std::vector<RowSummary>& rows) {
  CensusReport r;
  r.n = n;
  for (auto& row : rows) {
    r.unique_count += row.unique;
    r.multi_count += row.multi;
    r.bad_pairs.degenerate += row.bad.degenerate;
    r.bad_pairs.degree_drop += row.bad.degree_drop;
    r.bad_pairs.reducible += row.bad.reducible;
    r.bad_pairs.multi += row.bad.multi;
    for (auto& rec : row.multi_records) {
      if (r.multi_points.size() < kMultiPointSample) r.multi_points.push_back(rec.point);
      r.multi_records.push_back(std::move(rec));
    }
  }
  r.total_points = r.unique_count + r.multi_count;
  return r;
}

void check_radius(long n) {
  if (n < 0) throw DomainError("census: box radius must be nonnegative");
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class Runner>
CensusReport run_injectivity(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                             long n, Runner&& runner) {
  check_radius(n);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t count = static_cast<std::size_t>(2 * n + 1);
  std::vector<RowSummary> rows(count);
  runner(count, [&](std::size_t i) {
    rows[i] = injectivity_row(p, phi, psi, n, static_cast<long>(i) - n);
  });
  CensusReport r = merge_rows(n, rows);
  r.elapsed_ms = millis_since(t0);
  return r;
}

// ------------------------------------------------------ growth kernels

// Hits of one row: x-coordinates counted, x-coordinates excluded, and
// whether the whole row counts (an identically vanishing curve row).
struct RowHits {
  std::vector<long> hits;
  std::vector<long> excluded;
  bool whole_row = false;
};

std::vector<long> checked_ns(const std::vector<long>& ns) {
  if (ns.empty()) throw DomainError("census: empty list of box radii");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 0) throw DomainError("census: box radius must be nonnegative");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DomainError("census: radii must be strictly increasing");
  }
  return ns;
}

// Scans the largest box once; cumulative ring counts give every smaller box.
template <class Runner, class Row>
GrowthSeries run_growth(const std::vector<long>& ns_in, bool track_excluded, Runner&& runner,
                        Row&& row_kernel) {
  const auto ns = checked_ns(ns_in);
  const long m = ns.back();
  const std::size_t count = static_cast<std::size_t>(2 * m + 1);
  std::vector<RowHits> rows(count);
  runner(count, [&](std::size_t i) { rows[i] = row_kernel(static_cast<long>(i) - m, m); });

  std::vector<std::size_t> ring(static_cast<std::size_t>(m) + 1, 0);
  std::vector<std::size_t> ring_excluded(ring.size(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const long y = static_cast<long>(i) - m;
    auto bump = [&](std::vector<std::size_t>& hist, long x) {
      ++hist[static_cast<std::size_t>(std::max(std::labs(x), std::labs(y)))];
    };
    if (rows[i].whole_row) {
      for (long x = -m; x <= m; ++x) bump(ring, x);
    }
    for (long x : rows[i].hits) bump(ring, x);
    for (long x : rows[i].excluded) bump(ring_excluded, x);
  }
  GrowthSeries s;
  std::size_t acc = 0, acc_ex = 0;
  std::size_t next = 0;
  for (long r = 0; r <= m && next < ns.size(); ++r) {
    acc += ring[static_cast<std::size_t>(r)];
    acc_ex += ring_excluded[static_cast<std::size_t>(r)];
    while (next < ns.size() && ns[next] == r) {
      s.entries.emplace_back(r, acc);
      if (track_excluded) s.excluded.push_back(acc_ex);
      ++next;
    }
  }
  s.fitted_exponent = fit_exponent(s.entries);
  return s;
}

auto reducibility_row(const MultiPoly& a) {
  if (a.arity() != 3) throw StructuralError("reducibility_census: polynomial must be in (x, y, z)");
  if (a.degree_in(2) < 1) throw DomainError("reducibility_census: polynomial must involve z");
  const int dz = a.degree_in(2);
  const std::size_t drop_z[] = {0, 1, 0};
  std::vector<MultiPoly> coeffs;
  for (const auto& c : coefficients_in(a, 2)) coeffs.push_back(c.reindexed(2, drop_z));
  return [coeffs, dz](long y, long m) {
    RowHits row;
    for (long x = -m; x <= m; ++x) {
      const BigRat pt[] = {BigRat(x), BigRat(y)};
      std::vector<BigRat> c;
      c.reserve(coeffs.size());
      for (const auto& k : coeffs) c.push_back(evaluate(k, pt));
      const UniPoly f(std::move(c));
      const bool bad = f.degree() < dz || (f.degree() >= 2 && !is_irreducible_q(f));
      if (bad) row.hits.push_back(x);
    }
    return row;
  };
}

auto integrality_row(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != 2 || b.arity() != 2) {
    throw StructuralError("integrality_census: polynomials must be in (x, y)");
  }
  if (b.is_zero()) throw DomainError("integrality_census: denominator is the zero polynomial");
  return [a, b](long y, long m) {
    RowHits row;
    for (long x = -m; x <= m; ++x) {
      const BigRat pt[] = {BigRat(x), BigRat(y)};
      const BigRat den = evaluate(b, pt);
      if (den == 0) {
        row.excluded.push_back(x);
      } else if (is_integer(evaluate(a, pt) / den)) {
        row.hits.push_back(x);
      }
    }
    return row;
  };
}

auto variety_row(const MultiPoly& r) {
  if (r.arity() != 2) throw StructuralError("variety_point_count: polynomial must be in (x, y)");
  if (r.is_zero()) throw DomainError("variety_point_count: zero polynomial");
  return [r](long y, long m) {
    RowHits row;
    const std::map<std::size_t, MultiPoly> pin{{1, MultiPoly::constant(2, y)}};
    const UniPoly h = to_unipoly(substitute(r, pin, 2), 0);
    if (h.is_zero()) {
      row.whole_row = true;
      return row;
    }
    if (h.degree() < 1) return row;
    BigInt prev;
    bool first = true;
    std::vector<BigInt> roots;
    if (h.degree() == 1) {
      const BigRat root = -h[0] / h[1];
      if (is_integer(root)) roots.push_back(root.get_num());
    } else {
      for (const auto& [g, mult] : factor_over_Z(h).factors) {
        if (g.degree() == 1 && g.leading() == 1) roots.push_back(-g[0].get_num());
      }
    }
    std::sort(roots.begin(), roots.end());
    for (const auto& x : roots) {
      if (!first && x == prev) continue;
      first = false;
      prev = x;
      if (abs(x) <= m) row.hits.push_back(x.get_si());
    }
    return row;
  };
}

const auto kSerial = [](std::size_t count, const auto& body) { serial_rows(count, body); };

auto parallel_runner(int jobs) {
  return [jobs](std::size_t count, const auto& body) { parallel_rows(count, jobs, body); };
}

}  // namespace

CensusReport injectivity_census(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                long n, int jobs) {
  CensusReport r = run_injectivity(p, phi, psi, n, parallel_runner(jobs));
  r.partition_count = jobs;
  return r;
}

CensusReport injectivity_census(const PolyMap& p, long n, int jobs) {
  const auto [phi, psi] = census_annihilators(p);
  return injectivity_census(p, phi, psi, n, jobs);
}

std::optional<double> fit_exponent(const std::vector<std::pair<long, std::size_t>>& entries) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, c] : entries) {
    if (n > 0 && c > 0) pts.emplace_back(std::log(static_cast<double>(n)), std::log(static_cast<double>(c)));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

GrowthSeries reducibility_census(const MultiPoly& a, const std::vector<long>& ns, int jobs) {
  return run_growth(ns, false, parallel_runner(jobs), reducibility_row(a));
}

GrowthSeries integrality_census(const MultiPoly& a, const MultiPoly& b, const std::vector<long>& ns,
                                int jobs) {
  return run_growth(ns, true, parallel_runner(jobs), integrality_row(a, b));
}

GrowthSeries variety_point_count(const MultiPoly& r, const std::vector<long>& ns, int jobs) {
  return run_growth(ns, false, parallel_runner(jobs), variety_row(r));
}

namespace reference {

CensusReport injectivity_census(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                long n) {
  return run_injectivity(p, phi, psi, n, kSerial);
}

GrowthSeries reducibility_census(const MultiPoly& a, const std::vector<long>& ns) {
  return run_growth(ns, false, kSerial, reducibility_row(a));
}

GrowthSeries integrality_census(const MultiPoly& a, const MultiPoly& b, const std::vector<long>& ns) {
  return run_growth(ns, true, kSerial, integrality_row(a, b));
}

GrowthSeries variety_point_count(const MultiPoly& r, const std::vector<long>& ns) {
  return run_growth(ns, false, kSerial, variety_row(r));
}

}  // namespace reference

// ------------------------------------------------------ symmetry probe

std::optional<SymmetryDiagnosis> symmetry_probe(const PolyMap& p,
                                                const std::vector<PreimageRecord>& records,
                                                std::optional<int> degree_bound) {
  if (p.arity() != 2) throw StructuralError("symmetry_probe: map must have arity 2");
  std::vector<std::pair<IntPoint, IntPoint>> data;
  for (const auto& rec : records) {
    if (rec.preimages.size() != 2) continue;
    const IntPoint& other = rec.preimages[0] == rec.point ? rec.preimages[1] : rec.preimages[0];
    data.emplace_back(rec.point, other);
  }
  if (data.empty()) return std::nullopt;
  const int bound = degree_bound.value_or(std::max(p.degree(), 1));

  for (int d = 0; d <= bound; ++d) {
    const auto monos = monomials_up_to(2, static_cast<unsigned>(d));
    if (data.size() < monos.size()) break;
    RowEliminator sys(monos.size(), 2);
    bool consistent = true;
    for (const auto& [src, dst] : data) {
      std::vector<BigRat> row;
      row.reserve(monos.size() + 2);
      for (const auto& m : monos) {
        row.emplace_back(ipow(BigInt(src[0]), m[0]) * ipow(BigInt(src[1]), m[1]));
      }
      row.emplace_back(dst[0]);
      row.emplace_back(dst[1]);
      if (!sys.add_row(std::move(row))) {
        consistent = false;
        break;
      }
    }
    if (!consistent || !sys.full_rank()) continue;
    const auto sol = sys.solve();
    std::vector<MultiPoly> comps;
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<MultiPoly::Term> terms;
      for (std::size_t k = 0; k < monos.size(); ++k) {
        if ((*sol)[j][k] != 0) terms.emplace_back(monos[k], (*sol)[j][k]);
      }
      comps.push_back(MultiPoly::from_terms(2, std::move(terms)));
    }
    SymmetryDiagnosis diag;
    diag.q = PolyMap(std::move(comps));
    diag.degree = d;
    diag.pq = pq_check(p, diag.q);
    diag.order = detect_order(diag.q);
    diag.fixed = fixed_points(diag.q);
    diag.anomaly = diag.pq.identical && !diag.q.is_identity() && is_keller(p).keller &&
                   diag.fixed.kind != LocusKind::empty;
    return diag;
  }
  return std::nullopt;
}

// ------------------------------------------------------ reports

std::string to_json(const CensusReport& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["total_points"] = report.total_points;
  j["unique_count"] = report.unique_count;
  j["multi_count"] = report.multi_count;
  j["bad_pairs"] = {{"degenerate", report.bad_pairs.degenerate},
                    {"degree_drop", report.bad_pairs.degree_drop},
                    {"reducible", report.bad_pairs.reducible},
                    {"multi", report.bad_pairs.multi}};
  auto pts = nlohmann::ordered_json::array();
  for (const auto& pt : report.multi_points) pts.push_back({pt[0], pt[1]});
  j["multi_points"] = pts;
  j["elapsed_ms"] = include_timing ? nlohmann::ordered_json(report.elapsed_ms) : nlohmann::ordered_json();
  return j.dump(2) + "\n";
}

std::string to_json(const GrowthSeries& series) {
  nlohmann::ordered_json j;
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.entries.size(); ++i) {
    nlohmann::ordered_json e{{"N", series.entries[i].first}, {"count", series.entries[i].second}};
    if (!series.excluded.empty()) e["excluded"] = series.excluded[i];
    entries.push_back(e);
  }
  j["entries"] = entries;
  j["fitted_exponent"] = series.fitted_exponent ? nlohmann::ordered_json(*series.fitted_exponent)
                                                : nlohmann::ordered_json();
  return j.dump(2) + "\n";
}

std::string to_csv(const GrowthSeries& series) {
  std::string out = "N,count\n";
  for (const auto& [n, c] : series.entries) out += std::to_string(n) + "," + std::to_string(c) + "\n";
  return out;
}

}  // namespace keller::census
