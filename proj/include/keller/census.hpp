#pragma once

// Integer-grid censuses over boxes [-N, N]^2: preimage counting through
// specialized annihilators with bad-pair accounting, plus the supporting
// counts (reducible specializations, integral quotients, curve points).
//
// Rows of the box are independent; the OpenMP kernels split rows across
// threads and merge per-row results in row order, so every report is the
// same for any worker count. The reference:: versions run the same row
// kernels serially and exist for testing and benchmarking.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "keller/dynamics.hpp"
#include "keller/elimination.hpp"
#include "keller/poly.hpp"

namespace keller::census {

using IntPoint = std::array<long, 2>;

enum class BadPair { none, degenerate, degree_drop, reducible, multi };
std::string to_string(BadPair b);

struct PreimageRecord {
  IntPoint point{};
  std::array<BigRat, 2> value;
  /// Integer points (a, b) with P(a, b) = value, ascending; contains point.
  std::vector<IntPoint> preimages;
  bool degenerate_phi = false;
  bool degenerate_psi = false;
  bool degree_drop_phi = false;
  bool degree_drop_psi = false;
  /// What is left of Phi(z) (resp. Psi(z)) after removing the integer-root
  /// linear factors has at least two irreducible factors.
  bool reducible_a = false;
  bool reducible_b = false;

  /// Single category, by priority degenerate > degree_drop > reducible > multi.
  BadPair category() const;
};

PreimageRecord preimage_count_at(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                 IntPoint point);

struct BadPairCounts {
  std::size_t degenerate = 0;
  std::size_t degree_drop = 0;
  std::size_t reducible = 0;
  std::size_t multi = 0;
  std::size_t total() const { return degenerate + degree_drop + reducible + multi; }
  friend bool operator==(const BadPairCounts&, const BadPairCounts&) = default;
};

inline constexpr std::size_t kMultiPointSample = 20;

struct CensusReport {
  long n = 0;
  std::size_t total_points = 0;
  std::size_t unique_count = 0;
  std::size_t multi_count = 0;
  BadPairCounts bad_pairs;
  /// First kMultiPointSample multi-preimage points in row-major order.
  std::vector<IntPoint> multi_points;
  /// Every multi-preimage record (not serialized; input to symmetry_probe).
  std::vector<PreimageRecord> multi_records;
  double elapsed_ms = 0;
  /// Worker count the scan was split over (not serialized).
  int partition_count = 1;
};

/// Annihilators for both coordinates without the Keller requirement, so
/// non-Keller maps can be run as diagnostics.
std::pair<Annihilator, Annihilator> census_annihilators(const PolyMap& p);

CensusReport injectivity_census(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                long n, int jobs);
CensusReport injectivity_census(const PolyMap& p, long n, int jobs);

struct GrowthSeries {
  /// (N, count), N strictly increasing.
  std::vector<std::pair<long, std::size_t>> entries;
  /// Per-N points left out of the count (zero denominators for the
  /// integrality census; empty otherwise).
  std::vector<std::size_t> excluded;
  std::optional<double> fitted_exponent;
};

/// Least-squares slope of log(count) against log(N); rows with count 0 are
/// dropped. nullopt with fewer than two usable rows.
std::optional<double> fit_exponent(const std::vector<std::pair<long, std::size_t>>& entries);

/// Pairs with A(x0, y0, z) reducible over Q, degree-dropped or identically
/// zero. A lives in Q[x, y, z] and must involve z.
GrowthSeries reducibility_census(const MultiPoly& a, const std::vector<long>& ns, int jobs);

/// Pairs with b(x0, y0) != 0 and a(x0, y0) / b(x0, y0) an integer.
GrowthSeries integrality_census(const MultiPoly& a, const MultiPoly& b, const std::vector<long>& ns,
                                int jobs);

/// Integer points of R(x, y) = 0 in each box.
GrowthSeries variety_point_count(const MultiPoly& r, const std::vector<long>& ns, int jobs);

struct SymmetryDiagnosis {
  PolyMap q;
  int degree = 0;
  PQCheck pq;
  OrderResult order;
  FixedLocus fixed;
  /// Keller P, P o Q = P, Q != identity, yet Q has a rational fixed point.
  bool anomaly = false;
};

/// Fits Q = (phi, psi) of least total degree <= bound (default deg P) that
/// sends each two-preimage point to its other preimage, then checks
/// P o Q = P and analyses Q. nullopt when no record has exactly two
/// preimages or no polynomial of bounded degree fits.
std::optional<SymmetryDiagnosis> symmetry_probe(const PolyMap& p,
                                                const std::vector<PreimageRecord>& records,
                                                std::optional<int> degree_bound = std::nullopt);

/// Machine-readable reports. elapsed_ms is null unless include_timing, so
/// reports of identical runs are byte-identical.
std::string to_json(const CensusReport& report, bool include_timing = false);
std::string to_json(const GrowthSeries& series);
std::string to_csv(const GrowthSeries& series);

namespace reference {

CensusReport injectivity_census(const PolyMap& p, const Annihilator& phi, const Annihilator& psi,
                                long n);
GrowthSeries reducibility_census(const MultiPoly& a, const std::vector<long>& ns);
GrowthSeries integrality_census(const MultiPoly& a, const MultiPoly& b, const std::vector<long>& ns);
GrowthSeries variety_point_count(const MultiPoly& r, const std::vector<long>& ns);

}  // namespace reference

}  // namespace keller::census
