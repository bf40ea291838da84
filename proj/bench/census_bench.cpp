// Serial reference vs. OpenMP row kernels on two censuses. Checks that the
// reports agree and prints wall times.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "keller/census.hpp"

using namespace keller;

namespace {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const long n = argc > 1 ? std::atol(argv[1]) : 40;
  const int jobs = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  bool ok = true;

  {
    const PolyMap p({x + y * y, y});
    const auto [phi, psi] = census::census_annihilators(p);
    census::CensusReport serial, parallel;
    const double ts = time_ms([&] { serial = census::reference::injectivity_census(p, phi, psi, n); });
    const double tp = time_ms([&] { parallel = census::injectivity_census(p, phi, psi, n, jobs); });
    const bool same = census::to_json(serial) == census::to_json(parallel);
    ok = ok && same;
    std::cout << "preimage  N=" << n << "  serial " << ts << " ms  parallel(" << jobs << ") " << tp
              << " ms  " << (same ? "match" : "MISMATCH") << "\n";
  }
  {
    const MultiPoly X = MultiPoly::variable(3, 0), Y = MultiPoly::variable(3, 1), Z = MultiPoly::variable(3, 2);
    const MultiPoly a = Z * Z - (X * X + Y);
    const std::vector<long> ns{n / 4, n / 2, n};
    census::GrowthSeries serial, parallel;
    const double ts = time_ms([&] { serial = census::reference::reducibility_census(a, ns); });
    const double tp = time_ms([&] { parallel = census::reducibility_census(a, ns, jobs); });
    const bool same = census::to_json(serial) == census::to_json(parallel);
    ok = ok && same;
    std::cout << "reducible N=" << n << "  serial " << ts << " ms  parallel(" << jobs << ") " << tp
              << " ms  " << (same ? "match" : "MISMATCH") << "\n";
  }
  return ok ? 0 : 1;
}
