// Serial reference vs OpenMP for the parallel kernels; also checks the outputs agree bit for bit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "diagonalis/oracle.hpp"
#include "diagonalis/spectra.hpp"

using namespace diagonalis;
using oracle::Execution;

namespace {

double seconds(const std::function<void()>& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");
  int failures = 0;

  for (std::size_t n : {4, 8, 16}) {
    Matrix t = random_matrix(n, n);
    std::vector<std::vector<cplx>> a, b;
    double ts = seconds([&] { a = oracle::sample_diagonals(t, 20000, 5, Execution::Serial); });
    double tp = seconds([&] { b = oracle::sample_diagonals(t, 20000, 5, Execution::Parallel); });
    char name[64];
    std::snprintf(name, sizeof name, "sample_diagonals n=%zu x20000", n);
    row(name, ts, tp, a == b);
    failures += a != b;
  }

  // A target outside the orbit forces the whole restart budget to run.
  for (std::size_t n : {3, 6}) {
    Matrix t = Matrix::diagonal_real(std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) t(i, i) = static_cast<double>(i);
    std::vector<cplx> d(n, 0.0);
    d[0] = 10.0;
    oracle::Membership a, b;
    oracle::SearchBudget budget{64, 200};
    double ts = seconds([&] { a = oracle::search_membership(t, d, 1e-9, budget, 2, Execution::Serial); }, 1);
    double tp = seconds([&] { b = oracle::search_membership(t, d, 1e-9, budget, 2, Execution::Parallel); }, 1);
    bool same = a.sweeps_used == b.sweeps_used && a.residual == b.residual;
    char name[64];
    std::snprintf(name, sizeof name, "search_membership n=%zu 64 restarts", n);
    row(name, ts, tp, same);
    failures += !same;
  }
  return failures == 0 ? 0 : 1;
}
