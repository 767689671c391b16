#include "diagonalis/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "diagonalis/errors.hpp"
#include "diagonalis/json_io.hpp"
#include "diagonalis/rng.hpp"
#include "diagonalis/spectra.hpp"

namespace diagonalis::oracle {

using nlohmann::json;

json Membership::to_json() const {
  json j{{"found", found()}, {"residual", residual}, {"restarts_used", restarts_used}, {"sweeps_used", sweeps_used}};
  if (unitary) j["unitary"] = io::to_json(*unitary);
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

namespace {

void require_square(const Matrix& t) {
  if (!t.square() || t.n() == 0) throw InputError("T must be a nonempty square matrix");
}

std::vector<cplx> orbit_diagonal(const Matrix& t, std::uint64_t seed) {
  Matrix u = spectra::haar_unitary(t.n(), seed);
  Matrix m = u * t * u.adjoint();
  std::vector<cplx> d(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) d[i] = m(i, i);
  return d;
}

}  // namespace

std::vector<std::vector<cplx>> sample_diagonals(const Matrix& t, std::uint64_t trials, std::uint64_t seed,
                                                Execution exec) {
  require_square(t);
  std::vector<std::vector<cplx>> out(trials);
  const auto count = static_cast<std::int64_t>(trials);
  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < count; ++i) out[i] = orbit_diagonal(t, trial_seed(seed, i));
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) out[i] = orbit_diagonal(t, trial_seed(seed, i));
  }
  return out;
}

namespace {

/// Point of the elliptical numerical range of a 2 x 2 matrix closest to m.
cplx nearest_in_range(cplx b00, cplx b01, cplx b10, cplx b11, cplx m) {
  const cplx tr = b00 + b11, det = b00 * b11 - b01 * b10;
  const cplx disc = std::sqrt(tr * tr / 4.0 - det);
  const cplx mu1 = tr / 2.0 + disc, mu2 = tr / 2.0 - disc;
  const double frob2 = std::norm(b00) + std::norm(b01) + std::norm(b10) + std::norm(b11);
  const double minor = std::sqrt(std::max(0.0, frob2 - std::norm(mu1) - std::norm(mu2))) / 2;
  const double focal = std::abs(mu1 - mu2) / 2;
  const double major = std::hypot(minor, focal);
  const cplx c = tr / 2.0;
  if (major == 0) return c;
  const cplx axis = focal > 0 ? (mu1 - mu2) / (2 * focal) : cplx(1.0);
  const cplx w = (m - c) * std::conj(axis);
  const double x = w.real(), y = w.imag();
  const bool inside = minor > 0 ? (x * x) / (major * major) + (y * y) / (minor * minor) <= 1
                                : y == 0 && std::abs(x) <= major;
  if (inside) return m;
  auto dist = [&](double s) { return std::hypot(major * std::cos(s) - x, minor * std::sin(s) - y); };
  constexpr int kGrid = 64;
  const double step = 2 * std::acos(-1.0) / kGrid;
  double best = 0, best_d = dist(0);
  for (int k = 1; k < kGrid; ++k)
    if (double dk = dist(k * step); dk < best_d) best = k * step, best_d = dk;
  double lo = best - step, hi = best + step;
  const double golden = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 60; ++it) {
    double a = hi - golden * (hi - lo), b = lo + golden * (hi - lo);
    if (dist(a) < dist(b)) hi = b;
    else lo = a;
  }
  const double s = (lo + hi) / 2;
  return c + axis * cplx(major * std::cos(s), minor * std::sin(s));
}

double diag_residual(const Matrix& m, const std::vector<cplx>& d) {
  double r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) r = std::max(r, std::abs(m(i, i) - d[i]));
  return r;
}

double objective(const Matrix& m, const std::vector<cplx>& d) {
  double f = 0;
  for (std::size_t i = 0; i < d.size(); ++i) f += std::norm(m(i, i) - d[i]);
  return f;
}

/// Optimal 2 x 2 unitary on the (i, j) plane; updates M = U* T U and U in place.
void pair_step(Matrix& m, Matrix& u, std::size_t i, std::size_t j, const std::vector<cplx>& d) {
  const std::size_t n = m.n();
  const cplx tr = m(i, i) + m(j, j);
  const cplx target = nearest_in_range(m(i, i), m(i, j), m(j, i), m(j, j), (d[i] + tr - d[j]) / 2.0);
  Matrix b = Matrix::from_rows({{m(i, i), m(i, j)}, {m(j, i), m(j, j)}});
  auto g = spectra::attain_2x2(b, target, 1e-9 * std::max(1.0, b.frobenius()));
  if (!g) return;
  const cplx g0 = (*g)[0], g1 = (*g)[1];
  for (std::size_t k = 0; k < n; ++k) {
    cplx ui = u(k, i), uj = u(k, j);
    u(k, i) = g0 * ui + g1 * uj;
    u(k, j) = -std::conj(g1) * ui + std::conj(g0) * uj;
    cplx mi = m(k, i), mj = m(k, j);
    m(k, i) = g0 * mi + g1 * mj;
    m(k, j) = -std::conj(g1) * mi + std::conj(g0) * mj;
  }
  for (std::size_t k = 0; k < n; ++k) {
    cplx mi = m(i, k), mj = m(j, k);
    m(i, k) = std::conj(g0) * mi + std::conj(g1) * mj;
    m(j, k) = -g1 * mi + g0 * mj;
  }
}

struct RestartResult {
  std::optional<Matrix> unitary;
  double residual = INFINITY;
  std::uint64_t sweeps = 0;
};

RestartResult run_restart(const Matrix& t, const std::vector<cplx>& d, double tol, std::uint64_t sweeps,
                          std::uint64_t seed, std::uint64_t index) {
  const std::size_t n = t.n();
  RestartResult out;
  Matrix u = index == 0 ? Matrix::identity(n) : spectra::haar_unitary(n, trial_seed(seed, index));
  Matrix m = u.adjoint() * t * u;
  constexpr std::uint64_t kWindow = 25;
  double checkpoint = objective(m, d);
  for (std::uint64_t s = 0;; ++s) {
    double r = diag_residual(m, d);
    out.residual = std::min(out.residual, r);
    if (r <= tol) {
      // Re-verify from scratch before accepting.
      Matrix fresh = u.adjoint() * t * u;
      double rv = diag_residual(fresh, d);
      if (rv <= tol && unitarity_defect(u) <= 1e-10) {
        out.unitary = u;
        out.residual = rv;
        return out;
      }
    }
    if (s == sweeps) break;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pair_step(m, u, i, j, d);
    m = u.adjoint() * t * u;
    out.sweeps = s + 1;
    if (out.sweeps % kWindow == 0) {
      double f = objective(m, d);
      if (checkpoint - f <= 1e-10 * checkpoint) break;  // stagnated
      checkpoint = f;
    }
  }
  return out;
}

}  // namespace

Membership search_membership(const Matrix& t, const std::vector<cplx>& d, double tol, const SearchBudget& budget,
                             std::uint64_t seed, Execution exec) {
  require_square(t);
  if (d.size() != t.n()) throw InputError("d must have one entry per row of T");
  const auto restarts = static_cast<std::int64_t>(budget.restarts);
  std::vector<RestartResult> results(budget.restarts);
  std::atomic<std::int64_t> best(restarts);
  auto body = [&](std::int64_t r) {
    if (r > best.load()) return;
    results[r] = run_restart(t, d, tol, budget.sweeps, seed, static_cast<std::uint64_t>(r));
    if (results[r].unitary) {
      std::int64_t cur = best.load();
      while (r < cur && !best.compare_exchange_weak(cur, r)) {
      }
    }
  };
  if (exec == Execution::Serial) {
    for (std::int64_t r = 0; r < restarts && r <= best.load(); ++r) body(r);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < restarts; ++r) body(r);
  }
  Membership out;
  const std::int64_t last = std::min(best.load(), restarts - 1);
  out.residual = INFINITY;
  for (std::int64_t r = 0; r <= last; ++r) {
    out.sweeps_used += results[r].sweeps;
    out.residual = std::min(out.residual, results[r].residual);
  }
  out.restarts_used = static_cast<std::uint64_t>(last + 1);
  if (best.load() < restarts) {
    out.unitary = results[best.load()].unitary;
    out.residual = results[best.load()].residual;
  } else {
    out.reason = "budget exhausted without a candidate within tolerance";
  }
  if (restarts == 0) out.restarts_used = 0, out.residual = 0;
  return out;
}

major::Verdict rational_majorization_oracle(const std::vector<Rational>& d, const std::vector<Rational>& lambda) {
  if (d.size() != lambda.size() || d.empty()) throw InputError("d and lambda must have the same nonzero length");
  Rational sd = 0, sl = 0;
  for (const auto& x : d) sd += x;
  for (const auto& x : lambda) sl += x;
  if (sd != sl) return major::Verdict::Fails;
  // Both sides of sum (x - t)_+ are convex in t; the right side is linear between its breakpoints.
  auto excess = [](const std::vector<Rational>& v, const Rational& t) {
    Rational s = 0;
    for (const auto& x : v)
      if (x > t) s += x - t;
    return s;
  };
  for (const auto* pts : {&lambda, &d})
    for (const auto& t : *pts)
      if (excess(d, t) > excess(lambda, t)) return major::Verdict::Fails;
  return major::Verdict::Holds;
}

}  // namespace diagonalis::oracle
