#include "diagonalis/constructors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "diagonalis/deciders.hpp"
#include "diagonalis/errors.hpp"
#include "diagonalis/json_io.hpp"
#include "diagonalis/rng.hpp"
#include "diagonalis/spectra.hpp"

namespace diagonalis::construct {

using nlohmann::json;

json Realization::to_json() const {
  return {{"method", method},
          {"kind", is_basis ? "basis" : "matrix"},
          {"matrix", io::to_json(matrix)},
          {"residuals", {{"spectral", residuals.spectral}, {"diagonal", residuals.diagonal}}}};
}

json SearchOutcome::to_json() const {
  json j{{"found", realization.has_value()}, {"restarts_used", restarts_used}};
  if (realization) j["realization"] = realization->to_json();
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

json KadisonBlock::to_json() const {
  json j{{"entries", io::to_json(entries)},
         {"rank", rank},
         {"padding", padding},
         {"ones", io::to_json(ones)},
         {"zeros", io::to_json(zeros)}};
  if (block) j["block"] = block->to_json();
  return j;
}

namespace {

std::vector<double> doubles(const std::vector<Real>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Real orthogonal V with diag(V^T diag(h) V) = d, for d majorized by h.
Matrix givens_chain(const std::vector<double>& h, const std::vector<double>& d) {
  const std::size_t n = h.size();
  Matrix a = Matrix::diagonal_real(h);
  Matrix g = Matrix::identity(n);
  const double eps = 1e-15 * std::max(1.0, max_abs(h));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] > d[j]; });
  std::vector<std::size_t> active(n), pos(n);
  std::iota(active.begin(), active.end(), 0);
  for (std::size_t target : order) {
    const double dt = d[target];
    std::stable_sort(active.begin(), active.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    std::size_t k = 0;
    while (k < active.size() && a(active[k], active[k]).real() > dt + eps) ++k;
    std::size_t fixed;
    if (k == active.size()) {
      fixed = active.back();
    } else if (k == 0 || std::abs(a(active[k], active[k]).real() - dt) <= eps) {
      fixed = active[k];
    } else {
      const std::size_t p = active[k - 1], q = active[k];
      const double hi = a(p, p).real(), lo = a(q, q).real();
      const double c2 = std::clamp((dt - lo) / (hi - lo), 0.0, 1.0);
      const double c = std::sqrt(c2), s = std::sqrt(1 - c2);
      // A <- R^T A R and G <- G R with R the rotation in the (p, q) plane.
      for (std::size_t i = 0; i < n; ++i) {
        cplx ap = a(i, p), aq = a(i, q);
        a(i, p) = c * ap - s * aq;
        a(i, q) = s * ap + c * aq;
        cplx gp = g(i, p), gq = g(i, q);
        g(i, p) = c * gp - s * gq;
        g(i, q) = s * gp + c * gq;
      }
      for (std::size_t j = 0; j < n; ++j) {
        cplx ap = a(p, j), aq = a(q, j);
        a(p, j) = c * ap - s * aq;
        a(q, j) = s * ap + c * aq;
      }
      fixed = p;
    }
    pos[target] = fixed;
    active.erase(std::find(active.begin(), active.end(), fixed));
  }
  Matrix v(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r) v(r, i) = g(r, pos[i]);
  return v;
}

Matrix real_symmetric_part(const Matrix& m) {
  Matrix out(m.n());
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) out(i, j) = 0.5 * (m(i, j).real() + m(j, i).real());
  return out;
}

double diagonal_residual(const Matrix& m, const std::vector<cplx>& d) {
  double r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) r = std::max(r, std::abs(m(i, i) - d[i]));
  return r;
}

std::vector<cplx> to_cplx(const std::vector<double>& v) { return {v.begin(), v.end()}; }
std::vector<cplx> to_cplx(const std::vector<Complex>& v) {
  std::vector<cplx> out;
  for (const auto& z : v) out.push_back(z.to_std());
  return out;
}

double spectral_residual(std::vector<double> got, std::vector<double> want) {
  std::sort(got.begin(), got.end(), std::greater<>());
  std::sort(want.begin(), want.end(), std::greater<>());
  double r = 0;
  for (std::size_t i = 0; i < got.size(); ++i) r = std::max(r, std::abs(got[i] - want[i]));
  return r;
}

void require(const Realization& r, double tol, const char* what) {
  if (!(r.residuals.spectral <= tol) || !(r.residuals.diagonal <= tol))
    throw ConvergenceError(std::string(what) + ": verification failed (spectral " +
                           std::to_string(r.residuals.spectral) + ", diagonal " + std::to_string(r.residuals.diagonal) +
                           ")");
}

void require_yes(const decide::Decision& dec, const char* what) {
  if (dec.verdict != decide::Verdict::Yes)
    throw PreconditionError(std::string(what) + " requires a Yes verdict, got " + decide::to_string(dec.verdict) +
                            (dec.reason.empty() ? "" : ": " + dec.reason));
}

Realization schur_horn_unchecked(const std::vector<double>& h, const std::vector<double>& d, double tol,
                                 const char* method) {
  Matrix v = givens_chain(h, d);
  Realization r;
  r.matrix = real_symmetric_part(v.transpose() * Matrix::diagonal_real(h) * v);
  r.method = method;
  r.residuals.spectral = spectral_residual(spectra::hermitian_eigenvalues(r.matrix), h);
  r.residuals.diagonal = diagonal_residual(r.matrix, to_cplx(d));
  require(r, tol * std::max(1.0, max_abs(h)), method);
  return r;
}

}  // namespace

Realization construct_schur_horn(const std::vector<Real>& lambda, const std::vector<Real>& d, double tol) {
  require_yes(decide::decide_schur_horn(lambda, d), "construct_schur_horn");
  return schur_horn_unchecked(doubles(lambda), doubles(d), tol, "givens-chain");
}

namespace {

/// Perfect matching on entries above thresh (Kuhn's augmenting paths); match[i] = column of row i.
std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<double>>& m, double thresh) {
  const std::size_t n = m.size();
  std::vector<std::size_t> col_of(n, SIZE_MAX), row_of(n, SIZE_MAX);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] <= thresh || seen[j]) continue;
      seen[j] = 1;
      if (row_of[j] == SIZE_MAX || augment(row_of[j])) {
        row_of[j] = i;
        col_of[i] = j;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return std::nullopt;
  }
  return col_of;
}

/// Nonzero alpha with sum alpha_k v_k = 0 and sum alpha_k = 0, by Gaussian elimination.
std::vector<double> affine_dependence(const std::vector<std::vector<double>>& pts) {
  const std::size_t k = pts.size(), rows = pts[0].size() + 1;
  std::vector<std::vector<double>> a(rows, std::vector<double>(k));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r + 1 < rows; ++r) a[r][c] = pts[c][r];
    a[rows - 1][c] = 1;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
    if (std::abs(a[best][c]) < 1e-12) continue;
    std::swap(a[best], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::size_t free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
  std::vector<double> alpha(k, 0.0);
  alpha[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) alpha[pivot_col[i]] = -a[i][free_col] / a[i][pivot_col[i]];
  return alpha;
}

}  // namespace

std::vector<WeightedPermutation> convex_decomposition(const std::vector<Real>& lambda, const std::vector<Real>& d,
                                                      double tol) {
  require_yes(decide::decide_schur_horn(lambda, d), "convex_decomposition");
  const std::vector<double> h = doubles(lambda), dd = doubles(d);
  const std::size_t n = h.size();
  // d_i = sum_j V_ji^2 h_j, so S_ij = V_ji^2 is doubly stochastic with d = S h.
  Matrix v = givens_chain(h, dd);
  std::vector<std::vector<double>> s(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = std::norm(v(j, i));

  std::vector<WeightedPermutation> out;
  for (std::size_t iter = 0; iter <= n * n; ++iter) {
    double mass = 0;
    for (const auto& row : s) mass = std::max(mass, std::accumulate(row.begin(), row.end(), 0.0));
    if (mass < 1e-13) break;
    auto match = perfect_matching(s, 1e-14);
    if (!match) break;
    double w = 1;
    for (std::size_t i = 0; i < n; ++i) w = std::min(w, s[i][(*match)[i]]);
    for (std::size_t i = 0; i < n; ++i) s[i][(*match)[i]] -= w;
    auto same = std::find_if(out.begin(), out.end(), [&](const WeightedPermutation& p) { return p.perm == *match; });
    if (same != out.end()) same->weight += w;
    else out.push_back({w, *match});
  }

  // Caratheodory: the points lambda_perm lie in an (n-1)-dimensional affine space.
  while (out.size() > n) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : out) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = h[p.perm[i]];
      pts.push_back(x);
    }
    std::vector<double> alpha = affine_dependence(pts);
    if (std::none_of(alpha.begin(), alpha.end(), [](double a) { return a > 0; }))
      for (auto& a : alpha) a = -a;
    double tau = INFINITY;
    std::size_t drop = 0;
    for (std::size_t k = 0; k < out.size(); ++k)
      if (alpha[k] > 1e-14 && out[k].weight / alpha[k] < tau) tau = out[k].weight / alpha[k], drop = k;
    for (std::size_t k = 0; k < out.size(); ++k) out[k].weight -= tau * alpha[k];
    out[drop].weight = 0;
    out.erase(std::remove_if(out.begin(), out.end(), [](const WeightedPermutation& p) { return p.weight <= 1e-15; }),
              out.end());
  }
  double total = 0;
  for (const auto& p : out) total += p.weight;
  for (auto& p : out) p.weight /= total;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });

  double residual = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0;
    for (const auto& p : out) x += p.weight * h[p.perm[i]];
    residual = std::max(residual, std::abs(x - dd[i]));
  }
  if (!(residual <= tol * std::max(1.0, max_abs(h))))
    throw ConvergenceError("convex_decomposition: reconstruction residual " + std::to_string(residual));
  return out;
}

Realization construct_projection_with_diagonal(const std::vector<Real>& d, double tol) {
  if (d.empty()) throw InputError("d must be nonempty");
  Real sum = 0;
  for (const auto& x : d) {
    if (leq_zone(x, Real(1), 1e-12) == Zone::Violated || leq_zone(Real(0), x, 1e-12) == Zone::Violated)
      throw InputError("projection diagonal entries must lie in [0, 1]");
    sum += x;
  }
  const bool exact = sum.exact();
  Real r = (sum + (exact ? Real::ratio(1, 2) : Real(0.5))).floor();
  if (exact ? !sum.is_integer() : std::abs(sum.to_double() - r.to_double()) > 1e-9)
    throw InputError("the diagonal of a projection must have an integer sum");
  const auto rank = static_cast<std::size_t>(r.to_double());
  std::vector<double> h(d.size(), 0.0);
  for (std::size_t i = 0; i < rank; ++i) h[i] = 1.0;
  Realization out = schur_horn_unchecked(h, doubles(d), tol, "projection-via-schur-horn");
  out.residuals.spectral = std::max(out.residuals.spectral, (out.matrix * out.matrix - out.matrix).frobenius());
  require(out, tol, "construct_projection_with_diagonal");
  return out;
}

KadisonBlock construct_kadison_block(const seq::SequenceSpec& d, double tol) {
  require_yes(decide::decide_kadison(d), "construct_kadison_block");
  KadisonBlock out;
  out.ones = 0;
  out.zeros = 0;
  auto add = [](seq::Count& c, const seq::Count& k) {
    if (!c || !k) c.reset();
    else *c += *k;
  };
  auto classify = [&](const Complex& v, const seq::Count& count) {
    if (v.re.is_zero()) return add(out.zeros, count);
    if (v.re == Real(1)) return add(out.ones, count);
    if (!count || *count > 1000000) throw UnsupportedError("infinitely many entries outside {0, 1}");
    for (std::uint64_t k = 0; k < *count; ++k) out.entries.push_back(v.re);
  };
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case seq::StreamKind::Finite:
        for (const auto& v : a.values) classify(v, 1);
        break;
      case seq::StreamKind::Constant:
        classify(a.value, a.count);
        break;
      default:
        throw UnsupportedError("infinitely many entries outside {0, 1}");
    }
  }
  if (!out.entries.empty()) {
    // The deviating entries already have integer sum a - b + #{d >= 1/2}; no padding is needed.
    out.block = construct_projection_with_diagonal(out.entries, tol);
    double tr = 0;
    for (const auto& x : out.entries) tr += x.to_double();
    out.rank = static_cast<std::uint64_t>(std::llround(tr));
  }
  return out;
}

Realization construct_zero_diagonal_basis(const Matrix& t, double tol) {
  if (!t.square() || t.n() == 0) throw InputError("T must be a nonempty square matrix");
  const std::size_t n = t.n();
  const double scale = std::max(1.0, t.frobenius());
  if (std::abs(t.trace()) > tol * scale) throw PreconditionError("T must have trace zero");
  std::vector<Vec> fixed;
  Matrix w = Matrix::identity(n);  // columns span the remaining subspace
  for (std::size_t m = n; m >= 2; --m) {
    Matrix c = w.adjoint() * t * w;
    if (std::abs(c.trace()) > tol * scale) throw ConvergenceError("trace drifted during deflation");
    Vec x = spectra::attain_numerical_range_vector(c, 0.0, std::min(tol, spectra::kAttainTol) * 1e-2);
    Matrix b = complete_basis({x}, m);
    Matrix rest(m, m - 1);
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) rest(i, j - 1) = b(i, j);
    fixed.push_back(w * x);
    w = w * rest;
  }
  fixed.push_back(w.column(0));
  Realization r;
  r.matrix = Matrix::from_columns(fixed);
  r.is_basis = true;
  r.method = "numerical-range-deflation";
  r.residuals.spectral = unitarity_defect(r.matrix);
  r.residuals.diagonal = diagonal_residual(r.matrix.adjoint() * t * r.matrix, std::vector<cplx>(n, 0.0));
  require(r, tol, "construct_zero_diagonal_basis");
  return r;
}

namespace {

/// Moduli and unit phases of d.
void polar(const std::vector<Complex>& d, std::vector<double>& a, std::vector<cplx>& phase) {
  for (const auto& z : d) {
    cplx x = z.to_std();
    double m = std::abs(x);
    a.push_back(m);
    phase.push_back(m > 0 ? x / m : cplx(1.0));
  }
}

Matrix unitary_from_moduli(const std::vector<double>& a) {
  const std::size_t n = a.size();
  if (n == 1) return Matrix::identity(1);
  const double sum = std::accumulate(a.begin(), a.end(), 0.0);
  const double deficit = static_cast<double>(n) - sum;
  // Diagonal of Q^T (I_p + R(theta) + -I_q) Q equals that of Q^T diag(1^p, c, c, (-1)^q) Q.
  std::size_t q = deficit <= 4 ? 0 : static_cast<std::size_t>(std::ceil(deficit / 2 - 2));
  std::size_t p = n - 2 - q;
  double c = std::clamp((sum - static_cast<double>(p) + static_cast<double>(q)) / 2, -1.0, 1.0);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = i < p ? 1.0 : i < p + 2 ? c : -1.0;
  Matrix v = givens_chain(h, a);
  Matrix b = Matrix::diagonal_real(h);
  double s = std::sqrt(std::max(0.0, 1 - c * c));
  b(p, p + 1) = -s;
  b(p + 1, p) = s;
  return v.transpose() * b * v;
}

}  // namespace

Realization construct_unitary_with_diagonal(const std::vector<Complex>& d, double tol) {
  require_yes(decide::decide_horn_unitary(d, decide::HornVariant::Unitary), "construct_unitary_with_diagonal");
  std::vector<double> a;
  std::vector<cplx> phase;
  polar(d, a, phase);
  Matrix o = unitary_from_moduli(a);
  Realization r;
  r.matrix = o * Matrix::diagonal(phase);
  r.method = "rotation-block-schur-horn";
  r.residuals.spectral = unitarity_defect(r.matrix);
  r.residuals.diagonal = diagonal_residual(r.matrix, to_cplx(d));
  require(r, tol, "construct_unitary_with_diagonal");
  return r;
}

namespace {

std::optional<Matrix> thompson_2x2(const std::vector<double>& s, const std::vector<double>& a) {
  const double x = a[0], y = a[1];
  const double big = s[0] * s[0] + s[1] * s[1] - x * x - y * y;
  for (double sign : {-1.0, 1.0}) {
    const double m = x * y + sign * s[0] * s[1];
    const double slack = 1e-12 * std::max(1.0, s[0] * s[0]);
    if (big + slack < 2 * std::abs(m)) continue;
    const double u = std::sqrt(std::max(0.0, big + 2 * m)), v = std::sqrt(std::max(0.0, big - 2 * m));
    return Matrix::from_rows({{x, (u + v) / 2}, {(u - v) / 2, y}});
  }
  return std::nullopt;
}

Realization thompson_realization(Matrix t, const std::vector<double>& s, const std::vector<Complex>& d,
                                 const char* method) {
  Realization r;
  r.matrix = std::move(t);
  r.method = method;
  r.residuals.spectral = spectral_residual(spectra::singular_values(r.matrix), s);
  r.residuals.diagonal = diagonal_residual(r.matrix, to_cplx(d));
  return r;
}

}  // namespace

SearchOutcome construct_thompson(const std::vector<Real>& s, const std::vector<Complex>& d, double tol,
                                 const SearchBudget& budget) {
  require_yes(decide::decide_thompson(s, d), "construct_thompson");
  const std::vector<double> sv = doubles(s);
  const std::size_t n = sv.size();
  const double scale = std::max(1.0, sv[0]);
  std::vector<double> a;
  std::vector<cplx> phase;
  polar(d, a, phase);
  SearchOutcome out;
  auto accept = [&](Realization r) {
    require(r, tol * scale, "construct_thompson");
    out.realization = std::move(r);
    return out;
  };
  if (n == 1) return accept(thompson_realization(Matrix::diagonal(to_cplx(d)), sv, d, "thompson-1x1"));
  if (n == 2) {
    auto t = thompson_2x2(sv, a);
    if (!t) throw ConvergenceError("construct_thompson: 2x2 closed form has no real solution");
    return accept(thompson_realization(Matrix::diagonal(phase) * *t, sv, d, "thompson-2x2-closed-form"));
  }
  if (sv.front() == sv.back()) {
    const double sigma = sv.front();
    if (sigma == 0) return accept(thompson_realization(Matrix(n), sv, d, "thompson-zero"));
    std::vector<Complex> scaled;
    for (const auto& z : d) scaled.push_back(Complex(z.to_std() / sigma));
    Matrix u = construct_unitary_with_diagonal(scaled, tol).matrix;
    return accept(thompson_realization(u * cplx(sigma), sv, d, "thompson-scaled-unitary"));
  }

  // Alternating projections between {diag = d} and {singular values = s}.
  const std::vector<cplx> target = to_cplx(d);
  const std::int64_t restarts = static_cast<std::int64_t>(budget.restarts);
  std::vector<std::optional<Matrix>> found(budget.restarts);
  std::atomic<std::int64_t> best(restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < restarts; ++r) {
    if (r > best.load()) continue;
    std::uint64_t seed = trial_seed(budget.seed, static_cast<std::uint64_t>(r));
    Matrix x = spectra::haar_unitary(n, seed) * Matrix::diagonal_real(sv) * spectra::haar_unitary(n, splitmix64(seed));
    for (std::uint64_t sweep = 0; sweep < budget.sweeps; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) x(i, i) = target[i];
      SVD f = svd(x);
      x = f.u * Matrix::diagonal_real(sv) * f.v.adjoint();
      if (diagonal_residual(x, target) <= 0.5 * tol * scale) {
        found[r] = x;
        std::int64_t cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
        break;
      }
    }
  }
  const std::int64_t idx = best.load();
  if (idx == restarts) {
    out.restarts_used = budget.restarts;
    out.reason = "no candidate within tolerance after the restart budget";
    return out;
  }
  out.restarts_used = static_cast<std::uint64_t>(idx) + 1;
  return accept(thompson_realization(*found[idx], sv, d, "thompson-alternating-projections"));
}

SearchOutcome construct_williams(const std::vector<Complex>& lambda, const std::vector<Complex>& d, double tol) {
  require_yes(decide::decide_williams_3x3(lambda, d), "construct_williams");
  const std::vector<cplx> l = to_cplx(lambda), dd = to_cplx(d);
  const Matrix nmat = Matrix::diagonal(l);
  double scale = 1;
  for (auto z : l) scale = std::max(scale, std::abs(z));
  SearchOutcome out;
  out.restarts_used = 1;
  auto cross2 = [](cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); };
  const double area = cross2(l[1] - l[0], l[2] - l[0]);
  Matrix basis;
  std::string method;
  if (std::abs(area) <= 1e-12 * scale * scale) {
    // Collinear spectrum: a real rotation along the line.
    std::size_t far = std::norm(l[2] - l[0]) > std::norm(l[1] - l[0]) ? 2 : 1;
    cplx u = l[far] - l[0];
    std::vector<double> tl, td;
    if (std::norm(u) == 0) {
      basis = Matrix::identity(3);
    } else {
      for (auto z : l) tl.push_back(((z - l[0]) * std::conj(u)).real() / std::norm(u));
      for (auto z : dd) td.push_back(((z - l[0]) * std::conj(u)).real() / std::norm(u));
      basis = givens_chain(tl, td);
    }
    method = "williams-collinear-givens";
  } else {
    // |x_i|^2 are the barycentrics of d1; every such x gives the same compression up to unitary equivalence.
    Vec x(3);
    double total = 0;
    std::vector<double> bary(3);
    for (int i = 0; i < 3; ++i) {
      bary[i] = std::max(0.0, cross2(l[(i + 1) % 3] - dd[0], l[(i + 2) % 3] - dd[0]) / area);
      total += bary[i];
    }
    for (int i = 0; i < 3; ++i) x[i] = std::sqrt(bary[i] / total);
    Matrix w = complete_basis({x}, 3);
    Matrix perp(3, 2);
    for (std::size_t i = 0; i < 3; ++i) perp(i, 0) = w(i, 1), perp(i, 1) = w(i, 2);
    Matrix b = perp.adjoint() * nmat * perp;
    auto y2 = spectra::attain_2x2(b, dd[1], tol * scale);
    if (!y2) {
      out.reason = "d2 is not in the numerical range of the compression";
      return out;
    }
    Vec y = perp * *y2;
    Matrix full = complete_basis({x, y}, 3);
    basis = full;
    method = "williams-barycentric";
  }
  Realization r;
  r.matrix = basis;
  r.is_basis = true;
  r.method = method;
  r.residuals.spectral = unitarity_defect(basis);
  r.residuals.diagonal = diagonal_residual(basis.adjoint() * nmat * basis, dd);
  require(r, tol * scale, "construct_williams");
  out.realization = std::move(r);
  return out;
}

}  // namespace diagonalis::construct
