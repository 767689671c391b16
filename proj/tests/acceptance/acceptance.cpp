// Acceptance criteria: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "diagonalis/constructors.hpp"
#include "diagonalis/deciders.hpp"
#include "diagonalis/majorization.hpp"
#include "diagonalis/oracle.hpp"
#include "diagonalis/spectra.hpp"

using namespace diagonalis;
using decide::Verdict;
using seq::SequenceSpec;
using seq::Stream;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Real q(long long p, long long d = 1) { return Real::ratio(p, d); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<Real> reals(const std::vector<double>& v) { return {v.begin(), v.end()}; }

std::vector<Complex> complexes(const std::vector<cplx>& v) {
  std::vector<Complex> out;
  for (auto z : v) out.push_back(Complex(z));
  return out;
}

Matrix gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Outcome schur_horn_round_trip() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst_eig = 0, worst_diag = 0;
  int bad = 0;
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + rng() % 12;
    std::vector<double> lambda(n), d(n, 0.0);
    for (auto& x : lambda) x = u(rng);
    // Orthostochastic S_ij = |U_ij|^2 from a Haar unitary.
    Matrix w = spectra::haar_unitary(n, rng());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i] += std::norm(w(i, j)) * lambda[j];
    if (decide::decide_schur_horn(reals(lambda), reals(d)).verdict != Verdict::Yes) {
      ++bad;
      continue;
    }
    auto r = construct::construct_schur_horn(reals(lambda), reals(d));
    auto ev = spectra::hermitian_eigenvalues(r.matrix);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    for (std::size_t i = 0; i < n; ++i) {
      worst_eig = std::max(worst_eig, std::abs(ev[i] - lambda[i]));
      worst_diag = std::max(worst_diag, std::abs(r.matrix(i, i).real() - d[i]));
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome o;
  o.pass = bad == 0 && worst_eig <= 1e-8 && worst_diag <= 1e-10 && secs <= 60;
  o.detail = "non-Yes " + std::to_string(bad) + ", max eig residual " + fmt("%.2e", worst_eig) +
             ", max diag residual " + fmt("%.2e", worst_diag) + ", " + fmt("%.1f s", secs);
  return o;
}

Outcome schur_sampling() {
  std::mt19937_64 rng(202);
  long failures = 0, total = 0;
  for (int k = 0; k < 20; ++k) {
    std::size_t n = 1 + rng() % 8;
    Matrix m = gaussian(n, rng);
    Matrix h = (m + m.adjoint()) * cplx(0.5);
    auto lambda = reals(spectra::hermitian_eigenvalues(h));
    for (const auto& d : oracle::sample_diagonals(h, 10000, 1000 + k)) {
      std::vector<Real> dr;
      for (auto z : d) dr.push_back(z.real());
      failures += decide::decide_schur_horn(lambda, dr).verdict != Verdict::Yes;
      ++total;
    }
  }
  return {failures == 0, std::to_string(total) + " samples, " + std::to_string(failures) + " failures"};
}

Outcome hoffman() {
  std::mt19937_64 rng(303);
  std::normal_distribution<double> g;
  int rejected = 0, not_found = 0, triples = 0;
  while (triples < 100) {
    std::vector<cplx> l{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    double area = ((l[1] - l[0]) * std::conj(l[2] - l[0])).imag();
    if (std::abs(area) < 1e-3) continue;
    ++triples;
    std::vector<cplx> mid{(l[0] + l[1]) / 2.0, (l[1] + l[2]) / 2.0, (l[2] + l[0]) / 2.0};
    rejected += decide::decide_williams_3x3(complexes(l), complexes(mid)).verdict == Verdict::No;
    auto s = oracle::search_membership(Matrix::diagonal(l), mid, 1e-6, {50, 2000}, triples);
    not_found += !s.found();
  }
  long accepted = 0, total = 0;
  for (int k = 0; k < 20; ++k) {
    std::vector<cplx> l{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    Matrix u = spectra::haar_unitary(3, rng());
    Matrix n = u * Matrix::diagonal(l) * u.adjoint();
    for (const auto& d : oracle::sample_diagonals(n, 10000, 2000 + k)) {
      accepted += decide::decide_williams_3x3(complexes(l), complexes(d)).verdict == Verdict::Yes;
      ++total;
    }
  }
  Outcome o;
  o.pass = rejected == 100 && not_found == 100 && accepted == total;
  o.detail = "midpoint rejected " + std::to_string(rejected) + "/100, search NotFound " + std::to_string(not_found) +
             "/100, sampled accepted " + std::to_string(accepted) + "/" + std::to_string(total);
  return o;
}

Outcome kadison() {
  auto zero = Stream::constant(Complex(Real(0)));
  auto yes = decide::decide_kadison(SequenceSpec::of({Stream::finite_real({q(1, 2), q(1, 2)}), zero}));
  auto no = decide::decide_kadison(SequenceSpec::of({Stream::finite_real({q(1, 3)}), zero}));
  bool exact_ok = yes.verdict == Verdict::Yes && yes.certificate["a_minus_b"] == "-1" && yes.mode == major::Mode::Exact &&
                  no.verdict == Verdict::No && no.certificate["a_minus_b"] == "1/3" && no.mode == major::Mode::Exact;
  std::mt19937_64 rng(404);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 1 + rng() % 12, r = rng() % (n + 1);
    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < r; ++i) h[i] = 1;
    Matrix u = spectra::haar_unitary(n, rng());
    Matrix p = u * Matrix::diagonal_real(h) * u.adjoint();
    worst = std::max(worst, decide::verify_kadison_codimension_identity(p).residual);
  }
  return {exact_ok && worst <= 1e-9, std::string("exact verdicts ") + (exact_ok ? "ok" : "wrong") +
                                         ", max identity residual " + fmt("%.2e", worst)};
}

Outcome bownik_jasper() {
  std::vector<Real> pts{0, q(1, 3), 1};
  auto zero = Stream::constant(Complex(Real(0))), one = Stream::constant(Complex(Real(1)));
  auto yes = decide::decide_bownik_jasper(pts, SequenceSpec::of({Stream::finite_real({q(1, 3)}), zero, one}));
  auto no = decide::decide_bownik_jasper(pts, SequenceSpec::of({Stream::finite_real({q(1, 4)}), zero, one}));
  const auto& c = yes.certificate;
  bool ok = yes.verdict == Verdict::Yes && c["N"] == nlohmann::json({1}) && c["k"] == "0" &&
            c["inequality_lhs"][0] == "2/9" && c["inequality_rhs"][0] == "2/9" && no.verdict == Verdict::No;
  return {ok, "N=" + c["N"].dump() + " k=" + c["k"].dump() + " lhs=" + c["inequality_lhs"][0].dump() +
                  " rhs=" + c["inequality_rhs"][0].dump() + ", 1/4 variant " + decide::to_string(no.verdict)};
}

Outcome p_ladder() {
  auto t0 = std::chrono::steady_clock::now();
  auto tele = SequenceSpec::of({Stream::telescoping(Complex(Real(1)), 1)});
  auto geo = SequenceSpec::of({Stream::geometric(Complex(q(1, 2)), q(1, 2))});
  bool ok = true;
  std::string detail;
  for (major::PLevel p : {major::PLevel(0), major::PLevel(1), major::PLevel(5), major::PLevel::infinity()}) {
    auto v = major::p_majorize(tele, geo, p);
    ok = ok && v.verdict == major::Verdict::Holds && v.mode == major::Mode::Exact;
    detail += "p=" + p.str() + ":" + major::to_string(v.verdict) + " ";
  }
  auto approx = major::approx_p_majorize(tele, geo, major::PLevel::infinity());
  ok = ok && approx.verdict == major::Verdict::Holds;
  auto self = major::p_majorize(geo, geo, 1);
  ok = ok && self.verdict == major::Verdict::Fails;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 1;
  return {ok, detail + "approx(inf):" + major::to_string(approx.verdict) + " self p=1:" +
                  major::to_string(self.verdict) + ", " + fmt("%.3f s", secs)};
}

Outcome unitary_diagonals() {
  auto one = Stream::constant(Complex(Real(1)));
  auto no = decide::decide_jlw_unitary(SequenceSpec::of({Stream::finite_real({q(1, 2)}), one}));
  auto yes = decide::decide_jlw_unitary(SequenceSpec::of({Stream::finite_real({q(1, 2), q(1, 2)}), one}));
  bool boundary = no.verdict == Verdict::No && yes.verdict == Verdict::Yes;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-1, 1);
  int built = 0;
  double worst_u = 0, worst_d = 0;
  while (built < 200) {
    std::size_t n = 1 + rng() % 8;
    std::vector<Complex> d;
    if (built % 2 == 0) {
      Matrix w = spectra::haar_unitary(n, rng());
      for (std::size_t i = 0; i < n; ++i) d.push_back(Complex(w(i, i)));
    } else {
      for (std::size_t i = 0; i < n; ++i) d.push_back(Complex(cplx(u(rng), u(rng)) / std::sqrt(2.0)));
    }
    if (decide::decide_horn_unitary(d, decide::HornVariant::Unitary).verdict != Verdict::Yes) continue;
    auto r = construct::construct_unitary_with_diagonal(d);
    worst_u = std::max(worst_u, unitarity_defect(r.matrix));
    for (std::size_t i = 0; i < n; ++i) worst_d = std::max(worst_d, std::abs(r.matrix(i, i) - d[i].to_std()));
    ++built;
  }
  Outcome o;
  o.pass = boundary && worst_u <= 1e-9 && worst_d <= 1e-9;
  o.detail = std::string("boundary ") + decide::to_string(no.verdict) + "/" + decide::to_string(yes.verdict) +
             ", max |U*U-I| " + fmt("%.2e", worst_u) + ", max diag error " + fmt("%.2e", worst_d);
  return o;
}

Outcome thompson() {
  std::vector<Complex> d{Complex(1.5), Complex(1.4)};
  auto yes = decide::decide_thompson({2.0, 1.0}, d);
  auto r = construct::construct_thompson({2.0, 1.0}, d);
  bool built = r.realization && r.realization->residuals.spectral <= 1e-9 && r.realization->residuals.diagonal <= 1e-9;
  auto no = decide::decide_thompson({2, 1}, {Complex(Real(2)), Complex(Real(0))});
  auto s = oracle::search_membership(Matrix::diagonal_real({2, 1}), {2.0, 0.0}, 1e-9, {}, 8);
  Outcome o;
  o.pass = yes.verdict == Verdict::Yes && built && no.verdict == Verdict::No && !s.found();
  o.detail = std::string("(1.5,1.4) ") + decide::to_string(yes.verdict) + " residuals " +
             (r.realization ? fmt("%.1e", r.realization->residuals.spectral) + "/" +
                                  fmt("%.1e", r.realization->residuals.diagonal)
                            : std::string("none")) +
             ", (2,0) " + decide::to_string(no.verdict) + ", search " + (s.found() ? "Found" : "NotFound");
  return o;
}

Outcome zero_diagonal() {
  std::mt19937_64 rng(909);
  double worst_d = 0, worst_u = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 10;
    Matrix m = gaussian(n, rng);
    cplx shift = m.trace() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= shift;
    auto r = construct::construct_zero_diagonal_basis(m);
    Matrix image = r.matrix.adjoint() * m * r.matrix;
    for (std::size_t i = 0; i < n; ++i) worst_d = std::max(worst_d, std::abs(image(i, i)));
    worst_u = std::max(worst_u, unitarity_defect(r.matrix));
  }
  return {worst_d <= 1e-9 && worst_u <= 1e-10,
          "max |diag| " + fmt("%.2e", worst_d) + ", max unitarity defect " + fmt("%.2e", worst_u)};
}

Outcome three_point() {
  std::vector<spectra::SpectrumPoint> pts{{Complex(Real(0)), std::nullopt},
                                          {Complex(q(1, 2)), std::nullopt},
                                          {Complex(Real(1)), std::nullopt}};
  auto t = spectra::OperatorSpec::finite_spectrum(pts);
  auto half = SequenceSpec::of({Stream::constant(Complex(q(1, 2)))});
  auto zeros = SequenceSpec::of({Stream::constant(Complex(Real(0)))});
  auto padded = SequenceSpec::of({Stream::finite_real({0, 0, 0, 0, 0}), Stream::constant(Complex(q(1, 2)))});
  std::vector<std::pair<SequenceSpec, Verdict>> cases{{half, Verdict::Yes}, {zeros, Verdict::No}, {padded, Verdict::Yes}};
  bool ok = true;
  std::string detail;
  for (const auto& [d, want] : cases) {
    auto v = decide::decide_three_point(t, d).verdict;
    ok = ok && v == want;
    detail += decide::to_string(v) + " ";
  }
  int invariant = 0, checked = 0;
  for (auto [a, b] : std::vector<std::pair<Real, Real>>{{2, 3}, {-1, 1}, {q(1, 3), q(-5, 7)}, {q(-7, 2), 0}}) {
    auto ts = spectra::affine_image(t, Complex(a), Complex(b));
    for (const auto& [d, want] : cases) {
      ++checked;
      invariant += decide::decide_three_point(ts, seq::affine_image(d, Complex(a), Complex(b))).verdict == want;
    }
  }
  ok = ok && invariant == checked;
  return {ok, detail + "| affine invariant " + std::to_string(invariant) + "/" + std::to_string(checked)};
}

Outcome ffh() {
  using decide::Ray;
  using Shape = decide::TraceSet::Shape;
  auto nonsum = SequenceSpec::of({Stream::constant(Complex(Real(1)))});
  auto geo = SequenceSpec::of({Stream::geometric(Complex(q(1, 2)), q(1, 2))});
  std::vector<Ray> point{{Real(0), geo}};
  std::vector<Ray> line{{q(1, 2), nonsum}, {q(-1, 2), nonsum}};
  std::vector<Ray> plane{{Real(0), nonsum}, {q(2, 3), nonsum}, {q(4, 3), nonsum}};
  auto p = decide::classify_trace_set(point);
  bool ok = p.shape == Shape::Point && p.exact && p.value == Complex(Real(1));
  ok = ok && decide::classify_trace_set(line).shape == Shape::Line;
  ok = ok && decide::classify_trace_set(plane).shape == Shape::Plane;
  int invariant = 0, checked = 0;
  for (const auto* rays : {&point, &line, &plane}) {
    auto base = decide::classify_trace_set(*rays).shape;
    for (int k = 1; k <= 24; ++k) {
      std::vector<Ray> exact_rot, float_rot;
      for (const auto& r : *rays) {
        exact_rot.push_back({r.phase + q(k, 13), r.magnitudes});
        float_rot.push_back({Real(r.phase.to_double() + 0.173 * k), r.magnitudes});
      }
      checked += 2;
      invariant += decide::classify_trace_set(exact_rot).shape == base;
      invariant += decide::classify_trace_set(float_rot).shape == base;
    }
  }
  ok = ok && invariant == checked;
  return {ok, "point " + p.value.str() + ", line/plane " + (ok ? "ok" : "check") + ", rotation invariant " +
                  std::to_string(invariant) + "/" + std::to_string(checked)};
}

Outcome differential_majorization() {
  std::mt19937_64 rng(1212);
  long disagreements = 0, holds = 0;
  auto rnd = [&] { return Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6)); };
  for (int t = 0; t < 100000; ++t) {
    std::size_t n = 1 + rng() % 10;
    std::vector<Rational> d(n), l(n);
    for (auto& x : l) x = rnd();
    if (rng() % 2) {
      d = l;
      for (int k = 0; k < 4; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        Rational a(static_cast<long>(rng() % 9), 8);
        Rational di = a * d[i] + (1 - a) * d[j], dj = a * d[j] + (1 - a) * d[i];
        d[i] = di, d[j] = dj;
      }
      std::shuffle(d.begin(), d.end(), rng);
    } else {
      for (auto& x : d) x = rnd();
    }
    std::vector<Real> dr(d.begin(), d.end()), lr(l.begin(), l.end());
    auto want = oracle::rational_majorization_oracle(d, l);
    holds += want == major::Verdict::Holds;
    disagreements += major::majorize_finite(dr, lr).verdict != want;
  }
  return {disagreements == 0, "100000 instances (" + std::to_string(holds) + " majorized), " +
                                  std::to_string(disagreements) + " disagreements"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Schur-Horn round-trip", schur_horn_round_trip},
      {"Schur direction sampling", schur_sampling},
      {"Hoffman counterexample", hoffman},
      {"Kadison", kadison},
      {"Bownik-Jasper worked instance", bownik_jasper},
      {"p-majorization ladder", p_ladder},
      {"Unitary diagonals", unitary_diagonals},
      {"Thompson", thompson},
      {"Zero-diagonal", zero_diagonal},
      {"Three-point decider", three_point},
      {"FFH classifier", ffh},
      {"Differential majorization", differential_majorization},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-30s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
