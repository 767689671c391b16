#include "doctest.h"

#include <cmath>
#include <random>

#include "diagonalis/deciders.hpp"
#include "diagonalis/errors.hpp"
#include "diagonalis/json_io.hpp"

using namespace diagonalis;
using namespace diagonalis::decide;
using seq::SequenceSpec;
using seq::Stream;

namespace {

Real q(long long p, long long d = 1) { return Real::ratio(p, d); }

SequenceSpec spec(std::vector<Stream> s) { return SequenceSpec::of(std::move(s)); }
Stream fin(std::vector<Real> v) { return Stream::finite_real(v); }
Stream rep(Real v, seq::Count c = std::nullopt) { return Stream::constant(Complex(v), c); }
Stream geo(Real first, Real ratio) { return Stream::geometric(Complex(first), ratio); }

SequenceSpec float_spec(const std::vector<double>& v, bool zero_tail = true) {
  std::vector<Complex> c(v.begin(), v.end());
  std::vector<Stream> s{Stream::finite(c)};
  if (zero_tail) s.push_back(Stream::constant(Complex(0.0)));
  return SequenceSpec(s, seq::Field::Real, false);
}

spectra::OperatorSpec points(std::vector<std::pair<Real, seq::Count>> pts) {
  std::vector<spectra::SpectrumPoint> v;
  for (auto& [x, c] : pts) v.push_back({Complex(x), c});
  return spectra::OperatorSpec::finite_spectrum(v);
}

Matrix conjugate(const std::vector<cplx>& lambda, std::uint64_t seed) {
  Matrix u = spectra::haar_unitary(lambda.size(), seed);
  return u * Matrix::diagonal(lambda) * u.adjoint();
}

}  // namespace

TEST_CASE("verdict exit codes") {
  CHECK(exit_code(Verdict::Yes) == 0);
  CHECK(exit_code(Verdict::YesModuloKernel) == 0);
  CHECK(exit_code(Verdict::SufficientConditionHolds) == 0);
  CHECK(exit_code(Verdict::No) == 1);
  CHECK(exit_code(Verdict::NecessaryConditionFails) == 1);
  CHECK(exit_code(Verdict::Unknown) == 2);
  CHECK(exit_code(Verdict::ConditionFails) == 2);
}

TEST_CASE("schur-horn examples") {
  auto d = decide_schur_horn({3, 1, 0}, {2, 1, 1});
  CHECK(d.verdict == Verdict::Yes);
  CHECK(d.certificate["partial_sums_d"] == nlohmann::json({"2", "3", "4"}));
  CHECK(decide_schur_horn({3, 1, 0}, {0, 3, 1}).verdict == Verdict::Yes);
  CHECK(decide_schur_horn({1.0, 0.0}, {1.1, -0.1}).verdict == Verdict::No);
  CHECK_THROWS_AS(decide_schur_horn({1, 0}, {1}), InputError);
}

TEST_CASE("schur-horn accepts sampled hermitian diagonals") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + t % 9;
    std::vector<cplx> lam(n);
    std::vector<Real> lr;
    for (auto& x : lam) x = g(rng), lr.push_back(Real(x.real()));
    Matrix m = conjugate(lam, 100 + t);
    std::vector<Real> d;
    for (auto x : m.diag()) d.push_back(Real(x.real()));
    CHECK(decide_schur_horn(lr, d).verdict == Verdict::Yes);
  }
}

TEST_CASE("gohberg-markus examples") {
  auto lam = spec({geo(q(1, 2), q(1, 2)), geo(q(-1, 2), q(1, 2))});
  CHECK(decide_gohberg_markus(lam, spec({rep(0)})).verdict == Verdict::YesModuloKernel);
  CHECK(decide_gohberg_markus(lam, lam).verdict == Verdict::YesModuloKernel);
  CHECK(decide_gohberg_markus(lam, spec({rep(q(1, 10))})).verdict == Verdict::No);
  CHECK_THROWS_AS(decide_gohberg_markus(spec({rep(1)}), lam), InputError);
}

TEST_CASE("kw examples") {
  auto s = spec({geo(q(1, 2), q(1, 2))});
  auto harmonic = spec({Stream::telescoping(Complex(q(1)))});
  CHECK(decide_kw(s, std::nullopt, harmonic).verdict == Verdict::Yes);
  CHECK(decide_kw(s, 0, s).verdict == Verdict::Yes);
  auto head = spec({fin({q(3, 4)}), geo(q(1, 8), q(1, 2))});
  CHECK(decide_kw(s, 0, head).verdict == Verdict::No);
  // A zero diagonal entry needs a kernel vector.
  CHECK(decide_kw(s, 0, spec({fin({0}), geo(q(1, 2), q(1, 2))})).verdict == Verdict::No);
  CHECK_THROWS_AS(decide_kw(spec({rep(1)}), 0, s), InputError);
}

TEST_CASE("kw finite kernel is one-sided") {
  auto s = spec({geo(q(1, 2), q(1, 2))});
  auto harmonic = spec({Stream::telescoping(Complex(q(1)))});
  CHECK(decide_kw(s, 1, harmonic).verdict == Verdict::SufficientConditionHolds);
  CHECK(decide_kw(s, 1, s).verdict == Verdict::NecessaryConditionFails);
  auto big = spec({fin({2}), geo(q(1, 2), q(1, 2))});
  CHECK(decide_kw(s, 1, big).verdict == Verdict::NecessaryConditionFails);
}

TEST_CASE("kw finite-dimensional reduction") {
  auto s = spec({fin({3, 1})});
  CHECK(decide_kw(s, 1, spec({fin({2, 1, 1})})).verdict == Verdict::Yes);
  CHECK(decide_kw(s, 1, spec({fin({2, 2})})).verdict == Verdict::No);
}

TEST_CASE("kadison examples") {
  auto yes = decide_kadison(spec({fin({q(1, 2), q(1, 2)}), rep(0)}));
  CHECK(yes.verdict == Verdict::Yes);
  CHECK(yes.certificate["a_minus_b"] == "-1");
  auto no = decide_kadison(spec({fin({q(1, 3)}), rep(0)}));
  CHECK(no.verdict == Verdict::No);
  CHECK(no.certificate["a_minus_b"] == "1/3");
  CHECK(decide_kadison(spec({rep(q(1, 2))})).verdict == Verdict::Yes);
  CHECK_THROWS_AS(decide_kadison(spec({fin({2})})), InputError);
}

TEST_CASE("kadison float buffer zone") {
  CHECK(decide_kadison(float_spec({0.5, 0.5 + 1e-11})).verdict == Verdict::Yes);
  CHECK(decide_kadison(float_spec({0.5, 0.5 + 1e-7})).verdict == Verdict::Unknown);
  CHECK(decide_kadison(float_spec({0.3})).verdict == Verdict::No);
}

TEST_CASE("kadison accepts diagonals of sampled projections") {
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 10, r = 1 + t % n;
    std::vector<cplx> lam(n, 0.0);
    for (std::size_t i = 0; i < r; ++i) lam[i] = 1.0;
    Matrix p = conjugate(lam, 500 + t);
    std::vector<double> d;
    for (auto x : p.diag()) d.push_back(std::clamp(x.real(), 0.0, 1.0));
    CHECK(decide_kadison(float_spec(d)).verdict == Verdict::Yes);
    auto rep = verify_kadison_codimension_identity(p);
    CHECK(rep.residual <= n * kMatTol);
  }
}

TEST_CASE("bownik-jasper examples") {
  std::vector<Real> pts{0, q(1, 3), 1};
  auto yes = decide_bownik_jasper(pts, spec({fin({q(1, 3)}), rep(0), rep(1)}));
  CHECK(yes.verdict == Verdict::Yes);
  CHECK(yes.certificate["N"] == nlohmann::json({1}));
  CHECK(yes.certificate["k"] == "0");
  CHECK(yes.certificate["inequality_lhs"][0] == "2/9");
  CHECK(yes.certificate["inequality_rhs"][0] == "2/9");
  CHECK(decide_bownik_jasper(pts, spec({fin({q(1, 4)}), rep(0), rep(1)})).verdict == Verdict::No);
  CHECK(decide_bownik_jasper(pts, spec({rep(q(1, 2))})).verdict == Verdict::Yes);
  CHECK_THROWS_AS(decide_bownik_jasper(pts, spec({rep(0)})), PreconditionError);
  CHECK_THROWS_AS(decide_bownik_jasper({0, q(2, 3), q(1, 3), 1}, spec({rep(q(1, 2))})), InputError);
}

TEST_CASE("bownik-jasper without interior points reduces to a multiple of B") {
  std::vector<Real> pts{0, 2};
  CHECK(decide_bownik_jasper(pts, spec({fin({1, 1}), rep(0), rep(2)})).verdict == Verdict::Yes);
  CHECK(decide_bownik_jasper(pts, spec({fin({1}), rep(0), rep(2)})).verdict == Verdict::No);
}

TEST_CASE("neumann closure examples") {
  auto t = points({{2, 1}, {1, std::nullopt}, {0, std::nullopt}});
  CHECK(decide_neumann_closure(t, spec({fin({q(3, 2)}), rep(q(1, 2))})).verdict == Verdict::Yes);
  auto no = decide_neumann_closure(t, spec({fin({q(3, 2), q(8, 5)}), rep(q(1, 2))}));
  CHECK(no.verdict == Verdict::No);
  CHECK(decide_neumann_closure(t, spec({fin({0, 1}), rep(q(1, 3))})).verdict == Verdict::Yes);
  CHECK(decide_neumann_closure(t, spec({rep(q(3, 2))})).verdict == Verdict::No);
}

TEST_CASE("blaschke selfadjoint examples") {
  auto t = points({{0, std::nullopt}, {1, std::nullopt}});
  CHECK(check_blaschke(t, spec({rep(q(1, 2))}), BlaschkeMode::Selfadjoint).verdict ==
        Verdict::SufficientConditionHolds);
  CHECK(check_blaschke(t, spec({geo(q(1, 4), q(1, 2))}), BlaschkeMode::Selfadjoint).verdict ==
        Verdict::ConditionFails);
  auto tele = spec({Stream::telescoping(Complex(q(1)))});
  auto r = check_blaschke(t, tele, BlaschkeMode::Selfadjoint);
  CHECK(r.verdict == Verdict::ConditionFails);
  CHECK(r.certificate["sum"] == "1");
  CHECK_THROWS_AS(check_blaschke(t, spec({fin({0})}), BlaschkeMode::Selfadjoint), PreconditionError);
}

TEST_CASE("blaschke general mode") {
  std::vector<spectra::SpectrumPoint> tri{{Complex(q(0)), std::nullopt},
                                          {Complex(q(1)), std::nullopt},
                                          {Complex(q(0), q(1)), std::nullopt}};
  auto t = spectra::OperatorSpec::finite_spectrum(tri);
  Complex c(q(1, 4), q(1, 4));
  auto inner = SequenceSpec::of({Stream::constant(c)});
  CHECK(check_blaschke(t, inner, BlaschkeMode::General).verdict == Verdict::SufficientConditionHolds);
  auto to_vertex = SequenceSpec::of({Stream::geometric(c, q(1, 2))});
  CHECK(check_blaschke(t, to_vertex, BlaschkeMode::General).verdict == Verdict::ConditionFails);
  auto outside = SequenceSpec::of({Stream::finite({Complex(q(2))})});
  CHECK_THROWS_AS(check_blaschke(t, outside, BlaschkeMode::General), PreconditionError);
}

TEST_CASE("three-point examples") {
  auto t = points({{0, std::nullopt}, {q(1, 2), std::nullopt}, {1, std::nullopt}});
  CHECK(decide_three_point(t, spec({rep(q(1, 2))})).verdict == Verdict::Yes);
  CHECK(decide_three_point(t, spec({rep(0)})).verdict == Verdict::No);
  CHECK(decide_three_point(t, spec({fin({0, 0, 0, 0, 0}), rep(q(1, 2))})).verdict == Verdict::Yes);
  auto thin = points({{0, 2}, {q(1, 2), std::nullopt}, {1, std::nullopt}});
  CHECK_THROWS_AS(decide_three_point(thin, spec({rep(q(1, 2))})), PreconditionError);
  auto two = points({{0, std::nullopt}, {1, std::nullopt}});
  CHECK_THROWS_AS(decide_three_point(two, spec({rep(q(1, 2))})), PreconditionError);
}

TEST_CASE("three-point endpoint budget") {
  // Eigenvalue 0 with finite multiplicity 2 cannot appear three times on the diagonal.
  auto ev = spec({geo(q(1, 4), q(1, 2)), rep(q(1, 2)), Stream::geometric(Complex(q(-1, 4)), q(1, 2), Complex(q(1)))});
  auto t = spectra::OperatorSpec::diagonalizable(ev, 2);
  CHECK(decide_three_point(t, spec({fin({0, 0}), rep(q(1, 2))})).verdict == Verdict::Yes);
  CHECK(decide_three_point(t, spec({fin({0, 0, 0}), rep(q(1, 2))})).verdict == Verdict::No);
}

TEST_CASE("williams examples") {
  const double s3 = std::sqrt(3.0) / 2;
  std::vector<Complex> roots{Complex(1.0), Complex(-0.5, s3), Complex(-0.5, -s3)};
  CHECK(decide_williams_3x3(roots, {Complex(0.0), Complex(0.5), Complex(-0.5)}).verdict == Verdict::Yes);
  CHECK(decide_williams_3x3(roots, {Complex(0.0), Complex(0.6), Complex(-0.6)}).verdict == Verdict::No);
  CHECK(decide_williams_3x3(roots, roots).verdict == Verdict::Yes);

  std::vector<Complex> lam{Complex(q(0)), Complex(q(2)), Complex(q(0), q(2))};
  std::vector<Complex> mid{(lam[1] + lam[2]) / Complex(q(2)), (lam[0] + lam[2]) / Complex(q(2)),
                           (lam[0] + lam[1]) / Complex(q(2))};
  auto no = decide_williams_3x3(lam, mid);
  CHECK(no.verdict == Verdict::No);
  CHECK(no.mode == major::Mode::Exact);
  CHECK(no.certificate["case"] == "edge");
  CHECK(decide_williams_3x3(lam, lam).verdict == Verdict::Yes);
  CHECK(decide_williams_3x3(lam, {Complex(q(3)), Complex(q(0)), Complex(q(-1), q(2))}).verdict == Verdict::No);
}

TEST_CASE("williams edge case uses the segment from the opposite vertex") {
  std::vector<Complex> lam{Complex(q(0)), Complex(q(2)), Complex(q(0), q(2))};
  // d1 on the edge [lambda_2, lambda_3]; d1' is its reflection through the midpoint (1 + i).
  Complex d1(q(3, 2), q(1, 2));
  Complex d1p(q(1, 2), q(3, 2));
  Complex mid = (lam[0] + d1p) / Complex(q(2));
  Complex tr = lam[0] + lam[1] + lam[2];
  CHECK(decide_williams_3x3(lam, {d1, mid, tr - d1 - mid}).verdict == Verdict::Yes);
  CHECK(decide_williams_3x3(lam, {d1, lam[0], d1p}).verdict == Verdict::Yes);
  Complex off(q(1, 2), q(1, 2));
  CHECK(decide_williams_3x3(lam, {d1, off, tr - d1 - off}).verdict == Verdict::No);
}

TEST_CASE("williams accepts sampled normal diagonals and is permutation invariant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 40; ++t) {
    std::vector<cplx> lam{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    Matrix n = conjugate(lam, 900 + t);
    Vec dd = n.diag();
    std::vector<Complex> l(lam.begin(), lam.end()), d(dd.begin(), dd.end());
    auto v = decide_williams_3x3(l, d);
    CHECK(v.verdict == Verdict::Yes);
    std::vector<Complex> lp{l[2], l[0], l[1]}, dp{d[0], d[2], d[1]};
    CHECK(decide_williams_3x3(lp, dp).verdict == v.verdict);
    std::vector<Complex> hoff{(l[1] + l[2]) * Complex(0.5), (l[0] + l[2]) * Complex(0.5), (l[0] + l[1]) * Complex(0.5)};
    CHECK(decide_williams_3x3(l, hoff).verdict == Verdict::No);
  }
}

TEST_CASE("williams collinear spectrum defers to schur-horn") {
  std::vector<Complex> lam{Complex(q(0)), Complex(q(1), q(1)), Complex(q(3), q(3))};
  auto v = decide_williams_3x3(lam, {Complex(q(2), q(2)), Complex(q(1), q(1)), Complex(q(1), q(1))});
  CHECK(v.verdict == Verdict::Yes);
  CHECK(v.certificate["case"] == "collinear");
  CHECK(decide_williams_3x3(lam, {Complex(q(2), q(1)), Complex(q(1), q(2)), Complex(q(1), q(1))}).verdict ==
        Verdict::No);
}

TEST_CASE("arveson examples") {
  std::vector<Complex> x{Complex(q(0)), Complex(q(1)), Complex(q(0), q(1))};
  auto yes = check_arveson(x, spec({fin({q(1, 2), q(1, 2)}), rep(0)}));
  CHECK(yes.verdict == Verdict::Yes);
  // 1/2 ties between 0 and 1 and goes to the lower index: deviation sum 1 = lambda_2 - lambda_1.
  CHECK(yes.certificate["deviation_sum"] == "1");
  CHECK(yes.certificate["c"] == nlohmann::json({"-1", "1", "0"}));
  CHECK(check_arveson(x, spec({fin({q(1, 2)}), rep(0)})).verdict == Verdict::No);
  CHECK(check_arveson(x, spec({fin({0, 1, 0}), rep(0)})).verdict == Verdict::Yes);
  CHECK_THROWS_AS(check_arveson(x, spec({rep(q(1, 4))})), PreconditionError);
  CHECK_THROWS_AS(check_arveson(x, spec({fin({2})})), InputError);
}

TEST_CASE("arveson canonical assignment agrees with arbitrary assignments") {
  // Oracle: with X = {0, 1, i, 1 + i} the lattice is Z[i]; any summable assignment decides membership.
  std::vector<Complex> x{Complex(q(0)), Complex(q(1)), Complex(q(1), q(1)), Complex(q(0), q(1))};
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(0, 8), pick(0, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> d;
    Complex dev_sum(q(0));
    int len = 1 + t % 5;
    for (int k = 0; k < len; ++k) {
      Complex z(q(num(rng), 8), q(num(rng), 8));
      d.push_back(z);
      dev_sum += z - x[pick(rng)];
    }
    bool oracle = dev_sum.re.is_integer() && dev_sum.im.is_integer();
    auto v = check_arveson(x, SequenceSpec::of({Stream::finite(d), Stream::constant(Complex(q(0)))}));
    CHECK(v.mode == major::Mode::Exact);
    CHECK((v.verdict == Verdict::Yes) == oracle);
    CHECK(v.verdict != Verdict::Unknown);
  }
}

TEST_CASE("arveson lattice reduction finds coefficients") {
  std::vector<Complex> x{Complex(q(0)), Complex(q(2)), Complex(q(3), q(2)), Complex(q(1), q(3)), Complex(q(-1), q(1))};
  auto d = SequenceSpec::of({Stream::finite({Complex(q(1), q(1))}), Stream::constant(Complex(q(0)))});
  auto v = check_arveson(x, d);
  REQUIRE(v.verdict == Verdict::Yes);
  // Recompute sum c_j lambda_j from the certificate.
  Complex s(q(0));
  long long total = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    long long c = std::stoll(v.certificate["c"][j].get<std::string>());
    total += c;
    s += x[j] * Complex(Real(c));
  }
  CHECK(total == 0);
  CHECK(io::to_json(s) == v.certificate["deviation_sum"]);
}

TEST_CASE("horn unitary examples") {
  CHECK(decide_horn_unitary({Complex(q(1)), Complex(q(0)), Complex(q(0))}, HornVariant::Unitary).verdict == Verdict::Yes);
  auto no = decide_horn_unitary({Complex(q(1)), Complex(q(1)), Complex(q(1, 2))}, HornVariant::Unitary);
  CHECK(no.verdict == Verdict::No);
  CHECK(no.certificate["lhs"] == "1");
  CHECK(no.certificate["rhs"] == "1/2");
  CHECK(decide_horn_unitary({Complex(q(1)), Complex(q(1)), Complex(q(1))}, HornVariant::Orthogonal).verdict ==
        Verdict::Yes);
  CHECK_THROWS_AS(decide_horn_unitary({Complex(q(0), q(1))}, HornVariant::Rotation), InputError);
}

TEST_CASE("horn rotation matches brute-force parity polytope") {
  // Oracle: facet enumeration over every odd subset.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 4;
    std::vector<Complex> d;
    std::vector<Rational> y;
    for (std::size_t i = 0; i < n; ++i) {
      Rational v(num(rng), 6);
      d.push_back(Complex(Real(v)));
      y.push_back((1 - v) / 2);
    }
    bool oracle = true;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) % 2 == 0) continue;
      Rational lhs = 0;
      for (std::size_t i = 0; i < n; ++i) lhs += (mask >> i & 1) ? y[i] : -y[i];
      if (lhs > __builtin_popcount(mask) - 1) oracle = false;
    }
    CHECK((decide_horn_unitary(d, HornVariant::Rotation).verdict == Verdict::Yes) == oracle);
  }
  CHECK(decide_horn_unitary({Complex(q(-1)), Complex(q(-1))}, HornVariant::Rotation).verdict == Verdict::Yes);
  CHECK(decide_horn_unitary({Complex(q(-1)), Complex(q(1))}, HornVariant::Rotation).verdict == Verdict::No);
}

TEST_CASE("jlw examples") {
  CHECK(decide_jlw_unitary(spec({fin({q(1, 2)}), rep(1)})).verdict == Verdict::No);
  auto eq = decide_jlw_unitary(spec({fin({q(1, 2), q(1, 2)}), rep(1)}));
  CHECK(eq.verdict == Verdict::Yes);
  CHECK(eq.certificate["lhs"] == "1");
  CHECK(eq.certificate["rhs"] == "1");
  CHECK(decide_jlw_unitary(spec({rep(q(1, 2))})).verdict == Verdict::Yes);
  CHECK(decide_jlw_unitary(spec({fin({q(-1, 2), q(-1, 2)}), rep(-1)})).verdict == Verdict::Yes);
  CHECK(decide_jlw_unitary(spec({fin({2})})).verdict == Verdict::No);
}

TEST_CASE("thompson examples") {
  CHECK(decide_thompson({2.0, 1.0}, {Complex(1.5), Complex(1.4)}).verdict == Verdict::Yes);
  auto no = decide_thompson({2, 1}, {Complex(q(2)), Complex(q(0))});
  CHECK(no.verdict == Verdict::No);
  CHECK(no.certificate["last_lhs"] == "2");
  CHECK(decide_thompson({2, 1}, {Complex(q(0), q(2)), Complex(q(-1))}).verdict == Verdict::Yes);
  CHECK_THROWS_AS(decide_thompson({1, 2}, {Complex(q(1)), Complex(q(1))}), InputError);
}

TEST_CASE("thompson with unit singular values agrees with horn") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 5;
    std::vector<Complex> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(Complex(q(num(rng), 4), q(num(rng), 4)));
    std::vector<Real> ones(n, Real(1));
    CHECK(decide_thompson(ones, d).verdict == decide_horn_unitary(d, HornVariant::Unitary).verdict);
  }
}

TEST_CASE("thompson compact") {
  auto s = spec({geo(q(1, 2), q(1, 2))});
  CHECK(decide_thompson_compact(s, s).verdict == Verdict::Yes);
  CHECK(decide_thompson_compact(s, spec({geo(q(1, 4), q(1, 2))})).verdict == Verdict::Yes);
  CHECK(decide_thompson_compact(s, spec({fin({q(3, 4)}), rep(0)})).verdict == Verdict::No);
  CHECK_THROWS_AS(decide_thompson_compact(s, spec({rep(1)})), InputError);
}

TEST_CASE("thompson compact on finite support matches the first Thompson condition") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> num(0, 8);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + t % 4;
    std::vector<Real> s, d;
    for (std::size_t i = 0; i < n; ++i) s.push_back(q(num(rng), 4)), d.push_back(q(num(rng), 4));
    std::sort(s.begin(), s.end(), std::greater<>());
    // Oracle: prefix sums only.
    std::vector<Real> a = d;
    std::sort(a.begin(), a.end(), std::greater<>());
    bool oracle = true;
    Real ps = 0, pa = 0;
    for (std::size_t k = 0; k < n; ++k) ps += s[k], pa += a[k], oracle = oracle && pa <= ps;
    auto v = decide_thompson_compact(spec({fin(s), rep(0)}), spec({fin(d), rep(0)}));
    CHECK((v.verdict == Verdict::Yes) == oracle);
  }
}

TEST_CASE("muller-tomilov p-summable hypothesis") {
  auto t = points({{0, std::nullopt}, {1, std::nullopt}});
  CHECK(check_mt_p_summable(t, spec({geo(q(1, 4), q(1, 2))}), 2).verdict == Verdict::SufficientConditionHolds);
  CHECK(check_mt_p_summable(t, spec({rep(q(1, 2))}), 3).verdict == Verdict::ConditionFails);
  CHECK(check_mt_p_summable(t, spec({rep(0), rep(1)}), 2).verdict == Verdict::SufficientConditionHolds);
  CHECK_THROWS_AS(check_mt_p_summable(t, spec({rep(0)}), 1), InputError);
}

TEST_CASE("fan criterion") {
  seq::OrderedSequenceSpec fin_zero{{Complex(q(1)), Complex(q(-2)), Complex(q(1))}, {}};
  CHECK(check_fan_criterion(fin_zero).verdict == Verdict::Yes);
  seq::OrderedSequenceSpec alt{{}, {{Stream::constant(Complex(q(1))), 1}, {Stream::constant(Complex(q(-1))), 1}}};
  CHECK(check_fan_criterion(alt).verdict == Verdict::Yes);
  seq::OrderedSequenceSpec ones{{}, {{Stream::constant(Complex(q(1))), 1}}};
  CHECK(check_fan_criterion(ones).verdict == Verdict::No);
  // 1, -1/2, -1/4, ...: partial sums tend to 0.
  seq::OrderedSequenceSpec geo_tail{{Complex(q(1))}, {{Stream::geometric(Complex(q(-1, 2)), q(1, 2)), 1}}};
  CHECK(check_fan_criterion(geo_tail).verdict == Verdict::Yes);
  seq::OrderedSequenceSpec shifted{{Complex(q(1, 3))}, {{Stream::constant(Complex(q(1))), 1}, {Stream::constant(Complex(q(-1))), 1}}};
  CHECK(check_fan_criterion(shifted).verdict == Verdict::No);
}

TEST_CASE("trace set classification") {
  auto nonsum = SequenceSpec::of({Stream::constant(Complex(q(1)))});
  auto p = classify_trace_set({{q(0), SequenceSpec::of({geo(q(1, 2), q(1, 2))})}});
  CHECK(p.shape == TraceSet::Shape::Point);
  CHECK(p.value == Complex(q(1)));
  CHECK(p.exact);
  auto l = classify_trace_set({{q(1, 2), nonsum}, {q(-1, 2), nonsum}});
  CHECK(l.shape == TraceSet::Shape::Line);
  CHECK(l.direction == q(1, 2));
  auto pl = classify_trace_set({{q(0), nonsum}, {q(2, 3), nonsum}, {q(4, 3), nonsum}});
  CHECK(pl.shape == TraceSet::Shape::Plane);
  CHECK(classify_trace_set({{q(0), nonsum}}).shape == TraceSet::Shape::Empty);
  CHECK(classify_trace_set({{q(0), nonsum}, {q(1, 2), nonsum}}).shape == TraceSet::Shape::Empty);
}

TEST_CASE("trace set classification is invariant under global rotation") {
  auto nonsum = SequenceSpec::of({Stream::constant(Complex(q(1)))});
  auto summable = SequenceSpec::of({geo(q(1), q(1, 3))});
  std::vector<std::vector<Ray>> cases{
      {{q(0), summable}},
      {{q(1, 2), nonsum}, {q(-1, 2), nonsum}, {q(1, 4), summable}},
      {{q(0), nonsum}, {q(2, 3), nonsum}, {q(4, 3), nonsum}},
      {{q(0), nonsum}, {q(1, 3), nonsum}}};
  for (const auto& rays : cases) {
    auto base = classify_trace_set(rays).shape;
    for (int k = 1; k < 12; ++k) {
      Real shift = q(k, 7);
      std::vector<Ray> rot;
      for (const auto& r : rays) rot.push_back({r.phase + shift, r.magnitudes});
      CHECK(classify_trace_set(rot).shape == base);
      std::vector<Ray> frot;
      for (const auto& r : rays) frot.push_back({Real(r.phase.to_double() + 0.37 * k), r.magnitudes});
      CHECK(classify_trace_set(frot, 1e-12).shape == base);
    }
  }
}

TEST_CASE("essential codimension of finite projections") {
  CHECK(essential_codimension_finite(Matrix::diagonal_real({1, 1, 0, 0}), Matrix::diagonal_real({1, 0, 0, 0})) == 1);
  Matrix p = conjugate({1.0, 0.0, 0.0, 0.0}, 42);
  CHECK(essential_codimension_finite(p, Matrix::diagonal_real({1, 0, 0, 0})) == 0);
  CHECK(essential_codimension_finite(p, p) == 0);
  CHECK_THROWS_AS(essential_codimension_finite(Matrix::diagonal_real({2, 0}), Matrix::diagonal_real({1, 0})),
                  InputError);
}

TEST_CASE("kadison identity on a hand example") {
  Matrix p = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  auto r = verify_kadison_codimension_identity(p);
  CHECK(r.lhs.real() == doctest::Approx(-1));
  CHECK(r.rhs.real() == doctest::Approx(-1));
  CHECK(verify_kadison_codimension_identity(Matrix::diagonal_real({1, 0})).residual == 0);
}

TEST_CASE("normal codimension identity") {
  Matrix d = Matrix::diagonal_real({0, 1, 2});
  auto same = verify_normal_codimension_identity(d, d);
  CHECK(std::abs(same.lhs) == 0);
  CHECK(std::abs(same.rhs) == doctest::Approx(0));
  Matrix n = conjugate({0.0, 0.0, 1.0, 1.0}, 77);
  auto r = verify_normal_codimension_identity(n, Matrix::diagonal_real({0, 1, 1, 1}));
  CHECK(r.lhs.real() == doctest::Approx(-1).epsilon(1e-9));
  CHECK(r.residual <= 1e-8);
  auto scaled = verify_normal_codimension_identity(n * cplx(0, 3), Matrix::diagonal_real({0, 1, 1, 1}) * cplx(0, 3));
  CHECK(std::abs(scaled.lhs - cplx(0, 3) * r.lhs) <= 1e-9);
  CHECK(std::abs(scaled.rhs - cplx(0, 3) * r.rhs) <= 1e-9);
  CHECK_THROWS_AS(verify_normal_codimension_identity(n, Matrix::diagonal_real({0, 1, 1, 5})), InputError);
  CHECK_THROWS_AS(verify_normal_codimension_identity(Matrix::diagonal_real({0, 1e-6}), Matrix::diagonal_real({0, 0})),
                  InputError);
}
