#include "doctest.h"

#include <algorithm>
#include <random>

#include "diagonalis/errors.hpp"
#include "diagonalis/majorization.hpp"

using namespace diagonalis;
using namespace diagonalis::major;
using seq::SequenceSpec;
using seq::Stream;

namespace {

Real q(long long p, long long d = 1) { return Real::ratio(p, d); }

SequenceSpec geo(Real first, Real ratio) { return SequenceSpec::of({Stream::geometric(first, ratio)}); }
SequenceSpec tele(Real scale, std::uint64_t start = 1) { return SequenceSpec::of({Stream::telescoping(scale, start)}); }

// Independent oracle: brute-force every prefix by selection on raw rationals.
bool oracle_majorized(std::vector<Rational> d, std::vector<Rational> l) {
  Rational sd = 0, sl = 0;
  const std::size_t n = d.size();
  for (std::size_t m = 0; m < n; ++m) {
    auto id = std::max_element(d.begin(), d.end());
    auto il = std::max_element(l.begin(), l.end());
    sd += *id;
    sl += *il;
    d.erase(id);
    l.erase(il);
    if (sd > sl) return false;
  }
  return sd == sl;
}

}  // namespace

TEST_CASE("majorize_finite examples") {
  auto r = majorize_finite({2, 1, 1}, {3, 1, 0});
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.mode == Mode::Exact);
  CHECK(majorize_finite({5, 2}, {5, 2}).verdict == Verdict::Holds);
  auto f = majorize_finite({3, 1}, {2, 2});
  REQUIRE(f.verdict == Verdict::Fails);
  CHECK(f.witness->m == 1);
  CHECK(f.witness->lhs == 3);
  CHECK(f.witness->rhs == 2);
  CHECK_THROWS_AS(majorize_finite({1}, {1, 0}), InputError);
}

TEST_CASE("majorize_finite agrees with the rational oracle") {
  std::mt19937 rng(11);
  int holds_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + rng() % 10;
    std::vector<Real> d, l;
    std::vector<Rational> dq, lq;
    for (std::size_t i = 0; i < n; ++i) {
      Rational x(static_cast<long long>(rng() % 7) - 2, 1 + rng() % 3);
      Rational y(static_cast<long long>(rng() % 7) - 2, 1 + rng() % 3);
      dq.push_back(x);
      lq.push_back(y);
    }
    // Bias toward equal sums so that both verdicts occur.
    if (trial % 2 == 0) {
      Rational gap = 0;
      for (std::size_t i = 0; i < n; ++i) gap += lq[i] - dq[i];
      dq[0] += gap;
    }
    for (auto& x : dq) d.emplace_back(x);
    for (auto& x : lq) l.emplace_back(x);
    bool expect = oracle_majorized(dq, lq);
    holds_seen += expect;
    bool got = majorize_finite(d, l).verdict == Verdict::Holds;
    if (got != expect) {
      std::string msg = "d:";
      for (auto& x : d) msg += " " + x.str();
      msg += " l:";
      for (auto& x : l) msg += " " + x.str();
      MESSAGE(msg);
    }
    CHECK(got == expect);
  }
  CHECK(holds_seen > 10);
}

TEST_CASE("antisymmetry on finite lists") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Real> d, l;
    for (int i = 0; i < 4; ++i) {
      d.emplace_back(static_cast<long long>(rng() % 4));
      l.emplace_back(static_cast<long long>(rng() % 4));
    }
    if (majorize_finite(d, l).verdict == Verdict::Holds && majorize_finite(l, d).verdict == Verdict::Holds) {
      std::sort(d.begin(), d.end());
      std::sort(l.begin(), l.end());
      CHECK(d == l);
    }
  }
}

TEST_CASE("float mode tolerance zones") {
  CHECK(majorize_finite({0.3, 0.7}, {1.0, 0.0}).verdict == Verdict::Holds);
  CHECK(majorize_finite({1.0 + 1e-12, -1e-12}, {1.0, 0.0}).verdict == Verdict::Holds);
  CHECK(majorize_finite({1.0 + 1e-9, -1e-9}, {1.0, 0.0}).verdict == Verdict::Unknown);
  CHECK(majorize_finite({1.1, -0.1}, {1.0, 0.0}).verdict == Verdict::Fails);
}

TEST_CASE("weak_majorize examples") {
  CHECK(weak_majorize(geo(q(1, 4), q(1, 2)), geo(q(1, 2), q(1, 2))).verdict == Verdict::Holds);
  auto t = tele(1);
  CHECK(weak_majorize(t, t).verdict == Verdict::Holds);
  auto d = SequenceSpec::of({Stream::finite_real({q(3, 4)}), Stream::constant(0)});
  auto r = weak_majorize(d, geo(q(1, 2), q(1, 2)));
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.witness->m == 1);
  CHECK(r.witness->lhs == q(3, 4));
  CHECK(r.witness->rhs == q(1, 2));
  CHECK_THROWS_AS(weak_majorize(SequenceSpec::finite({-1}), geo(1, q(1, 2))), InputError);
}

TEST_CASE("majorize with equal totals") {
  // Telescoping and geometric both sum to 1; the telescoping tail 1/(n+1) dominates 2^-n.
  CHECK(majorize(tele(1), geo(q(1, 2), q(1, 2))).verdict == Verdict::Holds);
  // Reverse direction: partial sums of the telescoping sequence lag behind.
  auto r = majorize(geo(q(1, 2), q(1, 2)), tele(1));
  REQUIRE(r.verdict == Verdict::Fails);
  // Unequal totals.
  auto u = majorize(geo(q(1, 4), q(1, 2)), geo(q(1, 2), q(1, 2)));
  REQUIRE(u.verdict == Verdict::Fails);
  CHECK(u.witness->asymptotic);
  // Finite supports.
  CHECK(majorize(SequenceSpec::finite({q(1, 2), q(1, 2)}), SequenceSpec::finite({1})).verdict == Verdict::Holds);
}

TEST_CASE("majorize with several infinite streams is checked to the horizon") {
  auto l = SequenceSpec::of({Stream::geometric(q(1, 2), q(1, 2)), Stream::geometric(q(1, 3), q(1, 3))});
  auto d = SequenceSpec::of({Stream::geometric(q(3, 8), q(3, 4))});
  Options opt;
  opt.horizon = 200;
  auto r = majorize(d, l, opt);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.horizon == std::uint64_t{200});
}

TEST_CASE("majorize_l1 examples") {
  auto l = SequenceSpec::of({Stream::geometric(1, q(1, 2)), Stream::geometric(-1, q(1, 2))});
  auto zeros = SequenceSpec::of({Stream::constant(0)});
  CHECK(majorize_l1(zeros, l).verdict == Verdict::Holds);
  CHECK(majorize_l1(l, l).verdict == Verdict::Holds);
  auto r = majorize_l1(SequenceSpec::finite({1}), SequenceSpec::finite({q(1, 2), q(1, 2)}));
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.witness->m == 1);
  CHECK_THROWS_AS(majorize_l1(SequenceSpec::of({Stream::constant(q(1, 10))}), l), InputError);
}

TEST_CASE("p_majorize examples") {
  auto l = geo(q(1, 2), q(1, 2));
  CHECK(p_majorize(tele(1), l, PLevel::infinity()).verdict == Verdict::Holds);
  CHECK(p_majorize(tele(1), l, 0).verdict == majorize(tele(1), l).verdict);
  auto r = p_majorize(l, l, 1);
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.witness.has_value());
  CHECK(p_majorize(l, l, 0).verdict == Verdict::Holds);
  // Shared ratio 1/2 with tail_d(n) = 2^-n and tail_l(n) = 2^-(n+1): holds iff 2^-p >= 1/2.
  auto l2 = SequenceSpec::of({Stream::finite_real({q(3, 4)}), Stream::geometric(q(1, 8), q(1, 2))});
  CHECK(majorize(l, l2).verdict == Verdict::Holds);
  CHECK(p_majorize(l, l2, 1).verdict == Verdict::Holds);
  CHECK(p_majorize(l, l2, 2).verdict == Verdict::Fails);
  auto inf = p_majorize(l, l2, PLevel::infinity());
  REQUIRE(inf.verdict == Verdict::Fails);
  CHECK(*inf.witness->p == 2);
  CHECK(inf.witness->rhs < inf.witness->lhs);
  auto r1 = p_majorize(l, l, 1);
  CHECK(r1.witness->rhs < r1.witness->lhs);
}

TEST_CASE("approx_p_majorize examples and agreement at infinity") {
  auto l = geo(q(1, 2), q(1, 2));
  CHECK(approx_p_majorize(tele(1), l, 3).verdict == Verdict::Holds);
  auto r = approx_p_majorize(l, l, 1);
  CHECK(r.verdict == Verdict::Fails);
  std::vector<std::pair<SequenceSpec, SequenceSpec>> pairs = {
      {tele(1), l},
      {l, l},
      {tele(1), tele(1)},
      {tele(2, 2), tele(1)},
      {geo(q(1, 3), q(2, 3)), l},
      {SequenceSpec::finite({q(1, 2), q(1, 2)}), SequenceSpec::finite({1})},
      {tele(1), SequenceSpec::of({Stream::finite_real({q(1, 2)}), Stream::telescoping(1, 2)})},
  };
  for (const auto& [d, lam] : pairs) {
    CHECK(p_majorize(d, lam, PLevel::infinity()).verdict == approx_p_majorize(d, lam, PLevel::infinity()).verdict);
  }
}

TEST_CASE("p ladder is monotone") {
  std::vector<std::pair<SequenceSpec, SequenceSpec>> pairs = {
      {tele(1), geo(q(1, 2), q(1, 2))},
      {geo(q(1, 2), q(1, 2)), geo(q(1, 2), q(1, 2))},
      {tele(1), tele(1)},
      {tele(1, 1), SequenceSpec::of({Stream::finite_real({q(1, 2), q(1, 6)}), Stream::telescoping(1, 3)})},
      {SequenceSpec::of({Stream::geometric(q(1, 8), q(1, 2)), Stream::finite_real({q(3, 4)})}),
       geo(q(1, 2), q(1, 2))},
  };
  for (const auto& [d, l] : pairs) {
    Verdict prev = majorize(d, l).verdict;
    for (std::uint64_t p = 0; p < 6; ++p) {
      Verdict cur = p_majorize(d, l, p).verdict;
      if (cur == Verdict::Holds) CHECK(prev == Verdict::Holds);
      if (cur == Verdict::Holds) CHECK(approx_p_majorize(d, l, p).verdict == Verdict::Holds);
      prev = cur;
    }
  }
}

TEST_CASE("telescoping pairs compare by offset") {
  // tail_d(n) = 1/(n+1), tail_l(n) = 1/(n+3) after the two-entry prefix.
  auto l = SequenceSpec::of({Stream::finite_real({q(1, 2), q(1, 6)}), Stream::telescoping(1, 3)});
  auto lp = SequenceSpec::of({Stream::telescoping(q(2, 3), 1), Stream::finite_real({q(1, 3)})});
  (void)lp;
  CHECK(majorize(tele(1), l).verdict == Verdict::Holds);
  CHECK(p_majorize(tele(1), l, 0).verdict == Verdict::Holds);
  auto r = p_majorize(tele(1), l, PLevel::infinity());
  REQUIRE(r.verdict == Verdict::Fails);
  REQUIRE(r.witness->p.has_value());
  CHECK(*r.witness->p == 1);
}

TEST_CASE("tail models") {
  auto m = tail_model(SequenceSpec::of({Stream::finite_real({q(3, 4)}), Stream::geometric(q(1, 2), q(1, 2))}));
  CHECK(m.kind == TailModel::Kind::Geometric);
  CHECK(m.n0 == 1);
  // Sorted: 3/4, 1/2, 1/4, ...; tail after n=2 is 1/4.
  CHECK(m.tail(2) == q(1, 2));
  auto h = tail_model(tele(1));
  CHECK(h.kind == TailModel::Kind::Harmonic);
  CHECK(h.tail(4) == q(1, 5));
  CHECK(tail_model(SequenceSpec::of({Stream::geometric(1, q(1, 2)), Stream::telescoping(1)})).kind ==
        TailModel::Kind::None);
}

TEST_CASE("stream permutation invariance") {
  auto a = Stream::finite_real({q(1, 3), q(1, 5)});
  auto b = Stream::geometric(q(1, 4), q(1, 3));
  auto l = geo(q(1, 2), q(1, 2));
  CHECK(weak_majorize(SequenceSpec::of({a, b}), l).verdict == weak_majorize(SequenceSpec::of({b, a}), l).verdict);
}
