#include <algorithm>

#include "deciders_common.hpp"

namespace diagonalis::decide {

using namespace detail;
using seq::ExtendedSum;
using seq::SequenceSpec;

namespace {

json partial_sums_json(std::vector<Real> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  json a = json::array();
  Real s = 0;
  for (const auto& x : v) a.push_back(io::to_json(s += x));
  return a;
}

bool all_exact(const std::vector<Real>& v) {
  return std::all_of(v.begin(), v.end(), [](const Real& x) { return x.exact(); });
}

void require_real(const SequenceSpec& d, const char* name) {
  if (!d.is_real()) throw InputError(std::string(name) + " must be real");
}

ExtendedSum sum_of(const SequenceSpec& s) { return seq::total_sum(s); }

/// Sum of (top - x) over the spec.
ExtendedSum sum_below(const SequenceSpec& s, const Real& top) { return seq::total_sum(seq::affine_image(s, Real(-1), top)); }

/// Sum of (x - bottom) over the spec.
ExtendedSum sum_above(const SequenceSpec& s, const Real& bottom) {
  return seq::total_sum(seq::affine_image(s, Real(1), -bottom));
}

/// Sum over the spec of dist(x, R \ [lo, hi]) for entries inside [lo, hi].
ExtendedSum interval_blaschke(const SequenceSpec& d, const Real& lo, const Real& hi) {
  Real mid = (lo + hi) * (lo.exact() && hi.exact() ? Real::ratio(1, 2) : Real(0.5));
  seq::Partition p = seq::partition(d, mid);
  return sum_above(p.below, lo) + sum_below(p.equal + p.above, hi);
}

bool is_infinite(const ExtendedSum& s) { return s.kind == ExtendedSum::Kind::PosInf; }

struct EssentialData {
  spectra::SpectralSummary summary;
  Real lo, hi;
};

EssentialData essential_interval(const spectra::OperatorSpec& spec) {
  if (!spec.is_real()) throw InputError("selfadjoint operator spec expected");
  EssentialData e{spectra::essential_summary(spec), {}, {}};
  if (e.summary.ess_spectrum.empty()) throw PreconditionError("essential spectrum is empty");
  e.lo = e.summary.ess_interval->first;
  e.hi = e.summary.ess_interval->second;
  return e;
}

}  // namespace

Decision decide_schur_horn(const std::vector<Real>& lambda, const std::vector<Real>& d, const Options& opt) {
  if (lambda.size() != d.size()) throw InputError("lambda and d must have the same length");
  Decision out = make("schur-horn", all_exact(lambda) && all_exact(d));
  auto v = major::majorize_finite(d, lambda, opt.major);
  out.mode = v.mode;
  out.certificate = {{"partial_sums_d", partial_sums_json(d)},
                     {"partial_sums_lambda", partial_sums_json(lambda)},
                     {"majorization", witness_json(v)}};
  return finish(out, from_major(v.verdict, Verdict::Yes, Verdict::No),
                v.verdict == major::Verdict::Holds ? "d is majorized by lambda" : v.reason);
}

Decision decide_gohberg_markus(const SequenceSpec& lambda, const SequenceSpec& d, const Options& opt) {
  require_real(lambda, "lambda");
  require_real(d, "d");
  if (!seq::power_sum(lambda, 1.0).is_finite()) throw InputError("lambda must be absolutely summable");
  Decision out = make("gohberg-markus", lambda.exact() && d.exact());
  if (!seq::power_sum(d, 1.0).is_finite()) return finish(out, Verdict::No, "d is not absolutely summable");
  auto v = major::majorize_l1(d, lambda, opt.major);
  out.mode = v.mode;
  out.certificate = {{"majorization", witness_json(v)}};
  return finish(out, from_major(v.verdict, Verdict::YesModuloKernel, Verdict::No),
                v.verdict == major::Verdict::Holds ? "d is l1-majorized by lambda; d + 0 is a diagonal" : v.reason);
}

Decision decide_kw(const SequenceSpec& s, seq::Count kernel_dim, const SequenceSpec& d, const Options& opt) {
  for (const auto* x : {&s, &d}) {
    require_real(*x, x == &s ? "s" : "d");
    if (!seq::is_nonnegative(*x) || !seq::converges_to_zero(*x))
      throw InputError(std::string(x == &s ? "s" : "d") + " must be a c0+ sequence");
  }
  Decision out = make("kw", s.exact() && d.exact());
  const Real zero = 0;
  // Zeros listed in s belong to the kernel.
  seq::Count s_zeros = seq::count_equal(s, zero);
  seq::Count kernel = kernel_dim;
  if (!s_zeros || !kernel) kernel.reset();
  else *kernel += *s_zeros;
  seq::Partition sp = seq::partition(s, zero);
  const SequenceSpec s_pos = sp.above;
  const seq::Count rank = s_pos.length();
  const seq::Count zeros = seq::count_equal(d, zero);
  out.certificate = {{"kernel_dim", io::to_json(kernel)}, {"rank", io::to_json(rank)}, {"zeros_in_d", io::to_json(zeros)}};

  // A zero diagonal entry of a positive operator is a kernel vector.
  if (!count_leq(zeros, kernel))
    return finish(out, Verdict::No, "d has more zeros than the kernel dimension");

  if (rank && kernel) {
    // Finite-dimensional: Schur-Horn on the padded spectrum.
    if (!d.length() || *d.length() != *rank + *kernel)
      return finish(out, Verdict::No, "d has the wrong length for a finite-dimensional operator");
    std::vector<Real> lam = seq::sorted_prefix_desc(s_pos, *rank);
    lam.resize(*rank + *kernel, d.exact() && s.exact() ? Real(0) : Real(0.0));
    std::vector<Real> dv = seq::sorted_prefix_desc(d, *d.length());
    dv.resize(*d.length(), Real(0));
    auto sh = decide_schur_horn(lam, dv, opt);
    sh.theorem = "kw";
    sh.certificate["reduction"] = "finite-dimensional Schur-Horn";
    return sh;
  }

  if (kernel && *kernel == 0) {
    auto v = major::majorize(d, s_pos, opt.major);
    out.mode = v.mode;
    out.certificate["majorization"] = witness_json(v);
    return finish(out, from_major(v.verdict, Verdict::Yes, Verdict::No),
                  v.verdict == major::Verdict::Holds ? "d is majorized by s(A) and has no zeros" : v.reason);
  }

  if (!kernel) {
    if (rank || !zeros) {
      // Finite rank, or infinitely many zeros in d: plain majorization.
      auto v = major::majorize(d, s_pos, opt.major);
      out.mode = v.mode;
      out.certificate["majorization"] = witness_json(v);
      out.certificate["relation"] = "majorization";
      return finish(out, from_major(v.verdict, Verdict::Yes, Verdict::No),
                    v.verdict == major::Verdict::Holds ? "d is majorized by s(A)" : v.reason);
    }
    auto v = major::p_majorize(d, s_pos, major::PLevel::infinity(), opt.major);
    out.mode = v.mode;
    out.certificate["majorization"] = witness_json(v);
    out.certificate["relation"] = "inf-majorization";
    return finish(out, from_major(v.verdict, Verdict::Yes, Verdict::No),
                  v.verdict == major::Verdict::Holds ? "d is inf-majorized by s(A) and has finitely many zeros"
                                                     : v.reason);
  }

  // Finite nonzero kernel, infinite rank: only one-sided results are available.
  const std::uint64_t k = *kernel;
  const std::uint64_t z = zeros.value_or(0);
  const std::uint64_t p = zeros ? k - z : 0;
  out.certificate["p"] = p;
  auto suff = major::p_majorize(d, s_pos, p, opt.major);
  out.certificate["p_majorization"] = witness_json(suff);
  if (suff.verdict == major::Verdict::Holds) {
    out.mode = suff.mode;
    return finish(out, Verdict::SufficientConditionHolds, "d is p-majorized by s(A) with p = kernel - zeros");
  }
  auto nec = major::approx_p_majorize(d, s_pos, p, opt.major);
  out.certificate["approx_p_majorization"] = witness_json(nec);
  out.mode = nec.mode;
  if (nec.verdict == major::Verdict::Fails)
    return finish(out, Verdict::NecessaryConditionFails, "d is not approximately p-majorized by s(A)");
  return finish(out, Verdict::Unknown, "finite nonzero kernel: gap between the sufficient and necessary conditions");
}

KadisonInvariants kadison_invariants(const SequenceSpec& d) {
  require_real(d, "d");
  seq::Bounds b = seq::bounds(d);
  if (!b.empty && (b.inf < Real(0) || b.sup > Real(1))) throw InputError("entries must lie in [0, 1]");
  seq::Partition p = seq::partition(d, half_of(d.exact()));
  return {sum_of(p.below), sum_below(p.equal + p.above, Real(1))};
}

Decision decide_kadison(const SequenceSpec& d, const Options& opt) {
  KadisonInvariants inv = kadison_invariants(d);
  Decision out = make("kadison", d.exact());
  out.certificate = {{"a", io::to_json(inv.a)}, {"b", io::to_json(inv.b)}};
  if (!inv.a.is_finite() || !inv.b.is_finite()) return finish(out, Verdict::Yes, "a + b is infinite");
  Real diff = inv.a.real() - inv.b.real();
  out.certificate["a_minus_b"] = io::to_json(diff);
  if (inv.a.approximate || inv.b.approximate) out.mode = major::Mode::Float;
  Integrality in = integrality(diff, opt.tol);
  if (in.zone != Zone::Violated) out.certificate["integer"] = io::to_json(in.nearest);
  return finish(out, from_zone(in.zone, Verdict::Yes, Verdict::No),
                in.zone == Zone::Ok ? "a + b is finite and a - b is an integer"
                : in.zone == Zone::Violated ? "a + b is finite and a - b is not an integer"
                                            : "a - b is within the integrality buffer zone");
}

Decision decide_bownik_jasper(const std::vector<Real>& points, const SequenceSpec& d, const Options& opt) {
  require_real(d, "d");
  if (points.size() < 2) throw InputError("need at least the endpoints 0 and B");
  if (!points.front().is_zero()) throw InputError("the first spectral point must be 0");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i])) throw InputError("spectral points must be strictly increasing");
  const bool exact = all_exact(points) && d.exact();
  const Real B = points.back();
  const std::vector<Real> lam(points.begin() + 1, points.end() - 1);
  const std::size_t n = lam.size();
  seq::Bounds bd = seq::bounds(d);
  if (!bd.empty && (bd.inf < Real(0) || bd.sup > B)) throw InputError("entries must lie in [0, B]");
  if (!is_infinite(sum_of(d)) || !is_infinite(sum_below(d, B)))
    throw PreconditionError("the theorem requires sum d = sum (B - d) = infinity");

  auto C = [&](const Real& alpha) { return sum_of(seq::partition(d, alpha).below); };
  auto D = [&](const Real& alpha) {
    seq::Partition p = seq::partition(d, alpha);
    return sum_below(p.equal + p.above, B);
  };
  Decision out = make("bownik-jasper", exact);
  const Real half_b = B * half_of(exact);
  ExtendedSum c_half = C(half_b), d_half = D(half_b);
  out.certificate = {{"C_half", io::to_json(c_half)}, {"D_half", io::to_json(d_half)}};
  if (!c_half.is_finite() || !d_half.is_finite()) return finish(out, Verdict::Yes, "C(B/2) + D(B/2) is infinite");

  const Real x = c_half.real() - d_half.real();
  std::vector<Real> lhs(n);
  std::vector<std::uint64_t> bound(n);
  std::uint64_t candidates = 1;
  bool overflow = false;
  for (std::size_t r = 0; r < n; ++r) {
    ExtendedSum cr = C(lam[r]), dr = D(lam[r]);
    if (!cr.is_finite() || !dr.is_finite()) throw PreconditionError("C or D diverges at an interior point");
    lhs[r] = (B - lam[r]) * cr.real() + lam[r] * dr.real();
    // N_r appears in the r-th inequality with coefficient (B - lambda_r) lambda_r; every other term is >= 0.
    Real cap = lhs[r] / ((B - lam[r]) * lam[r]);
    if (!exact) cap = cap * Real(1 + opt.tol);
    Real fl = cap.floor();
    double f = fl.to_double();
    if (f < 1) {
      bound[r] = 0;
      candidates = 0;
      continue;
    }
    bound[r] = f > 1e18 ? std::uint64_t(1e18) : static_cast<std::uint64_t>(f);
    if (candidates && bound[r] > opt.max_candidates / std::max<std::uint64_t>(candidates, 1)) overflow = true;
    else candidates *= bound[r];
  }
  out.certificate["C_minus_D"] = io::to_json(x);
  out.certificate["inequality_lhs"] = io::to_json(lhs);
  json jb = json::array();
  for (auto b : bound) jb.push_back(b);
  out.certificate["search_bounds"] = jb;
  if (overflow || candidates > opt.max_candidates)
    return finish(out, Verdict::Unknown, "search space exceeds the candidate cap");

  if (n == 0) {
    Integrality in = integrality(x / B, opt.tol);
    if (in.zone != Zone::Violated) out.certificate["k"] = io::to_json(in.nearest);
    return finish(out, from_zone(in.zone, Verdict::Yes, Verdict::No),
                  in.zone == Zone::Ok ? "(C - D) / B is an integer" : "(C - D) / B is not an integer");
  }
  if (candidates == 0) return finish(out, Verdict::No, "some N_j would have to be zero");

  bool unclear = false;
  std::vector<std::uint64_t> N(n, 1);
  while (true) {
    Real weighted = 0;
    for (std::size_t j = 0; j < n; ++j) weighted += lam[j] * Real(N[j]);
    Integrality in = integrality((x - weighted) / B, opt.tol);
    Zone zone = in.zone;
    std::vector<Real> rhs(n);
    if (zone != Zone::Violated) {
      for (std::size_t r = 0; r < n && zone != Zone::Violated; ++r) {
        Real lower = 0, upper = 0;
        for (std::size_t j = 0; j <= r; ++j) lower += lam[j] * Real(N[j]);
        for (std::size_t j = r + 1; j < n; ++j) upper += (B - lam[j]) * Real(N[j]);
        rhs[r] = (B - lam[r]) * lower + lam[r] * upper;
        zone = worst(zone, leq_zone(rhs[r], lhs[r], opt.tol));
      }
    }
    if (zone == Zone::Ok) {
      json jn = json::array();
      for (auto v : N) jn.push_back(v);
      out.certificate["N"] = jn;
      out.certificate["k"] = io::to_json(in.nearest);
      out.certificate["inequality_rhs"] = io::to_json(rhs);
      return finish(out, Verdict::Yes, "integers N, k satisfy the equality and every r-inequality");
    }
    if (zone == Zone::Unclear) unclear = true;
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (N[j] < bound[j]) {
        ++N[j];
        break;
      }
      N[j] = 1;
      if (j == 0) {
        j = n;
        break;
      }
    }
    if (j == n) break;
  }
  if (unclear) return finish(out, Verdict::Unknown, "a candidate lies within the tolerance buffer zone");
  return finish(out, Verdict::No, "no admissible N_1..N_n, k exist");
}

Decision decide_neumann_closure(const spectra::OperatorSpec& spec, const SequenceSpec& d, const Options& opt) {
  require_real(d, "d");
  EssentialData e = essential_interval(spec);
  const SequenceSpec ev = spec.eigenvalue_sequence();
  Decision out = make("neumann", spec.exact() && d.exact());
  const Real& lo = e.lo;
  const Real& hi = e.hi;
  auto above = [](const SequenceSpec& s, const Real& t) {
    return seq::affine_image(seq::partition(s, t).above, Real(1), -t);
  };
  auto below = [](const SequenceSpec& s, const Real& t) {
    return seq::affine_image(seq::partition(s, t).below, Real(-1), t);
  };
  SequenceSpec t_plus = above(ev, hi), t_minus = below(ev, lo);
  SequenceSpec d_plus = above(d, hi), d_minus = below(d, lo);
  out.certificate = {{"alpha_minus", io::to_json(lo)}, {"alpha_plus", io::to_json(hi)}};
  if (!seq::converges_to_zero(d_plus) || !seq::converges_to_zero(d_minus))
    return finish(out, Verdict::No, "the part of d outside [alpha-, alpha+] does not converge to zero");
  auto vp = major::weak_majorize(d_plus, t_plus, opt.major);
  auto vm = major::weak_majorize(d_minus, t_minus, opt.major);
  out.certificate["plus"] = witness_json(vp);
  out.certificate["minus"] = witness_json(vm);
  if (vp.mode == major::Mode::Float || vm.mode == major::Mode::Float) out.mode = major::Mode::Float;
  if (vp.verdict == major::Verdict::Fails || vm.verdict == major::Verdict::Fails)
    return finish(out, Verdict::No, "a clamped part of d is not weakly majorized");
  if (vp.verdict == major::Verdict::Holds && vm.verdict == major::Verdict::Holds)
    return finish(out, Verdict::Yes, "both clamped parts are weakly majorized; d is in the closure");
  return finish(out, Verdict::Unknown, "weak majorization undecided");
}

namespace {

/// Strictly inside the convex polygon hull (counterclockwise).
bool strictly_inside(const std::vector<Complex>& hull, const Complex& z) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex& a = hull[i];
    const Complex& b = hull[(i + 1) % hull.size()];
    if (cross(b - a, z - a).sign() <= 0) return false;
  }
  return true;
}

bool inside_closed(const std::vector<Complex>& hull, const Complex& z) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex& a = hull[i];
    const Complex& b = hull[(i + 1) % hull.size()];
    if (cross(b - a, z - a).sign() < 0) return false;
  }
  return true;
}

std::vector<Complex> ccw(std::vector<Complex> hull) {
  Real area = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) area += cross(hull[i], hull[(i + 1) % hull.size()]);
  if (area.sign() < 0) std::reverse(hull.begin(), hull.end());
  return hull;
}

}  // namespace

Decision check_blaschke(const spectra::OperatorSpec& spec, const SequenceSpec& d, BlaschkeMode mode,
                        const Options& opt) {
  (void)opt;
  if (mode == BlaschkeMode::Selfadjoint) {
    require_real(d, "d");
    EssentialData e = essential_interval(spec);
    Decision out = make("blaschke", spec.exact() && d.exact());
    if (!(e.lo < e.hi)) throw PreconditionError("the essential numerical range has empty interior");
    seq::Bounds b = seq::bounds(d);
    if (!b.empty && (b.inf < e.lo || (b.inf == e.lo && b.inf_attained) || b.sup > e.hi ||
                     (b.sup == e.hi && b.sup_attained)))
      throw PreconditionError("d must lie in the open interval (alpha-, alpha+)");
    ExtendedSum s = interval_blaschke(d, e.lo, e.hi);
    out.certificate = {{"alpha_minus", io::to_json(e.lo)}, {"alpha_plus", io::to_json(e.hi)}, {"sum", io::to_json(s)}};
    if (is_infinite(s)) return finish(out, Verdict::SufficientConditionHolds, "the Blaschke sum diverges");
    return finish(out, Verdict::ConditionFails, "the Blaschke sum converges; the theorem does not apply");
  }
  spectra::SpectralSummary sum = spectra::essential_summary(spec);
  if (sum.real || sum.ess_hull.size() < 3) throw PreconditionError("the essential numerical range has empty interior");
  const std::vector<Complex> hull = ccw(sum.ess_hull);
  Decision out = make("blaschke", spec.exact() && d.exact());
  out.certificate = {{"ess_numerical_range", io::to_json(hull)}};
  bool diverges = false;
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case seq::StreamKind::Finite:
        for (const auto& v : a.values)
          if (!strictly_inside(hull, v)) throw PreconditionError("d must lie in the interior of W_e(T)");
        break;
      case seq::StreamKind::Constant:
        if (!strictly_inside(hull, a.value)) throw PreconditionError("d must lie in the interior of W_e(T)");
        if (!a.count) diverges = true;
        break;
      default:
        if (!strictly_inside(hull, a.term(0)) || !inside_closed(hull, a.shift))
          throw PreconditionError("d must lie in the interior of W_e(T)");
        if (strictly_inside(hull, a.shift)) diverges = true;
    }
  }
  if (diverges) return finish(out, Verdict::SufficientConditionHolds, "a stream accumulates in the interior");
  return finish(out, Verdict::ConditionFails, "every stream converges to the boundary at a summable rate");
}

Decision decide_three_point(const spectra::OperatorSpec& spec, const SequenceSpec& d, const Options& opt) {
  require_real(d, "d");
  EssentialData e = essential_interval(spec);
  if (e.summary.ess_spectrum.size() < 3) throw PreconditionError("need at least three points in the essential spectrum");
  if (!(e.summary.spectrum_min == e.lo) || !(e.summary.spectrum_max == e.hi))
    throw PreconditionError("min and max of the spectrum must lie in the essential spectrum");
  const SequenceSpec ev = spec.eigenvalue_sequence();
  Decision out = make("three-point", spec.exact() && d.exact());
  const seq::Count mult_a = seq::count_equal(ev, e.lo), mult_b = seq::count_equal(ev, e.hi);
  const seq::Count uses_a = seq::count_equal(d, e.lo), uses_b = seq::count_equal(d, e.hi);
  seq::Bounds b = seq::bounds(d);
  Zone in_range = b.empty ? Zone::Ok : worst(leq_zone(e.lo, b.inf, opt.tol), leq_zone(b.sup, e.hi, opt.tol));
  ExtendedSum blaschke = in_range == Zone::Violated ? ExtendedSum::finite(Real(0)) : interval_blaschke(d, e.lo, e.hi);
  const bool divergent = is_infinite(blaschke);
  const bool counts_ok = count_leq(uses_a, mult_a) && count_leq(uses_b, mult_b);
  out.certificate = {{"a", io::to_json(e.lo)},
                     {"b", io::to_json(e.hi)},
                     {"in_numerical_range", in_range == Zone::Ok},
                     {"blaschke_sum", io::to_json(blaschke)},
                     {"uses_a", io::to_json(uses_a)},
                     {"uses_b", io::to_json(uses_b)},
                     {"multiplicity_a", io::to_json(mult_a)},
                     {"multiplicity_b", io::to_json(mult_b)}};
  if (in_range == Zone::Violated) return finish(out, Verdict::No, "d leaves W(T)");
  if (!counts_ok) return finish(out, Verdict::No, "an endpoint occurs more often than its eigenspace dimension");
  if (!divergent) return finish(out, Verdict::No, "the Blaschke sum converges");
  if (in_range == Zone::Unclear) return finish(out, Verdict::Unknown, "an entry is within tolerance of an endpoint");
  return finish(out, Verdict::Yes, "d lies in W(T), the Blaschke sum diverges and endpoint counts fit");
}

}  // namespace diagonalis::decide
