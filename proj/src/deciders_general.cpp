#include <algorithm>
#include <cmath>
#include <numeric>

#include "deciders_common.hpp"

namespace diagonalis::decide {

using namespace detail;
using seq::SequenceSpec;

Decision decide_thompson(const std::vector<Real>& s, const std::vector<Complex>& d, const Options& opt) {
  if (s.size() != d.size()) throw InputError("s and d must have the same length");
  if (s.empty()) throw InputError("s must be nonempty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].sign() < 0) throw InputError("singular values must be nonnegative");
    if (i && s[i] > s[i - 1]) throw InputError("singular values must be nonincreasing");
  }
  std::vector<Real> a;
  for (const auto& z : d) a.push_back(z.abs());
  std::sort(a.begin(), a.end(), std::greater<>());
  bool exact = std::all_of(a.begin(), a.end(), [](const Real& x) { return x.exact(); }) &&
               std::all_of(s.begin(), s.end(), [](const Real& x) { return x.exact(); });
  Decision out = make("thompson", exact);
  const std::size_t n = s.size();
  Real ps = 0, pa = 0;
  Zone z = Zone::Ok;
  json prefix = json::array();
  for (std::size_t k = 0; k < n; ++k) {
    ps += s[k], pa += a[k];
    prefix.push_back({io::to_json(pa), io::to_json(ps)});
    Zone zk = leq_zone(pa, ps, opt.tol);
    if (zk == Zone::Violated && z != Zone::Violated) out.certificate["first_violation"] = k + 1;
    z = worst(z, zk);
  }
  Real lhs = Real(2) * (s[n - 1] - a[n - 1]);
  Real rhs = ps - pa;
  out.certificate["abs_d_sorted"] = io::to_json(a);
  out.certificate["prefix_sums"] = prefix;
  out.certificate["last_lhs"] = io::to_json(lhs);
  out.certificate["last_rhs"] = io::to_json(rhs);
  if (z == Zone::Violated) return finish(out, Verdict::No, "a partial sum of |d|* exceeds the partial sum of s");
  Zone last = leq_zone(lhs, rhs, opt.tol);
  z = worst(z, last);
  return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                z == Zone::Ok ? "both Thompson inequalities hold"
                : last == Zone::Violated ? "2(s_n - |d|*_n) exceeds sum (s_i - |d|*_i)"
                                         : "an inequality holds only within tolerance");
}

Decision decide_thompson_compact(const SequenceSpec& s, const SequenceSpec& d, const Options& opt) {
  if (!s.is_real() || !seq::is_nonnegative(s) || !seq::converges_to_zero(s))
    throw InputError("s must be a nonnegative sequence converging to zero");
  if (!seq::converges_to_zero(d)) throw InputError("d must converge to zero");
  SequenceSpec a = seq::abs_values(d);
  Decision out = make("thompson-compact", s.exact() && a.exact());
  auto v = major::weak_majorize(a, s, opt.major);
  out.mode = v.mode;
  out.certificate["weak_majorization"] = witness_json(v);
  return finish(out, from_major(v.verdict, Verdict::Yes, Verdict::No),
                v.verdict == major::Verdict::Holds ? "|d| is weakly majorized by s" : v.reason);
}

namespace {

/// Margin of z inside a counterclockwise polygon: min over edges of the signed distance.
Real polygon_margin(const std::vector<Complex>& hull, const Complex& z) {
  Real best;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex& a = hull[i];
    const Complex& b = hull[(i + 1) % hull.size()];
    Real c = cross(b - a, z - a);
    // Compare by c / |b - a| without a square root: keep the sign, square the magnitude.
    Real sq = c * c / (b - a).norm2();
    Real m = c.sign() < 0 ? -sq : sq;
    if (i == 0 || m < best) best = m;
  }
  return best;
}

}  // namespace

Decision check_mt_p_summable(const spectra::OperatorSpec& spec, const SequenceSpec& d, double p, const Options& opt) {
  if (!(p > 1)) throw InputError("p must exceed 1");
  spectra::SpectralSummary sum = spectra::essential_summary(spec);
  if (sum.ess_spectrum.empty()) throw PreconditionError("essential spectrum is empty");
  Decision out = make("muller-tomilov-p", spec.exact() && d.exact());
  out.certificate["p"] = p;
  const bool line = sum.real && d.is_real();
  std::vector<Complex> hull = sum.ess_hull;
  if (sum.real) {
    hull.clear();
    hull.push_back(Complex(sum.ess_interval->first));
    if (sum.ess_interval->second != sum.ess_interval->first) hull.push_back(Complex(sum.ess_interval->second));
  }
  out.certificate["distance"] = line ? "real line" : "plane";
  // Only limits of infinite streams matter: every other contribution is a finite or geometric/telescoping tail.
  Zone z = Zone::Ok;
  json interior = json::array();
  for (const auto& lim : seq::accumulation_points(d)) {
    Real margin;  // > 0 iff strictly inside; squared scale
    if (line) {
      const Real& lo = sum.ess_interval->first;
      const Real& hi = sum.ess_interval->second;
      Real m = min(lim.re - lo, hi - lim.re);
      margin = m.sign() < 0 ? -(m * m) : m * m;
    } else if (hull.size() < 3) {
      margin = Real(0);
    } else {
      margin = polygon_margin(hull, lim);
    }
    if (margin.sign() <= 0) continue;
    Zone zi = margin.exact() ? Zone::Violated : leq_zone(margin, Real(0.0), opt.tol * opt.tol);
    if (zi != Zone::Ok) interior.push_back(io::to_json(lim));
    z = worst(z, zi);
  }
  out.certificate["interior_limits"] = interior;
  if (z == Zone::Ok) return finish(out, Verdict::SufficientConditionHolds, "sum dist^p(d_n, complement of W_e(T)) converges");
  if (z == Zone::Unclear) return finish(out, Verdict::Unknown, "a limit point lies within tolerance of the boundary");
  return finish(out, Verdict::ConditionFails, "a limit point of d lies in the interior of W_e(T)");
}

Decision check_fan_criterion(const seq::OrderedSequenceSpec& d, const Options& opt) {
  bool exact = std::all_of(d.prefix.begin(), d.prefix.end(), [](const Complex& z) { return z.exact(); });
  for (const auto& [s, w] : d.tail) exact = exact && s.exact();
  Decision out = make("fan", exact);
  const Real zero = exact ? Real(0) : Real(0.0);
  Complex prefix(zero, zero);
  for (const auto& x : d.prefix) prefix += x;
  auto zero_zone = [&](const Complex& z) { return worst(eq_zone(z.re, zero, opt.tol), eq_zone(z.im, zero, opt.tol)); };
  if (d.tail.empty()) {
    out.certificate["total"] = io::to_json(prefix);
    Zone z = zero_zone(prefix);
    return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                  z == Zone::Ok ? "the finite sum is zero" : "the finite sum is not zero");
  }
  Complex drift(zero, zero), limit = prefix;
  for (const auto& [s, w] : d.tail) {
    if (!s.infinite()) return finish(out, Verdict::Unknown, "finite streams in the interleaved tail are not supported");
    Complex one_term = s.kind == seq::StreamKind::Constant ? s.value : s.shift;
    drift += one_term * Complex(Real(static_cast<unsigned long long>(w)));
    if (s.kind == seq::StreamKind::Geometric) limit += s.first / Complex(Real(1) - s.ratio);
    if (s.kind == seq::StreamKind::Telescoping) limit += s.scale / Complex(Real(static_cast<unsigned long long>(s.start)));
  }
  out.certificate["drift_per_cycle"] = io::to_json(drift);
  Zone dz = zero_zone(drift);
  if (dz == Zone::Violated) return finish(out, Verdict::No, "partial sums drift to infinity");
  if (dz == Zone::Unclear) return finish(out, Verdict::Unknown, "drift per cycle is zero only within tolerance");
  // Partial sums at a fixed position inside the cycle converge to limit + offset.
  json limits = json::array();
  Complex offset(zero, zero);
  Zone best = Zone::Violated;
  for (const auto& [s, w] : d.tail) {
    Complex step = s.kind == seq::StreamKind::Constant ? s.value : s.shift;
    for (std::uint64_t j = 0; j < w; ++j) {
      Complex pt = limit + offset;
      limits.push_back(io::to_json(pt));
      Zone z = zero_zone(pt);
      if (static_cast<int>(z) < static_cast<int>(best)) best = z;
      offset += step;
    }
  }
  out.certificate["partial_sum_limits"] = limits;
  return finish(out, from_zone(best, Verdict::Yes, Verdict::No),
                best == Zone::Ok ? "a subsequence of partial sums converges to zero"
                                 : "no limit point of the partial sums is zero");
}

std::string to_string(TraceSet::Shape s) {
  switch (s) {
    case TraceSet::Shape::Empty: return "Empty";
    case TraceSet::Shape::Point: return "Point";
    case TraceSet::Shape::Line: return "Line";
    case TraceSet::Shape::Plane: return "Plane";
  }
  return "Empty";
}

nlohmann::json TraceSet::to_json() const {
  json j{{"shape", decide::to_string(shape)}, {"exact", exact}};
  if (shape == Shape::Point || shape == Shape::Line) j["value"] = io::to_json(value);
  if (shape == Shape::Line) j["direction"] = io::to_json(direction);
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

namespace {

Real reduce_phase(const Real& phi, const Real& period) { return phi - period * (phi / period).floor(); }

/// e^{i pi phi}, exact when phi is a multiple of 1/2.
Complex unit(const Real& phi) {
  if (phi.exact()) {
    Real q = reduce_phase(phi * Real(2), Real(4));
    if (q.is_integer()) {
      static const Complex units[] = {Complex(Real(1)), Complex(Real(0), Real(1)), Complex(Real(-1)),
                                      Complex(Real(0), Real(-1))};
      return units[static_cast<int>(q.to_double())];
    }
  }
  double a = M_PI * phi.to_double();
  return Complex(Real(std::cos(a)), Real(std::sin(a)));
}

}  // namespace

TraceSet classify_trace_set(const std::vector<Ray>& rays, double tol) {
  TraceSet out;
  struct Direction {
    Real phase;
    bool summable = true;
  };
  std::vector<Direction> dirs;
  Complex point(Real(0));
  for (const auto& r : rays) {
    if (!r.magnitudes.is_real() || !seq::is_nonnegative(r.magnitudes)) throw InputError("ray magnitudes must be nonnegative");
    out.exact = out.exact && r.phase.exact() && r.magnitudes.exact();
    Real ph = reduce_phase(r.phase, Real(2));
    seq::ExtendedSum s = seq::total_sum(r.magnitudes);
    if (s.is_finite()) point += unit(ph) * s.value;
    auto it = std::find_if(dirs.begin(), dirs.end(), [&](const Direction& d) {
      Real diff = (d.phase - ph).abs();
      diff = min(diff, Real(2) - diff);
      return diff.exact() ? diff.is_zero() : diff.to_double() <= tol;
    });
    if (it == dirs.end()) {
      dirs.push_back({ph, true});
      it = dirs.end() - 1;
    }
    if (!s.is_finite()) it->summable = false;
  }
  std::vector<Real> u;
  for (const auto& d : dirs)
    if (!d.summable) u.push_back(d.phase);
  if (u.empty()) {
    out.shape = TraceSet::Shape::Point;
    out.value = point;
    out.exact = out.exact && point.exact();
    out.reason = "every ray is summable; T is trace class";
    return out;
  }
  std::sort(u.begin(), u.end());
  Real max_gap = Real(2) - (u.back() - u.front());
  for (std::size_t i = 1; i < u.size(); ++i) max_gap = max(max_gap, u[i] - u[i - 1]);
  auto less_than_one = [&](const Real& g) { return g.exact() ? g < Real(1) : g.to_double() < 1 - tol; };
  if (less_than_one(max_gap)) {
    out.shape = TraceSet::Shape::Plane;
    out.reason = "every open half-plane contains a non-summable ray";
    return out;
  }
  if (u.size() == 2) {
    Real diff = u[1] - u[0];
    bool antipodal = diff.exact() ? diff == Real(1) : std::abs(diff.to_double() - 1) <= tol;
    if (antipodal) {
      out.shape = TraceSet::Shape::Line;
      out.direction = reduce_phase(u[0], Real(1));
      out.value = point;
      out.reason = "the non-summable rays form an antipodal pair";
      return out;
    }
  }
  out.shape = TraceSet::Shape::Empty;
  out.reason = "some half-plane direction is summable on one side only";
  return out;
}

namespace {

void require_projection(const Matrix& p, const char* name) {
  if (!p.square()) throw InputError(std::string(name) + " must be square");
  double scale = std::max(1.0, p.frobenius());
  if ((p * p - p).frobenius() > kMatTol * scale || !is_hermitian(p))
    throw InputError(std::string(name) + " is not a projection");
}

double integral_trace(const Matrix& p, const char* name) {
  double t = p.trace().real();
  if (std::abs(t - std::round(t)) > 0.1) throw InputError(std::string(name) + " has non-integral trace");
  return t;
}

}  // namespace

std::int64_t essential_codimension_finite(const Matrix& p, const Matrix& q) {
  require_projection(p, "P");
  require_projection(q, "Q");
  if (p.n() != q.n()) throw InputError("P and Q must have the same size");
  return static_cast<std::int64_t>(std::llround(integral_trace(p, "P") - integral_trace(q, "Q")));
}

nlohmann::json IdentityReport::to_json() const {
  auto c = [](cplx z) { return z.imag() == 0 ? json(z.real()) : json{{"re", z.real()}, {"im", z.imag()}}; };
  return {{"lhs", c(lhs)}, {"rhs", c(rhs)}, {"residual", residual}};
}

IdentityReport verify_kadison_codimension_identity(const Matrix& p) {
  require_projection(p, "P");
  double a = 0, b = 0, tr_q = 0;
  for (std::size_t j = 0; j < p.n(); ++j) {
    double d = p(j, j).real();
    if (d < 0.5) {
      a += d;
    } else {
      b += 1 - d;
      tr_q += 1;
    }
  }
  IdentityReport r;
  r.lhs = a - b;
  r.rhs = p.trace().real() - tr_q;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

IdentityReport verify_normal_codimension_identity(const Matrix& n, const Matrix& n_diag) {
  constexpr double kCluster = 1e-8, kAmbiguous = 1e-5;
  if (!n.square() || !n_diag.square() || n.n() != n_diag.n()) throw InputError("N and N' must be square of equal size");
  if (!is_normal(n)) throw InputError("N is not normal");
  for (std::size_t i = 0; i < n_diag.n(); ++i)
    for (std::size_t j = 0; j < n_diag.n(); ++j)
      if (i != j && std::abs(n_diag(i, j)) > kMatTol) throw InputError("N' is not diagonal");
  NormalEigen e = normal_eigen(n);
  const std::size_t sz = e.values.size();
  std::vector<std::size_t> parent(sz);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = i + 1; j < sz; ++j)
      if (std::abs(e.values[i] - e.values[j]) <= kCluster) parent[find(i)] = find(j);
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = i + 1; j < sz; ++j) {
      double dist = std::abs(e.values[i] - e.values[j]);
      if (find(i) != find(j) && dist <= kAmbiguous) throw InputError("eigenvalue clusters are ambiguous at tolerance");
    }
  struct Cluster {
    cplx value = 0;
    double size = 0, count = 0;
  };
  std::vector<Cluster> clusters;
  std::vector<std::size_t> index(sz, SIZE_MAX);
  for (std::size_t i = 0; i < sz; ++i) {
    std::size_t r = find(i);
    if (index[r] == SIZE_MAX) index[r] = clusters.size(), clusters.emplace_back();
    Cluster& c = clusters[index[r]];
    c.value += e.values[i];
    c.size += 1;
  }
  for (auto& c : clusters) c.value /= c.size;
  for (std::size_t j = 0; j < n_diag.n(); ++j) {
    cplx x = n_diag(j, j);
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const Cluster& c) { return std::abs(c.value - x) <= std::max(kAmbiguous, kCluster); });
    if (it == clusters.end()) throw InputError("spectrum of N' is not contained in the spectrum of N");
    it->count += 1;
  }
  IdentityReport r;
  r.lhs = n.trace() - n_diag.trace();
  for (const auto& c : clusters) r.rhs += (c.size - c.count) * c.value;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace diagonalis::decide
