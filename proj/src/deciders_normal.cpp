#include <algorithm>
#include <array>

#include "deciders_common.hpp"

namespace diagonalis::decide {

using namespace detail;
using seq::SequenceSpec;

namespace {

bool all_exact(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) { return z.exact(); });
}

Zone zero_zone(const Real& x, double tol) { return eq_zone(x, x.exact() ? Real(0) : Real(0.0), tol); }

Zone equal_zone(const Complex& a, const Complex& b, double tol) {
  return worst(eq_zone(a.re, b.re, tol), eq_zone(a.im, b.im, tol));
}

Real re_dot(const Complex& a, const Complex& b) { return a.re * b.re + a.im * b.im; }

/// p on the closed segment [a, b].
Zone on_segment(const Complex& a, const Complex& b, const Complex& p, double tol) {
  Complex e = b - a;
  Real len2 = e.norm2();
  if (len2.is_zero()) return equal_zone(p, a, tol);
  Real cr = cross(e, p - a) / len2;
  Real t = re_dot(p - a, e) / len2;
  Real zero = t.exact() ? Real(0) : Real(0.0);
  return worst(zero_zone(cr, tol), worst(leq_zone(zero, t, tol), leq_zone(t, zero + Real(1), tol)));
}

int coord_sign(const Real& c, double tol) {
  if (c.exact()) return c.sign();
  double x = c.to_double();
  return std::abs(x) <= tol ? 0 : (x > 0 ? 1 : -1);
}

const char* kCaseNames[] = {"vertex", "edge", "interior"};

Decision williams_collinear(const std::vector<Complex>& lambda, const std::vector<Complex>& d, const Options& opt,
                            bool exact) {
  std::size_t far = 1;
  for (std::size_t k = 2; k < 3; ++k)
    if ((lambda[k] - lambda[0]).norm2() > (lambda[far] - lambda[0]).norm2()) far = k;
  Complex u = lambda[far] - lambda[0];
  Decision out = make("williams", exact);
  out.certificate["case"] = "collinear";
  if (u.norm2().is_zero()) {
    Zone z = Zone::Ok;
    for (const auto& x : d) z = worst(z, equal_zone(x, lambda[0], opt.tol));
    return finish(out, from_zone(z, Verdict::Yes, Verdict::No), "N is scalar; its only diagonal is constant");
  }
  Real len2 = u.norm2();
  auto coord = [&](const Complex& x) { return re_dot(x - lambda[0], u) / len2; };
  Zone off = Zone::Ok;
  std::vector<Real> tl, td;
  for (const auto& x : lambda) tl.push_back(coord(x));
  for (const auto& x : d) {
    off = worst(off, zero_zone(cross(u, x - lambda[0]) / len2, opt.tol));
    td.push_back(coord(x));
  }
  if (off == Zone::Violated) return finish(out, Verdict::No, "a diagonal entry is off the line through the spectrum");
  Decision sh = decide_schur_horn(tl, td, opt);
  sh.theorem = "williams";
  sh.certificate["case"] = "collinear";
  sh.certificate["reduction"] = "Schur-Horn along the spectral line";
  if (off == Zone::Unclear && sh.verdict == Verdict::Yes) sh.verdict = Verdict::Unknown;
  return sh;
}

}  // namespace

Decision decide_williams_3x3(const std::vector<Complex>& lambda, const std::vector<Complex>& d, const Options& opt) {
  if (lambda.size() != 3 || d.size() != 3) throw InputError("Williams' theorem needs three eigenvalues and three diagonal entries");
  const bool exact = all_exact(lambda) && all_exact(d);
  const Complex tr = lambda[0] + lambda[1] + lambda[2];
  const Real area = cross(lambda[1] - lambda[0], lambda[2] - lambda[0]);
  Real scale = max(max((lambda[1] - lambda[0]).norm2(), (lambda[2] - lambda[0]).norm2()), Real(1));
  if (area.is_zero() || (!area.exact() && std::abs(area.to_double()) <= opt.tol * scale.to_double()))
    return williams_collinear(lambda, d, opt, exact);

  auto bary = [&](const Complex& p) {
    std::array<Real, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = cross(lambda[(i + 1) % 3] - p, lambda[(i + 2) % 3] - p) / area;
    return c;
  };
  Decision out = make("williams", exact);
  const std::array<Real, 3> b1 = bary(d[0]);
  out.certificate["barycentric_d1"] = io::to_json(std::vector<Real>(b1.begin(), b1.end()));
  int signs[3], zeros = 0;
  for (int i = 0; i < 3; ++i) {
    signs[i] = coord_sign(b1[i], opt.tol);
    if (signs[i] < 0) return finish(out, Verdict::No, "d1 lies outside W(N)");
    zeros += signs[i] == 0;
  }
  Zone trace = equal_zone(d[0] + d[1] + d[2], tr, opt.tol);
  if (trace == Zone::Violated) return finish(out, Verdict::No, "trace d differs from trace N");

  Zone z = trace;
  const int kind = zeros == 2 ? 0 : zeros == 1 ? 1 : 2;
  out.certificate["case"] = kCaseNames[kind];
  if (kind == 0) {
    int i = signs[0] ? 0 : signs[1] ? 1 : 2;
    const Complex& a = lambda[(i + 1) % 3];
    const Complex& b = lambda[(i + 2) % 3];
    out.certificate["vertex"] = i + 1;
    z = worst(z, on_segment(a, b, d[1], opt.tol));
  } else if (kind == 1) {
    int i = !signs[0] ? 0 : !signs[1] ? 1 : 2;
    const Complex reflected = lambda[(i + 1) % 3] + lambda[(i + 2) % 3] - d[0];
    out.certificate["opposite_vertex"] = i + 1;
    out.certificate["d1_prime"] = io::to_json(reflected);
    z = worst(z, on_segment(lambda[i], reflected, d[1], opt.tol));
  } else {
    // Inconic with perspector (1/u : 1/v : 1/w), the isotomic conjugate of d1.
    const Real &u = b1[0], &v = b1[1], &w = b1[2];
    const std::array<Real, 3> b2 = bary(d[1]);
    const Real &x = b2[0], &y = b2[1], &t = b2[2];
    Real q = u * u * x * x + v * v * y * y + w * w * t * t - Real(2) * (v * w * y * t + w * u * t * x + u * v * x * y);
    Real norm = (u * u + v * v + w * w) * (x * x + y * y + t * t);
    Real qn = q / norm;
    Complex center = (tr - d[0]) * Complex(half_of(exact));
    out.certificate["ellipse_center"] = io::to_json(center);
    out.certificate["conic_value_d2"] = io::to_json(qn);
    z = worst(z, leq_zone(qn, exact ? Real(0) : Real(0.0), opt.tol));
  }
  static const char* ok_reason[] = {"d2, d3 lie on the opposite edge, symmetric about its midpoint",
                                    "d2, d3 lie on [lambda_i, d1'], symmetric about its midpoint",
                                    "d2, d3 lie in the inscribed ellipse, symmetric about its center"};
  static const char* bad_reason[] = {"d2, d3 are not on the opposite edge", "d2, d3 are not on [lambda_i, d1']",
                                     "d2 lies outside the inscribed ellipse"};
  return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                z == Zone::Unclear ? "a boundary condition holds only within tolerance"
                                   : z == Zone::Ok ? ok_reason[kind] : bad_reason[kind]);
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct LatticeColumn {
  BigInt a, b;
  std::vector<BigInt> coef;
};

/// Combines two columns so the first keeps gcd of the selected coordinate and the second gets 0 there.
void gcd_step(LatticeColumn& p, LatticeColumn& q, bool first) {
  BigInt x = first ? p.a : p.b, y = first ? q.a : q.b;
  BigInt s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = x, r1 = y;
  while (r1 != 0) {
    BigInt k = floor_div(r0, r1);
    BigInt r2 = r0 - k * r1, s2 = s0 - k * s1, t2 = t0 - k * t1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
  }
  // s0 x + t0 y = r0, s1 x + t1 y = 0 and the transform is unimodular.
  LatticeColumn np{s0 * p.a + t0 * q.a, s0 * p.b + t0 * q.b, {}};
  LatticeColumn nq{s1 * p.a + t1 * q.a, s1 * p.b + t1 * q.b, {}};
  for (std::size_t i = 0; i < p.coef.size(); ++i) {
    np.coef.push_back(s0 * p.coef[i] + t0 * q.coef[i]);
    nq.coef.push_back(s1 * p.coef[i] + t1 * q.coef[i]);
  }
  p = std::move(np);
  q = std::move(nq);
}

/// Integer c with sum c_j g_j = target, or nullopt; exact rational data.
std::optional<std::vector<BigInt>> solve_integer_lattice(const std::vector<Complex>& gens, const Complex& target) {
  BigInt l = 1;
  auto fold = [&](const Real& r) { l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(r.rational())); };
  for (const auto& g : gens) fold(g.re), fold(g.im);
  fold(target.re), fold(target.im);
  auto scaled = [&](const Real& r) {
    Rational q = r.rational() * Rational(l);
    return BigInt(boost::multiprecision::numerator(q));
  };
  std::vector<LatticeColumn> cols;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    LatticeColumn c{scaled(gens[j].re), scaled(gens[j].im), std::vector<BigInt>(gens.size(), 0)};
    c.coef[j] = 1;
    cols.push_back(std::move(c));
  }
  std::optional<std::size_t> p1, p2;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].a == 0) continue;
    if (!p1) p1 = j;
    else gcd_step(cols[*p1], cols[j], true);
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (p1 && j == *p1) continue;
    if (cols[j].b == 0) continue;
    if (!p2) p2 = j;
    else gcd_step(cols[*p2], cols[j], false);
  }
  BigInt x = scaled(target.re), y = scaled(target.im);
  std::vector<BigInt> c(gens.size(), 0);
  auto add = [&](const LatticeColumn& col, const BigInt& k) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += k * col.coef[i];
  };
  if (p1) {
    const auto& col = cols[*p1];
    if (x % col.a != 0) return std::nullopt;
    BigInt k = x / col.a;
    add(col, k);
    y -= k * col.b;
  } else if (x != 0) {
    return std::nullopt;
  }
  if (p2) {
    const auto& col = cols[*p2];
    if (y % col.b != 0) return std::nullopt;
    add(col, y / col.b);
  } else if (y != 0) {
    return std::nullopt;
  }
  return c;
}

Zone polygon_zone(const std::vector<Complex>& poly, const Complex& z, double tol) {
  if (poly.size() == 1) return equal_zone(z, poly[0], tol);
  if (poly.size() == 2) return on_segment(poly[0], poly[1], z, tol);
  Zone out = Zone::Ok;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Complex& a = poly[i];
    const Complex& b = poly[(i + 1) % poly.size()];
    Real c = cross(b - a, z - a) / max((b - a).norm2(), Real(1));
    out = worst(out, leq_zone(c.exact() ? Real(0) : Real(0.0), c, tol));
  }
  return out;
}

std::optional<std::size_t> vertex_index(const std::vector<Complex>& x, const Complex& z, double tol) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (equal_zone(x[i], z, tol) == Zone::Ok) return i;
  return std::nullopt;
}

json bigints_json(const std::vector<BigInt>& c) {
  json a = json::array();
  for (const auto& x : c) a.push_back(x.str());
  return a;
}

}  // namespace

Decision check_arveson(const std::vector<Complex>& vertices, const SequenceSpec& d, const Options& opt) {
  const std::size_t m = vertices.size();
  if (m == 0) throw InputError("X must be nonempty");
  const bool exact = all_exact(vertices) && d.exact();
  std::vector<Complex> poly = vertices;
  if (m >= 3) {
    Real area = 0;
    for (std::size_t i = 0; i < m; ++i) area += cross(poly[i], poly[(i + 1) % m]);
    if (area.sign() < 0) std::reverse(poly.begin(), poly.end());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == (i + 1) % m) continue;
        if (cross(poly[(i + 1) % m] - poly[i], poly[k] - poly[i]).sign() <= 0)
          throw InputError("X must be the vertices of a convex polygon in convex position");
      }
  } else if (m == 2 && equal_zone(poly[0], poly[1], opt.tol) == Zone::Ok) {
    throw InputError("X has repeated vertices");
  }

  auto inside = [&](const Complex& z) {
    if (polygon_zone(poly, z, opt.tol) == Zone::Violated) throw InputError("d must lie in conv X");
  };
  Complex sum = exact ? Complex(Real(0)) : Complex(Real(0.0));
  auto closest = [&](const Complex& z) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
      if ((z - vertices[i]).norm2() < (z - vertices[best]).norm2()) best = i;
    return vertices[best];
  };
  for (const auto& a : d.atoms()) {
    switch (a.kind) {
      case seq::StreamKind::Finite:
        for (const auto& v : a.values) inside(v), sum += v - closest(v);
        break;
      case seq::StreamKind::Constant:
        inside(a.value);
        if (a.count) {
          sum += (a.value - closest(a.value)) * Complex(Real(*a.count));
        } else if (!vertex_index(vertices, a.value, opt.tol)) {
          throw PreconditionError("sum of dist(d_n, X) diverges");
        }
        break;
      default: {
        inside(a.term(0));
        inside(a.shift);
        if (!vertex_index(vertices, a.shift, opt.tol)) throw PreconditionError("sum of dist(d_n, X) diverges");
        // Each term is assigned to the limit vertex; the deviations sum in closed form.
        if (a.kind == seq::StreamKind::Geometric) sum += a.first / Complex(Real(1) - a.ratio);
        else sum += a.scale / Complex(Real(static_cast<unsigned long long>(a.start)));
      }
    }
  }

  Decision out = make("arveson", exact);
  out.certificate["deviation_sum"] = io::to_json(sum);
  std::vector<Complex> gens;
  for (std::size_t j = 1; j < m; ++j) gens.push_back(vertices[j] - vertices[0]);
  auto with_c1 = [](std::vector<Real> rest) {
    Real s = 0;
    for (const auto& x : rest) s += x;
    rest.insert(rest.begin(), -s);
    return rest;
  };

  if (m == 1) {
    out.certificate["c"] = json::array({"0"});
    return finish(out, Verdict::Yes, "X is a single point");
  }
  if (m == 2) {
    Complex t = sum / gens[0];
    Integrality in = integrality(t.re, opt.tol);
    Zone z = worst(in.zone, zero_zone(t.im, opt.tol));
    if (z != Zone::Violated) out.certificate["c"] = io::to_json(with_c1({in.nearest}));
    return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                  z == Zone::Ok ? "the deviation sum is an integer multiple of lambda_2 - lambda_1"
                                : "the deviation sum is not in the lattice");
  }
  if (m == 3 || !exact) {
    const Real det = cross(gens[0], gens[1]);
    auto solve = [&](const Complex& s) {
      return std::array<Real, 2>{cross(s, gens[1]) / det, cross(gens[0], s) / det};
    };
    if (m == 3) {
      auto c = solve(sum);
      Integrality i2 = integrality(c[0], opt.tol), i3 = integrality(c[1], opt.tol);
      Zone z = worst(i2.zone, i3.zone);
      if (z != Zone::Violated) out.certificate["c"] = io::to_json(with_c1({i2.nearest, i3.nearest}));
      return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                    z == Zone::Ok ? "integer coefficients found" : "the lattice is discrete and excludes the deviation sum");
    }
    // Float data with m >= 4: bounded search over c_4..c_m.
    const std::uint64_t width = 2 * opt.coeff_bound + 1;
    std::uint64_t total = 1;
    for (std::size_t j = 2; j < gens.size(); ++j) {
      if (total > opt.max_candidates / width) {
        total = opt.max_candidates + 1;
        break;
      }
      total *= width;
    }
    out.certificate["coeff_bound"] = opt.coeff_bound;
    if (total > opt.max_candidates) return finish(out, Verdict::Unknown, "search space exceeds the candidate cap");
    const long long bound = static_cast<long long>(opt.coeff_bound);
    std::vector<long long> rest(gens.size() - 2, -bound);
    bool unclear = false;
    while (true) {
      Complex s = sum;
      for (std::size_t j = 0; j < rest.size(); ++j) s -= gens[j + 2] * Complex(Real(rest[j]));
      auto c = solve(s);
      Integrality i2 = integrality(c[0], opt.tol), i3 = integrality(c[1], opt.tol);
      Zone z = worst(i2.zone, i3.zone);
      if (z == Zone::Ok) {
        std::vector<Real> cs{i2.nearest, i3.nearest};
        for (auto r : rest) cs.emplace_back(r);
        out.certificate["c"] = io::to_json(with_c1(cs));
        return finish(out, Verdict::Yes, "integer coefficients found within the bound");
      }
      unclear |= z == Zone::Unclear;
      std::size_t j = rest.size();
      while (j > 0 && rest[j - 1] == bound) rest[--j] = -bound;
      if (j == 0) break;
      ++rest[j - 1];
    }
    return finish(out, Verdict::Unknown,
                  unclear ? "a candidate lies within the tolerance buffer zone"
                          : "no coefficients within the bound; the lattice may be dense");
  }
  auto c = solve_integer_lattice(gens, sum);
  if (!c) return finish(out, Verdict::No, "the rational lattice excludes the deviation sum");
  BigInt s = 0;
  for (const auto& x : *c) s += x;
  c->insert(c->begin(), -s);
  out.certificate["c"] = bigints_json(*c);
  return finish(out, Verdict::Yes, "integer coefficients found by lattice reduction");
}

Decision decide_horn_unitary(const std::vector<Complex>& d, HornVariant variant, const Options& opt) {
  if (d.empty()) throw InputError("d must be nonempty");
  const bool real = std::all_of(d.begin(), d.end(), [](const Complex& z) { return z.is_real(); });
  if (variant != HornVariant::Unitary && !real) throw InputError("orthogonal and rotation variants need real d");
  std::vector<Real> a;
  for (const auto& z : d) a.push_back(variant == HornVariant::Rotation ? z.re : z.abs());
  const bool exact = std::all_of(a.begin(), a.end(), [](const Real& x) { return x.exact(); });
  const Real one = exact ? Real(1) : Real(1.0);
  const char* name = variant == HornVariant::Unitary ? "horn-unitary"
                     : variant == HornVariant::Orthogonal ? "horn-orthogonal" : "horn-rotation";
  Decision out = make(name, exact);
  Zone range = Zone::Ok;
  for (const auto& x : a) range = worst(range, worst(leq_zone(x, one, opt.tol), leq_zone(-one, x, opt.tol)));
  if (range == Zone::Violated) return finish(out, Verdict::No, "an entry has modulus greater than 1");

  Zone z = range;
  if (variant != HornVariant::Rotation) {
    Real mn = a[0], rhs = 0;
    for (const auto& x : a) mn = min(mn, x), rhs += one - x;
    Real lhs = Real(2) * (one - mn);
    out.certificate = {{"lhs", io::to_json(lhs)}, {"rhs", io::to_json(rhs)}};
    z = worst(z, leq_zone(lhs, rhs, opt.tol));
    return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                  z == Zone::Ok ? "2(1 - min |d|) <= sum (1 - |d|)" : "2(1 - min |d|) > sum (1 - |d|)");
  }
  // Parity polytope: y = (1 - d)/2 must satisfy sum_S (y - 1) - sum_{not S} y + 1 <= 0 for all odd S.
  const Real half = half_of(exact);
  std::vector<Real> y;
  for (const auto& x : a) y.push_back((one - x) * half);
  std::vector<bool> in(y.size());
  std::size_t count = 0, flip = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    in[i] = y[i] > half;
    count += in[i];
    if ((one - Real(2) * y[i]).abs() < (one - Real(2) * y[flip]).abs()) flip = i;
  }
  if (count % 2 == 0) in[flip] = !in[flip];
  Real val = one;
  json s = json::array();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (in[i]) val += y[i] - one, s.push_back(i + 1);
    else val -= y[i];
  }
  out.certificate = {{"odd_set", s}, {"facet_value", io::to_json(val)}};
  z = worst(z, leq_zone(val, one - one, opt.tol));
  return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                z == Zone::Ok ? "d lies in the convex hull of even sign vectors"
                              : "the most violated parity facet is violated");
}

Decision decide_jlw_unitary(const SequenceSpec& d, const Options& opt) {
  SequenceSpec a = seq::abs_values(d);
  Decision out = make("jlw-unitary", a.exact());
  seq::Bounds b = seq::bounds(a);
  if (b.empty) return finish(out, Verdict::Yes, "empty sequence");
  const Real one = a.exact() ? Real(1) : Real(1.0);
  Zone z = leq_zone(b.sup, one, opt.tol);
  out.certificate = {{"sup_abs", io::to_json(b.sup)}, {"inf_abs", io::to_json(b.inf)}};
  if (z == Zone::Violated) return finish(out, Verdict::No, "some |d_n| exceeds 1");
  seq::ExtendedSum rhs = seq::total_sum(seq::affine_image(a, Complex(Real(-1)), Complex(one)));
  Real lhs = Real(2) * (one - b.inf);
  out.certificate["lhs"] = io::to_json(lhs);
  out.certificate["rhs"] = io::to_json(rhs);
  if (!rhs.is_finite()) return finish(out, z == Zone::Ok ? Verdict::Yes : Verdict::Unknown, "sum (1 - |d_n|) diverges");
  if (rhs.approximate) out.mode = major::Mode::Float;
  z = worst(z, leq_zone(lhs, rhs.real(), opt.tol));
  return finish(out, from_zone(z, Verdict::Yes, Verdict::No),
                z == Zone::Ok ? "2(1 - inf |d|) <= sum (1 - |d|)" : "2(1 - inf |d|) > sum (1 - |d|)");
}

}  // namespace diagonalis::decide
