#include "diagonalis/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "diagonalis/errors.hpp"

namespace diagonalis::spectra {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct Compression {
  Matrix b;       // 2 x 2
  Vec e1, e2;     // orthonormal basis of the span
};

// Compression of M to span{u, v}; nullopt when v is (numerically) parallel to u.
std::optional<Compression> compress(const Matrix& m, const Vec& u, const Vec& v) {
  Vec e1 = normalized(u);
  Vec w = v;
  cplx c = dot(e1, w);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * e1[i];
  if (norm(w) < 1e-9 * std::max(1.0, norm(v))) return std::nullopt;
  Vec e2 = normalized(w);
  Compression r{Matrix(2), e1, e2};
  Vec me1 = m * e1, me2 = m * e2;
  r.b(0, 0) = dot(e1, me1);
  r.b(0, 1) = dot(e1, me2);
  r.b(1, 0) = dot(e2, me1);
  r.b(1, 1) = dot(e2, me2);
  return r;
}

Vec combine(const Compression& c, const Vec& xi) {
  Vec x(c.e1.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = xi[0] * c.e1[i] + xi[1] * c.e2[i];
  return x;
}

// Attains z inside span{u, v}; falls back to u when the span is one-dimensional.
std::optional<Vec> attain_in_span(const Matrix& m, const Vec& u, const Vec& v, cplx z, double tol) {
  auto c = compress(m, u, v);
  if (!c) {
    if (std::abs(rayleigh(m, u) - z) <= tol) return normalized(u);
    return std::nullopt;
  }
  auto xi = attain_2x2(c->b, z, tol);
  if (!xi) return std::nullopt;
  return normalized(combine(*c, *xi));
}

struct Vertex {
  double theta;
  cplx p;
  Vec x;
};

Vertex support_vertex(const Matrix& m, double theta) {
  Support s = numerical_range_support(m, theta);
  return {theta, rayleigh(m, s.vector), s.vector};
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& m) { return hermitian_eigen(m).values; }

std::vector<double> singular_values(const Matrix& m) {
  auto g = hermitian_eigenvalues(m.adjoint() * m);
  std::vector<double> s;
  for (double x : g) s.push_back(std::sqrt(std::max(0.0, x)));
  return s;
}

Support numerical_range_support(const Matrix& m, double theta) {
  cplx e = std::polar(1.0, theta);
  Matrix h = 0.5 * (e * m + std::conj(e) * m.adjoint());
  HermitianEigen eig = hermitian_eigen(h);
  return {eig.values[0], eig.vectors.column(0)};
}

std::vector<cplx> numerical_range_polygon(const Matrix& m, int grid) {
  std::vector<cplx> pts;
  for (int k = 0; k < grid; ++k) pts.push_back(support_vertex(m, 2 * std::numbers::pi * k / grid).p);
  return pts;
}

std::optional<Vec> attain_2x2(const Matrix& b, cplx z, double tol) {
  const double scale = std::max(1.0, b.frobenius());
  cplx tr = b(0, 0) + b(1, 1);
  cplx det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  cplx disc = std::sqrt(tr * tr / 4.0 - det);
  cplx mu = tr / 2.0 + disc;
  Vec q1{b(0, 1), mu - b(0, 0)};
  Vec alt{mu - b(1, 1), b(1, 0)};
  if (norm(alt) > norm(q1)) q1 = alt;
  if (norm(q1) < 1e-14 * scale) q1 = {1.0, 0.0};
  q1 = normalized(q1);
  Vec q2{-std::conj(q1[1]), std::conj(q1[0])};
  cplx m1 = dot(q1, b * q1), beta = dot(q1, b * q2), m2 = dot(q2, b * q2);
  cplx c0 = z - m1, d = m2 - m1;
  double bb = std::norm(beta);
  double qa = std::norm(d) + bb;
  double qb = -(2 * (std::conj(c0) * d).real() + bb);
  double qc = std::norm(c0);
  std::vector<double> taus;
  if (qa < 1e-28 * scale * scale) {
    taus.push_back(0.0);
  } else {
    // qb^2 - 4 qa qc rewritten without cancellation.
    cplx cd = std::conj(c0) * d;
    double dd = bb * (bb + 4 * cd.real() - 4 * qc) - 4 * cd.imag() * cd.imag();
    dd = std::max(dd, 0.0);
    double sq = std::sqrt(dd);
    taus.push_back((-qb + sq) / (2 * qa));
    taus.push_back((-qb - sq) / (2 * qa));
  }
  std::optional<Vec> best;
  double best_res = 0;
  for (double tau : taus) {
    tau = std::clamp(tau, 0.0, 1.0);
    cplx r = c0 - d * tau;
    double amp = std::abs(beta) * std::sqrt(tau * (1 - tau));
    cplx ph = 1.0;
    if (amp > 1e-300 && std::abs(r) > 0) {
      cplx w = r / beta;
      ph = w / std::abs(w);
    }
    Vec xi{std::sqrt(1 - tau), std::sqrt(tau) * ph};
    Vec x{xi[0] * q1[0] + xi[1] * q2[0], xi[0] * q1[1] + xi[1] * q2[1]};
    double res = std::abs(rayleigh(b, x) - z);
    if (!best || res < best_res) {
      best = x;
      best_res = res;
    }
  }
  if (best_res > tol) return std::nullopt;
  return best;
}

Vec attain_numerical_range_vector(const Matrix& m, cplx z, double tol) {
  if (!m.square() || m.n() == 0) throw InputError("square matrix expected");
  const std::size_t n = m.n();
  if (n == 1) {
    if (std::abs(m(0, 0) - z) <= tol) return {1.0};
    throw PreconditionError("point outside the numerical range");
  }
  const double scale = std::max(1.0, m.frobenius());
  std::vector<Vertex> vs;
  for (int k = 0; k < kThetaGrid; ++k) {
    Vertex v = support_vertex(m, 2 * std::numbers::pi * k / kThetaGrid);
    // Support line test: Re(e^{i theta} z) <= h(theta).
    double h = (std::polar(1.0, v.theta) * v.p).real();
    if ((std::polar(1.0, v.theta) * z).real() > h + tol) throw PreconditionError("point outside the numerical range");
    if (std::abs(v.p - z) <= tol) return v.x;
    if (vs.empty() || std::abs(v.p - vs.back().p) > 1e-13 * scale) vs.push_back(std::move(v));
  }
  while (vs.size() > 1 && std::abs(vs.back().p - vs.front().p) <= 1e-13 * scale) vs.pop_back();

  if (vs.size() < 3) {
    // W(M) is a point or a segment.
    const Vertex& a = vs.front();
    const Vertex* b = &vs.back();
    for (const auto& v : vs)
      if (std::abs(v.p - a.p) > std::abs(b->p - a.p)) b = &v;
    if (auto x = attain_in_span(m, a.x, b->x, z, tol)) return *x;
    throw PreconditionError("point outside the numerical range");
  }

  double area2 = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) area2 += cross(vs[i].p, vs[(i + 1) % vs.size()].p);
  if (std::abs(area2) <= 1e-12 * scale * scale) {
    const Vertex* a = &vs.front();
    const Vertex* b = &vs.front();
    for (const auto& v : vs)
      if (std::abs(v.p - vs.front().p) > std::abs(a->p - vs.front().p)) a = &v;
    for (const auto& v : vs)
      if (std::abs(v.p - a->p) > std::abs(b->p - a->p)) b = &v;
    if (auto x = attain_in_span(m, a->x, b->x, z, tol)) return *x;
    throw PreconditionError("point outside the numerical range");
  }
  const double orient = area2 > 0 ? 1.0 : -1.0;

  // Refine edges that z lies beyond until z sits inside the inscribed polygon.
  for (int iter = 0; iter < 200; ++iter) {
    std::optional<std::size_t> bad;
    double worst = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      cplx a = vs[i].p, b = vs[(i + 1) % vs.size()].p;
      double len = std::abs(b - a);
      double side = orient * cross(b - a, z - a) / std::max(len, 1e-300);
      if (side < -tol && side < worst) {
        worst = side;
        bad = i;
      }
    }
    if (!bad) break;
    std::size_t i = *bad, j = (i + 1) % vs.size();
    double t0 = vs[i].theta, t1 = vs[j].theta;
    if (t1 <= t0) t1 += 2 * std::numbers::pi;
    Vertex mid = support_vertex(m, 0.5 * (t0 + t1));
    if (std::abs(mid.p - vs[i].p) <= 1e-13 * scale || std::abs(mid.p - vs[j].p) <= 1e-13 * scale) {
      if (t1 - t0 < 1e-12) throw PreconditionError("point outside the numerical range");
    }
    if (std::abs(mid.p - z) <= tol) return mid.x;
    vs.insert(vs.begin() + static_cast<std::ptrdiff_t>(j == 0 ? vs.size() : j), std::move(mid));
  }

  // Fan triangulation from vertex 0.
  const cplx p0 = vs[0].p;
  std::optional<std::size_t> tri;
  double best = -1e300;
  for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
    cplx a = vs[i].p - p0, b = vs[i + 1].p - p0, w = z - p0;
    double det = cross(a, b);
    if (std::abs(det) < 1e-300) continue;
    double al = cross(w, b) / det, be = cross(a, w) / det;
    double slack = std::min({al, be, 1 - al - be});
    if (slack > best) {
      best = slack;
      tri = i;
    }
  }
  if (!tri) throw ConvergenceError("numerical range triangulation failed");
  const Vertex& va = vs[*tri];
  const Vertex& vb = vs[*tri + 1];
  // Point w on edge [va, vb] collinear with p0 and z.
  cplx dir = z - p0, edge = vb.p - va.p;
  double den = cross(edge, dir);
  // p0 + s dir = va + t edge  =>  t = cross(dir, va - p0) / cross(edge, dir).
  double t = std::abs(den) < 1e-300 ? 0.0 : std::clamp(cross(dir, va.p - p0) / den, 0.0, 1.0);
  cplx w = va.p + t * edge;
  auto y = attain_in_span(m, va.x, vb.x, w, tol * 1e-3);
  if (!y) y = attain_in_span(m, va.x, vb.x, w, tol);
  if (!y) throw ConvergenceError("edge interpolation failed");
  auto x = attain_in_span(m, *y, vs[0].x, z, tol);
  if (!x) throw ConvergenceError("numerical range attainment failed");
  if (std::abs(rayleigh(m, *x) - z) > tol) throw ConvergenceError("numerical range residual above tolerance");
  return *x;
}

Matrix haar_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  std::vector<Vec> cols(n, Vec(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      double re = g(rng);
      double im = g(rng);
      cols[j][i] = {re, im};
    }
  // Modified Gram-Schmidt with one reorthogonalization; R has a positive diagonal.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx c = dot(cols[k], cols[j]);
        for (std::size_t i = 0; i < n; ++i) cols[j][i] -= c * cols[k][i];
      }
    cols[j] = normalized(cols[j]);
  }
  return Matrix::from_columns(cols);
}

OperatorSpec OperatorSpec::from_matrix(diagonalis::Matrix m) {
  if (!m.square()) throw InputError("operator matrix must be square");
  OperatorSpec s;
  s.kind = Kind::Matrix;
  s.matrix = std::move(m);
  return s;
}

OperatorSpec OperatorSpec::finite_spectrum(std::vector<SpectrumPoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].multiplicity && *pts[i].multiplicity == 0) throw InputError("multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (pts[i].value == pts[j].value) throw InputError("spectrum points must be distinct");
  }
  OperatorSpec s;
  s.kind = Kind::FiniteSpectrum;
  s.points = std::move(pts);
  return s;
}

OperatorSpec OperatorSpec::diagonalizable(seq::SequenceSpec eigs, seq::Count kernel_dim) {
  OperatorSpec s;
  s.kind = Kind::Diagonalizable;
  s.eigs = std::move(eigs);
  s.kernel_dim = kernel_dim;
  return s;
}

bool OperatorSpec::is_real() const {
  switch (kind) {
    case Kind::Matrix: return is_hermitian(matrix);
    case Kind::FiniteSpectrum:
      return std::all_of(points.begin(), points.end(), [](const SpectrumPoint& p) { return p.value.is_real(); });
    case Kind::Diagonalizable: return eigs.is_real();
  }
  return false;
}

bool OperatorSpec::exact() const {
  switch (kind) {
    case Kind::Matrix: return false;
    case Kind::FiniteSpectrum:
      return std::all_of(points.begin(), points.end(), [](const SpectrumPoint& p) { return p.value.exact(); });
    case Kind::Diagonalizable: return eigs.exact();
  }
  return false;
}

seq::SequenceSpec OperatorSpec::eigenvalue_sequence() const {
  using seq::Stream;
  switch (kind) {
    case Kind::Matrix: throw PreconditionError("matrix specs have no symbolic eigenvalue sequence");
    case Kind::FiniteSpectrum: {
      std::vector<Stream> st;
      for (const auto& p : points) st.push_back(Stream::constant(p.value, p.multiplicity));
      return seq::SequenceSpec(std::move(st), is_real() ? seq::Field::Real : seq::Field::Complex, exact());
    }
    case Kind::Diagonalizable: {
      if (kernel_dim && *kernel_dim == 0) return eigs;
      return eigs + seq::SequenceSpec({Stream::constant(Complex(Real(0)), kernel_dim)}, seq::Field::Real, true);
    }
  }
  return {};
}

std::vector<cplx> convex_hull(std::vector<cplx> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [&](cplx a, cplx b) { return std::abs(a - b) <= tol; }), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cplx> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

SpectralSummary essential_summary(const OperatorSpec& spec) {
  if (spec.kind == OperatorSpec::Kind::Matrix) throw PreconditionError("finite-dimensional: essential spectrum empty");
  seq::SequenceSpec ev = spec.eigenvalue_sequence();
  SpectralSummary s;
  s.real = ev.is_real();
  s.ess_spectrum = seq::accumulation_points(ev);
  std::vector<Complex> endpoints;
  if (s.real) {
    std::sort(s.ess_spectrum.begin(), s.ess_spectrum.end(), [](const Complex& a, const Complex& b) { return a.re < b.re; });
    seq::Bounds b = seq::bounds(ev);
    if (!b.empty) {
      s.spectrum_min = b.inf;
      s.spectrum_max = b.sup;
      endpoints.push_back(Complex(b.inf));
      if (b.sup != b.inf) endpoints.push_back(Complex(b.sup));
    }
    if (!s.ess_spectrum.empty()) {
      s.ess_interval = std::make_pair(s.ess_spectrum.front().re, s.ess_spectrum.back().re);
      for (const auto& v : {s.ess_spectrum.front(), s.ess_spectrum.back()})
        if (std::none_of(endpoints.begin(), endpoints.end(), [&](const Complex& e) { return e == v; }))
          endpoints.push_back(v);
    }
  } else {
    std::vector<cplx> pts;
    for (const auto& p : s.ess_spectrum) pts.push_back(p.to_std());
    auto hull = convex_hull(pts);
    for (const auto& h : hull) {
      auto it = std::find_if(s.ess_spectrum.begin(), s.ess_spectrum.end(),
                             [&](const Complex& p) { return std::abs(p.to_std() - h) <= 1e-12; });
      s.ess_hull.push_back(it != s.ess_spectrum.end() ? *it : Complex(h));
    }
    endpoints = s.ess_hull;
  }
  for (const auto& e : endpoints) s.endpoint_multiplicities.emplace_back(e, seq::count_equal(ev, e));
  return s;
}

OperatorSpec affine_image(const OperatorSpec& spec, const Complex& a, const Complex& b) {
  switch (spec.kind) {
    case OperatorSpec::Kind::Matrix:
      return OperatorSpec::from_matrix(a.to_std() * spec.matrix + b.to_std() * Matrix::identity(spec.matrix.n()));
    case OperatorSpec::Kind::FiniteSpectrum: {
      std::vector<SpectrumPoint> pts;
      for (const auto& p : spec.points) pts.push_back({a * p.value + b, p.multiplicity});
      return OperatorSpec::finite_spectrum(std::move(pts));
    }
    case OperatorSpec::Kind::Diagonalizable:
      return OperatorSpec::diagonalizable(seq::affine_image(spec.eigenvalue_sequence(), a, b), 0);
  }
  return spec;
}

}  // namespace diagonalis::spectra
