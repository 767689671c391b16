#include "diagonalis/seqspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diagonalis/errors.hpp"

namespace diagonalis::seq {

namespace {

constexpr std::uint64_t kMaxHead = 1000000;     // longest head segment materialized by partition
constexpr double kMaxIndex = 1e7;               // largest threshold index located in closed form

bool monotone(const Stream& s) {
  return s.kind == StreamKind::Geometric || s.kind == StreamKind::Telescoping;
}

// g(k) of a geometric (r^k) or telescoping (1/(n(n+1))) stream.
Real g_value(const Stream& s, std::uint64_t k) {
  if (s.kind == StreamKind::Geometric) return pow(s.ratio, k);
  BigInt n = BigInt(s.start) + k;
  return Real(Rational(BigInt(1), n * (n + 1)));
}

Complex demote(const Complex& z) { return z.to_float(); }

Stream demote(const Stream& s) {
  Stream t = s;
  for (auto& v : t.values) v = demote(v);
  t.value = demote(t.value);
  t.first = demote(t.first);
  t.ratio = t.ratio.to_float();
  t.scale = demote(t.scale);
  t.shift = demote(t.shift);
  return t;
}

bool stream_real(const Stream& s) { return s.is_real(); }

Cmp cmp_entry(const Real& a, const Real& b) { return compare_tol(a, b, kEntryTol); }

bool near_entry(const Complex& a, const Complex& b) {
  if (a.exact() && b.exact()) return a == b;
  std::complex<double> x = a.to_std(), y = b.to_std();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= kEntryTol * scale;
}

// Natural log of |x| that survives magnitudes outside the double range.
double log_abs(const Real& x) {
  if (!x.exact()) return std::log(std::abs(x.to_double()));
  const Rational& q = x.rational();
  auto lg = [](BigInt v) {
    if (v < 0) v = -v;
    unsigned m = boost::multiprecision::msb(v);
    if (m < 60) return std::log(v.convert_to<double>());
    BigInt s = v >> (m - 52);
    return std::log(s.convert_to<double>()) + static_cast<double>(m - 52) * std::log(2.0);
  };
  return lg(boost::multiprecision::numerator(q)) - lg(boost::multiprecision::denominator(q));
}

// Smallest k with g(k) <= w, for w > 0.
std::uint64_t g_locate(const Stream& s, const Real& w) {
  double lw = log_abs(w);
  double est = 0;
  if (s.kind == StreamKind::Geometric) {
    est = lw >= 0 ? 0.0 : lw / std::log(s.ratio.to_double());
  } else {
    est = std::exp(-lw / 2) - static_cast<double>(s.start);
  }
  if (!(est < kMaxIndex)) throw UnsupportedError("threshold too close to a limit point");
  std::uint64_t k = est > 2 ? static_cast<std::uint64_t>(est) - 2 : 0;
  while (k > 0 && g_value(s, k - 1) <= w) --k;
  while (g_value(s, k) > w) ++k;
  return k;
}

Stream advance(const Stream& s, std::uint64_t k) {
  Stream t = s;
  if (s.kind == StreamKind::Geometric) {
    t.first = s.first * Complex(pow(s.ratio, k));
  } else {
    t.start = s.start + k;
  }
  return t;
}

std::vector<Complex> head(const Stream& s, std::uint64_t a, std::uint64_t b) {
  if (b - a > kMaxHead) throw UnsupportedError("too many terms above threshold");
  std::vector<Complex> out;
  out.reserve(b - a);
  for (std::uint64_t k = a; k < b; ++k) out.push_back(s.term(k));
  return out;
}

Stream negate(const Stream& s) {
  Stream t = s;
  for (auto& v : t.values) v = -v;
  t.value = -t.value;
  t.first = -t.first;
  t.scale = -t.scale;
  t.shift = -t.shift;
  return t;
}

struct AtomSplit {
  std::vector<Stream> below, equal, above;
};

void push_finite(std::vector<Stream>& out, std::vector<Complex> v) {
  if (!v.empty()) out.push_back(Stream::finite(std::move(v)));
}

// Partition of a monotone real atom with positive coefficient (decreasing to shift).
AtomSplit split_decreasing(const Stream& s, const Real& t) {
  AtomSplit r;
  const Real& shift = s.shift.re;
  if (t <= shift) {
    r.above.push_back(s);
    return r;
  }
  Real w = (t - shift) / s.coefficient().re;
  std::uint64_t k = g_locate(s, w);
  auto cmp_at = [&](std::uint64_t i) { return cmp_entry(s.term(i).re, t); };
  std::uint64_t a = k;
  while (a > 0 && cmp_at(a - 1) != Cmp::Greater) --a;
  while (cmp_at(a) == Cmp::Greater) ++a;
  std::uint64_t b = a;
  while (cmp_at(b) == Cmp::Near) {
    ++b;
    if (b - a > kMaxHead) throw UnsupportedError("too many terms equal to threshold");
  }
  push_finite(r.above, head(s, 0, a));
  push_finite(r.equal, head(s, a, b));
  r.below.push_back(advance(s, b));
  return r;
}

AtomSplit split_atom(const Stream& s, const Real& t) {
  AtomSplit r;
  switch (s.kind) {
    case StreamKind::Finite: {
      std::vector<Complex> lo, eq, hi;
      for (const auto& v : s.values) {
        Cmp c = cmp_entry(v.re, t);
        (c == Cmp::Less ? lo : c == Cmp::Near ? eq : hi).push_back(v);
      }
      push_finite(r.below, std::move(lo));
      push_finite(r.equal, std::move(eq));
      push_finite(r.above, std::move(hi));
      return r;
    }
    case StreamKind::Constant: {
      Cmp c = cmp_entry(s.value.re, t);
      (c == Cmp::Less ? r.below : c == Cmp::Near ? r.equal : r.above).push_back(s);
      return r;
    }
    default:
      break;
  }
  if (s.coefficient().re.sign() > 0) return split_decreasing(s, t);
  AtomSplit n = split_decreasing(negate(s), -t);
  for (const auto& x : n.above) r.below.push_back(negate(x));
  for (const auto& x : n.equal) r.equal.push_back(negate(x));
  for (const auto& x : n.below) r.above.push_back(negate(x));
  return r;
}

void require_real(const SequenceSpec& spec, const char* op) {
  if (!spec.is_real()) throw InputError(std::string(op) + " requires a real sequence");
}

ExtendedSum infinite_sum(const Complex& v) {
  if (v.is_zero()) return ExtendedSum::finite(Complex(v.exact() ? Real(0) : Real(0.0)));
  if (!v.is_real()) return ExtendedSum::divergent();
  return v.re.sign() > 0 ? ExtendedSum::pos_inf() : ExtendedSum::neg_inf();
}

}  // namespace

std::string count_str(const Count& c) { return c ? std::to_string(*c) : std::string("inf"); }

Stream Stream::finite(std::vector<Complex> values) {
  Stream s;
  s.kind = StreamKind::Finite;
  s.values = std::move(values);
  return s;
}

Stream Stream::finite_real(const std::vector<Real>& values) {
  std::vector<Complex> v(values.begin(), values.end());
  return finite(std::move(v));
}

Stream Stream::constant(Complex value, Count count) {
  Stream s;
  s.kind = StreamKind::Constant;
  s.value = std::move(value);
  s.count = count;
  return s;
}

Stream Stream::geometric(Complex first, Real ratio, Complex shift) {
  Stream s;
  s.kind = StreamKind::Geometric;
  s.first = std::move(first);
  s.ratio = std::move(ratio);
  s.shift = std::move(shift);
  return s;
}

Stream Stream::telescoping(Complex scale, std::uint64_t start, Complex shift) {
  Stream s;
  s.kind = StreamKind::Telescoping;
  s.scale = std::move(scale);
  s.start = start;
  s.shift = std::move(shift);
  return s;
}

bool Stream::infinite() const { return !length().has_value(); }

Count Stream::length() const {
  switch (kind) {
    case StreamKind::Finite: return values.size();
    case StreamKind::Constant: return count;
    default: return std::nullopt;
  }
}

Complex Stream::term(std::uint64_t k) const {
  switch (kind) {
    case StreamKind::Finite: return values.at(k);
    case StreamKind::Constant: return value;
    default: return shift + coefficient() * Complex(g_value(*this, k));
  }
}

bool Stream::exact() const {
  switch (kind) {
    case StreamKind::Finite:
      return std::all_of(values.begin(), values.end(), [](const Complex& v) { return v.exact(); });
    case StreamKind::Constant: return value.exact();
    case StreamKind::Geometric: return first.exact() && ratio.exact() && shift.exact();
    case StreamKind::Telescoping: return scale.exact() && shift.exact();
  }
  return true;
}

bool Stream::is_real() const {
  switch (kind) {
    case StreamKind::Finite:
      return std::all_of(values.begin(), values.end(), [](const Complex& v) { return v.is_real(); });
    case StreamKind::Constant: return value.is_real();
    case StreamKind::Geometric: return first.is_real() && shift.is_real();
    case StreamKind::Telescoping: return scale.is_real() && shift.is_real();
  }
  return true;
}

SequenceSpec::SequenceSpec(std::vector<Stream> streams, Field field, bool exact)
    : streams_(std::move(streams)), field_(field), exact_(exact) {
  for (auto& s : streams_) {
    if (s.kind == StreamKind::Geometric && !(s.ratio.abs() < Real(1)))
      throw InputError("geometric ratio must satisfy |ratio| < 1");
    if (s.kind == StreamKind::Telescoping && s.start == 0) throw InputError("telescoping start must be >= 1");
    if (s.kind == StreamKind::Constant && s.count && *s.count == 0)
      throw InputError("constant count must be positive");
    if (field_ == Field::Real && !stream_real(s)) throw InputError("complex parameter in a real sequence");
    if (exact_ && !s.exact()) throw InputError("float parameter in an exact sequence");
    if (!exact_) s = demote(s);
  }
  for (const auto& s : streams_) {
    switch (s.kind) {
      case StreamKind::Finite:
        if (!s.values.empty()) atoms_.push_back(s);
        break;
      case StreamKind::Constant:
        atoms_.push_back(s);
        break;
      case StreamKind::Geometric:
        if (s.first.is_zero()) {
          atoms_.push_back(Stream::constant(s.shift));
        } else if (s.ratio.is_zero()) {
          atoms_.push_back(Stream::finite({s.shift + s.first}));
          atoms_.push_back(Stream::constant(s.shift));
        } else if (s.ratio.sign() < 0) {
          Real r2 = s.ratio * s.ratio;
          atoms_.push_back(Stream::geometric(s.first, r2, s.shift));
          atoms_.push_back(Stream::geometric(s.first * Complex(s.ratio), r2, s.shift));
        } else {
          atoms_.push_back(s);
        }
        break;
      case StreamKind::Telescoping:
        if (s.scale.is_zero()) {
          atoms_.push_back(Stream::constant(s.shift));
        } else {
          atoms_.push_back(s);
        }
        break;
    }
  }
}

SequenceSpec SequenceSpec::of(std::vector<Stream> streams, bool exact) {
  bool real = std::all_of(streams.begin(), streams.end(), [](const Stream& s) { return s.is_real(); });
  return SequenceSpec(std::move(streams), real ? Field::Real : Field::Complex, exact);
}

SequenceSpec SequenceSpec::finite(const std::vector<Real>& values) {
  bool exact = std::all_of(values.begin(), values.end(), [](const Real& v) { return v.exact(); });
  return SequenceSpec({Stream::finite_real(values)}, Field::Real, exact);
}

SequenceSpec SequenceSpec::finite_complex(std::vector<Complex> values) {
  bool exact = std::all_of(values.begin(), values.end(), [](const Complex& v) { return v.exact(); });
  return SequenceSpec({Stream::finite(std::move(values))}, Field::Complex, exact);
}

Count SequenceSpec::length() const {
  std::uint64_t n = 0;
  for (const auto& s : atoms_) {
    Count c = s.length();
    if (!c) return std::nullopt;
    n += *c;
  }
  return n;
}

SequenceSpec operator+(const SequenceSpec& a, const SequenceSpec& b) {
  std::vector<Stream> s = a.streams();
  s.insert(s.end(), b.streams().begin(), b.streams().end());
  Field f = a.is_real() && b.is_real() ? Field::Real : Field::Complex;
  return SequenceSpec(std::move(s), f, a.exact() && b.exact());
}

const Real& ExtendedSum::real() const {
  if (!is_finite()) throw PreconditionError("sum is not finite");
  return value.re;
}

std::string ExtendedSum::str() const {
  switch (kind) {
    case Kind::PosInf: return "inf";
    case Kind::NegInf: return "-inf";
    case Kind::Divergent: return "divergent";
    default: return value.str();
  }
}

ExtendedSum operator+(const ExtendedSum& a, const ExtendedSum& b) {
  using K = ExtendedSum::Kind;
  ExtendedSum r;
  if (a.kind == K::Divergent || b.kind == K::Divergent) {
    r = ExtendedSum::divergent();
  } else if (a.is_finite() && b.is_finite()) {
    r = ExtendedSum::finite(a.value + b.value);
  } else if (a.is_finite()) {
    r = b;
  } else if (b.is_finite() || a.kind == b.kind) {
    r = a;
  } else {
    r = ExtendedSum::divergent();
  }
  r.approximate = a.approximate || b.approximate;
  return r;
}

Prefix materialize_prefix(const SequenceSpec& spec, std::uint64_t n) {
  Prefix p;
  std::vector<const Stream*> inf;
  for (const auto& s : spec.streams()) {
    if (s.infinite()) {
      inf.push_back(&s);
      continue;
    }
    for (std::uint64_t k = 0; k < *s.length() && p.values.size() < n; ++k) p.values.push_back(s.term(k));
  }
  for (std::uint64_t k = 0; p.values.size() < n && !inf.empty(); ++k)
    for (const Stream* s : inf) {
      if (p.values.size() >= n) break;
      p.values.push_back(s->term(k));
    }
  p.short_length = p.values.size() < n;
  return p;
}

ExtendedSum total_sum(const SequenceSpec& spec) {
  ExtendedSum total = ExtendedSum::finite(Complex(spec.exact() ? Real(0) : Real(0.0)));
  for (const auto& s : spec.atoms()) {
    ExtendedSum part;
    switch (s.kind) {
      case StreamKind::Finite: {
        Complex acc;
        for (const auto& v : s.values) acc += v;
        part = ExtendedSum::finite(acc);
        break;
      }
      case StreamKind::Constant:
        part = s.count ? ExtendedSum::finite(s.value * Complex(Real(*s.count))) : infinite_sum(s.value);
        break;
      case StreamKind::Geometric:
        part = !s.shift.is_zero() ? infinite_sum(s.shift)
                                  : ExtendedSum::finite(s.first / Complex(Real(1) - s.ratio));
        break;
      case StreamKind::Telescoping:
        part = !s.shift.is_zero() ? infinite_sum(s.shift)
                                  : ExtendedSum::finite(s.scale / Complex(Real(s.start)));
        break;
    }
    total = total + part;
  }
  return total;
}

std::vector<Real> sorted_prefix_desc(const SequenceSpec& spec, std::uint64_t n) {
  require_real(spec, "sorted_prefix_desc");
  struct Cursor {
    const Stream* s;
    std::vector<Real> sorted;  // Finite
    std::uint64_t pos = 0;
    bool ascending = false;
  };
  std::vector<Cursor> cur;
  for (const auto& s : spec.atoms()) {
    Cursor c{&s, {}, 0, false};
    if (s.kind == StreamKind::Finite) {
      for (const auto& v : s.values) c.sorted.push_back(v.re);
      std::sort(c.sorted.begin(), c.sorted.end(), std::greater<>());
    } else if (monotone(s)) {
      c.ascending = s.coefficient().re.sign() < 0;
    }
    cur.push_back(std::move(c));
  }
  auto head_of = [](const Cursor& c) -> std::optional<Real> {
    const Stream& s = *c.s;
    switch (s.kind) {
      case StreamKind::Finite:
        if (c.pos < c.sorted.size()) return c.sorted[c.pos];
        return std::nullopt;
      case StreamKind::Constant:
        if (!s.count || c.pos < *s.count) return s.value.re;
        return std::nullopt;
      default:
        return s.term(c.pos).re;
    }
  };
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1 << 20)));
  while (out.size() < n) {
    std::optional<Real> best;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i].ascending) continue;
      auto h = head_of(cur[i]);
      if (h && (!best || *best < *h)) {
        best = h;
        bi = i;
      }
    }
    for (const auto& c : cur)
      if (c.ascending && (!best || *best < c.s->shift.re))
        throw UnsupportedError("nonincreasing rearrangement does not exist");
    if (!best) break;
    out.push_back(*best);
    ++cur[bi].pos;
  }
  return out;
}

ExtendedSum tail_sum_after_top(const SequenceSpec& spec, std::uint64_t n) {
  ExtendedSum total = total_sum(spec);
  if (total.kind == ExtendedSum::Kind::Divergent)
    throw PreconditionError("tail sum of a sequence with divergent sum");
  if (!total.is_finite()) return total;
  Real acc = total.value.re;
  for (const auto& v : sorted_prefix_desc(spec, n)) acc -= v;
  return ExtendedSum::finite(acc);
}

Partition partition(const SequenceSpec& spec, const Real& threshold) {
  require_real(spec, "partition");
  std::vector<Stream> lo, eq, hi;
  for (const auto& s : spec.atoms()) {
    AtomSplit r = split_atom(s, threshold);
    lo.insert(lo.end(), r.below.begin(), r.below.end());
    eq.insert(eq.end(), r.equal.begin(), r.equal.end());
    hi.insert(hi.end(), r.above.begin(), r.above.end());
  }
  return {SequenceSpec(std::move(lo), Field::Real, spec.exact()),
          SequenceSpec(std::move(eq), Field::Real, spec.exact()),
          SequenceSpec(std::move(hi), Field::Real, spec.exact())};
}

std::pair<SequenceSpec, SequenceSpec> split_parts(const SequenceSpec& spec) {
  require_real(spec, "split_parts");
  Partition p = partition(spec, Real(0));
  return {p.above, affine_image(p.below, Complex(-1), Complex(0))};
}

SequenceSpec affine_image(const SequenceSpec& spec, const Complex& a, const Complex& b) {
  std::vector<Stream> out;
  for (const auto& s : spec.streams()) {
    Stream t = s;
    for (auto& v : t.values) v = a * v + b;
    t.value = a * s.value + b;
    t.first = a * s.first;
    t.scale = a * s.scale;
    t.shift = a * s.shift + b;
    out.push_back(std::move(t));
  }
  Field f = spec.is_real() && a.is_real() && b.is_real() ? Field::Real : Field::Complex;
  return SequenceSpec(std::move(out), f, spec.exact() && a.exact() && b.exact());
}

SequenceSpec abs_values(const SequenceSpec& spec) {
  std::vector<Stream> out;
  auto abs_real_atom = [&](const Stream& s, std::vector<Stream>& into) {
    if (s.shift.is_zero()) {
      Stream t = s;
      if (t.kind == StreamKind::Geometric) t.first = t.first.abs(); else t.scale = t.scale.abs();
      into.push_back(t);
      return;
    }
    AtomSplit r = split_atom(s, Real(0));
    for (const auto& x : r.below) into.push_back(negate(x));
    for (const auto& x : r.equal) into.push_back(Stream::constant(Complex(Real(0)), x.length()));
    for (const auto& x : r.above) into.push_back(x);
  };
  for (const auto& s : spec.atoms()) {
    switch (s.kind) {
      case StreamKind::Finite: {
        std::vector<Complex> v;
        for (const auto& x : s.values) v.emplace_back(x.abs());
        out.push_back(Stream::finite(std::move(v)));
        break;
      }
      case StreamKind::Constant:
        out.push_back(Stream::constant(Complex(s.value.abs()), s.count));
        break;
      default:
        if (s.shift.is_zero() || (s.shift.is_real() && s.coefficient().is_real())) {
          Stream real_atom = s;
          if (!s.shift.is_zero()) {
            abs_real_atom(real_atom, out);
          } else {
            Stream t = s;
            if (t.kind == StreamKind::Geometric) t.first = Complex(t.first.abs());
            else t.scale = Complex(t.scale.abs());
            out.push_back(t);
          }
        } else {
          // |shift| * |1 + w g(k)| with w = coefficient / shift, when w is real.
          Complex w = s.coefficient() / s.shift;
          if (!w.is_real()) throw UnsupportedError("modulus of a complex stream off its ray");
          Stream unit = s;
          unit.shift = Complex(Real(1));
          if (unit.kind == StreamKind::Geometric) unit.first = w; else unit.scale = w;
          std::vector<Stream> parts;
          abs_real_atom(unit, parts);
          Real m = s.shift.abs();
          for (auto& p : parts) {
            for (auto& v : p.values) v = v * Complex(m);
            p.value = p.value * Complex(m);
            p.first = p.first * Complex(m);
            p.scale = p.scale * Complex(m);
            p.shift = p.shift * Complex(m);
            out.push_back(p);
          }
        }
        break;
    }
  }
  bool exact = spec.exact() &&
               std::all_of(out.begin(), out.end(), [](const Stream& s) { return s.exact(); });
  return SequenceSpec(std::move(out), Field::Real, exact);
}

Count count_equal(const SequenceSpec& spec, const Complex& v) {
  std::uint64_t n = 0;
  for (const auto& s : spec.atoms()) {
    switch (s.kind) {
      case StreamKind::Finite:
        for (const auto& x : s.values) n += near_entry(x, v) ? 1 : 0;
        break;
      case StreamKind::Constant:
        if (near_entry(s.value, v)) {
          if (!s.count) return std::nullopt;
          n += *s.count;
        }
        break;
      default: {
        if (spec.is_real()) {
          if (!v.is_real()) break;
          AtomSplit r = split_atom(s, v.re);
          for (const auto& x : r.equal) n += *x.length();
          break;
        }
        Complex w = (v - s.shift) / s.coefficient();
        if (!w.is_real() || w.re.sign() <= 0) break;
        std::uint64_t k = g_locate(s, w.re);
        if (near_entry(s.term(k), v)) ++n;
        break;
      }
    }
  }
  return n;
}

Bounds bounds(const SequenceSpec& spec) {
  require_real(spec, "bounds");
  Bounds b;
  auto take = [&](const Real& lo, bool lo_att, const Real& hi, bool hi_att) {
    if (b.empty) {
      b = {false, lo, hi, lo_att, hi_att};
      return;
    }
    if (lo < b.inf) {
      b.inf = lo;
      b.inf_attained = lo_att;
    } else if (lo == b.inf) {
      b.inf_attained = b.inf_attained || lo_att;
    }
    if (b.sup < hi) {
      b.sup = hi;
      b.sup_attained = hi_att;
    } else if (hi == b.sup) {
      b.sup_attained = b.sup_attained || hi_att;
    }
  };
  for (const auto& s : spec.atoms()) {
    switch (s.kind) {
      case StreamKind::Finite: {
        auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end(),
                                            [](const Complex& x, const Complex& y) { return x.re < y.re; });
        take(lo->re, true, hi->re, true);
        break;
      }
      case StreamKind::Constant:
        take(s.value.re, true, s.value.re, true);
        break;
      default: {
        Real t0 = s.term(0).re;
        if (s.coefficient().re.sign() > 0) take(s.shift.re, false, t0, true);
        else take(t0, true, s.shift.re, false);
        break;
      }
    }
  }
  return b;
}

std::vector<Complex> accumulation_points(const SequenceSpec& spec) {
  std::vector<Complex> pts;
  for (const auto& s : spec.atoms()) {
    if (!s.infinite()) continue;
    const Complex& p = s.kind == StreamKind::Constant ? s.value : s.shift;
    if (std::none_of(pts.begin(), pts.end(), [&](const Complex& q) { return near_entry(p, q); })) pts.push_back(p);
  }
  return pts;
}

bool converges_to_zero(const SequenceSpec& spec) {
  auto pts = accumulation_points(spec);
  return std::all_of(pts.begin(), pts.end(), [](const Complex& p) { return p.is_zero(); });
}

bool is_nonnegative(const SequenceSpec& spec) {
  if (!spec.is_real()) return false;
  Bounds b = bounds(spec);
  return b.empty || b.inf.sign() >= 0;
}

ExtendedSum power_sum(const SequenceSpec& spec, double p) {
  if (!(p > 0)) throw InputError("power_sum requires p > 0");
  const bool unit = p == 1.0;
  const bool integral = std::floor(p) == p && p <= 64;
  auto pw = [&](const Real& x) -> Real {
    if (unit) return x;
    if (integral && x.exact()) return pow(x, static_cast<std::uint64_t>(p));
    return Real(std::pow(x.to_double(), p));
  };
  ExtendedSum total = ExtendedSum::finite(Complex(Real(0)));
  bool approx = false;
  const SequenceSpec mod = abs_values(spec);
  for (const auto& s : mod.atoms()) {
    switch (s.kind) {
      case StreamKind::Finite: {
        Real acc;
        for (const auto& v : s.values) acc += pw(v.re);
        total = total + ExtendedSum::finite(Complex(acc));
        break;
      }
      case StreamKind::Constant:
        if (s.value.is_zero()) break;
        if (!s.count) return ExtendedSum::pos_inf();
        total = total + ExtendedSum::finite(Complex(pw(s.value.re) * Real(*s.count)));
        break;
      case StreamKind::Geometric:
        if (!s.shift.is_zero()) return ExtendedSum::pos_inf();
        total = total + ExtendedSum::finite(Complex(pw(s.first.re) / (Real(1) - pw(s.ratio))));
        break;
      case StreamKind::Telescoping: {
        if (!s.shift.is_zero()) return ExtendedSum::pos_inf();
        if (2 * p <= 1) return ExtendedSum::pos_inf();
        if (unit) {
          total = total + ExtendedSum::finite(Complex(s.scale.re / Real(s.start)));
          break;
        }
        // Direct sum to N plus the integral tail of (n(n+1))^-p ~ n^-2p.
        constexpr std::uint64_t kN = 200000;
        double c = std::pow(s.scale.re.to_double(), p), acc = 0;
        for (std::uint64_t n = s.start; n < s.start + kN; ++n) {
          double nn = static_cast<double>(n);
          acc += std::pow(nn * (nn + 1), -p);
        }
        double tail_from = static_cast<double>(s.start + kN) + 0.5;
        acc += std::pow(tail_from, 1 - 2 * p) / (2 * p - 1);
        total = total + ExtendedSum::finite(Complex(Real(c * acc)));
        approx = true;
        break;
      }
    }
  }
  total.approximate = approx || !spec.exact() || (!unit && !integral);
  return total;
}

std::vector<Complex> OrderedSequenceSpec::enumerate(std::uint64_t n) const {
  std::vector<Complex> out;
  for (const auto& v : prefix) {
    if (out.size() >= n) return out;
    out.push_back(v);
  }
  std::vector<std::uint64_t> pos(tail.size(), 0);
  while (out.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < tail.size() && out.size() < n; ++i) {
      const auto& [s, w] = tail[i];
      Count len = s.length();
      for (std::uint64_t j = 0; j < w && out.size() < n; ++j) {
        if (len && pos[i] >= *len) break;
        out.push_back(s.term(pos[i]++));
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  return out;
}

}  // namespace diagonalis::seq
