#include "diagonalis/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "diagonalis/errors.hpp"

namespace diagonalis::major {

using seq::SequenceSpec;
using seq::Stream;
using seq::StreamKind;
using Kind = TailModel::Kind;

namespace {

constexpr std::uint64_t kSearchCap = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxP = std::uint64_t{1} << 30;

void require_c0_plus(const SequenceSpec& s, const char* name) {
  if (!s.is_real()) throw InputError(std::string(name) + " must be real");
  if (!seq::is_nonnegative(s)) throw InputError(std::string(name) + " has negative entries");
  if (!seq::converges_to_zero(s)) throw InputError(std::string(name) + " does not converge to zero");
}

// Partial sums of the nonincreasing rearrangement, closed form past the model index.
class Side {
 public:
  explicit Side(const SequenceSpec& s)
      : spec_(s), total_(seq::total_sum(s).real()), model_(tail_model(s)), len_(s.length()) {
    sums_.push_back(Real(0));
  }

  const TailModel& model() const { return model_; }
  const Real& total() const { return total_; }

  Real S(std::uint64_t n) {
    if (len_ && n >= *len_) return total_;
    if (model_.kind != Kind::None && n >= model_.n0) return total_ - model_.tail(n);
    ensure(n);
    return n < sums_.size() ? sums_[n] : total_;
  }

  Real tail(std::uint64_t n) {
    if (model_.kind != Kind::None && n >= model_.n0) return model_.tail(n);
    return total_ - S(n);
  }

 private:
  void ensure(std::uint64_t n) {
    if (n < sums_.size() || exhausted_) return;
    std::uint64_t want = std::max<std::uint64_t>({n, 2 * (sums_.size() - 1), 64});
    auto v = seq::sorted_prefix_desc(spec_, want);
    sums_.assign(1, Real(0));
    for (const auto& x : v) sums_.push_back(sums_.back() + x);
    exhausted_ = v.size() < want;
  }

  const SequenceSpec& spec_;
  Real total_;
  TailModel model_;
  seq::Count len_;
  std::vector<Real> sums_;
  bool exhausted_ = false;
};

Mode mode_of(const SequenceSpec& a, const SequenceSpec& b) {
  return a.exact() && b.exact() ? Mode::Exact : Mode::Float;
}

MajorizationVerdict holds(Mode m, std::string reason = {}) {
  MajorizationVerdict v;
  v.verdict = Verdict::Holds;
  v.mode = m;
  v.reason = std::move(reason);
  return v;
}

MajorizationVerdict unknown(Mode m, std::uint64_t horizon, std::string reason) {
  MajorizationVerdict v;
  v.verdict = Verdict::Unknown;
  v.mode = m;
  v.horizon = horizon;
  v.reason = std::move(reason);
  return v;
}

MajorizationVerdict fails(Mode m, Witness w, std::string reason) {
  MajorizationVerdict v;
  v.verdict = Verdict::Fails;
  v.mode = m;
  v.witness = std::move(w);
  v.reason = std::move(reason);
  return v;
}

struct Scan {
  std::optional<std::uint64_t> violation;
  bool unclear = false;
};

// Checks S_d(n + p) <= S_l(n) for n in [from, to].
Scan scan_sums(Side& d, Side& l, std::uint64_t from, std::uint64_t to, std::uint64_t p, double tol) {
  Scan r;
  for (std::uint64_t n = from; n <= to; ++n) {
    Zone z = leq_zone(d.S(n + p), l.S(n), tol);
    if (z == Zone::Violated) {
      r.violation = n;
      return r;
    }
    r.unclear = r.unclear || z == Zone::Unclear;
  }
  return r;
}

// Checks tail_l(n) <= tail_d(n + p) for n in [from, to]; equivalent to the partial sums when totals agree.
Scan scan_tails(Side& d, Side& l, std::uint64_t from, std::uint64_t to, std::uint64_t p, double tol) {
  Scan r;
  for (std::uint64_t n = from; n <= to; ++n) {
    Zone z = leq_zone_rel(l.tail(n), d.tail(n + p), tol);
    if (z == Zone::Violated) {
      r.violation = n;
      return r;
    }
    r.unclear = r.unclear || z == Zone::Unclear;
  }
  return r;
}

std::optional<std::uint64_t> search_tail_violation(Side& d, Side& l, std::uint64_t from, std::uint64_t p,
                                                   double tol) {
  for (std::uint64_t off = 0; off <= kSearchCap; off = off == 0 ? 1 : 2 * off) {
    std::uint64_t n = from + off;
    if (leq_zone_rel(l.tail(n), d.tail(n + p), tol) == Zone::Violated) return n;
  }
  return std::nullopt;
}

Witness witness_at(Side& d, Side& l, std::uint64_t n, std::uint64_t p) {
  Witness w;
  w.m = n;
  w.lhs = d.S(n + p);
  w.rhs = l.S(n);
  return w;
}

enum class Eventual { Holds, Fails, Unknown };

// Does tail_l(n) <= tail_d(n + p) hold for all sufficiently large n?
Eventual eventual(const TailModel& d, const TailModel& l, std::uint64_t p, double tol) {
  if (l.kind == Kind::Zero) return Eventual::Holds;
  if (d.kind == Kind::Zero) return Eventual::Fails;
  if (d.kind == Kind::Geometric && l.kind == Kind::Geometric) {
    switch (compare_tol(d.rho, l.rho, tol)) {
      case Cmp::Greater: return Eventual::Holds;
      case Cmp::Less: return Eventual::Fails;
      case Cmp::Near: break;
    }
    switch (leq_zone_rel(l.a, d.a * pow(d.rho, p), tol)) {
      case Zone::Ok: return Eventual::Holds;
      case Zone::Violated: return Eventual::Fails;
      case Zone::Unclear: return Eventual::Unknown;
    }
  }
  if (d.kind == Kind::Harmonic && l.kind == Kind::Geometric) return Eventual::Holds;
  if (d.kind == Kind::Geometric && l.kind == Kind::Harmonic) return Eventual::Fails;
  switch (compare_tol(d.c, l.c, tol)) {
    case Cmp::Greater: return Eventual::Holds;
    case Cmp::Less: return Eventual::Fails;
    case Cmp::Near: break;
  }
  return d.e + Real(p) <= l.e ? Eventual::Holds : Eventual::Fails;
}

// Does it hold eventually for every p?
Eventual eventual_all(const TailModel& d, const TailModel& l, double tol) {
  if (l.kind == Kind::Zero) return Eventual::Holds;
  if (d.kind == Kind::Zero) return Eventual::Fails;
  if (d.kind == Kind::Harmonic && l.kind == Kind::Geometric) return Eventual::Holds;
  if (d.kind == Kind::Geometric && l.kind == Kind::Harmonic) return Eventual::Fails;
  const Real& x = d.kind == Kind::Geometric ? d.rho : d.c;
  const Real& y = d.kind == Kind::Geometric ? l.rho : l.c;
  return compare_tol(x, y, tol) == Cmp::Greater ? Eventual::Holds : Eventual::Fails;
}

// Index from which tail_l(n) <= tail_d(n) is preserved once it holds.
std::uint64_t monotone_start(const TailModel& d, const TailModel& l, std::uint64_t n0) {
  if (d.kind == Kind::Harmonic && l.kind == Kind::Geometric) {
    double s = l.rho.to_double();
    double start = std::ceil(s / (1 - s) - d.e.to_double());
    if (start > static_cast<double>(n0)) return static_cast<std::uint64_t>(start);
  }
  return n0;
}

// Smallest p for which the eventual inequality fails; assumes it fails for some p.
std::optional<std::uint64_t> min_failing_p(const TailModel& d, const TailModel& l, double tol) {
  std::uint64_t hi = 1;
  while (eventual(d, l, hi, tol) != Eventual::Fails) {
    if (hi >= kMaxP) return std::nullopt;
    hi *= 2;
  }
  std::uint64_t lo = 0;
  if (eventual(d, l, 0, tol) == Eventual::Fails) return 0;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (eventual(d, l, mid, tol) == Eventual::Fails ? hi : lo) = mid;
  }
  return hi;
}

// lim sup (sum^{n+p} d* - sum^n lambda*) / lambda*_{n+1} given equal totals.
struct LimSup {
  int inf = 0;  // -1, 0 (finite value), +1
  Real value;
};

LimSup approx_limsup(const TailModel& d, const TailModel& l, PLevel p, double tol) {
  if (d.kind == Kind::Zero) return {1, {}};
  if (d.kind == Kind::Harmonic && l.kind == Kind::Geometric) return {-1, {}};
  if (d.kind == Kind::Geometric && l.kind == Kind::Harmonic) return {1, {}};
  if (d.kind == Kind::Geometric) {
    switch (compare_tol(d.rho, l.rho, tol)) {
      case Cmp::Greater: return {-1, {}};
      case Cmp::Less: return {0, Real(1) / (Real(1) - l.rho)};
      case Cmp::Near: break;
    }
    // lambda*_{n+1} = (1 - sigma) tail_l(n), so the ratio is (1 - (A/B) rho^p (rho/sigma)^n) / (1 - sigma).
    if (p.is_infinite()) return {0, Real(1) / (Real(1) - l.rho)};
    return {0, (Real(1) - d.a * pow(d.rho, *p.value) / l.a) / (Real(1) - l.rho)};
  }
  switch (compare_tol(d.c, l.c, tol)) {
    case Cmp::Greater: return {-1, {}};
    case Cmp::Less: return {1, {}};
    case Cmp::Near: break;
  }
  // (n + e_l + 1)(1 - (n + e_l) / (n + p + e_d)) -> p + e_d - e_l.
  if (p.is_infinite()) return {1, {}};
  return {0, Real(*p.value) + d.e - l.e};
}

Zone limsup_nonpositive(const LimSup& L, double tol) {
  if (L.inf != 0) return L.inf < 0 ? Zone::Ok : Zone::Violated;
  return leq_zone(L.value, Real(0), tol);
}

MajorizationVerdict weak_impl(Side& d, Side& l, Mode mode, const Options& opt) {
  const double tol = opt.tol;
  const std::uint64_t H = opt.horizon;
  Real delta = l.total() - d.total();
  Zone d_le_l = leq_zone(d.total(), l.total(), tol);
  Zone l_le_d = leq_zone(l.total(), d.total(), tol);

  if (d_le_l == Zone::Violated) {
    Scan s = scan_sums(d, l, 1, H, 0, tol);
    if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
    if (d.model().kind != Kind::None) {
      for (std::uint64_t n = std::max<std::uint64_t>(d.model().n0, 1), step = 1; n <= kSearchCap;
           n += step, step *= 2)
        if (leq_zone(d.S(n), l.S(n), tol) == Zone::Violated)
          return fails(mode, witness_at(d, l, n, 0), "partial sum exceeded");
    }
    Witness w;
    w.asymptotic = true;
    w.lhs = d.total();
    w.rhs = l.total();
    return fails(mode, w, "total of d exceeds total of lambda");
  }

  if (l_le_d == Zone::Violated) {
    // Delta > 0: D(n) >= Delta - tail_l(n) >= 0 once tail_l(n) <= Delta.
    std::optional<std::uint64_t> N;
    for (std::uint64_t n = 0; n <= H; ++n)
      if (l.tail(n) <= delta) {
        N = n;
        break;
      }
    if (!N) {
      Scan s = scan_sums(d, l, 1, H, 0, tol);
      if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
      return unknown(mode, H, "no violation up to the horizon");
    }
    Scan s = scan_sums(d, l, 1, *N, 0, tol);
    if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
    if (s.unclear) return unknown(mode, H, "partial sums agree only within tolerance");
    return holds(mode, "checked through index " + std::to_string(*N) + "; total gap covers the rest");
  }

  // Equal totals (up to tolerance).
  bool totals_unclear = d_le_l == Zone::Unclear || l_le_d == Zone::Unclear;
  const TailModel& dm = d.model();
  const TailModel& lm = l.model();
  if (totals_unclear || dm.kind == Kind::None || lm.kind == Kind::None) {
    Scan s = scan_sums(d, l, 1, H, 0, tol);
    if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
    return unknown(mode, H,
                   totals_unclear ? "totals agree only within tolerance" : "tail pair outside the supported table");
  }
  std::uint64_t n0 = std::max(dm.n0, lm.n0);
  if (n0 > H) {
    Scan s = scan_sums(d, l, 1, H, 0, tol);
    if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
    return unknown(mode, H, "closed-form tail starts beyond the horizon");
  }
  Scan head = scan_sums(d, l, 1, n0 == 0 ? 0 : n0 - 1, 0, tol);
  if (head.violation) return fails(mode, witness_at(d, l, *head.violation, 0), "partial sum exceeded");
  switch (eventual(dm, lm, 0, tol)) {
    case Eventual::Holds: {
      std::uint64_t n1 = monotone_start(dm, lm, n0);
      if (n1 - n0 > H) return unknown(mode, H, "monotone regime starts beyond the horizon");
      Scan s = scan_tails(d, l, std::max<std::uint64_t>(n0, 1), n1, 0, tol);
      if (s.violation) return fails(mode, witness_at(d, l, *s.violation, 0), "partial sum exceeded");
      if (s.unclear || head.unclear) return unknown(mode, H, "partial sums agree only within tolerance");
      return holds(mode, "closed-form tails from index " + std::to_string(n0));
    }
    case Eventual::Fails: {
      auto n = search_tail_violation(d, l, std::max<std::uint64_t>(n0, 1), 0, tol);
      if (n) return fails(mode, witness_at(d, l, *n, 0), "tail of d decays faster than tail of lambda");
      Witness w;
      w.asymptotic = true;
      w.lhs = d.total();
      w.rhs = l.total();
      return fails(mode, w, "tail of d decays faster than tail of lambda");
    }
    case Eventual::Unknown:
      break;
  }
  return unknown(mode, H, "tail comparison within tolerance");
}

MajorizationVerdict with_totals(MajorizationVerdict weak, Side& d, Side& l, Mode mode, const Options& opt) {
  if (weak.verdict == Verdict::Fails) return weak;
  Zone z = eq_zone(d.total(), l.total(), opt.tol);
  if (z == Zone::Violated) {
    Witness w;
    w.asymptotic = true;
    w.lhs = l.total();
    w.rhs = d.total();
    return fails(mode, w, "totals differ");
  }
  if (z == Zone::Unclear) return unknown(mode, opt.horizon, "totals agree only within tolerance");
  return weak;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "unknown";
  }
}

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Real TailModel::tail(std::uint64_t n) const {
  switch (kind) {
    case Kind::Zero: return Real(0);
    case Kind::Geometric: return a * pow(rho, n);
    case Kind::Harmonic: return c / (Real(n) + e);
    default: throw UnsupportedError("no closed-form tail");
  }
}

TailModel tail_model(const SequenceSpec& s) {
  TailModel m;
  const Stream* inf = nullptr;
  std::uint64_t finite_pos = 0;
  for (const auto& a : s.atoms()) {
    switch (a.kind) {
      case StreamKind::Finite:
        for (const auto& v : a.values) finite_pos += v.re.sign() > 0 ? 1 : 0;
        break;
      case StreamKind::Constant:
        if (a.value.re.sign() > 0) {
          if (!a.count) return m;
          finite_pos += *a.count;
        }
        break;
      default:
        if (inf) return m;
        inf = &a;
        break;
    }
  }
  if (!inf) {
    m.kind = Kind::Zero;
    m.n0 = finite_pos;
    return m;
  }
  // Beyond the last finite entry the rearrangement is the stream alone, shifted by finite_pos.
  std::uint64_t above = 0;
  if (finite_pos > 0) {
    Real t;
    bool first = true;
    for (const auto& a : s.atoms()) {
      if (a.kind == StreamKind::Finite) {
        for (const auto& v : a.values)
          if (v.re.sign() > 0 && (first || v.re < t)) t = v.re, first = false;
      } else if (a.kind == StreamKind::Constant && a.value.re.sign() > 0 && (first || a.value.re < t)) {
        t = a.value.re;
        first = false;
      }
    }
    auto part = seq::partition(SequenceSpec({*inf}, seq::Field::Real, s.exact()), t);
    above = *part.above.length() + *part.equal.length();
  }
  m.n0 = above + finite_pos;
  if (inf->kind == StreamKind::Geometric) {
    m.kind = Kind::Geometric;
    m.rho = inf->ratio;
    m.a = inf->first.re / (Real(1) - inf->ratio) / pow(inf->ratio, finite_pos);
  } else {
    m.kind = Kind::Harmonic;
    m.c = inf->scale.re;
    m.e = Real(inf->start) - Real(finite_pos);
  }
  if (!s.exact()) {
    m.a = m.a.to_float();
    m.rho = m.rho.to_float();
    m.c = m.c.to_float();
  }
  return m;
}

MajorizationVerdict majorize_finite(const std::vector<Real>& d, const std::vector<Real>& lambda, const Options& opt) {
  if (d.size() != lambda.size()) throw InputError("length mismatch");
  if (d.empty()) throw InputError("empty sequences");
  bool exact = std::all_of(d.begin(), d.end(), [](const Real& x) { return x.exact(); }) &&
               std::all_of(lambda.begin(), lambda.end(), [](const Real& x) { return x.exact(); });
  Mode mode = exact ? Mode::Exact : Mode::Float;
  auto ds = d, ls = lambda;
  std::sort(ds.begin(), ds.end(), std::greater<>());
  std::sort(ls.begin(), ls.end(), std::greater<>());
  Real sd, sl;
  bool unclear = false;
  for (std::size_t m = 0; m < ds.size(); ++m) {
    sd += ds[m];
    sl += ls[m];
    Zone z = leq_zone(sd, sl, opt.tol);
    if (z == Zone::Violated) return fails(mode, Witness{m + 1, sd, sl, false, {}}, "partial sum exceeded");
    unclear = unclear || z == Zone::Unclear;
  }
  Zone z = leq_zone(sl, sd, opt.tol);
  if (z == Zone::Violated) return fails(mode, Witness{ds.size(), sl, sd, false, {}}, "totals differ");
  if (unclear || z == Zone::Unclear) return unknown(mode, ds.size(), "partial sums agree only within tolerance");
  return holds(mode);
}

MajorizationVerdict weak_majorize(const SequenceSpec& d, const SequenceSpec& lambda, const Options& opt) {
  require_c0_plus(d, "d");
  require_c0_plus(lambda, "lambda");
  Side sd(d), sl(lambda);
  return weak_impl(sd, sl, mode_of(d, lambda), opt);
}

MajorizationVerdict majorize(const SequenceSpec& d, const SequenceSpec& lambda, const Options& opt) {
  require_c0_plus(d, "d");
  require_c0_plus(lambda, "lambda");
  Side sd(d), sl(lambda);
  Mode mode = mode_of(d, lambda);
  return with_totals(weak_impl(sd, sl, mode, opt), sd, sl, mode, opt);
}

MajorizationVerdict majorize_l1(const SequenceSpec& d, const SequenceSpec& lambda, const Options& opt) {
  for (const auto* s : {&d, &lambda}) {
    if (!s->is_real()) throw InputError("l1 majorization requires real sequences");
    if (!seq::power_sum(*s, 1.0).is_finite()) throw InputError("sequence is not absolutely summable");
  }
  Mode mode = mode_of(d, lambda);
  auto [dp, dn] = seq::split_parts(d);
  auto [lp, ln] = seq::split_parts(lambda);
  MajorizationVerdict pos = weak_majorize(dp, lp, opt);
  if (pos.verdict == Verdict::Fails) {
    pos.reason = "positive parts: " + pos.reason;
    return pos;
  }
  MajorizationVerdict neg = weak_majorize(dn, ln, opt);
  if (neg.verdict == Verdict::Fails) {
    neg.reason = "negative parts: " + neg.reason;
    return neg;
  }
  Real td = seq::total_sum(d).real(), tl = seq::total_sum(lambda).real();
  Zone z = eq_zone(td, tl, opt.tol);
  if (z == Zone::Violated) return fails(mode, Witness{0, td, tl, true, {}}, "totals differ");
  if (pos.verdict == Verdict::Unknown) return pos;
  if (neg.verdict == Verdict::Unknown) return neg;
  if (z == Zone::Unclear) return unknown(mode, opt.horizon, "totals agree only within tolerance");
  return holds(mode);
}

MajorizationVerdict p_majorize(const SequenceSpec& d, const SequenceSpec& lambda, PLevel p, const Options& opt) {
  MajorizationVerdict base = majorize(d, lambda, opt);
  if (base.verdict != Verdict::Holds || (!p.is_infinite() && *p.value == 0)) return base;
  Mode mode = base.mode;
  Side sd(d), sl(lambda);
  const TailModel& dm = sd.model();
  const TailModel& lm = sl.model();
  if (dm.kind == Kind::None || lm.kind == Kind::None)
    return unknown(mode, opt.horizon, "tail pair outside the supported table");
  std::uint64_t n0 = std::max<std::uint64_t>({dm.n0, lm.n0, 1});
  std::uint64_t pf = 0;
  if (p.is_infinite()) {
    Eventual all = eventual_all(dm, lm, opt.tol);
    if (all == Eventual::Holds) return holds(mode, "holds for every p");
    auto mp = min_failing_p(dm, lm, opt.tol);
    if (!mp) return unknown(mode, opt.horizon, "failing p exceeds search range");
    pf = *mp;
  } else {
    switch (eventual(dm, lm, *p.value, opt.tol)) {
      case Eventual::Holds: return holds(mode);
      case Eventual::Unknown: return unknown(mode, opt.horizon, "tail comparison within tolerance");
      case Eventual::Fails: break;
    }
    pf = *p.value;
  }
  auto n = search_tail_violation(sd, sl, n0, pf, opt.tol);
  Witness w = n ? witness_at(sd, sl, *n, pf) : Witness{0, sd.total(), sl.total(), true, {}};
  if (p.is_infinite()) w.p = pf;
  return fails(mode, w, "sum^{n+p} d* exceeds sum^n lambda* for all large n");
}

MajorizationVerdict approx_p_majorize(const SequenceSpec& d, const SequenceSpec& lambda, PLevel p,
                                      const Options& opt) {
  MajorizationVerdict base = majorize(d, lambda, opt);
  if (base.verdict != Verdict::Holds || (!p.is_infinite() && *p.value == 0)) return base;
  Mode mode = base.mode;
  Side sd(d), sl(lambda);
  const TailModel& dm = sd.model();
  const TailModel& lm = sl.model();
  if (dm.kind == Kind::None || lm.kind == Kind::None)
    return unknown(mode, opt.horizon, "tail pair outside the supported table");
  if (lm.kind == Kind::Zero) return holds(mode, "lambda has finite support");
  Zone z = limsup_nonpositive(approx_limsup(dm, lm, p, opt.tol), opt.tol);
  if (z == Zone::Ok) return holds(mode);
  if (z == Zone::Unclear) return unknown(mode, opt.horizon, "limit ratio within tolerance");
  std::uint64_t pf = 0;
  if (p.is_infinite()) {
    std::uint64_t hi = 1;
    while (limsup_nonpositive(approx_limsup(dm, lm, PLevel(hi), opt.tol), opt.tol) != Zone::Violated) {
      if (hi >= kMaxP) return unknown(mode, opt.horizon, "failing p exceeds search range");
      hi *= 2;
    }
    std::uint64_t lo = 0;
    if (limsup_nonpositive(approx_limsup(dm, lm, PLevel(0), opt.tol), opt.tol) == Zone::Violated) {
      hi = 0;
    } else {
      while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        bool bad = limsup_nonpositive(approx_limsup(dm, lm, PLevel(mid), opt.tol), opt.tol) == Zone::Violated;
        (bad ? hi : lo) = mid;
      }
    }
    pf = hi;
  } else {
    pf = *p.value;
  }
  std::uint64_t n0 = std::max<std::uint64_t>({dm.n0, lm.n0, 1});
  auto n = search_tail_violation(sd, sl, n0, pf, opt.tol);
  Witness w = n ? witness_at(sd, sl, *n, pf) : Witness{0, sd.total(), sl.total(), true, {}};
  if (p.is_infinite()) w.p = pf;
  return fails(mode, w, "positive lim sup of the normalized excess");
}

}  // namespace diagonalis::major
