#include "diagonalis/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "diagonalis/errors.hpp"

namespace diagonalis {

namespace {

BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Integer square root of a nonnegative BigInt, or -1 when not a perfect square.
BigInt exact_sqrt(const BigInt& n) {
  if (n < 0) return -1;
  BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n ? r : BigInt(-1);
}

}  // namespace

Real Real::ratio(long long num, long long den) {
  if (den == 0) throw InputError("zero denominator");
  return Real(Rational(BigInt(num), BigInt(den)));
}

Real Real::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw InputError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    try {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw InputError("zero denominator in '" + s + "'");
      return Real(Rational(num, den));
    } catch (const std::runtime_error&) {
      throw InputError("malformed rational '" + s + "'");
    }
  }
  // Decimal literal: sign, digits, optional fraction, optional exponent.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  int exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    auto [ptr, ec] = std::from_chars(s.data() + pos + (s[pos] == '+' ? 1 : 0), s.data() + s.size(), exponent);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("malformed number '" + s + "'");
    pos = s.size();
  }
  if (digits.empty() || pos != s.size()) throw InputError("malformed number '" + s + "'");
  BigInt num(digits);
  if (neg) num = -num;
  int scale = exponent - frac_digits;
  if (scale >= 0) return Real(Rational(num * pow10(scale)));
  return Real(Rational(num, pow10(-scale)));
}

Real Real::from_decimal(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw InputError("cannot format number");
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

const Rational& Real::rational() const {
  if (!exact()) throw UnsupportedError("value is not exact");
  return std::get<Rational>(v_);
}

double Real::to_double() const {
  if (exact()) return std::get<Rational>(v_).convert_to<double>();
  return std::get<double>(v_);
}

int Real::sign() const {
  if (exact()) return std::get<Rational>(v_).sign();
  double x = std::get<double>(v_);
  return (x > 0) - (x < 0);
}

bool Real::is_integer() const {
  if (exact()) return boost::multiprecision::denominator(std::get<Rational>(v_)) == 1;
  double x = std::get<double>(v_);
  return std::isfinite(x) && std::floor(x) == x;
}

Real Real::floor() const {
  if (!exact()) return Real(std::floor(std::get<double>(v_)));
  const Rational& q = std::get<Rational>(v_);
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return Real(Rational(f));
}

std::string Real::str() const {
  if (exact()) return std::get<Rational>(v_).str();
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(v_));
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Real Real::operator-() const {
  if (exact()) return Real(Rational(-std::get<Rational>(v_)));
  return Real(-std::get<double>(v_));
}

Real operator+(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) return Real(Rational(std::get<Rational>(a.v_) + std::get<Rational>(b.v_)));
  return Real(a.to_double() + b.to_double());
}

Real operator-(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) return Real(Rational(std::get<Rational>(a.v_) - std::get<Rational>(b.v_)));
  return Real(a.to_double() - b.to_double());
}

Real operator*(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) return Real(Rational(std::get<Rational>(a.v_) * std::get<Rational>(b.v_)));
  return Real(a.to_double() * b.to_double());
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw InputError("division by zero");
  if (a.exact() && b.exact()) return Real(Rational(std::get<Rational>(a.v_) / std::get<Rational>(b.v_)));
  return Real(a.to_double() / b.to_double());
}

int Real::compare(const Real& a, const Real& b) {
  if (a.exact() && b.exact()) {
    const auto& x = std::get<Rational>(a.v_);
    const auto& y = std::get<Rational>(b.v_);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  double x = a.to_double(), y = b.to_double();
  return x < y ? -1 : (y < x ? 1 : 0);
}

Real pow(const Real& base, std::uint64_t exponent) {
  if (!base.exact()) return Real(std::pow(base.to_double(), static_cast<double>(exponent)));
  Rational result = 1;
  Rational b = base.rational();
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return Real(result);
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

Real Complex::abs() const {
  if (im.is_zero()) return re.abs();
  if (re.is_zero()) return im.abs();
  if (exact()) {
    Rational n2 = norm2().rational();
    BigInt rn = exact_sqrt(boost::multiprecision::numerator(n2));
    BigInt rd = exact_sqrt(boost::multiprecision::denominator(n2));
    if (rn >= 0 && rd > 0) return Real(Rational(rn, rd));
  }
  return Real(std::abs(to_std()));
}

std::string Complex::str() const {
  if (im.is_zero()) return re.str();
  return "(" + re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i)";
}

Complex operator/(const Complex& a, const Complex& b) {
  Real n2 = b.norm2();
  if (n2.is_zero()) throw InputError("complex division by zero");
  Complex num = a * b.conj();
  return {num.re / n2, num.im / n2};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << z.str(); }

Cmp compare_tol(const Real& a, const Real& b, double rel_tol) {
  if (a.exact() && b.exact()) {
    if (a < b) return Cmp::Less;
    if (b < a) return Cmp::Greater;
    return Cmp::Near;
  }
  double x = a.to_double(), y = b.to_double();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  if (std::abs(x - y) <= rel_tol * scale) return Cmp::Near;
  return x < y ? Cmp::Less : Cmp::Greater;
}

Zone leq_zone(const Real& lhs, const Real& rhs, double tol) {
  if (lhs.exact() && rhs.exact()) return lhs <= rhs ? Zone::Ok : Zone::Violated;
  double x = lhs.to_double(), y = rhs.to_double();
  double excess = (x - y) / std::max({1.0, std::abs(x), std::abs(y)});
  if (excess <= tol) return Zone::Ok;
  if (excess <= kUnclearFactor * tol) return Zone::Unclear;
  return Zone::Violated;
}

Zone leq_zone_rel(const Real& lhs, const Real& rhs, double tol) {
  if (lhs.exact() && rhs.exact()) return lhs <= rhs ? Zone::Ok : Zone::Violated;
  double x = lhs.to_double(), y = rhs.to_double();
  double scale = std::max(std::abs(x), std::abs(y));
  if (x <= y || scale == 0) return Zone::Ok;
  double excess = (x - y) / scale;
  if (excess <= tol) return Zone::Ok;
  if (excess <= kUnclearFactor * tol) return Zone::Unclear;
  return Zone::Violated;
}

Zone eq_zone(const Real& a, const Real& b, double tol) { return worst(leq_zone(a, b, tol), leq_zone(b, a, tol)); }

Zone worst(Zone a, Zone b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

}  // namespace diagonalis
