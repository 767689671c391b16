#pragma once

// Real and complex scalars that are either exact rationals or doubles.
//
// Arithmetic between two exact values stays exact; any float operand
// demotes the result to double. Deciders report which mode produced a
// verdict, so callers can tell a proved answer from a tolerance-based one.

#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace diagonalis {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Real {
 public:
  Real() : v_(Rational(0)) {}
  Real(int x) : v_(Rational(x)) {}                      // NOLINT
  Real(long x) : v_(Rational(x)) {}                     // NOLINT
  Real(long long x) : v_(Rational(x)) {}                // NOLINT
  Real(unsigned long x) : v_(Rational(BigInt(x))) {}    // NOLINT
  Real(unsigned long long x) : v_(Rational(BigInt(x))) {}  // NOLINT
  Real(double x) : v_(x) {}                             // NOLINT
  Real(Rational q) : v_(std::move(q)) {}                // NOLINT

  static Real ratio(long long num, long long den);

  /// Parses "p", "p/q" or a decimal literal such as "-1.25e-3" into an exact value.
  static Real parse(std::string_view text);

  /// Converts a double to the exact rational of its shortest decimal form (0.1 -> 1/10).
  static Real from_decimal(double x);

  bool exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const;
  double to_double() const;
  Real to_float() const { return Real(to_double()); }

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  /// Exact floor for rationals; floor of the double otherwise (returned as a Real).
  Real floor() const;
  Real abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

  Real operator-() const;
  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    return compare(a, b) <=> 0;
  }

 private:
  static int compare(const Real& a, const Real& b);
  std::variant<Rational, double> v_;
};

Real pow(const Real& base, std::uint64_t exponent);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
std::ostream& operator<<(std::ostream& os, const Real& x);

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}                 // NOLINT
  Complex(int r) : re(r) {}                             // NOLINT
  Complex(double r) : re(r) {}                          // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  bool exact() const { return re.exact() && im.exact(); }
  bool is_real() const { return im.is_zero(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  Complex to_float() const { return {re.to_float(), im.to_float()}; }

  Complex conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
  /// Modulus; exact whenever the squared modulus is a rational square.
  Real abs() const;

  std::string str() const;

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Relative comparison used by float-mode deciders.
enum class Cmp { Less, Near, Greater };
Cmp compare_tol(const Real& a, const Real& b, double rel_tol);

/// Outcome of a float-mode inequality check.
/// Ok: holds up to tol; Unclear: relative excess in (tol, 1000 tol]; Violated: beyond.
/// Exact operands only ever give Ok or Violated.
enum class Zone { Ok, Unclear, Violated };
inline constexpr double kUnclearFactor = 1000.0;
Zone leq_zone(const Real& lhs, const Real& rhs, double tol);
Zone eq_zone(const Real& a, const Real& b, double tol);
/// As leq_zone, but relative to max(|lhs|, |rhs|) only; meant for small positive quantities.
Zone leq_zone_rel(const Real& lhs, const Real& rhs, double tol);
Zone worst(Zone a, Zone b);

}  // namespace diagonalis
