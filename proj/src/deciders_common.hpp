#pragma once

// Shared helpers for the decider translation units.

#include <string>

#include "diagonalis/deciders.hpp"
#include "diagonalis/errors.hpp"
#include "diagonalis/json_io.hpp"

namespace diagonalis::decide::detail {

using nlohmann::json;

inline major::Mode mode_of(bool exact) { return exact ? major::Mode::Exact : major::Mode::Float; }

inline Decision make(std::string theorem, bool exact) {
  Decision d;
  d.theorem = std::move(theorem);
  d.mode = mode_of(exact);
  return d;
}

inline Decision& finish(Decision& d, Verdict v, std::string reason) {
  d.verdict = v;
  d.reason = std::move(reason);
  return d;
}

inline Verdict from_zone(Zone z, Verdict ok, Verdict bad) {
  switch (z) {
    case Zone::Ok: return ok;
    case Zone::Violated: return bad;
    case Zone::Unclear: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

inline Verdict from_major(major::Verdict v, Verdict ok, Verdict bad) {
  switch (v) {
    case major::Verdict::Holds: return ok;
    case major::Verdict::Fails: return bad;
    case major::Verdict::Unknown: return Verdict::Unknown;
  }
  return Verdict::Unknown;
}

json witness_json(const major::MajorizationVerdict& v);

/// Nearest integer and the zone of |x - round(x)| against tol.
struct Integrality {
  Real nearest;
  Zone zone;
};
Integrality integrality(const Real& x, double tol);

/// Lexicographic cross product a x b on exact-or-float complex values.
inline Real cross(const Complex& a, const Complex& b) { return a.re * b.im - a.im * b.re; }

inline bool count_leq(const seq::Count& a, const seq::Count& b) {
  if (!b) return true;
  if (!a) return false;
  return *a <= *b;
}

inline Real half_of(bool exact) { return exact ? Real::ratio(1, 2) : Real(0.5); }

}  // namespace diagonalis::decide::detail
