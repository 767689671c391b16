#pragma once

// Majorization relations between real sequences.
//
// For c0+ sequences the partial-sum gap is
//   D(n) = S_lambda(n) - S_d(n) = Delta + tail_d(n) - tail_lambda(n),
// with Delta the difference of the totals. Once the nonincreasing
// rearrangement of a side is a single closed-form stream, its tail is
// A rho^n (geometric) or C / (n + e) (telescoping), which turns the
// "for all n" and "for all large n" clauses into finite checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diagonalis/scalar.hpp"
#include "diagonalis/seqspec.hpp"

namespace diagonalis::major {

enum class Verdict { Holds, Fails, Unknown };
enum class Mode { Exact, Float };

std::string to_string(Verdict v);
std::string to_string(Mode m);

struct Witness {
  std::uint64_t m = 0;   // partial-sum index
  Real lhs, rhs;         // the violated inequality lhs <= rhs
  bool asymptotic = false;  // lhs/rhs are limits (total sums), not partial sums at m
  std::optional<std::uint64_t> p;  // failing p for p = infinity
};

struct MajorizationVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;
  std::optional<std::uint64_t> horizon;
  Mode mode = Mode::Exact;
  std::string reason;
};

/// p in {0, 1, 2, ...} or infinity.
struct PLevel {
  std::optional<std::uint64_t> value;
  PLevel() : value(0) {}
  PLevel(std::uint64_t p) : value(p) {}  // NOLINT
  static PLevel infinity() {
    PLevel p;
    p.value.reset();
    return p;
  }
  bool is_infinite() const { return !value.has_value(); }
  std::string str() const { return value ? std::to_string(*value) : std::string("inf"); }
};

struct Options {
  std::uint64_t horizon = 10000;
  double tol = 1e-10;
};

MajorizationVerdict majorize_finite(const std::vector<Real>& d, const std::vector<Real>& lambda,
                                    const Options& opt = {});

/// sum_{k<=n} d*_k <= sum_{k<=n} lambda*_k for all n; both sides c0+.
MajorizationVerdict weak_majorize(const seq::SequenceSpec& d, const seq::SequenceSpec& lambda,
                                  const Options& opt = {});

/// Weak majorization plus equal totals.
MajorizationVerdict majorize(const seq::SequenceSpec& d, const seq::SequenceSpec& lambda,
                             const Options& opt = {});

/// Real l1 majorization: positive and negative parts weakly majorized, totals equal.
MajorizationVerdict majorize_l1(const seq::SequenceSpec& d, const seq::SequenceSpec& lambda,
                                const Options& opt = {});

MajorizationVerdict p_majorize(const seq::SequenceSpec& d, const seq::SequenceSpec& lambda, PLevel p,
                               const Options& opt = {});

MajorizationVerdict approx_p_majorize(const seq::SequenceSpec& d, const seq::SequenceSpec& lambda, PLevel p,
                                      const Options& opt = {});

/// Closed form of tail(n) = sum_{k>n} x*_k, valid for n >= n0.
struct TailModel {
  enum class Kind { Zero, Geometric, Harmonic, None };
  Kind kind = Kind::None;
  Real a, rho;  // Geometric: a rho^n
  Real c, e;    // Harmonic: c / (n + e)
  std::uint64_t n0 = 0;

  Real tail(std::uint64_t n) const;
};

TailModel tail_model(const seq::SequenceSpec& s);

}  // namespace diagonalis::major
