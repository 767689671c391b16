#pragma once

// Finite and symbolically infinite sequences.
//
// A SequenceSpec is a multiset union of streams. Infinite streams have the
// closed form  shift + coefficient * g(k)  with g one of
//   r^k              (geometric, |r| < 1)
//   1 / (n (n + 1))  (telescoping, n = start, start + 1, ...)
//   1                (constant)
// so that sums, tails, thresholds and limit points are all computable
// exactly when the parameters are rational.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagonalis/scalar.hpp"

namespace diagonalis::seq {

/// Entry-equality tolerance for float-mode specs.
inline constexpr double kEntryTol = 1e-12;

/// Element count; std::nullopt stands for countably infinite.
using Count = std::optional<std::uint64_t>;

std::string count_str(const Count& c);

enum class StreamKind { Finite, Constant, Geometric, Telescoping };

struct Stream {
  StreamKind kind = StreamKind::Finite;
  std::vector<Complex> values;  // Finite
  Complex value;                // Constant
  Count count;                  // Constant
  Complex first;                // Geometric: shift + first * ratio^k, k = 0, 1, ...
  Real ratio;
  Complex scale;                // Telescoping: shift + scale / (n (n + 1)), n = start, ...
  std::uint64_t start = 1;
  Complex shift;

  static Stream finite(std::vector<Complex> values);
  static Stream finite_real(const std::vector<Real>& values);
  static Stream constant(Complex value, Count count = std::nullopt);
  static Stream geometric(Complex first, Real ratio, Complex shift = {});
  static Stream telescoping(Complex scale, std::uint64_t start = 1, Complex shift = {});

  bool infinite() const;
  Count length() const;
  /// k-th entry (0-based) in the stream's own order.
  Complex term(std::uint64_t k) const;
  bool exact() const;
  bool is_real() const;
  /// The closed-form coefficient of a geometric or telescoping stream.
  const Complex& coefficient() const { return kind == StreamKind::Geometric ? first : scale; }
};

enum class Field { Real, Complex };

class SequenceSpec {
 public:
  SequenceSpec() = default;
  /// Validates stream parameters. With exact == false every parameter is demoted to double;
  /// with exact == true a double parameter is an InputError.
  SequenceSpec(std::vector<Stream> streams, Field field, bool exact);

  static SequenceSpec of(std::vector<Stream> streams, bool exact = true);
  static SequenceSpec finite(const std::vector<Real>& values);
  static SequenceSpec finite_complex(std::vector<Complex> values);

  const std::vector<Stream>& streams() const { return streams_; }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::Real; }
  bool exact() const { return exact_; }
  Count length() const;

  /// Streams in canonical form: geometric ratios in (0, 1), degenerate streams folded into
  /// constants, empty streams dropped. Describes the same multiset.
  const std::vector<Stream>& atoms() const { return atoms_; }

  /// Multiset union.
  friend SequenceSpec operator+(const SequenceSpec& a, const SequenceSpec& b);

 private:
  std::vector<Stream> streams_;
  std::vector<Stream> atoms_;
  Field field_ = Field::Real;
  bool exact_ = true;
};

struct ExtendedSum {
  enum class Kind { Finite, PosInf, NegInf, Divergent };
  Kind kind = Kind::Finite;
  Complex value;
  bool approximate = false;

  static ExtendedSum finite(Complex v) { return {Kind::Finite, std::move(v), false}; }
  static ExtendedSum pos_inf() { return {Kind::PosInf, {}, false}; }
  static ExtendedSum neg_inf() { return {Kind::NegInf, {}, false}; }
  static ExtendedSum divergent() { return {Kind::Divergent, {}, false}; }

  bool is_finite() const { return kind == Kind::Finite; }
  /// Real part of a finite sum; throws otherwise.
  const Real& real() const;
  std::string str() const;
};

ExtendedSum operator+(const ExtendedSum& a, const ExtendedSum& b);

struct Prefix {
  std::vector<Complex> values;
  bool short_length = false;  // fewer than n entries exist
};

/// Finite streams in listed order, then round-robin over the infinite streams.
Prefix materialize_prefix(const SequenceSpec& spec, std::uint64_t n);

ExtendedSum total_sum(const SequenceSpec& spec);

/// First n terms of the nonincreasing rearrangement (shorter if the spec is finite).
/// Zeros after infinitely many positive terms never appear.
std::vector<Real> sorted_prefix_desc(const SequenceSpec& spec, std::uint64_t n);

/// total_sum minus the sum of sorted_prefix_desc(n).
ExtendedSum tail_sum_after_top(const SequenceSpec& spec, std::uint64_t n);

/// (positive part, negative part) as nonnegative specs; zero entries are dropped.
std::pair<SequenceSpec, SequenceSpec> split_parts(const SequenceSpec& spec);

/// Entrywise x -> a x + b.
SequenceSpec affine_image(const SequenceSpec& spec, const Complex& a, const Complex& b);

/// Entrywise modulus.
SequenceSpec abs_values(const SequenceSpec& spec);

/// Splits a real spec into entries below, equal to, and above a threshold.
struct Partition {
  SequenceSpec below;
  SequenceSpec equal;
  SequenceSpec above;
};
Partition partition(const SequenceSpec& spec, const Real& threshold);

/// Number of entries equal to v.
Count count_equal(const SequenceSpec& spec, const Complex& v);

struct Bounds {
  bool empty = true;
  Real inf, sup;
  bool inf_attained = false;
  bool sup_attained = false;
};
/// Infimum and supremum of a real spec.
Bounds bounds(const SequenceSpec& spec);

/// Limit points of the entries (one per infinite stream, deduplicated).
std::vector<Complex> accumulation_points(const SequenceSpec& spec);

/// True when the sequence is infinite and converges to zero, or is finite.
bool converges_to_zero(const SequenceSpec& spec);

bool is_nonnegative(const SequenceSpec& spec);

/// Sum of |x|^p over the spec for p > 0: finite/infinite is exact, the value is
/// exact for p = 1 and numeric otherwise.
ExtendedSum power_sum(const SequenceSpec& spec, double p);

/// An ordered sequence: a finite prefix followed by a round-robin over infinite streams,
/// taking `weight` consecutive terms from each stream per cycle.
struct OrderedSequenceSpec {
  std::vector<Complex> prefix;
  std::vector<std::pair<Stream, std::uint64_t>> tail;

  std::vector<Complex> enumerate(std::uint64_t n) const;
};

}  // namespace diagonalis::seq
