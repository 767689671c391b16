#pragma once

// Diagonal-membership deciders, one per characterization theorem.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagonalis/majorization.hpp"
#include "diagonalis/matrix.hpp"
#include "diagonalis/scalar.hpp"
#include "diagonalis/seqspec.hpp"
#include "diagonalis/spectra.hpp"

namespace diagonalis::decide {

enum class Verdict {
  Yes,
  YesModuloKernel,
  No,
  Unknown,
  SufficientConditionHolds,
  NecessaryConditionFails,
  ConditionFails,
};

std::string to_string(Verdict v);
/// 0 for the positive verdicts, 1 for No / NecessaryConditionFails, 2 otherwise.
int exit_code(Verdict v);

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::string theorem;
  major::Mode mode = major::Mode::Exact;
  nlohmann::json certificate = nlohmann::json::object();
  std::string reason;

  nlohmann::json to_json() const;
};

struct Options {
  major::Options major;
  /// Integrality / equality tolerance for float inputs; values off by more than
  /// kUnclearFactor * tol are definite.
  double tol = 1e-9;
  /// Coefficient bound for bounded lattice searches.
  std::uint64_t coeff_bound = 10;
  /// Candidate cap for the Bownik-Jasper search.
  std::uint64_t max_candidates = 1000000;
};

// Selfadjoint operators.

Decision decide_schur_horn(const std::vector<Real>& lambda, const std::vector<Real>& d, const Options& opt = {});

Decision decide_gohberg_markus(const seq::SequenceSpec& lambda, const seq::SequenceSpec& d, const Options& opt = {});

/// s: nonzero singular values of a positive compact operator (zeros in s count as kernel).
Decision decide_kw(const seq::SequenceSpec& s, seq::Count kernel_dim, const seq::SequenceSpec& d,
                   const Options& opt = {});

struct KadisonInvariants {
  seq::ExtendedSum a, b;
};
KadisonInvariants kadison_invariants(const seq::SequenceSpec& d);
Decision decide_kadison(const seq::SequenceSpec& d, const Options& opt = {});

/// points = (0, lambda_1, ..., lambda_n, B), strictly increasing.
Decision decide_bownik_jasper(const std::vector<Real>& points, const seq::SequenceSpec& d, const Options& opt = {});

Decision decide_neumann_closure(const spectra::OperatorSpec& spec, const seq::SequenceSpec& d,
                                const Options& opt = {});

enum class BlaschkeMode { Selfadjoint, General };
Decision check_blaschke(const spectra::OperatorSpec& spec, const seq::SequenceSpec& d, BlaschkeMode mode,
                        const Options& opt = {});

Decision decide_three_point(const spectra::OperatorSpec& spec, const seq::SequenceSpec& d, const Options& opt = {});

// Normal operators.

Decision decide_williams_3x3(const std::vector<Complex>& lambda, const std::vector<Complex>& d,
                             const Options& opt = {});

Decision check_arveson(const std::vector<Complex>& vertices, const seq::SequenceSpec& d, const Options& opt = {});

enum class HornVariant { Unitary, Orthogonal, Rotation };
Decision decide_horn_unitary(const std::vector<Complex>& d, HornVariant variant, const Options& opt = {});

Decision decide_jlw_unitary(const seq::SequenceSpec& d, const Options& opt = {});

// General operators.

Decision decide_thompson(const std::vector<Real>& s, const std::vector<Complex>& d, const Options& opt = {});

Decision decide_thompson_compact(const seq::SequenceSpec& s, const seq::SequenceSpec& d, const Options& opt = {});

Decision check_mt_p_summable(const spectra::OperatorSpec& spec, const seq::SequenceSpec& d, double p,
                             const Options& opt = {});

Decision check_fan_criterion(const seq::OrderedSequenceSpec& d, const Options& opt = {});

/// A ray of eigenvalues e^{i pi phase} m_k.
struct Ray {
  Real phase;  // in units of pi
  seq::SequenceSpec magnitudes;
};

struct TraceSet {
  enum class Shape { Empty, Point, Line, Plane };
  Shape shape = Shape::Empty;
  Complex value;           // Point
  Real direction;          // Line: direction of the line, in units of pi, in [0, 1)
  std::string reason;
  bool exact = true;

  nlohmann::json to_json() const;
};
std::string to_string(TraceSet::Shape s);

TraceSet classify_trace_set(const std::vector<Ray>& rays, double tol = 1e-12);

// Essential codimension of finite projections.

std::int64_t essential_codimension_finite(const Matrix& p, const Matrix& q);

struct IdentityReport {
  cplx lhs = 0, rhs = 0;
  double residual = 0;
  nlohmann::json to_json() const;
};

/// a - b (from the diagonal of P) against [P : Q], Q the coordinate projection on {d >= 1/2}.
IdentityReport verify_kadison_codimension_identity(const Matrix& p);

/// trace E(N - N') against sum over the spectrum of [P_l : Q_l] l.
IdentityReport verify_normal_codimension_identity(const Matrix& n, const Matrix& n_diag);

}  // namespace diagonalis::decide
