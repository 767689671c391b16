#pragma once

// Explicit finite matrices and bases realizing a prescribed diagonal.
//
// Every constructor checks its result before returning; a candidate that
// misses the tolerance raises ConvergenceError instead of being returned.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagonalis/matrix.hpp"
#include "diagonalis/scalar.hpp"
#include "diagonalis/seqspec.hpp"

namespace diagonalis::construct {

inline constexpr double kDefaultTol = 1e-9;

struct Residuals {
  double spectral = 0;  // eigenvalue, singular-value, idempotence or unitarity error
  double diagonal = 0;  // max |diagonal - target|
};

struct Realization {
  Matrix matrix;
  /// True when `matrix` is a unitary basis V for a fixed operator (V* T V has the diagonal).
  bool is_basis = false;
  Residuals residuals;
  std::string method;

  nlohmann::json to_json() const;
};

struct SearchBudget {
  std::uint64_t restarts = 200;
  std::uint64_t sweeps = 500;
  std::uint64_t seed = 1;
};

/// A search that may give up; `realization` is empty on NotFound.
struct SearchOutcome {
  std::optional<Realization> realization;
  std::uint64_t restarts_used = 0;
  std::string reason;

  nlohmann::json to_json() const;
};

/// Real symmetric matrix with eigenvalues lambda and diagonal d (Givens chain).
Realization construct_schur_horn(const std::vector<Real>& lambda, const std::vector<Real>& d, double tol = kDefaultTol);

struct WeightedPermutation {
  double weight;
  /// perm[i] = index of lambda placed at position i.
  std::vector<std::size_t> perm;
};
/// d = sum_k w_k lambda_{perm_k}, with at most n permutations.
std::vector<WeightedPermutation> convex_decomposition(const std::vector<Real>& lambda, const std::vector<Real>& d,
                                                      double tol = kDefaultTol);

/// Real symmetric projection with diagonal d; sum d must be an integer.
Realization construct_projection_with_diagonal(const std::vector<Real>& d, double tol = kDefaultTol);

struct KadisonBlock {
  std::vector<Real> entries;             // the entries outside {0, 1}
  std::optional<Realization> block;      // projection with those diagonal entries
  std::uint64_t rank = 0;                // trace of the finite block
  std::uint64_t padding = 0;             // extra 0/1 entries added to the block
  seq::Count ones, zeros;                // sizes of the identity and zero summands

  nlohmann::json to_json() const;
};
KadisonBlock construct_kadison_block(const seq::SequenceSpec& d, double tol = kDefaultTol);

/// Unitary V with V* T V having zero diagonal; trace T must vanish.
Realization construct_zero_diagonal_basis(const Matrix& t, double tol = kDefaultTol);

SearchOutcome construct_thompson(const std::vector<Real>& s, const std::vector<Complex>& d, double tol = kDefaultTol,
                                 const SearchBudget& budget = {});

/// Unitary with diagonal d; orthogonal when d is real.
Realization construct_unitary_with_diagonal(const std::vector<Complex>& d, double tol = kDefaultTol);

/// Unitary basis V with diag(V* diag(lambda) V) = d.
SearchOutcome construct_williams(const std::vector<Complex>& lambda, const std::vector<Complex>& d,
                                 double tol = 1e-8);

}  // namespace diagonalis::construct
