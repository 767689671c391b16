#pragma once

// Brute-force ground truth: sampled unitary orbits, orbit search, rational re-checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagonalis/majorization.hpp"
#include "diagonalis/matrix.hpp"
#include "diagonalis/scalar.hpp"

namespace diagonalis::oracle {

enum class Execution { Serial, Parallel };

/// Diagonals of U_i T U_i* for Haar U_i; trial i uses trial_seed(seed, i).
std::vector<std::vector<cplx>> sample_diagonals(const Matrix& t, std::uint64_t trials, std::uint64_t seed,
                                                Execution exec = Execution::Parallel);

struct SearchBudget {
  std::uint64_t restarts = 50;
  std::uint64_t sweeps = 2000;  // per restart
};

struct Membership {
  std::optional<Matrix> unitary;  // U with diag(U* T U) = d
  double residual = 0;            // max |diag - d| of the best candidate seen
  std::uint64_t restarts_used = 0;
  std::uint64_t sweeps_used = 0;
  std::string reason;

  bool found() const { return unitary.has_value(); }
  nlohmann::json to_json() const;
};

/// Random restarts of pairwise Givens/phase sweeps minimizing sum |diag(U* T U) - d|^2.
/// Restart 0 starts from the identity; the lowest successful restart wins.
Membership search_membership(const Matrix& t, const std::vector<cplx>& d, double tol, const SearchBudget& budget,
                             std::uint64_t seed, Execution exec = Execution::Parallel);

/// d majorized by lambda, decided through sum (x - t)_+ at every breakpoint in exact arithmetic.
major::Verdict rational_majorization_oracle(const std::vector<Rational>& d, const std::vector<Rational>& lambda);

}  // namespace diagonalis::oracle
