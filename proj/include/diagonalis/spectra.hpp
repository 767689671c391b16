#pragma once

// Spectral kernels on dense matrices and spectral models of operators.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagonalis/matrix.hpp"
#include "diagonalis/scalar.hpp"
#include "diagonalis/seqspec.hpp"

namespace diagonalis::spectra {

/// Nonincreasing eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

/// Nonincreasing singular values.
std::vector<double> singular_values(const Matrix& m);

struct Support {
  double value;  // max eigenvalue of Re(e^{i theta} M)
  Vec vector;    // unit vector attaining it
};
Support numerical_range_support(const Matrix& m, double theta);

/// Grid size for numerical-range hulls and the default attainment margin.
inline constexpr int kThetaGrid = 720;
inline constexpr double kAttainTol = 1e-9;

/// Unit vector x with |<Mx, x> - z| <= tol. Throws PreconditionError when z lies outside the
/// numerical range by more than tol, ConvergenceError if the residual check fails.
Vec attain_numerical_range_vector(const Matrix& m, cplx z, double tol = kAttainTol);

/// Unit vector in C^2 with <B x, x> = z for a 2 x 2 matrix B; nullopt when z is outside W(B) by more than tol.
std::optional<Vec> attain_2x2(const Matrix& b, cplx z, double tol);

/// Boundary points of W(M) from a support sweep over `grid` angles.
std::vector<cplx> numerical_range_polygon(const Matrix& m, int grid = kThetaGrid);

/// Haar-distributed unitary from the QR factorization of a complex Gaussian matrix.
Matrix haar_unitary(std::size_t n, std::uint64_t seed);

struct SpectrumPoint {
  Complex value;
  seq::Count multiplicity;
};

struct OperatorSpec {
  enum class Kind { Matrix, FiniteSpectrum, Diagonalizable };
  Kind kind = Kind::FiniteSpectrum;
  diagonalis::Matrix matrix;
  std::vector<SpectrumPoint> points;  // FiniteSpectrum
  seq::SequenceSpec eigs;             // Diagonalizable (nonzero eigenvalues with multiplicity)
  seq::Count kernel_dim = 0;          // Diagonalizable

  static OperatorSpec from_matrix(diagonalis::Matrix m);
  static OperatorSpec finite_spectrum(std::vector<SpectrumPoint> pts);
  static OperatorSpec diagonalizable(seq::SequenceSpec eigs, seq::Count kernel_dim);

  bool is_real() const;
  bool exact() const;
  /// The eigenvalue multiset (kernel included) as a sequence; not defined for Matrix.
  seq::SequenceSpec eigenvalue_sequence() const;
};

struct SpectralSummary {
  bool real = true;
  Real spectrum_min, spectrum_max;  // real specs only
  std::vector<Complex> ess_spectrum;
  /// Real specs: [ess_min, ess_max]; complex specs: hull vertices in counterclockwise order.
  std::optional<std::pair<Real, Real>> ess_interval;
  std::vector<Complex> ess_hull;
  std::vector<std::pair<Complex, seq::Count>> endpoint_multiplicities;
};

SpectralSummary essential_summary(const OperatorSpec& spec);

/// Entrywise affine map of an operator spec (x -> a x + b on the spectrum).
OperatorSpec affine_image(const OperatorSpec& spec, const Complex& a, const Complex& b);

/// Convex hull (counterclockwise, collinear points dropped) of complex points.
std::vector<cplx> convex_hull(std::vector<cplx> pts, double tol = 1e-12);

}  // namespace diagonalis::spectra
