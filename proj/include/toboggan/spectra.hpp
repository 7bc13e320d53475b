#pragma once

#include "toboggan/contour.hpp"
#include "toboggan/potential.hpp"

#include <complex>
#include <string>
#include <vector>

namespace toboggan {

struct GridSpec {
  double s_min;
  double s_max;
  int points;  // including both Dirichlet endpoints, >= 3
};

/// Column-major dense complex matrix.
struct DenseMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  std::complex<double>& at(int row, int col) { return a[col * n + row]; }
  std::complex<double> at(int row, int col) const { return a[col * n + row]; }
};

struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;  // sorted by real part
  std::string contour_fingerprint;
  std::string grid_fingerprint;
  double reality_tolerance = 1e-6;
};

/// Second-order discretization of -phi''/x'^2 + (x''/x'^3) phi' + V(x(s)) phi
/// on a uniform s-grid with Dirichlet zeros at both truncated ends; returns
/// the (points-2)^2 interior matrix.  The potential is evaluated with the
/// contour's unwrapped phase.  When the leading exponent is an even positive
/// integer, both contour endpoints must classify into decay wedges.
DenseMatrix discretize(const PotentialSpec& potential, const Contour& contour,
                       const GridSpec& grid);

/// All eigenvalues via a dense nonsymmetric solve (LAPACK zgeev); when k > 0
/// only the k smallest-real-part values are retained.
Spectrum eigen_spectrum(const DenseMatrix& matrix, int k = 0);

/// Real parts of eigenvalues with |Im E| < tol*(1 + |Re E|), sorted.
std::vector<double> filter_real(const Spectrum& spectrum, double tol);

/// Double-sided shooting with WKB-seeded decaying initial data and Newton
/// iteration on complex E until the normalized Wronskian mismatch at s = 0
/// drops below 1e-10.
std::complex<double> shoot_refine(const PotentialSpec& potential, const Contour& contour,
                                  std::complex<double> E_guess, const GridSpec& grid);

struct CompareReport {
  bool pass = false;
  double max_diff = 0.0;
  std::vector<double> diffs;
};

/// Pairwise differences of the k lowest filtered-real levels of two spectra.
CompareReport compare_spectra(const Spectrum& a, const Spectrum& b, int k, double tol);

/// Convenience: discretize + eigensolve + stamp provenance.
Spectrum solve_spectrum(const PotentialSpec& potential, const Contour& contour,
                        const GridSpec& grid, int k = 0, double reality_tol = 1e-6);

/// One step of Richardson extrapolation for a second-order scheme.
inline double richardson(double coarse, double fine) {
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace toboggan
