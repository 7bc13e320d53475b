#pragma once

#include "toboggan/potential.hpp"

#include <complex>
#include <span>
#include <vector>

namespace toboggan {

/// The decadic QE problem at half-integer angular momentum L = M - 1/2:
///   -phi'' + [L(L+1)/x^2 + x^10 + g8 x^8 + g6 x^6 + g4 x^4 + g2 x^2] phi = E phi
/// with g8 = 2*alpha, g6 = 2*beta + alpha^2 and the termination condition
/// fixing g4.  N counts the polynomial coefficients h_0..h_{N-1}.
struct QEParams {
  int M;
  int N;
  double alpha;
  double beta;

  double L() const { return M - 0.5; }
  double g8() const { return 2.0 * alpha; }
  double g6() const { return 2.0 * beta + alpha * alpha; }
};

struct RecurrenceCoeffs {
  double A, B, C, D;
};

/// A = (2n+2)(2n+2-2M), B = E - beta(4n+2-2M), C = beta^2 - g2 - alpha(4n-2M),
/// D = 4(N+1-n).  A vanishes structurally at n = M-1.
RecurrenceCoeffs recurrence_coeffs(int n, const QEParams& params, double E, double g2);

/// Termination value g4 = 2*alpha*beta + 2M - 4N - 2.
double fix_g4(const QEParams& params);

/// Determinant of the M x M upper band block (diagonal B, superdiagonal A,
/// subdiagonal C, sub-subdiagonal D).
double secular_det_small(const QEParams& params, double E, double g2);

/// Determinant of the N x N system left after omitting row 0 of the full
/// N+1 recurrence rows.
double reduced_det(const QEParams& params, double E, double g2);

struct QESolution {
  double E;
  double g2;
  std::vector<double> h;  // normalized so the largest-magnitude entry is +1
  double residual;        // relative residual of all N+1 recurrence rows
};

struct SearchBox {
  double e_min = -24.0, e_max = 24.0;
  double g2_min = -24.0, g2_max = 24.0;
  int grid = 48;  // Newton seeds per axis
};

/// Real Sturmian solutions of the full overcomplete system: the secular
/// determinant and the reduced determinant must both vanish; every candidate
/// is re-validated against all N+1 rows via the smallest singular value of
/// the full (N+1) x N matrix (relative to the coefficient scale), which also
/// yields h.
std::vector<QESolution> qe_solve(const QEParams& params, const SearchBox& box = {});

struct ComplexQESolution {
  std::complex<double> E;
  std::complex<double> g2;
  double residual;
};

/// Diagnostic variant admitting complex (E, g2) pairs.
std::vector<ComplexQESolution> qe_solve_complex(const QEParams& params,
                                                const SearchBox& box = {});

/// exp(-x^6/6 - alpha x^4/4 - beta x^2/2) * sum h_n x^{2n-L}, with the
/// half-integer powers of x continued along the sheet of `point`.
std::complex<double> qe_wavefunction(const QESolution& solution, const QEParams& params,
                                     const UnwrappedPoint& point);

/// Max relative residual of the decadic ODE at the sample points, with the
/// second derivative obtained by exact term-wise differentiation of the
/// ansatz.
double ode_residual(const QESolution& solution, const QEParams& params,
                    std::span<const UnwrappedPoint> samples);

/// The decadic PotentialSpec (x-basis couplings, centrifugal L(L+1))
/// corresponding to a QE solution.
PotentialSpec qe_potential(const QESolution& solution, const QEParams& params);

}  // namespace toboggan
