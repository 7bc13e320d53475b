#pragma once

#include "toboggan/potential.hpp"
#include "toboggan/wedges.hpp"

#include <complex>
#include <memory>
#include <string>

namespace toboggan {

/// A PT-symmetric integration contour x(s), s in (-inf, inf), with a regular
/// parametrization (x'(s) != 0) and a continuously tracked argument, so the
/// curve may descend through several Riemann sheets.
class Contour {
 public:
  virtual ~Contour() = default;

  virtual std::complex<double> x(double s) const = 0;
  virtual std::complex<double> dx(double s) const = 0;
  virtual std::complex<double> ddx(double s) const = 0;

  /// Unwrapped arg x(s), continuous in s.
  virtual double theta(double s) const = 0;
  /// Limit of theta at s -> -inf (dir < 0) or +inf (dir > 0).
  virtual double theta_limit(int dir) const = 0;

  /// Stable textual fingerprint (provenance for Spectrum outputs).
  virtual std::string describe() const = 0;

  /// Log-polar sample of w = i*x(s) for branch-continuous potential
  /// evaluation; arg(ix) = arg(x) + pi/2.
  UnwrappedPoint point(double s) const;

  double total_sweep() const { return theta_limit(+1) - theta_limit(-1); }
};

using ContourPtr = std::shared_ptr<const Contour>;

/// Buslaev-Grecchi straight line x(s) = s - i*epsilon, epsilon > 0.
ContourPtr bg_line(double epsilon);

/// Connects the centers of the n-th left and right wedges for decay power p:
/// x(s) = r(s) e^{i phi(s)} with phi(s) = -pi/2 + (n pi / p) tanh(s/ell) and
/// r(s) = sqrt(epsilon^2 + s^2); passes below the origin at x(0) = -i*epsilon.
ContourPtr wedge_join(int n, double p, double epsilon, double ell = 1.0);

/// Image of a contour under ix = (iy)^alpha, computed with the continuous
/// phase of the base; derivatives by the chain rule.
ContourPtr liouville_image(ContourPtr base, double alpha);

struct ContourReport {
  Wedge left_wedge;
  Wedge right_wedge;
  double total_sweep;  // theta(+inf) - theta(-inf)
  int cut_crossings;   // upward-cut directions pi/2 + 2 pi k strictly inside the sweep
  bool tobogganic;     // cut_crossings >= 1
};

/// Classifies both asymptotic directions against the wedges of dominant
/// exponent D and counts crossings of the upward branch cut.  Throws when an
/// endpoint lies on a Stokes boundary.
ContourReport analyze(const Contour& contour, int D);

}  // namespace toboggan
