#pragma once

#include "toboggan/rational.hpp"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace toboggan {

/// A point of a multi-sheet contour in log-polar form of w = i*x.
/// theta is the continuously tracked (unwrapped) argument of w; it is never
/// reduced modulo 2*pi, so it encodes the Riemann sheet.
struct UnwrappedPoint {
  double radius;  // |w| = |x|, > 0 away from the branch point
  double theta;   // unwrapped arg(w), unbounded

  std::complex<double> w() const { return std::polar(radius, theta); }
  std::complex<double> x() const {
    return std::complex<double>(0.0, -1.0) * w();
  }
};

enum class Basis { IX, X };

struct PotentialTerm {
  double coupling;    // real (PT-symmetric multinomial class)
  Rational exponent;  // exact: 4/3, -2/3, ... never a float
};

/// PT-symmetric multinomial  sum_b g_b (ix)^b  (or sum g_b x^b in the X basis,
/// even integer exponents only), plus an optional centrifugal strength
/// gamma = L(L+1) multiplying 1/x^2.  Immutable after construction.
class PotentialSpec {
 public:
  PotentialSpec() = default;
  PotentialSpec(std::vector<PotentialTerm> terms, std::optional<double> centrifugal,
                Basis basis);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  const std::optional<double>& centrifugal() const { return centrifugal_; }
  Basis basis() const { return basis_; }

  /// Largest exponent; throws when the term list is empty.
  Rational leading_exponent() const;

 private:
  std::vector<PotentialTerm> terms_;  // sorted descending by exponent
  std::optional<double> centrifugal_;
  Basis basis_ = Basis::IX;
};

/// Validates (distinct exponents, real couplings are implied by the type),
/// sorts descending, and canonicalizes.
PotentialSpec make_potential(const std::vector<std::pair<double, Rational>>& terms,
                             std::optional<double> centrifugal = std::nullopt,
                             Basis basis = Basis::IX);

/// (i x)^beta = exp(beta * (log r + i theta)) with the UNWRAPPED theta.
/// Continuous along any contour with continuous theta(s); disagrees with the
/// principal branch on higher sheets by design.
std::complex<double> eval_ix_power(const UnwrappedPoint& point, const Rational& beta);

/// Sum of terms plus gamma/x^2, using (ix)^{-2} = -x^{-2} for the centrifugal
/// part.  Requires the IX basis.
std::complex<double> eval_potential(const PotentialSpec& spec, const UnwrappedPoint& point);

/// Flips between the (ix)^b and x^b bases for even integer exponents:
/// coupling_x = coupling_ix * (-1)^(b/2).  Involution on its domain.
PotentialSpec basis_convert(const PotentialSpec& spec, Basis target);

/// JSON document: {"basis":"ix"|"x", "terms":[[coupling,num,den],...],
/// "centrifugal": number (optional)}.
nlohmann::json potential_to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const nlohmann::json& doc);

}  // namespace toboggan
