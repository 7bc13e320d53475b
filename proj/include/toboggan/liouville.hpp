#pragma once

#include "toboggan/potential.hpp"
#include "toboggan/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toboggan {

/// The change of variables ix = (iy)^alpha with psi = y^rho phi,
/// rho = (alpha-1)/2 (the choice that kills first-derivative terms).
/// lambda is the perturbation scale of -(ix)^2 + lambda*W(ix); it is kept
/// rational so factor bookkeeping like lambda*alpha^2 = 1 stays exact.
struct TransformJob {
  Rational alpha;
  Rational lambda = Rational(1);

  Rational rho() const { return (alpha - Rational(1)) / Rational(2); }
};

struct TransformResult {
  PotentialSpec new_potential;      // (iy)^b basis; any exponent-0 term removed
  std::optional<double> new_energy; // -t when a term t landed at exponent 0
  Rational energy_exponent;         // 2*alpha - 2, where the old E appears
  double energy_coupling = 0.0;     // -alpha^2 * E_old (0 when E_old unset)
  Rational generated_centrifugal;   // (alpha^2 - 1)/4, stored in new_potential too
};

/// Maps each W-term g_b (ix)^b to coupling lambda*alpha^2*g_b at exponent
/// alpha*b + 2*alpha - 2.  A term (-1)*(ix)^2, when present, is treated as the
/// lambda-exempt unperturbed harmonic part and maps with factor alpha^2 to
/// exponent 4*alpha - 2.  E_old maps to a term -alpha^2*E_old at exponent
/// 2*alpha - 2; a resulting exponent-0 term t becomes new energy -t.
/// Requires an IX-basis spec without a centrifugal strength of its own.
TransformResult transform_potential(const PotentialSpec& old_spec,
                                    std::optional<double> E_old,
                                    const TransformJob& job);

/// Merges the (iy)^{-2} term (if any) into the generated centrifugal strength
/// via (iy)^{-2} = -y^{-2}: total = (alpha^2-1)/4 - coupling_at_-2.
PotentialSpec fold_centrifugal(const TransformResult& result);

/// Rewrites the generated centrifugal strength gamma back into a
/// -gamma*(iy)^{-2} term so the result can be transformed again.
PotentialSpec unfold_centrifugal(const PotentialSpec& spec);

/// Under x = sigma*y the coupling at exponent b picks up sigma^(b+2), the
/// centrifugal strength is unchanged, and eigenvalues scale by sigma^2
/// (returned as .second).
std::pair<PotentialSpec, double> scale_coordinates(const PotentialSpec& spec, double sigma);

struct DictionaryEntry {
  std::string screened;  // coupling of the screened-harmonic side
  std::string decadic;   // where it lands in the decadic problem (x-basis)
  double factor;         // exact multiplier produced by the transform
  std::string note;
};

/// The alpha = 3, lambda = 1/9 correspondence between the six screening
/// couplings (a..f) and the decadic-oscillator data, with the exact factors
/// produced by transform_potential (including the alpha^2 factor on the
/// lambda-exempt terms that the usual shorthand absorbs).
std::vector<DictionaryEntry> dictionary();

}  // namespace toboggan
