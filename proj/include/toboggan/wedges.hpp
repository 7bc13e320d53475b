#pragma once

#include "toboggan/rational.hpp"

#include <optional>
#include <vector>

namespace toboggan {

enum class Side { Left, Right };
enum class AnsatzSign { Minus, Plus };  // decay of e^{-x^p/p} resp. e^{+x^p/p}

/// An admissible asymptotic angular sector for a dominant power-law term
/// x^D.  Angles are unwrapped arguments of x and may exceed +-pi across
/// Riemann sheets.  With p = D/2 + 1:
///   right wedge n: center -pi/2 + n pi/p,  left wedge n: center -pi/2 - n pi/p
///   half width pi/(2p); wedge n decays under the minus ansatz when n - p/2 is
///   even (for the harmonic and decadic cases, p in {2, 6}, that is odd n).
/// Requires p even, i.e. D/2 odd, so the pattern is PT-symmetric about the
/// downward direction.
/// Index 0 (the downward direction) is its own PT mirror; it carries
/// side = Right by convention.
struct Wedge {
  Side side;
  int index;
  Rational center_pi;      // center angle as an exact multiple of pi
  Rational half_width_pi;  // half width as an exact multiple of pi
  AnsatzSign sign;

  double center() const;
  double half_width() const;
  double lower() const;  // center - half_width
  double upper() const;  // center + half_width
};

/// First `count` right and left wedges (per side) of the requested ansatz
/// sign, for an even dominant exponent D >= 2.  Ordered right 1..k then
/// left 1..k restricted to matching parity.
std::vector<Wedge> asymptotic_wedges(int D, AnsatzSign sign, int count = 3);

/// The unique wedge strictly containing the unwrapped direction theta, or
/// nullopt when theta sits on a Stokes boundary cos(p*theta') = 0.
std::optional<Wedge> classify_direction(double theta, int D);

}  // namespace toboggan
