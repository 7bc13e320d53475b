#include "toboggan/wedges.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toboggan {

namespace {

constexpr double kPi = std::numbers::pi;

int check_dominant(int D) {
  if (D < 2 || D % 2 != 0)
    throw std::invalid_argument("dominant exponent must be a positive even integer");
  // p odd would put the downward direction on a Stokes line and break the
  // PT-symmetric wedge pattern
  if ((D / 2 + 1) % 2 != 0)
    throw std::invalid_argument("dominant exponent must have D/2 odd");
  return D / 2 + 1;  // p
}

Wedge make_wedge(Side side, int n, int p) {
  Rational offset(n, p);
  Rational center = Rational(-1, 2) + (side == Side::Right ? offset : -offset);
  // minus-ansatz decay needs cos(p*center) = +1, i.e. n - p/2 even
  bool minus = ((n - p / 2) % 2) == 0;
  return Wedge{side, n, center, Rational(1, 2 * p),
               minus ? AnsatzSign::Minus : AnsatzSign::Plus};
}

}  // namespace

double Wedge::center() const { return kPi * to_double(center_pi); }
double Wedge::half_width() const { return kPi * to_double(half_width_pi); }
double Wedge::lower() const { return kPi * to_double(center_pi - half_width_pi); }
double Wedge::upper() const { return kPi * to_double(center_pi + half_width_pi); }

std::vector<Wedge> asymptotic_wedges(int D, AnsatzSign sign, int count) {
  int p = check_dominant(D);
  if (count < 1) throw std::invalid_argument("wedge count must be positive");
  std::vector<Wedge> out;
  for (Side side : {Side::Right, Side::Left}) {
    int taken = 0;
    for (int n = 1; taken < count; ++n) {
      Wedge w = make_wedge(side, n, p);
      if (w.sign != sign) continue;
      out.push_back(w);
      ++taken;
    }
  }
  return out;
}

std::optional<Wedge> classify_direction(double theta, int D) {
  int p = check_dominant(D);
  double step = kPi / p;
  double d = theta + kPi / 2.0;  // offset from the downward direction
  long long n = std::llround(d / step);
  double off = d - static_cast<double>(n) * step;
  double half = step / 2.0;
  double tol = 1e-12 * (1.0 + std::abs(theta));
  if (std::abs(off) >= half - tol) return std::nullopt;  // Stokes boundary
  Side side = n >= 0 ? Side::Right : Side::Left;
  return make_wedge(side, static_cast<int>(n >= 0 ? n : -n), p);
}

}  // namespace toboggan
