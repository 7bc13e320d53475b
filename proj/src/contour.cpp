#include "toboggan/contour.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace toboggan {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_param(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

class BGLine final : public Contour {
 public:
  explicit BGLine(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("bg_line needs epsilon > 0");
  }

  std::complex<double> x(double s) const override { return {s, -epsilon_}; }
  std::complex<double> dx(double) const override { return {1.0, 0.0}; }
  std::complex<double> ddx(double) const override { return {0.0, 0.0}; }

  double theta(double s) const override {
    // x stays strictly below the real axis, so the principal argument in
    // (-pi, 0) is already continuous.
    return std::atan2(-epsilon_, s);
  }
  double theta_limit(int dir) const override { return dir > 0 ? 0.0 : -kPi; }

  std::string describe() const override {
    return "bg_line(eps=" + format_param(epsilon_) + ")";
  }

 private:
  double epsilon_;
};

class WedgeJoin final : public Contour {
 public:
  WedgeJoin(int n, double p, double epsilon, double ell)
      : n_(n), p_(p), epsilon_(epsilon), ell_(ell), amp_(n * kPi / p) {
    if (n < 1) throw std::invalid_argument("wedge_join needs n >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("wedge_join needs p >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("wedge_join needs epsilon > 0");
    if (!(ell > 0.0)) throw std::invalid_argument("wedge_join needs ell > 0");
  }

  std::complex<double> x(double s) const override {
    return std::polar(radius(s), theta(s));
  }

  std::complex<double> dx(double s) const override {
    double r = radius(s);
    double rp = s / r;
    return (std::complex<double>(rp, r * dtheta(s))) * std::polar(1.0, theta(s));
  }

  std::complex<double> ddx(double s) const override {
    double r = radius(s);
    double rp = s / r;
    double rpp = epsilon_ * epsilon_ / (r * r * r);
    double tp = dtheta(s);
    double tpp = ddtheta(s);
    std::complex<double> amp(rpp - r * tp * tp, 2.0 * rp * tp + r * tpp);
    return amp * std::polar(1.0, theta(s));
  }

  double theta(double s) const override {
    return -kPi / 2.0 + amp_ * std::tanh(s / ell_);
  }
  double theta_limit(int dir) const override {
    return -kPi / 2.0 + (dir > 0 ? amp_ : -amp_);
  }

  std::string describe() const override {
    return "wedge_join(n=" + std::to_string(n_) + ",p=" + format_param(p_) +
           ",eps=" + format_param(epsilon_) + ",ell=" + format_param(ell_) + ")";
  }

 private:
  double radius(double s) const { return std::hypot(epsilon_, s); }
  double dtheta(double s) const {
    double c = std::cosh(s / ell_);
    return amp_ / (ell_ * c * c);
  }
  double ddtheta(double s) const {
    double t = std::tanh(s / ell_);
    double c = std::cosh(s / ell_);
    return -2.0 * amp_ * t / (ell_ * ell_ * c * c);
  }

  int n_;
  double p_, epsilon_, ell_, amp_;
};

class LiouvilleImage final : public Contour {
 public:
  LiouvilleImage(ContourPtr base, double alpha) : base_(std::move(base)), alpha_(alpha) {
    if (!base_) throw std::invalid_argument("liouville_image needs a base contour");
    if (!(alpha > 0.0)) throw std::invalid_argument("liouville_image needs alpha > 0");
    if (std::abs(base_->x(0.0)) <= 0.0)
      throw std::domain_error("liouville_image: base contour passes through the origin");
  }

  std::complex<double> x(double s) const override {
    UnwrappedPoint w = base_->point(s);  // w = i*y, unwrapped
    double r = std::pow(w.radius, alpha_);
    return std::polar(r, alpha_ * w.theta - kPi / 2.0);
  }

  std::complex<double> dx(double s) const override {
    return alpha_ * iy_power(s, alpha_ - 1.0) * base_->dx(s);
  }

  std::complex<double> ddx(double s) const override {
    std::complex<double> yp = base_->dx(s);
    return alpha_ * (alpha_ - 1.0) * iy_power(s, alpha_ - 2.0) *
               std::complex<double>(0.0, 1.0) * yp * yp +
           alpha_ * iy_power(s, alpha_ - 1.0) * base_->ddx(s);
  }

  double theta(double s) const override {
    return alpha_ * base_->point(s).theta - kPi / 2.0;
  }
  double theta_limit(int dir) const override {
    return alpha_ * (base_->theta_limit(dir) + kPi / 2.0) - kPi / 2.0;
  }

  std::string describe() const override {
    return "liouville_image(" + base_->describe() + ",alpha=" + format_param(alpha_) + ")";
  }

 private:
  std::complex<double> iy_power(double s, double exponent) const {
    UnwrappedPoint w = base_->point(s);
    return std::polar(std::pow(w.radius, exponent), exponent * w.theta);
  }

  ContourPtr base_;
  double alpha_;
};

}  // namespace

UnwrappedPoint Contour::point(double s) const {
  return {std::abs(x(s)), theta(s) + kPi / 2.0};
}

ContourPtr bg_line(double epsilon) { return std::make_shared<BGLine>(epsilon); }

ContourPtr wedge_join(int n, double p, double epsilon, double ell) {
  return std::make_shared<WedgeJoin>(n, p, epsilon, ell);
}

ContourPtr liouville_image(ContourPtr base, double alpha) {
  return std::make_shared<LiouvilleImage>(std::move(base), alpha);
}

ContourReport analyze(const Contour& contour, int D) {
  double lo = contour.theta_limit(-1);
  double hi = contour.theta_limit(+1);
  auto left = classify_direction(lo, D);
  auto right = classify_direction(hi, D);
  if (!left || !right)
    throw std::domain_error("contour endpoint lies on a Stokes boundary for D=" +
                            std::to_string(D));
  double a = std::min(lo, hi), b = std::max(lo, hi);
  // upward-cut directions pi/2 + 2 pi k strictly inside the sweep
  int crossings = 0;
  long long k_first = static_cast<long long>(std::ceil((a - kPi / 2.0) / (2.0 * kPi)));
  for (long long k = k_first;; ++k) {
    double cut = kPi / 2.0 + 2.0 * kPi * static_cast<double>(k);
    if (cut >= b) break;
    if (cut > a) ++crossings;
  }
  return ContourReport{*left, *right, hi - lo, crossings, crossings >= 1};
}

}  // namespace toboggan
