#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <complex>
#include <lapacke.h>

#include "toboggan/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace toboggan {

namespace {

std::string grid_fingerprint(const GridSpec& grid) {
  std::ostringstream out;
  out.precision(15);
  out << "grid[s=" << grid.s_min << ".." << grid.s_max << ",n=" << grid.points << "]";
  return out.str();
}

void check_grid(const GridSpec& grid) {
  if (grid.points < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(grid.s_min < 0.0 && 0.0 < grid.s_max))
    throw std::invalid_argument("grid window must straddle s = 0");
}

PotentialSpec to_ix(const PotentialSpec& potential) {
  return potential.basis() == Basis::IX ? potential
                                        : basis_convert(potential, Basis::IX);
}

void check_endpoints(const PotentialSpec& potential, const Contour& contour) {
  if (potential.terms().empty()) return;
  Rational lead = potential.leading_exponent();
  if (!is_even_integer(lead) || lead <= Rational(0)) return;
  int D = static_cast<int>(lead.numerator());
  if (!classify_direction(contour.theta_limit(-1), D) ||
      !classify_direction(contour.theta_limit(+1), D))
    throw std::domain_error("contour endpoint sits on a Stokes boundary for D=" +
                            std::to_string(D));
}

}  // namespace

DenseMatrix discretize(const PotentialSpec& potential, const Contour& contour,
                       const GridSpec& grid) {
  check_grid(grid);
  PotentialSpec pot = to_ix(potential);
  check_endpoints(pot, contour);

  int n = grid.points - 2;
  double h = (grid.s_max - grid.s_min) / (grid.points - 1);
  DenseMatrix mat;
  mat.n = n;
  mat.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = grid.s_min + h * (i + 1);
    std::complex<double> xp = contour.dx(s);
    if (std::abs(xp) == 0.0)
      throw std::domain_error("x'(s) vanishes on the grid; contour is not regular here");
    std::complex<double> xpp = contour.ddx(s);
    std::complex<double> inv_xp2 = 1.0 / (xp * xp);
    std::complex<double> drift = xpp * inv_xp2 / xp;  // x''/x'^3
    std::complex<double> V = eval_potential(pot, contour.point(s));
    mat.at(i, i) = 2.0 * inv_xp2 / (h * h) + V;
    if (i + 1 < n) mat.at(i, i + 1) = -inv_xp2 / (h * h) + drift / (2.0 * h);
    if (i - 1 >= 0) mat.at(i, i - 1) = -inv_xp2 / (h * h) - drift / (2.0 * h);
  }
  return mat;
}

Spectrum eigen_spectrum(const DenseMatrix& matrix, int k) {
  int n = matrix.n;
  if (n <= 0 || matrix.a.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("eigen_spectrum needs a square matrix");
  std::vector<std::complex<double>> a = matrix.a;  // zgeev overwrites
  std::vector<std::complex<double>> w(n);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, w.data(),
                                  nullptr, 1, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("zgeev failed to converge (info=" + std::to_string(info) + ")");
  std::sort(w.begin(), w.end(), [](std::complex<double> a, std::complex<double> b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (k > 0 && k < n) w.resize(k);
  Spectrum spectrum;
  spectrum.eigenvalues = std::move(w);
  return spectrum;
}

std::vector<double> filter_real(const Spectrum& spectrum, double tol) {
  std::vector<double> out;
  for (std::complex<double> e : spectrum.eigenvalues)
    if (std::abs(e.imag()) < tol * (1.0 + std::abs(e.real()))) out.push_back(e.real());
  std::sort(out.begin(), out.end());
  return out;
}

Spectrum solve_spectrum(const PotentialSpec& potential, const Contour& contour,
                        const GridSpec& grid, int k, double reality_tol) {
  Spectrum spectrum = eigen_spectrum(discretize(potential, contour, grid), k);
  spectrum.contour_fingerprint = contour.describe();
  spectrum.grid_fingerprint = grid_fingerprint(grid);
  spectrum.reality_tolerance = reality_tol;
  return spectrum;
}

CompareReport compare_spectra(const Spectrum& a, const Spectrum& b, int k, double tol) {
  std::vector<double> la = filter_real(a, a.reality_tolerance);
  std::vector<double> lb = filter_real(b, b.reality_tolerance);
  if (static_cast<int>(la.size()) < k || static_cast<int>(lb.size()) < k)
    throw std::runtime_error("compare_spectra: fewer than k filtered-real levels");
  CompareReport report;
  for (int i = 0; i < k; ++i) {
    report.diffs.push_back(std::abs(la[i] - lb[i]));
    report.max_diff = std::max(report.max_diff, report.diffs.back());
  }
  report.pass = report.max_diff < tol;
  return report;
}

namespace {

struct ShootState {
  std::complex<double> phi;
  std::complex<double> dphi;
};

/// phi'' = (x''/x') phi' + x'^2 (V - E) phi, integrated with RK4 and
/// renormalized to keep the log-derivative representable.
ShootState integrate(const PotentialSpec& pot, const Contour& contour,
                     std::complex<double> E, double s_from, double s_to, int steps) {
  double h = (s_to - s_from) / steps;
  double s_end_v = s_from;
  std::complex<double> V0 = eval_potential(pot, contour.point(s_end_v));
  std::complex<double> q = std::sqrt(V0 - E) * contour.dx(s_end_v);
  if (q.real() < 0.0) q = -q;
  // decay inward: toward +inf the decaying solution has phi'/phi = -q
  ShootState y{1.0, (s_from > s_to ? -q : q)};
  auto deriv = [&](double s, const ShootState& st) {
    std::complex<double> xp = contour.dx(s);
    std::complex<double> V = eval_potential(pot, contour.point(s));
    return ShootState{st.dphi, contour.ddx(s) / xp * st.dphi + xp * xp * (V - E) * st.phi};
  };
  for (int i = 0; i < steps; ++i) {
    double s = s_from + h * i;
    ShootState k1 = deriv(s, y);
    ShootState k2 = deriv(s + h / 2, {y.phi + h / 2.0 * k1.phi, y.dphi + h / 2.0 * k1.dphi});
    ShootState k3 = deriv(s + h / 2, {y.phi + h / 2.0 * k2.phi, y.dphi + h / 2.0 * k2.dphi});
    ShootState k4 = deriv(s + h, {y.phi + h * k3.phi, y.dphi + h * k3.dphi});
    y.phi += h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    y.dphi += h / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    double scale = std::max(std::abs(y.phi), std::abs(y.dphi));
    if (scale > 1e100 || (scale < 1e-100 && scale > 0.0)) {
      y.phi /= scale;
      y.dphi /= scale;
    }
  }
  return y;
}

}  // namespace

std::complex<double> shoot_refine(const PotentialSpec& potential, const Contour& contour,
                                  std::complex<double> E_guess, const GridSpec& grid) {
  check_grid(grid);
  PotentialSpec pot = to_ix(potential);
  int steps = std::max(4 * grid.points, 4000);
  // Wronskian at the matching point; the log-derivative difference has poles
  // at eigenstates with a node at s = 0, the Wronskian does not.  The real
  // positive normalization keeps the scale bounded without moving the zeros.
  auto mismatch = [&](std::complex<double> E) {
    ShootState left = integrate(pot, contour, E, grid.s_min, 0.0, steps);
    ShootState right = integrate(pot, contour, E, grid.s_max, 0.0, steps);
    double nl = std::max(std::abs(left.phi), std::abs(left.dphi));
    double nr = std::max(std::abs(right.phi), std::abs(right.dphi));
    if (nl == 0.0 || nr == 0.0) throw std::runtime_error("shooting solution vanished");
    return (left.dphi * right.phi - right.dphi * left.phi) / (nl * nr);
  };
  std::complex<double> E = E_guess;
  for (int iter = 0; iter < 60; ++iter) {
    std::complex<double> f = mismatch(E);
    if (std::abs(f) < 1e-10) return E;
    double dE = 1e-7 * (1.0 + std::abs(E));
    std::complex<double> fp = (mismatch(E + dE) - f) / dE;
    std::complex<double> step = f / fp;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
      throw std::runtime_error("shoot_refine: Newton step not finite at E = " +
                               std::to_string(E.real()));
    // keep steps inside the basin
    double cap = 0.5 * (1.0 + std::abs(E));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    E -= step;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(E)) && std::abs(mismatch(E)) < 1e-8)
      return E;
  }
  std::complex<double> f = mismatch(E);
  if (std::abs(f) < 1e-8) return E;
  throw std::runtime_error("shoot_refine: Newton did not converge; last E = (" +
                           std::to_string(E.real()) + "," + std::to_string(E.imag()) + ")");
}

}  // namespace toboggan
