#include "toboggan/spectra.hpp"

#include "toboggan/contour.hpp"
#include "toboggan/liouville.hpp"
#include "toboggan/potential.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <vector>

using namespace toboggan;

namespace {

constexpr double kPi = std::numbers::pi;

// V = x^2, written in the w = ix basis as -(ix)^2
PotentialSpec harmonic() { return make_potential({{-1.0, Rational(2)}}); }

std::vector<double> low_levels(const PotentialSpec& pot, const GridSpec& grid, int k) {
  Spectrum s = solve_spectrum(pot, *bg_line(0.1), grid, 0, 1e-6);
  std::vector<double> levels = filter_real(s, 1e-6);
  levels.resize(k);
  return levels;
}

}  // namespace

TEST_CASE("eigen_spectrum on a diagonal matrix") {
  DenseMatrix m;
  m.n = 2;
  m.a.assign(4, 0.0);
  m.at(0, 0) = {2.0, 1.0};
  m.at(1, 1) = {1.0, 0.0};
  Spectrum s = eigen_spectrum(m);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(std::abs(s.eigenvalues[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1] - std::complex<double>(2.0, 1.0)) < 1e-12);

  Spectrum lowest = eigen_spectrum(m, 1);
  REQUIRE(lowest.eigenvalues.size() == 1);
  CHECK(std::abs(lowest.eigenvalues[0] - std::complex<double>(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS((void)eigen_spectrum(DenseMatrix{}), std::invalid_argument);
}

TEST_CASE("discretize produces the tridiagonal interior matrix") {
  GridSpec grid{-8.0, 8.0, 11};
  DenseMatrix m = discretize(harmonic(), *bg_line(0.1), grid);
  REQUIRE(m.n == 9);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (std::abs(i - j) > 1) CHECK(std::abs(m.at(i, j)) == 0.0);

  // middle row: s = 0, x = -0.1i, x' = 1, so diag = 2/h^2 + x^2
  double h = 1.6;
  std::complex<double> diag = m.at(4, 4);
  CHECK(diag.real() == doctest::Approx(2.0 / (h * h) - 0.01));
  CHECK(diag.imag() == doctest::Approx(0.0));
}

TEST_CASE("harmonic levels on the shifted line are 2n + 1") {
  std::vector<double> levels = low_levels(harmonic(), {-8.0, 8.0, 401}, 4);
  for (int n = 0; n < 4; ++n)
    CHECK(std::abs(levels[n] - (2.0 * n + 1.0)) < 2e-2);
}

TEST_CASE("second-order convergence and richardson extrapolation") {
  std::vector<double> coarse = low_levels(harmonic(), {-8.0, 8.0, 201}, 3);
  std::vector<double> fine = low_levels(harmonic(), {-8.0, 8.0, 401}, 3);
  for (int n = 0; n < 3; ++n) {
    double exact = 2.0 * n + 1.0;
    double ratio = std::abs(coarse[n] - exact) / std::abs(fine[n] - exact);
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
    CHECK(std::abs(richardson(coarse[n], fine[n]) - exact) < 2e-4);
  }
  // richardson is exact on the pure h^2 error model
  CHECK(richardson(5.0 + 4.0 * 0.3, 5.0 + 0.3) == doctest::Approx(5.0));
}

TEST_CASE("screened harmonic splits the levels to 4n + 2 +- 2a") {
  // a = 3/4: gamma = a^2 - 1/4 = 5/16, levels {1/2, 7/2, 9/2, 15/2}
  PotentialSpec pot = make_potential({{-1.0, Rational(2)}}, 5.0 / 16.0);
  ContourPtr line = bg_line(0.5);
  std::vector<double> expected{0.5, 3.5, 4.5, 7.5};
  std::vector<double> coarse, fine;
  for (int pts : {201, 401}) {
    Spectrum s = solve_spectrum(pot, *line, {-8.0, 8.0, pts});
    auto levels = filter_real(s, 1e-6);
    levels.resize(4);
    (pts == 201 ? coarse : fine) = levels;
  }
  for (int n = 0; n < 4; ++n)
    CHECK(std::abs(richardson(coarse[n], fine[n]) - expected[n]) < 2e-2);
}

TEST_CASE("filter_real keeps only near-real eigenvalues") {
  Spectrum s;
  s.eigenvalues = {{3.0, 1e-9}, {1.0, 0.0}, {2.0, 0.5}};
  auto levels = filter_real(s, 1e-6);
  REQUIRE(levels.size() == 2);
  CHECK(levels[0] == 1.0);
  CHECK(levels[1] == 3.0);
  // the tolerance is relative to 1 + |Re E|
  Spectrum t;
  t.eigenvalues = {{100.0, 5e-5}};
  CHECK(filter_real(t, 1e-6).size() == 1);
  CHECK(filter_real(t, 1e-8).empty());
}

TEST_CASE("compare_spectra") {
  Spectrum a;
  a.eigenvalues = {{1.0, 0.0}, {3.0, 0.0}, {5.0, 0.0}};
  Spectrum b = a;
  CompareReport same = compare_spectra(a, b, 3, 1e-10);
  CHECK(same.pass);
  CHECK(same.max_diff == 0.0);

  b.eigenvalues[1] = {3.2, 0.0};
  CompareReport off = compare_spectra(a, b, 3, 1e-2);
  CHECK(!off.pass);
  CHECK(off.max_diff == doctest::Approx(0.2));

  CHECK_THROWS_AS((void)compare_spectra(a, b, 7, 1e-2), std::runtime_error);
}

TEST_CASE("shoot_refine sharpens harmonic levels") {
  GridSpec grid{-8.0, 8.0, 201};
  std::complex<double> e0 = shoot_refine(harmonic(), *bg_line(0.1), 0.9, grid);
  CHECK(std::abs(e0 - std::complex<double>(1.0, 0.0)) < 1e-8);
  std::complex<double> e1 = shoot_refine(harmonic(), *bg_line(0.1), 3.2, grid);
  CHECK(std::abs(e1 - std::complex<double>(3.0, 0.0)) < 1e-8);
}

TEST_CASE("grid and contour preconditions") {
  CHECK_THROWS_AS((void)discretize(harmonic(), *bg_line(0.1), {1.0, 8.0, 11}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)discretize(harmonic(), *bg_line(0.1), {-8.0, 8.0, 2}),
                  std::invalid_argument);

  // alpha = 1/2 maps the line endpoints onto Stokes boundaries of D = 2
  ContourPtr bad = liouville_image(bg_line(0.3), 0.5);
  CHECK_THROWS_AS((void)discretize(harmonic(), *bad, {-8.0, 8.0, 11}), std::domain_error);
}

namespace {

// parabola through the origin: x'(0) = 0, never a valid integration path
struct Degenerate final : Contour {
  std::complex<double> x(double s) const override { return {s * s, 0.0}; }
  std::complex<double> dx(double s) const override { return {2.0 * s, 0.0}; }
  std::complex<double> ddx(double) const override { return {2.0, 0.0}; }
  double theta(double) const override { return 0.0; }
  double theta_limit(int) const override { return 0.0; }
  std::string describe() const override { return "degenerate"; }
};

}  // namespace

TEST_CASE("vanishing x' on the grid is rejected") {
  Degenerate parabola;
  PotentialSpec frac = make_potential({{1.0, Rational(4, 3)}});
  CHECK_THROWS_AS((void)discretize(frac, parabola, {-1.0, 1.0, 5}), std::domain_error);
}

TEST_CASE("liouville cross-validation: screened level maps into the decadic spectrum") {
  // V_old = x^2 + (5/16)/x^2 has the exact ground level E_old = 1/2
  // (4n + 2 - 2a with a = 3/4).  The pure change of variables ix = (iy)^3
  // carries (V_old, E_old) to a decadic problem whose own eigenvalue is 0,
  // so the mapped operator on the line must have a level at 0.
  PotentialSpec old = make_potential({{-1.0, Rational(2)}, {-5.0 / 16.0, Rational(-2)}});
  TransformResult mapped =
      transform_potential(old, 0.5, TransformJob{Rational(3), Rational(1)});
  CHECK(!mapped.new_energy.has_value());
  PotentialSpec decadic = fold_centrifugal(mapped);
  REQUIRE(decadic.centrifugal().has_value());
  CHECK(*decadic.centrifugal() == 2.0 + 45.0 / 16.0);

  ContourPtr line = bg_line(0.25);
  std::complex<double> nearest[2];
  int slot = 0;
  for (int pts : {601, 1201}) {
    Spectrum s = solve_spectrum(decadic, *line, {-2.2, 2.2, pts});
    std::complex<double> best = s.eigenvalues.front();
    for (std::complex<double> e : s.eigenvalues)
      if (std::abs(e) < std::abs(best)) best = e;
    nearest[slot++] = best;
  }
  std::complex<double> refined = (4.0 * nearest[1] - nearest[0]) / 3.0;
  CHECK(std::abs(refined) < 5e-3);
}

TEST_CASE("solve_spectrum stamps provenance") {
  Spectrum s = solve_spectrum(harmonic(), *bg_line(0.1), {-8.0, 8.0, 51}, 5, 1e-5);
  CHECK(s.eigenvalues.size() == 5);
  CHECK(!s.contour_fingerprint.empty());
  CHECK(s.grid_fingerprint.find("n=51") != std::string::npos);
  CHECK(s.reality_tolerance == 1e-5);
}
