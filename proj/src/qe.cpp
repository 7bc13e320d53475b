#include "toboggan/qe.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toboggan {

namespace {

void check_params(const QEParams& params) {
  if (params.M < 1) throw std::invalid_argument("qe: M must be >= 1");
  if (params.N < 1) throw std::invalid_argument("qe: N must be >= 1");
}

template <typename Scalar>
struct Coeffs {
  Scalar A, B, C, D;
};

template <typename Scalar>
Coeffs<Scalar> coeffs(int n, const QEParams& p, Scalar E, Scalar g2) {
  Scalar A = Scalar(static_cast<double>((2 * n + 2) * (2 * n + 2 - 2 * p.M)));
  Scalar B = E - p.beta * static_cast<double>(4 * n + 2 - 2 * p.M);
  Scalar C = Scalar(p.beta * p.beta) - g2 - p.alpha * static_cast<double>(4 * n - 2 * p.M);
  Scalar D = Scalar(4.0 * (p.N + 1 - n));
  return {A, B, C, D};
}

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Scalar secular_det_impl(const QEParams& p, Scalar E, Scalar g2) {
  int M = p.M;
  Matrix<Scalar> mat = Matrix<Scalar>::Zero(M, M);
  for (int n = 0; n < M; ++n) {
    auto c = coeffs<Scalar>(n, p, E, g2);
    mat(n, n) = c.B;
    if (n + 1 < M) mat(n, n + 1) = c.A;
    if (n - 1 >= 0) mat(n, n - 1) = c.C;
    if (n - 2 >= 0) mat(n, n - 2) = c.D;
  }
  return mat.determinant();
}

/// Full overcomplete system: rows n = 0..N on unknowns h_0..h_{N-1},
/// with h_j = 0 outside that range.
template <typename Scalar>
Matrix<Scalar> full_system(const QEParams& p, Scalar E, Scalar g2) {
  int N = p.N;
  Matrix<Scalar> mat = Matrix<Scalar>::Zero(N + 1, N);
  for (int n = 0; n <= N; ++n) {
    auto c = coeffs<Scalar>(n, p, E, g2);
    if (n + 1 <= N - 1) mat(n, n + 1) = c.A;
    if (n <= N - 1) mat(n, n) = c.B;
    if (n - 1 >= 0 && n - 1 <= N - 1) mat(n, n - 1) = c.C;
    if (n - 2 >= 0 && n - 2 <= N - 1) mat(n, n - 2) = c.D;
  }
  return mat;
}

template <typename Scalar>
Scalar reduced_det_impl(const QEParams& p, Scalar E, Scalar g2) {
  Matrix<Scalar> full = full_system<Scalar>(p, E, g2);
  return Matrix<Scalar>(full.bottomRows(p.N)).determinant();
}

template <typename Scalar>
bool newton2(const QEParams& p, Scalar& E, Scalar& g2) {
  for (int iter = 0; iter < 80; ++iter) {
    Scalar f1 = secular_det_impl<Scalar>(p, E, g2);
    Scalar f2 = reduced_det_impl<Scalar>(p, E, g2);
    double dE = 1e-7 * (1.0 + std::abs(E));
    double dg = 1e-7 * (1.0 + std::abs(g2));
    Eigen::Matrix<Scalar, 2, 2> jac;
    jac(0, 0) = (secular_det_impl<Scalar>(p, E + dE, g2) - f1) / dE;
    jac(0, 1) = (secular_det_impl<Scalar>(p, E, g2 + dg) - f1) / dg;
    jac(1, 0) = (reduced_det_impl<Scalar>(p, E + dE, g2) - f2) / dE;
    jac(1, 1) = (reduced_det_impl<Scalar>(p, E, g2 + dg) - f2) / dg;
    Eigen::Matrix<Scalar, 2, 1> rhs;
    rhs << f1, f2;
    Eigen::Matrix<Scalar, 2, 1> step = jac.fullPivLu().solve(rhs);
    if (!step.allFinite()) return false;
    E -= step(0);
    g2 -= step(1);
    if (std::abs(step(0)) < 1e-13 * (1.0 + std::abs(E)) &&
        std::abs(step(1)) < 1e-13 * (1.0 + std::abs(g2)))
      return true;
    if (std::abs(E) > 1e6 || std::abs(g2) > 1e6) return false;
  }
  // at degenerate roots the step only shrinks linearly and never meets the
  // tolerance; keep the bounded endpoint as a candidate for polishing
  return true;
}

/// Smallest singular value of the full system relative to the size of the
/// recurrence coefficients (never relative to the matrix norm, which itself
/// vanishes at exact solutions when N = 1); h is filled with the right
/// singular vector of the smallest one.
template <typename Scalar>
double full_system_residual(const QEParams& p, Scalar E, Scalar g2,
                            Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* h = nullptr) {
  Matrix<Scalar> mat = full_system<Scalar>(p, E, g2);
  double scale = 1.0;
  for (int n = 0; n <= p.N; ++n) {
    auto c = coeffs<Scalar>(n, p, E, g2);
    scale = std::max({scale, std::abs(c.A), std::abs(c.B), std::abs(c.C), std::abs(c.D)});
  }
  Eigen::JacobiSVD<Matrix<Scalar>> svd(mat, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (h) *h = svd.matrixV().col(sv.size() - 1);
  return smin / scale;
}

/// Newton on the two determinants stalls near sqrt(eps) at degenerate roots
/// (e.g. beta = 0, where +-2*beta collide).  E and g2 enter each recurrence
/// row linearly, so alternating the singular vector h with a linear
/// least-squares solve for (E, g2) restores full accuracy.
template <typename Scalar>
void polish(const QEParams& p, Scalar& E, Scalar& g2) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  for (int iter = 0; iter < 60; ++iter) {
    Vec h;
    full_system_residual<Scalar>(p, E, g2, &h);
    auto at = [&](int j) { return j >= 0 && j < p.N ? h(j) : Scalar(0.0); };
    Matrix<Scalar> lhs(p.N + 1, 2);
    Vec rhs(p.N + 1);
    for (int n = 0; n <= p.N; ++n) {
      auto c = coeffs<Scalar>(n, p, Scalar(0.0), Scalar(0.0));
      lhs(n, 0) = at(n);
      lhs(n, 1) = -at(n - 1);
      rhs(n) = -(c.A * at(n + 1) + c.B * at(n) + c.C * at(n - 1) + c.D * at(n - 2));
    }
    Eigen::JacobiSVD<Matrix<Scalar>> ls(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::Matrix<Scalar, 2, 1> sol = ls.solve(rhs);
    Scalar dE = sol(0) - E, dg = sol(1) - g2;
    E = sol(0);
    g2 = sol(1);
    if (std::abs(dE) < 1e-14 * (1.0 + std::abs(E)) &&
        std::abs(dg) < 1e-14 * (1.0 + std::abs(g2)))
      break;
  }
}

/// Polished points can sit in a flat valley of the full-system residual
/// without being zeros of both determinants; the per-determinant distance
/// estimate |f| / |grad f| separates them (genuine roots land below 1e-9,
/// valley points around 1e-6).
template <typename Scalar>
bool near_det_zeros(const QEParams& p, Scalar E, Scalar g2) {
  double d = 1e-6 * (1.0 + std::abs(E) + std::abs(g2));
  double tol = 1e-8 * (1.0 + std::abs(E) + std::abs(g2));
  auto close = [&](auto&& f) {
    Scalar f0 = f(E, g2);
    double gE = std::abs(f(E + d, g2) - f0) / d;
    double gg = std::abs(f(E, g2 + d) - f0) / d;
    double g = std::max(std::hypot(gE, gg), 1e-8);
    return std::abs(f0) / g < tol;
  };
  return close([&](Scalar a, Scalar b) { return secular_det_impl<Scalar>(p, a, b); }) &&
         close([&](Scalar a, Scalar b) { return reduced_det_impl<Scalar>(p, a, b); });
}

}  // namespace

RecurrenceCoeffs recurrence_coeffs(int n, const QEParams& params, double E, double g2) {
  check_params(params);
  if (n < 0 || n > params.N) throw std::invalid_argument("recurrence index out of range");
  auto c = coeffs<double>(n, params, E, g2);
  return {c.A, c.B, c.C, c.D};
}

double fix_g4(const QEParams& params) {
  check_params(params);
  return 2.0 * params.alpha * params.beta + 2.0 * params.M - 4.0 * params.N - 2.0;
}

double secular_det_small(const QEParams& params, double E, double g2) {
  check_params(params);
  return secular_det_impl<double>(params, E, g2);
}

double reduced_det(const QEParams& params, double E, double g2) {
  check_params(params);
  return reduced_det_impl<double>(params, E, g2);
}

std::vector<QESolution> qe_solve(const QEParams& params, const SearchBox& box) {
  check_params(params);
  std::vector<QESolution> out;
  // near tangential roots every seed stops at a slightly different point, so
  // merge within 1e-4 and keep the best-validated representative
  auto merge = [&](const QESolution& cand) {
    for (QESolution& s : out)
      if (std::abs(s.E - cand.E) < 1e-4 * (1.0 + std::abs(cand.E)) &&
          std::abs(s.g2 - cand.g2) < 1e-4 * (1.0 + std::abs(cand.g2))) {
        if (cand.residual < s.residual) s = cand;
        return;
      }
    out.push_back(cand);
  };
  int n_seed = std::max(box.grid, 4);
  for (int i = 0; i < n_seed; ++i) {
    for (int j = 0; j < n_seed; ++j) {
      double E = box.e_min + (box.e_max - box.e_min) * (i + 0.5) / n_seed;
      double g2 = box.g2_min + (box.g2_max - box.g2_min) * (j + 0.5) / n_seed;
      if (!newton2<double>(params, E, g2)) continue;
      polish<double>(params, E, g2);
      if (E < box.e_min - 1.0 || E > box.e_max + 1.0) continue;
      if (g2 < box.g2_min - 1.0 || g2 > box.g2_max + 1.0) continue;
      if (!near_det_zeros<double>(params, E, g2)) continue;
      Eigen::VectorXd h;
      double residual = full_system_residual<double>(params, E, g2, &h);
      if (residual > 1e-8) continue;  // spurious pair: not a full-system solution
      int imax = 0;
      for (int k = 1; k < h.size(); ++k)
        if (std::abs(h(k)) > std::abs(h(imax))) imax = k;
      if (h(imax) == 0.0) continue;
      h /= h(imax);
      // A_{M-1} = 0 decouples an h_0 = 0 solution family (row 0 then forces
      // h_0..h_{M-1} = 0); only the h_0 != 0 branch belongs to the secular
      // construction
      if (std::abs(h(0)) < 1e-6) continue;
      merge(QESolution{E, g2, {h.data(), h.data() + h.size()}, residual});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const QESolution& a, const QESolution& b) { return a.E < b.E; });
  return out;
}

std::vector<ComplexQESolution> qe_solve_complex(const QEParams& params, const SearchBox& box) {
  check_params(params);
  using C = std::complex<double>;
  std::vector<ComplexQESolution> out;
  auto seen = [&](C E, C g2) {
    for (const ComplexQESolution& s : out)
      if (std::abs(s.E - E) < 1e-4 * (1.0 + std::abs(E)) &&
          std::abs(s.g2 - g2) < 1e-4 * (1.0 + std::abs(g2)))
        return true;
    return false;
  };
  int n_seed = std::max(box.grid / 2, 4);
  const double imag_seeds[] = {0.0, 1.0, -3.0};
  for (double ei : imag_seeds) {
    for (int i = 0; i < n_seed; ++i) {
      for (int j = 0; j < n_seed; ++j) {
        C E(box.e_min + (box.e_max - box.e_min) * (i + 0.5) / n_seed, ei);
        C g2(box.g2_min + (box.g2_max - box.g2_min) * (j + 0.5) / n_seed, 0.0);
        if (!newton2<C>(params, E, g2)) continue;
        polish<C>(params, E, g2);
        if (std::abs(E) > std::max(std::abs(box.e_min), std::abs(box.e_max)) + 8.0) continue;
        if (seen(E, g2)) continue;
        if (!near_det_zeros<C>(params, E, g2)) continue;
        Eigen::VectorXcd h;
        double residual = full_system_residual<C>(params, E, g2, &h);
        if (residual > 1e-8) continue;
        if (std::abs(h(0)) < 1e-6 * h.cwiseAbs().maxCoeff()) continue;
        out.push_back(ComplexQESolution{E, g2, residual});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ComplexQESolution& a, const ComplexQESolution& b) {
    return a.E.real() != b.E.real() ? a.E.real() < b.E.real() : a.E.imag() < b.E.imag();
  });
  return out;
}

std::complex<double> qe_wavefunction(const QESolution& solution, const QEParams& params,
                                     const UnwrappedPoint& point) {
  if (point.radius <= 0.0)
    throw std::domain_error("qe_wavefunction is singular at the origin");
  std::complex<double> x = point.x();
  double phi_x = point.theta - std::acos(-1.0) / 2.0;  // unwrapped arg x
  double logr = std::log(point.radius);
  std::complex<double> x2 = x * x;
  std::complex<double> gexp =
      std::exp(-x2 * x2 * x2 / 6.0 - params.alpha * x2 * x2 / 4.0 - params.beta * x2 / 2.0);
  std::complex<double> poly = 0.0;
  for (std::size_t n = 0; n < solution.h.size(); ++n) {
    double t = 2.0 * static_cast<double>(n) - params.L();
    poly += solution.h[n] * std::exp(std::complex<double>(t * logr, t * phi_x));
  }
  return gexp * poly;
}

PotentialSpec qe_potential(const QESolution& solution, const QEParams& params) {
  std::vector<std::pair<double, Rational>> terms = {
      {1.0, Rational(10)},
      {params.g8(), Rational(8)},
      {params.g6(), Rational(6)},
      {fix_g4(params), Rational(4)},
      {solution.g2, Rational(2)},
  };
  std::erase_if(terms, [](const auto& t) { return t.first == 0.0; });
  double L = params.L();
  return make_potential(terms, L * (L + 1.0), Basis::X);
}

double ode_residual(const QESolution& solution, const QEParams& params,
                    std::span<const UnwrappedPoint> samples) {
  PotentialSpec pot = basis_convert(qe_potential(solution, params), Basis::IX);
  double worst = 0.0;
  for (const UnwrappedPoint& point : samples) {
    std::complex<double> x = point.x();
    double phi_x = point.theta - std::acos(-1.0) / 2.0;
    double logr = std::log(point.radius);
    auto xpow = [&](double t) {
      return std::exp(std::complex<double>(t * logr, t * phi_x));
    };
    std::complex<double> x2 = x * x;
    std::complex<double> g = -x2 * x2 * x2 / 6.0 - params.alpha * x2 * x2 / 4.0 -
                             params.beta * x2 / 2.0;
    std::complex<double> gp = -x2 * x2 * x - params.alpha * x2 * x - params.beta * x;
    std::complex<double> gpp = -5.0 * x2 * x2 - 3.0 * params.alpha * x2 - params.beta;
    std::complex<double> P = 0.0, Pp = 0.0, Ppp = 0.0;
    for (std::size_t n = 0; n < solution.h.size(); ++n) {
      double t = 2.0 * static_cast<double>(n) - params.L();
      P += solution.h[n] * xpow(t);
      Pp += solution.h[n] * t * xpow(t - 1.0);
      Ppp += solution.h[n] * t * (t - 1.0) * xpow(t - 2.0);
    }
    std::complex<double> psi = std::exp(g) * P;
    std::complex<double> psi_pp = std::exp(g) * ((gpp + gp * gp) * P + 2.0 * gp * Pp + Ppp);
    std::complex<double> V = eval_potential(pot, point);
    std::complex<double> res = -psi_pp + (V - solution.E) * psi;
    double scale = std::abs(psi_pp) + std::abs(V * psi) + std::abs(solution.E * psi) + 1e-300;
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

}  // namespace toboggan
