#pragma once

// Hermite and Poisson-Hermite semigroups (diagonal multipliers on Hermite
// coefficient tables), the special-Hermite heat kernel with its calibrated
// constant, membership tests for the analytic/entire vector spaces, the
// weighted Bergman-type norm identities, pointwise decay checks, and the
// one-dimensional Gutzmer identity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/wigner.hpp"

namespace hkit {

// e^{-tH}: c_alpha -> e^{-(2|alpha|+n)t} c_alpha.
inline HermiteCoefficients hermite_semigroup(const HermiteCoefficients& c, double t) {
  if (t < 0) throw std::invalid_argument("hermite_semigroup: backward heat flow refused (t < 0)");
  HermiteCoefficients out = c;
  for (std::size_t i = 0; i < out.indices.size(); ++i)
    out.c(static_cast<Eigen::Index>(i)) *= std::exp(-(2.0 * total_degree(out.indices[i]) + out.dim) * t);
  return out;
}

// e^{-t sqrt(H)}: c_alpha -> e^{-t (2|alpha|+n)^{1/2}} c_alpha.
inline HermiteCoefficients poisson_hermite_semigroup(const HermiteCoefficients& c, double t) {
  if (t < 0) throw std::invalid_argument("poisson_hermite_semigroup: t must be >= 0");
  HermiteCoefficients out = c;
  for (std::size_t i = 0; i < out.indices.size(); ++i)
    out.c(static_cast<Eigen::Index>(i)) *= std::exp(-t * std::sqrt(2.0 * total_degree(out.indices[i]) + out.dim));
  return out;
}

// Unnormalized heat-kernel profile (sinh t)^{-n} e^{-(coth t) s^2 / 4}.
inline double heat_profile(double t, double s2, int n) {
  return std::pow(std::sinh(t), -n) * std::exp(-0.25 * (std::cosh(t) / std::sinh(t)) * s2);
}

// Pin the constant c_n of p_t = c_n (sinh t)^{-n} e^{-(coth t)|z|^2/4} by
// requiring (W(p_t) Phi_0, Phi_0) = e^{-nt}. With the spectral form of the
// Weyl matrix this is a single phase-space inner product.
inline double calibrate_heat_constant(double t_ref, int n = 1, int nodes = 64) {
  if (t_ref < 0.25 || t_ref > 1.0) throw std::invalid_argument("calibrate_heat_constant: t_ref outside [0.25, 1]");
  if (n != 1) throw std::invalid_argument("calibrate_heat_constant: implemented for n = 1");
  Grid fg = gauss_hermite_grid(n, nodes);
  Grid pg = phase_grid_for(fg);
  PhaseSpaceFunction Q = sample_phase(pg, n, [&](const std::vector<double>& p) {
    return heat_profile(t_ref, p[0] * p[0] + p[1] * p[1], n);
  });
  const PhaseSpaceFunction Phi00 = special_hermite({0}, {0}, fg);
  const double a00 = (weyl_rank_one_constant(n) * inner_product(Q, Phi00)).real();
  const double c = std::exp(-n * t_ref) / a00;
  if (!(c > 0)) throw std::runtime_error("calibrate_heat_constant: calibration failure");
  return c;
}

// p_t sampled on the tensor square of fn_grid. The constant is calibrated
// once per call unless supplied.
inline PhaseSpaceFunction special_hermite_heat_kernel(double t, const Grid& fn_grid, double c_n = -1.0) {
  if (!(t > 0)) throw std::invalid_argument("special_hermite_heat_kernel: t must be > 0");
  const int n = fn_grid.dim();
  if (c_n <= 0) c_n = calibrate_heat_constant(0.5, n);
  Grid pg = phase_grid_for(fn_grid);
  return sample_phase(pg, n, [&](const std::vector<double>& p) {
    double s2 = 0;
    for (double v : p) s2 += v * v;
    return c_n * heat_profile(t, s2, n);
  });
}

// ---------------------------------------------------------------------------
// Membership tests.

enum class Verdict { Converged, Growing, Inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Growing: return "growing";
    default: return "inconclusive";
  }
}

struct MembershipReport {
  std::string space;  // "M_t^w", "V_t^w", or "E_t"
  double t = 0;
  double weighted_sum = 0;
  Verdict verdict = Verdict::Inconclusive;
  double tail_slope = 0;  // fitted slope of log(term_k) vs k over the last third
};

// Decidable convergence proxy: least-squares slope of log(term_k) against k
// over the last third of the (nonzero) terms; slope < -eps -> converged,
// slope > +eps -> growing, otherwise inconclusive.
// Terms sitting many orders below their neighbors are treated as structural
// zeros (parity-suppressed levels whose computed value is pure round-off);
// the comparison is local so that it works for decaying and growing tails alike.
inline std::pair<Verdict, double> tail_ratio_verdict(const std::vector<double>& terms, double eps = 0.01) {
  std::vector<std::pair<double, double>> pts;  // (k, log term)
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double local = 0;
    for (std::size_t j = (k >= 2 ? k - 2 : 0); j < std::min(terms.size(), k + 3); ++j)
      local = std::max(local, terms[j]);
    if (terms[k] > 1e-8 * local) pts.emplace_back(static_cast<double>(k), std::log(terms[k]));
  }
  if (pts.size() < 3) return {Verdict::Converged, -1.0};  // finitely many terms
  const std::size_t lo = pts.size() - pts.size() / 3;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(pts.size() - lo);
  if (m < 2) return {Verdict::Inconclusive, 0.0};
  for (std::size_t i = lo; i < pts.size(); ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
    sxx += pts[i].first * pts[i].first;
    sxy += pts[i].first * pts[i].second;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0) return {Verdict::Inconclusive, 0.0};
  const double slope = (m * sxy - sx * sy) / denom;
  Verdict v = Verdict::Inconclusive;
  if (slope < -eps) v = Verdict::Converged;
  if (slope > eps) v = Verdict::Growing;
  return {v, slope};
}

// V_t^w membership at the worst case y^2 + v^2 = t^2:
//   sum_k ||P_k phi||^2 k!(n-1)!/(k+n-1)! L_k^{n-1}(-2t^2) e^{t^2} < infinity.
inline MembershipReport analytic_membership(const HermiteCoefficients& c, double t) {
  const int n = c.dim;
  std::vector<double> terms(static_cast<std::size_t>(c.degree) + 1, 0.0);
  for (int k = 0; k <= c.degree; ++k) {
    double ratio = 1.0;  // k!(n-1)!/(k+n-1)!
    for (int j = k + 1; j <= k + n - 1; ++j) ratio /= j;
    double fact = 1.0;  // (n-1)!
    for (int j = 2; j <= n - 1; ++j) fact *= j;
    terms[static_cast<std::size_t>(k)] =
        level_energy(c, k) * ratio * fact * laguerre_phi_imag(k, n - 1, t * t);
  }
  MembershipReport r;
  r.space = "V_t^w";
  r.t = t;
  for (double v : terms) r.weighted_sum += v;
  auto [verdict, slope] = tail_ratio_verdict(terms);
  r.verdict = verdict;
  r.tail_slope = slope;
  return r;
}

// E_t membership: sum_alpha e^{2(2|alpha|+n)t} |c_alpha|^2 < infinity.
inline MembershipReport entire_membership(const HermiteCoefficients& c, double t) {
  std::vector<double> terms(static_cast<std::size_t>(c.degree) + 1, 0.0);
  for (int k = 0; k <= c.degree; ++k)
    terms[static_cast<std::size_t>(k)] = level_energy(c, k) * std::exp(2.0 * (2.0 * k + c.dim) * t);
  MembershipReport r;
  r.space = "E_t";
  r.t = t;
  for (double v : terms) r.weighted_sum += v;
  auto [verdict, slope] = tail_ratio_verdict(terms);
  r.verdict = verdict;
  r.tail_slope = slope;
  return r;
}

// Poisson-scale membership (M_t^w characterization through e^{-t sqrt(H)}):
// weights e^{2t(2|alpha|+n)^{1/2}}.
inline MembershipReport poisson_membership(const HermiteCoefficients& c, double t) {
  std::vector<double> terms(static_cast<std::size_t>(c.degree) + 1, 0.0);
  for (int k = 0; k <= c.degree; ++k)
    terms[static_cast<std::size_t>(k)] = level_energy(c, k) * std::exp(2.0 * t * std::sqrt(2.0 * k + c.dim));
  MembershipReport r;
  r.space = "M_t^w";
  r.t = t;
  for (double v : terms) r.weighted_sum += v;
  auto [verdict, slope] = tail_ratio_verdict(terms);
  r.verdict = verdict;
  r.tail_slope = slope;
  return r;
}

// ---------------------------------------------------------------------------
// Weighted-norm identities.

struct IsometryReport {
  double lhs = 0;
  double rhs = 0;
  double rel_error = 0;
  bool inconclusive = false;  // truncation-dominated quadrature
};

// U_t isometry for n = 1:
//   (2 pi)^{-1/2} int |e^{-tH}phi(x+iy)|^2 U_t(x,y) dx dy = ||phi||^2,
//   U_t(x,y) = 2 (sinh 4t)^{-1/2} e^{tanh(2t)x^2 - coth(2t)y^2}.
// The (2 pi)^{-n/2} prefactor is required for the identity to close under
// this convention set; it is pinned by the phi = Phi_0 Gaussian integral and
// re-verified for mixed combinations in the tests.
// Evaluated with the Gaussian of the extension stripped off:
//   |phi_t(x+iy)|^2 = |P(x+iy)|^2 e^{-(x^2-y^2)},  P = sum c_k p_k,
// so the x-integrand decays like e^{-(1-tanh 2t)x^2} and the y-integrand
// like e^{-(coth 2t - 1)y^2}; both are handled by scaled Gauss-Hermite axes.
inline IsometryReport hermite_bergman_isometry_check(const HermiteCoefficients& c, double t, int nodes = 96) {
  if (c.dim != 1) throw std::invalid_argument("hermite_bergman_isometry_check: implemented for n = 1");
  if (!(t > 0)) throw std::invalid_argument("hermite_bergman_isometry_check: t must be > 0");
  const HermiteCoefficients d = hermite_semigroup(c, t);

  const double th = std::tanh(2 * t);
  const double ct = 1.0 / th;
  const double sx = 1.0 - th;   // x-decay rate
  const double sy = ct - 1.0;   // y-decay rate
  Axis ax = gauss_hermite_axis(nodes, 1.0 / std::sqrt(sx));
  Axis ay = gauss_hermite_axis(nodes, 1.0 / std::sqrt(sy));

  double lhs = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double x = ax.nodes[i];
    for (std::size_t j = 0; j < ay.size(); ++j) {
      const double y = ay.nodes[j];
      const auto pp = hermite_polypart_sequence<cd>(d.degree, cd(x, y));
      cd P = 0;
      for (std::size_t k = 0; k < d.indices.size(); ++k)
        P += d.c(static_cast<Eigen::Index>(k)) * pp[static_cast<std::size_t>(d.indices[k][0])];
      lhs += ax.weights[i] * ay.weights[j] * std::norm(P) * std::exp(-sx * x * x - sy * y * y);
    }
  }
  IsometryReport r;
  r.lhs = std::pow(2 * M_PI, -0.5) * 2.0 * std::pow(std::sinh(4 * t), -0.5) * lhs;
  r.rhs = c.sum_abs2();
  r.rel_error = std::abs(r.lhs - r.rhs) / std::max(1e-300, r.rhs);
  // quadrature of this type resolves polynomial parts up to roughly 0.4*nodes
  r.inconclusive = c.degree > 0.4 * nodes;
  return r;
}

struct RatioReport {
  std::vector<double> ratios;
  double mean = 0;
  double std_over_mean = 0;
};

// Thm-3.1-type norm identity, n = 1. The weight over the strip |y| < t is
//   w_t(x,y) = (t^2 - y^2)^{-1/2} cosh(2 x (t^2 - y^2)^{1/2}),
// integrated against |phi(x+iy)|^2. The overall constant is unspecified, so
// the check is ratio constancy of LHS/RHS across a list of inputs:
//   RHS = sum_k ||P_k phi||^2 L_k(-2t^2) e^{t^2}.
inline double bergman_strip_norm(const HermiteCoefficients& c, double t, int nx = 96, int ny = 48) {
  if (c.dim != 1) throw std::invalid_argument("bergman_strip_norm: implemented for n = 1");
  if (!(t > 0)) throw std::invalid_argument("bergman_strip_norm: t must be > 0");
  Axis ax = gauss_hermite_axis(nx, 1.3);
  double acc = 0;
  // Gauss-Chebyshev in y absorbs the (t^2 - y^2)^{-1/2} endpoint singularity:
  // int_{-t}^{t} g(y) (t^2-y^2)^{-1/2} dy = (pi/ny) sum g(t cos theta_j).
  for (int j = 0; j < ny; ++j) {
    const double y = t * std::cos((2.0 * j + 1.0) * M_PI / (2.0 * ny));
    const double s = std::sqrt(std::max(0.0, t * t - y * y));
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double x = ax.nodes[i];
      const cd val = hermite_synthesis(c, {cd(x, y)});
      acc += (M_PI / ny) * ax.weights[i] * std::norm(val) * std::cosh(2.0 * x * s);
    }
  }
  return acc;
}

inline RatioReport bergman_norm_ratio_check(const std::vector<HermiteCoefficients>& phis, double t) {
  RatioReport r;
  for (const auto& c : phis) {
    const double lhs = bergman_strip_norm(c, t);
    double rhs = 0;
    for (int k = 0; k <= c.degree; ++k) rhs += level_energy(c, k) * laguerre_phi_imag(k, 0, t * t);
    r.ratios.push_back(lhs / rhs);
  }
  for (double v : r.ratios) r.mean += v;
  r.mean /= static_cast<double>(r.ratios.size());
  double var = 0;
  for (double v : r.ratios) var += (v - r.mean) * (v - r.mean);
  r.std_over_mean = std::sqrt(var / static_cast<double>(r.ratios.size())) / std::abs(r.mean);
  return r;
}

struct PointwiseBoundReport {
  double sup_early = 0;  // weighted sup over the inner half of the x-range
  double sup_late = 0;   // ... over the outer half
  bool plateau = false;
};

// Thm-3.3-type pointwise bound on Omega_s: sup over a sampled box of
// |phi(x+iy)| e^{|x| (s^2 - y^2)^{1/2}} should plateau in x for members.
inline PointwiseBoundReport pointwise_analytic_bound_check(const HermiteCoefficients& c, double t, double s,
                                                           double x_max = 12.0, int nx = 120, int ny = 9) {
  if (!(s < t)) throw std::invalid_argument("pointwise_analytic_bound_check: requires s < t");
  if (c.dim != 1) throw std::invalid_argument("pointwise_analytic_bound_check: implemented for n = 1");
  PointwiseBoundReport r;
  for (int j = 0; j < ny; ++j) {
    const double y = -0.9 * s + 1.8 * s * j / (ny - 1);
    const double rate = std::sqrt(std::max(0.0, s * s - y * y));
    for (int i = 0; i < nx; ++i) {
      const double x = x_max * (i + 1.0) / nx;
      // |phi(x+iy)| with the Gaussian kept in the exponent (overflow-safe)
      const auto pp = hermite_polypart_sequence<cd>(c.degree, cd(x, y));
      cd P = 0;
      for (std::size_t k = 0; k < c.indices.size(); ++k)
        P += c.c(static_cast<Eigen::Index>(k)) * pp[static_cast<std::size_t>(c.indices[k][0])];
      const double logmag = std::log(std::max(1e-300, std::abs(P))) - 0.5 * (x * x - y * y) + x * rate;
      const double w = std::exp(logmag);
      (x < 0.5 * x_max ? r.sup_early : r.sup_late) = std::max(x < 0.5 * x_max ? r.sup_early : r.sup_late, w);
    }
  }
  r.plateau = r.sup_late <= 1.05 * r.sup_early;
  return r;
}

struct GutzmerReport {
  double lhs = 0;
  double rhs = 0;
  double rel_error = 0;
};

// Gutzmer identity for n = 1 at x = u = 0: the compact group is SO(2)
// rotating the complexified pair (iy, iv),
//   mean_theta int |pi(i y_th, i v_th) phi(xi)|^2 dxi
//     = sum_k ||P_k phi||^2 L_k(-2(y^2+v^2)) e^{y^2+v^2},
// where pi(iy', iv')phi(xi) = e^{-y' xi - i y' v'/2} phi(xi + i v');
// the central half-phase is purely imaginary at a purely imaginary group
// element and drops out of the modulus.
inline GutzmerReport gutzmer_check_1d(const HermiteCoefficients& c, double y, double v, int m_theta = 64,
                                      int nodes = 96) {
  if (c.dim != 1) throw std::invalid_argument("gutzmer_check_1d: implemented for n = 1");
  Axis ax = gauss_hermite_axis(nodes);
  double lhs = 0;
  for (int j = 0; j < m_theta; ++j) {
    const double th = 2.0 * M_PI * j / m_theta;
    const double yr = y * std::cos(th) - v * std::sin(th);
    const double vr = y * std::sin(th) + v * std::cos(th);
    double integral = 0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double xi = ax.nodes[i];
      const cd val = hermite_synthesis(c, {cd(xi, vr)});
      integral += ax.weights[i] * std::exp(-2.0 * yr * xi) * std::norm(val);
    }
    lhs += integral / m_theta;
  }
  double rhs = 0;
  for (int k = 0; k <= c.degree; ++k) rhs += level_energy(c, k) * laguerre_phi_imag(k, 0, y * y + v * v);
  GutzmerReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_error = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
  return r;
}

}  // namespace hkit
