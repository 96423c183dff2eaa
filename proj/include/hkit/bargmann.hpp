#pragma once

// Bargmann transform, Cauchy-integral Taylor coefficients, decay-envelope
// fitting, the exponential/Gaussian coefficient-decay bound checks, the
// Hardy-type trichotomy classifier, and the minimal-type coefficient ladder.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/semigroups.hpp"
#include "hkit/transforms.hpp"

namespace hkit {

// B g(z) = pi^{-n/2} e^{-z^2/4} int g(xi) e^{-xi^2/2} e^{z.xi} dxi,
// evaluated by quadrature on g's grid. Returned log-scaled: the saddle of
// the exponent sits at xi = Re z with value (Re z)^2/2, which is pulled out
// front so the mantissa never overflows.
inline ScaledValue bargmann_transform_scaled(const SampledFunction& g, const std::vector<cd>& z) {
  g.check();
  const int n = g.dim();
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("bargmann_transform: dimension mismatch");
  double shift = 0;
  cd zsq = 0;
  for (const cd& zj : z) {
    shift += 0.5 * zj.real() * zj.real();
    zsq += zj * zj;
  }
  const cd quarter = -zsq * 0.25;
  cd acc = 0;
  const std::size_t total = g.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    const auto idx = g.grid.unflat(p);
    const auto pt = g.grid.point(idx);
    cd expo = -shift;
    for (int d = 0; d < n; ++d) expo += -0.5 * pt[static_cast<std::size_t>(d)] * pt[static_cast<std::size_t>(d)] + z[static_cast<std::size_t>(d)] * pt[static_cast<std::size_t>(d)];
    acc += g.grid.weight(idx) * g.values(static_cast<Eigen::Index>(p)) * std::exp(expo);
  }
  ScaledValue out;
  out.mantissa = std::pow(M_PI, -0.5 * n) * acc * std::exp(cd(0.0, quarter.imag()));
  out.log_scale = shift + quarter.real();
  return out;
}

inline cd bargmann_transform(const SampledFunction& g, const std::vector<cd>& z) {
  return bargmann_transform_scaled(g, z).value();
}

// Taylor coefficient c_alpha of an entire function from the Cauchy formula
// on the poly-circle with radii r_j = (2 alpha_j + 1)^{1/2}, trapezoidal in
// each angle (spectrally accurate); the angular count starts at 4(|alpha|+8)
// and doubles until two refinements agree to 1e-9.
struct CauchyCoefficient {
  cd value;
  bool converged = false;
};

inline CauchyCoefficient taylor_coeffs_cauchy(const std::function<cd(const std::vector<cd>&)>& F,
                                              const MultiIndex& alpha, double radius_factor = 1.0) {
  const int n = static_cast<int>(alpha.size());
  if (n < 1 || n > 2) throw std::invalid_argument("taylor_coeffs_cauchy: n must be 1 or 2");
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) r[static_cast<std::size_t>(d)] = radius_factor * std::sqrt(2.0 * alpha[static_cast<std::size_t>(d)] + 1.0);

  auto eval = [&](int m) {
    cd acc = 0;
    if (n == 1) {
      for (int j = 0; j < m; ++j) {
        const double th = 2.0 * M_PI * j / m;
        const cd w = r[0] * std::exp(cd(0.0, th));
        acc += F({w}) * std::exp(cd(0.0, -alpha[0] * th));
      }
      acc /= static_cast<double>(m) * std::pow(r[0], alpha[0]);
    } else {
      for (int j = 0; j < m; ++j) {
        const double th0 = 2.0 * M_PI * j / m;
        for (int k = 0; k < m; ++k) {
          const double th1 = 2.0 * M_PI * k / m;
          acc += F({r[0] * std::exp(cd(0.0, th0)), r[1] * std::exp(cd(0.0, th1))}) *
                 std::exp(cd(0.0, -alpha[0] * th0 - alpha[1] * th1));
        }
      }
      acc /= static_cast<double>(m) * static_cast<double>(m) * std::pow(r[0], alpha[0]) * std::pow(r[1], alpha[1]);
    }
    return acc;
  };

  int m = 4 * (total_degree(alpha) + 8);
  cd prev = eval(m);
  CauchyCoefficient out;
  for (int pass = 0; pass < 4; ++pass) {
    m *= 2;
    const cd next = eval(m);
    if (std::abs(next - prev) < 1e-9) {
      out.value = next;
      out.converged = true;
      return out;
    }
    prev = next;
  }
  out.value = prev;
  out.converged = false;
  return out;
}

// ---------------------------------------------------------------------------
// Decay-envelope fitting.

enum class DecayKind { Exponential, Gaussian, Pfannschmidt };

struct DecayHypothesis {
  DecayKind kind = DecayKind::Gaussian;
  double rate = 0;          // t for e^{-t|x|}, a for e^{-a x^2/2}
  double C = 0;             // envelope constant e^{intercept}
  double max_residual = 0;  // worst |log|f| - fit| over the fit window
  bool ok = false;          // window-consistency of the fitted slope
  double residual_slope = 0;  // pfannschmidt: slope of the residual vs x^2 (should be ~0)
  double poly_degree = 0;     // pfannschmidt: slope of the residual vs log|x|
};

namespace detail {

struct LinFit {
  double slope = 0, intercept = 0, max_resid = 0;
};

inline LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinFit f;
  const double denom = m * sxx - sx * sx;
  f.slope = (m * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / m;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_resid = std::max(f.max_resid, std::abs(y[i] - f.slope * x[i] - f.intercept));
  return f;
}

}  // namespace detail

// Least-squares fit of log|f| against the chosen profile over the outer half
// (by |x|) of the samples above the 1e-12 relative floor. The ok flag
// demands that refitting on the outer quarter reproduces the slope within
// 20%: true exponential/Gaussian tails are window-stable, polynomial decay
// is not.
inline DecayHypothesis fit_decay_hypothesis(const SampledFunction& f, DecayKind kind) {
  f.check();
  if (f.dim() != 1) throw std::invalid_argument("fit_decay_hypothesis: one-dimensional inputs only");
  double top = 0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) top = std::max(top, std::abs(f.values(i)));
  if (top <= 0) throw std::invalid_argument("fit_decay_hypothesis: all samples below floor");

  std::vector<std::pair<double, double>> pts;  // (|x|, log|f|)
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    const double v = std::abs(f.values(i));
    if (v > 1e-12 * top)
      pts.emplace_back(std::abs(f.grid.axes[0].nodes[static_cast<std::size_t>(i)]), std::log(v));
  }
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 8) throw std::invalid_argument("fit_decay_hypothesis: too few usable samples");

  auto window_fit = [&](std::size_t lo, auto profile) {
    std::vector<double> xs, ys;
    for (std::size_t i = lo; i < pts.size(); ++i) {
      xs.push_back(profile(pts[i].first));
      ys.push_back(pts[i].second);
    }
    return detail::least_squares(xs, ys);
  };

  DecayHypothesis h;
  h.kind = kind;
  const std::size_t half = pts.size() / 2;
  // window consistency compares two disjoint tail windows: the third quarter
  // and the last quarter. Genuine exponential/Gaussian tails give the same
  // slope in both; polynomial decay does not.
  auto windowed_fit = [&](std::size_t lo, std::size_t hi, auto profile) {
    std::vector<double> xs, ys;
    for (std::size_t i = lo; i < hi; ++i) {
      xs.push_back(profile(pts[i].first));
      ys.push_back(pts[i].second);
    }
    return detail::least_squares(xs, ys);
  };
  const std::size_t q3 = pts.size() - pts.size() / 4;
  if (kind == DecayKind::Exponential) {
    auto fh = window_fit(half, [](double x) { return x; });
    auto fa = windowed_fit(half, q3, [](double x) { return x; });
    auto fb = windowed_fit(q3, pts.size(), [](double x) { return x; });
    h.rate = -fh.slope;
    h.C = std::exp(fh.intercept);
    h.max_residual = fh.max_resid;
    h.ok = h.rate > 1e-3 && std::abs(fa.slope - fb.slope) < 0.1 * std::abs(fh.slope);
  } else if (kind == DecayKind::Gaussian) {
    auto fh = window_fit(half, [](double x) { return 0.5 * x * x; });
    auto fa = windowed_fit(half, q3, [](double x) { return 0.5 * x * x; });
    auto fb = windowed_fit(q3, pts.size(), [](double x) { return 0.5 * x * x; });
    h.rate = -fh.slope;
    h.C = std::exp(fh.intercept);
    h.max_residual = fh.max_resid;
    h.ok = h.rate > 1e-3 && std::abs(fa.slope - fb.slope) < 0.1 * std::abs(fh.slope);
  } else {
    // joint two-regressor fit log|f| = log C + d log|x| - a x^2/2; fitting
    // the Gaussian first and the polynomial residual second biases the rate,
    // so both are solved together via the 3x3 normal equations
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    std::vector<std::array<double, 3>> rows;
    std::vector<double> ys;
    for (std::size_t i = half; i < pts.size(); ++i) {
      if (pts[i].first <= 0) continue;
      const std::array<double, 3> row = {1.0, std::log(pts[i].first), -0.5 * pts[i].first * pts[i].first};
      rows.push_back(row);
      ys.push_back(pts[i].second);
      for (int r = 0; r < 3; ++r) {
        rhs(r) += row[static_cast<std::size_t>(r)] * pts[i].second;
        for (int s = 0; s < 3; ++s) A(r, s) += row[static_cast<std::size_t>(r)] * row[static_cast<std::size_t>(s)];
      }
    }
    const Eigen::Vector3d sol = A.ldlt().solve(rhs);
    h.C = std::exp(sol(0));
    h.poly_degree = sol(1);
    h.rate = sol(2);
    for (std::size_t i = 0; i < rows.size(); ++i)
      h.max_residual = std::max(
          h.max_residual, std::abs(ys[i] - sol(0) * rows[i][0] - sol(1) * rows[i][1] - sol(2) * rows[i][2]));
    // minimal type: the joint model explains the tail (no super-polynomial
    // residual); probed by the residual trend against x^2
    std::vector<double> x2, res;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      x2.push_back(-2.0 * rows[i][2]);
      res.push_back(ys[i] - sol(0) * rows[i][0] - sol(1) * rows[i][1] - sol(2) * rows[i][2]);
    }
    h.residual_slope = detail::least_squares(x2, res).slope;
    h.ok = h.rate > 1e-3 && std::abs(h.residual_slope) < 0.05 && h.max_residual < 0.5;
  }
  return h;
}

// Direct envelope certificate: sup |f(x)| e^{profile(x)} over the sampled
// range must not grow from the inner to the outer radial half. Samples below
// the 1e-13 relative floor are quadrature round-off, not function values,
// and would otherwise be amplified by the envelope into false growth.
inline bool envelope_plateau(const SampledFunction& f, const std::function<double(double)>& profile) {
  f.check();
  double top = 0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) top = std::max(top, std::abs(f.values(i)));
  std::vector<std::pair<double, double>> pts;  // (|x|, |f| e^{profile})
  const std::size_t total = f.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    const auto pt = f.grid.point(f.grid.unflat(p));
    double r2 = 0;
    for (double v : pt) r2 += v * v;
    const double r = std::sqrt(r2);
    const double v = std::abs(f.values(static_cast<Eigen::Index>(p)));
    if (v > 1e-13 * top) pts.emplace_back(r, v * std::exp(profile(r)));
  }
  double rmax = 0;
  for (const auto& [r, w] : pts) rmax = std::max(rmax, r);
  double inner = 0, outer = 0;
  for (const auto& [r, w] : pts) (r < 0.5 * rmax ? inner : outer) = std::max(r < 0.5 * rmax ? inner : outer, w);
  return outer <= 1.05 * inner;
}

// ---------------------------------------------------------------------------
// Coefficient-decay bound checks.

struct BoundReport {
  bool precondition_ok = false;
  double C_min = 0;   // smallest constant for which the bound holds on |alpha| <= N
  double budget = 0;  // supplied C-budget (<= 0: none)
  bool pass = false;
  int worst_level = 0;
};

namespace detail {

inline BoundReport bound_scan(const HermiteCoefficients& c, const std::function<double(const MultiIndex&)>& envelope,
                              double budget, bool precondition_ok) {
  BoundReport r;
  r.precondition_ok = precondition_ok;
  r.budget = budget;
  for (std::size_t i = 0; i < c.indices.size(); ++i) {
    const double ratio = std::abs(c.c(static_cast<Eigen::Index>(i))) / envelope(c.indices[i]);
    if (ratio > r.C_min) {
      r.C_min = ratio;
      r.worst_level = total_degree(c.indices[i]);
    }
  }
  r.pass = precondition_ok && std::isfinite(r.C_min) && (budget <= 0 || r.C_min <= budget);
  return r;
}

}  // namespace detail

// Exponential-regime bound (one dimension):
//   |(psi, Phi_alpha)| <= C prod (2 alpha_j + 1)^{1/4} e^{-t/sqrt(2n) (2|alpha|+n)^{1/2}},
// under the hypothesis |psi|, |psi_hat| <= C e^{-t|.|}. The Fourier side is
// computed on a moderate uniform axis via the rectangular transform.
inline BoundReport coeff_bound_exponential_check(const SampledFunction& psi, double t, int N,
                                                 double budget = -1.0) {
  if (psi.dim() != 1) throw std::invalid_argument("coeff_bound_exponential_check: n = 1 only");
  const bool ok_f = envelope_plateau(psi, [t](double r) { return t * r; });
  // A Gauss-Hermite grid resolves frequencies only up to roughly its own
  // node range, so its transform is taken onto itself; fine uniform grids
  // (where the dense square matrix would be enormous) go through the
  // rectangular operator onto a moderate output axis.
  SampledFunction hat = psi.grid.axes[0].kind == NodeKind::GaussHermite
                            ? fourier_transform(psi)
                            : fourier_on_axis(psi, uniform_axis(-30.0, 30.0, 1201));
  const bool ok_h = envelope_plateau(hat, [t](double r) { return t * r; });
  const HermiteCoefficients c = hermite_coeffs(psi, N);
  const int n = 1;
  auto envelope = [t, n](const MultiIndex& a) {
    double v = std::exp(-t / std::sqrt(2.0 * n) * std::sqrt(2.0 * total_degree(a) + n));
    for (int aj : a) v *= std::pow(2.0 * aj + 1.0, 0.25);
    return v;
  };
  return detail::bound_scan(c, envelope, budget, ok_f && ok_h);
}

// Gaussian-regime bound (n = 1 or 2):
//   |(psi, Phi_alpha)| <= C prod (2 alpha_j + 1)^{-1/4n} e^{-(2|alpha|+n) t/(2n)},
// under |psi|, |psi_hat| <= C e^{-(tanh 2t)|.|^2/2}.
inline BoundReport coeff_bound_gaussian_check(const SampledFunction& psi, double t, int N,
                                              double budget = -1.0) {
  const int n = psi.dim();
  if (n > 2) throw std::invalid_argument("coeff_bound_gaussian_check: n = 1 or 2 only");
  const double a = std::tanh(2 * t);
  const bool ok_f = envelope_plateau(psi, [a](double r) { return 0.5 * a * r * r; });
  const SampledFunction hat = fourier_transform(psi);
  const bool ok_h = envelope_plateau(hat, [a](double r) { return 0.5 * a * r * r; });
  const HermiteCoefficients c = hermite_coeffs(psi, N);
  auto envelope = [t, n](const MultiIndex& al) {
    double v = std::exp(-(2.0 * total_degree(al) + n) * t / (2.0 * n));
    for (int aj : al) v *= std::pow(2.0 * aj + 1.0, -0.25 / n);
    return v;
  };
  return detail::bound_scan(c, envelope, budget, ok_f && ok_h);
}

// ---------------------------------------------------------------------------
// Hardy-type trichotomy.

enum class HardyVerdict { CaseI, CaseII, CaseIII, Unclassifiable };

inline std::string hardy_verdict_name(HardyVerdict v) {
  switch (v) {
    case HardyVerdict::CaseI: return "case-i";
    case HardyVerdict::CaseII: return "case-ii";
    case HardyVerdict::CaseIII: return "case-iii";
    default: return "unclassifiable";
  }
}

struct ClassificationResult {
  double a = 0;
  double b = 0;
  double ab = 0;
  HardyVerdict verdict = HardyVerdict::Unclassifiable;
  double coeff_slope = 0;       // Hermite level-energy decay slope (diagnostic)
  double residual_degree = 0;   // case-ii: fitted polynomial degree of the residual
  bool minimal_type = false;    // case-ii: residual passes the minimal-type criteria
};

inline ClassificationResult hardy_classify(const SampledFunction& f, const SampledFunction* fhat_in = nullptr,
                                           double tol = 0.02) {
  ClassificationResult r;
  DecayHypothesis hf = fit_decay_hypothesis(f, DecayKind::Pfannschmidt);
  SampledFunction hat = fhat_in ? *fhat_in : fourier_transform(f);
  DecayHypothesis hh = fit_decay_hypothesis(hat, DecayKind::Pfannschmidt);
  r.a = hf.rate;
  r.b = hh.rate;
  // Classify on the symmetric certified rate: the hypothesis class carries
  // one pair (a, b) valid on both sides simultaneously, and the largest
  // symmetric certificate is min of the two fitted rates on each side.
  // (The raw fitted product is identically 1 for any exact Gaussian.)
  const double sym = std::min(r.a, r.b);
  r.ab = sym * sym;
  if (!hf.ok || !hh.ok) return r;  // unclassifiable

  // diagnostic: log level-energy decay of the Hermite table
  {
    const HermiteCoefficients c = hermite_coeffs(f, 24);
    std::vector<double> terms(25);
    for (int k = 0; k <= 24; ++k) terms[static_cast<std::size_t>(k)] = level_energy(c, k);
    r.coeff_slope = tail_ratio_verdict(terms).second;
  }

  if (r.ab > 1.0 + tol) {
    r.verdict = HardyVerdict::CaseI;
  } else if (r.ab < 1.0 - tol) {
    r.verdict = HardyVerdict::CaseIII;
  } else {
    r.verdict = HardyVerdict::CaseII;
    r.residual_degree = hf.poly_degree;
    r.minimal_type = std::abs(hf.residual_slope) < 0.05 && std::abs(hh.residual_slope) < 0.05;
  }
  return r;
}

// Case-i feasibility probe: over a ladder of unit-norm Gaussians e^{-c x^2/2},
// the smallest constant C for which both envelopes |f| <= C e^{-a x^2/2} and
// |f_hat| <= C e^{-b xi^2/2} hold on |x| <= x_max. For ab > 1 no c works and
// the value explodes; for ab < 1 any c in [a, 1/b] gives an O(1) constant.
inline double hardy_case_i_probe(double a, double b, double x_max = 25.0) {
  double best = std::numeric_limits<double>::infinity();
  for (double lc = -1.5; lc <= 1.5; lc += 0.05) {
    const double c = std::exp(lc);
    const double nrm = std::pow(M_PI / c, 0.25);  // ||e^{-c x^2/2}||_2
    // sup over [0, x_max] of e^{(a-c)x^2/2}/nrm and of c^{-1/2} e^{(b-1/c)xi^2/2}/nrm
    const double s1 = std::exp(std::max(0.0, (a - c)) * 0.5 * x_max * x_max) / nrm;
    const double s2 = std::pow(c, -0.5) * std::exp(std::max(0.0, (b - 1.0 / c)) * 0.5 * x_max * x_max) / nrm;
    best = std::min(best, std::max(s1, s2));
  }
  return best;
}

// Minimal-type / E_infinity ladder: for each s in {0.1, ..., 1.0} test the
// weighted-sum convergence with E_s weights; membership in every E_s is the
// coefficient-side characterization of order-2 minimal type.
struct MinimalTypeReport {
  std::vector<std::pair<double, bool>> ladder;
  bool all_pass = false;
};

inline MinimalTypeReport minimal_type_check(const HermiteCoefficients& c) {
  MinimalTypeReport r;
  r.all_pass = true;
  for (int i = 1; i <= 10; ++i) {
    const double s = 0.1 * i;
    const bool pass = entire_membership(c, s).verdict == Verdict::Converged;
    r.ladder.emplace_back(s, pass);
    r.all_pass = r.all_pass && pass;
  }
  return r;
}

}  // namespace hkit
