#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/semigroups.hpp"
#include "hkit/wigner.hpp"

using namespace hkit;

namespace {

HermiteCoefficients random_coeffs(int n, int N, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1, 1);
  HermiteCoefficients c = zero_coefficients(n, N);
  for (Eigen::Index i = 0; i < c.c.size(); ++i) c.c(i) = cd(U(rng), U(rng));
  return c;
}

}  // namespace

TEST_CASE("hermite semigroup multiplier and law") {
  HermiteCoefficients c = random_coeffs(1, 8, 1);
  HermiteCoefficients a = hermite_semigroup(c, 0.4);
  for (std::size_t i = 0; i < a.indices.size(); ++i) {
    const double m = std::exp(-(2.0 * a.indices[i][0] + 1.0) * 0.4);
    CHECK(std::abs(a.c(static_cast<Eigen::Index>(i)) - m * c.c(static_cast<Eigen::Index>(i))) < 1e-15);
  }
  // t = 0 is the identity
  CHECK((hermite_semigroup(c, 0.0).c - c.c).norm() == 0.0);
  // semigroup law, exact on coefficients
  HermiteCoefficients two = hermite_semigroup(hermite_semigroup(c, 0.3), 0.2);
  HermiteCoefficients one = hermite_semigroup(c, 0.5);
  CHECK((two.c - one.c).norm() < 1e-15);
  CHECK_THROWS_AS((void)hermite_semigroup(c, -0.1), std::invalid_argument);
}

TEST_CASE("poisson-hermite semigroup and subordination") {
  HermiteCoefficients c = random_coeffs(1, 8, 2);
  HermiteCoefficients p = poisson_hermite_semigroup(c, 0.7);
  CHECK(std::abs(p.c(0) - std::exp(-0.7) * c.c(0)) < 1e-15);  // e^{-t sqrt(1)}
  // the two diagonal semigroups commute
  HermiteCoefficients ab = poisson_hermite_semigroup(hermite_semigroup(c, 0.3), 0.7);
  HermiteCoefficients ba = hermite_semigroup(poisson_hermite_semigroup(c, 0.7), 0.3);
  CHECK((ab.c - ba.c).norm() < 1e-15);
  CHECK_THROWS_AS((void)poisson_hermite_semigroup(c, -1.0), std::invalid_argument);
}

TEST_CASE("coefficient route matches the mehler kernel route") {
  Grid g = gauss_hermite_grid(1, 64);
  HermiteCoefficients c = random_coeffs(1, 10, 3);
  SampledFunction f = hermite_synthesis_grid(c, g);
  const double t = 0.35;
  SampledFunction spectral = hermite_synthesis_grid(hermite_semigroup(c, t), g);
  // kernel route: int K_t(x,y) f(y) dy
  SampledFunction kernel = f;
  for (std::size_t i = 0; i < g.axes[0].size(); ++i) {
    cd acc = 0;
    for (std::size_t j = 0; j < g.axes[0].size(); ++j)
      acc += g.axes[0].weights[j] * mehler_kernel(t, {g.axes[0].nodes[i]}, {g.axes[0].nodes[j]}) *
             f.values(static_cast<Eigen::Index>(j));
    kernel.values(static_cast<Eigen::Index>(i)) = acc;
  }
  CHECK((kernel.values - spectral.values).norm() < 1e-9);
}

TEST_CASE("heat constant calibration is t-independent") {
  const double c1 = calibrate_heat_constant(0.5);
  const double c2 = calibrate_heat_constant(0.8);
  CHECK(c1 > 0);
  CHECK(std::abs(c1 - c2) < 1e-6);
  // for n = 1 the calibrated value is 1/(4 pi)
  CHECK(c1 == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-8));
  CHECK_THROWS_AS((void)calibrate_heat_constant(0.1), std::invalid_argument);
}

TEST_CASE("weyl transform of the heat kernel is the hermite semigroup") {
  Grid fg = gauss_hermite_grid(1, 48);
  const double t = 0.5;
  PhaseSpaceFunction pt = special_hermite_heat_kernel(t, fg);
  for (Eigen::Index i = 0; i < pt.values.size(); ++i) CHECK(pt.values(i).real() > 0.0);
  WeylOperatorMatrix W = weyl_matrix_spectral(pt, 10);
  double err = 0;
  for (Eigen::Index a = 0; a < W.M.rows(); ++a)
    for (Eigen::Index b = 0; b < W.M.cols(); ++b) {
      const cd want = (a == b) ? cd(std::exp(-(2.0 * a + 1.0) * t), 0.0) : cd(0.0, 0.0);
      err = std::max(err, std::abs(W.M(a, b) - want));
    }
  CHECK(err < 1e-6);
}

TEST_CASE("heat kernel semigroup law under twisted convolution") {
  Grid fg = gauss_hermite_grid(1, 48);
  const double c1 = calibrate_heat_constant(0.5);
  PhaseSpaceFunction pa = special_hermite_heat_kernel(0.4, fg, c1);
  PhaseSpaceFunction pb = special_hermite_heat_kernel(0.3, fg, c1);
  PhaseSpaceFunction pc = special_hermite_heat_kernel(0.7, fg, c1);
  PhaseSpaceFunction conv = twisted_convolution(pa, pb, 1.0);
  CHECK((conv.values - pc.values).norm() < 1e-6 * pc.values.norm());
}

TEST_CASE("analytic membership verdicts") {
  // single term: converged for every t
  HermiteCoefficients phi0 = zero_coefficients(1, 0);
  phi0.c(0) = 1.0;
  CHECK(analytic_membership(phi0, 2.0).verdict == Verdict::Converged);

  // c_k = e^{-2s sqrt(2k+1)}: terms behave like e^{(2t-4s) sqrt(2k+1)}
  const double s = 0.4;
  HermiteCoefficients decay = zero_coefficients(1, 60);
  for (int k = 0; k <= 60; ++k) decay.c(k) = std::exp(-2.0 * s * std::sqrt(2.0 * k + 1.0));
  CHECK(analytic_membership(decay, 0.6).verdict == Verdict::Converged);   // t < 2s
  CHECK(analytic_membership(decay, 1.2).verdict == Verdict::Growing);     // t > 2s

  // c_k = 1/k: terms unbounded for t > 0
  HermiteCoefficients slow = zero_coefficients(1, 60);
  for (int k = 1; k <= 60; ++k) slow.c(k) = 1.0 / k;
  CHECK(analytic_membership(slow, 0.5).verdict == Verdict::Growing);

  // monotone in t on this rule: converged at t stays converged below t
  CHECK(analytic_membership(decay, 0.3).verdict == Verdict::Converged);
}

TEST_CASE("entire membership verdicts") {
  const double t0 = 0.5;
  HermiteCoefficients f = random_coeffs(1, 40, 9);
  for (Eigen::Index i = 0; i < f.c.size(); ++i)
    f.c(i) = cd(0.3 + std::abs(f.c(i).real()), 0.0);  // keep all levels populated
  HermiteCoefficients c = hermite_semigroup(f, t0);
  CHECK(entire_membership(c, 0.3).verdict == Verdict::Converged);
  CHECK(entire_membership(c, 0.7).verdict == Verdict::Growing);

  // finite combination: converged for all t
  HermiteCoefficients fin = zero_coefficients(1, 3);
  fin.c(0) = 1.0;
  fin.c(3) = 0.5;
  CHECK(entire_membership(fin, 3.0).verdict == Verdict::Converged);

  // Gaussian e^{-a x^2/2} with a = tanh(2 t0): member of E_t exactly for t < t0
  Grid g = gauss_hermite_grid(1, 96);
  const double a = std::tanh(2 * t0);
  SampledFunction gau = sample(g, [a](const std::vector<double>& p) { return std::exp(-0.5 * a * p[0] * p[0]); });
  // degree 24 keeps |c_k|^2 ~ e^{-2k} above the quadrature noise floor
  HermiteCoefficients gc = hermite_coeffs(gau, 24);
  CHECK(entire_membership(gc, 0.3).verdict == Verdict::Converged);
  CHECK(entire_membership(gc, 0.7).verdict == Verdict::Growing);
}

TEST_CASE("poisson-scale membership localizes the decay rate") {
  const double s = 0.8;
  HermiteCoefficients phi = zero_coefficients(1, 60);
  for (int k = 0; k <= 60; ++k) phi.c(k) = 1.0 / (k + 1.0);
  HermiteCoefficients psi = poisson_hermite_semigroup(phi, s);
  CHECK(poisson_membership(psi, 0.4).verdict == Verdict::Converged);
  CHECK(poisson_membership(psi, 1.2).verdict == Verdict::Growing);
}

TEST_CASE("U_t isometry") {
  HermiteCoefficients phi0 = zero_coefficients(1, 0);
  phi0.c(0) = 1.0;
  IsometryReport r0 = hermite_bergman_isometry_check(phi0, 0.5);
  CHECK(!r0.inconclusive);
  CHECK(r0.rel_error < 1e-4);

  HermiteCoefficients mix = zero_coefficients(1, 3);
  mix.c(0) = 1.0;
  mix.c(3) = cd(0.0, 1.0);
  CHECK(hermite_bergman_isometry_check(mix, 0.5).rel_error < 1e-4);

  for (double t : {0.3, 0.7}) {
    HermiteCoefficients c = random_coeffs(1, 6, 21);
    CHECK(hermite_bergman_isometry_check(c, t).rel_error < 1e-4);
  }

  HermiteCoefficients z = zero_coefficients(1, 2);
  IsometryReport rz = hermite_bergman_isometry_check(z, 0.5);
  CHECK(rz.lhs == 0.0);
  CHECK(rz.rhs == 0.0);
}

TEST_CASE("bergman strip norm ratio constancy") {
  HermiteCoefficients p0 = zero_coefficients(1, 0);
  p0.c(0) = 1.0;
  HermiteCoefficients p1 = zero_coefficients(1, 1);
  p1.c(1) = 1.0;
  HermiteCoefficients p02 = zero_coefficients(1, 2);
  p02.c(0) = 1.0;
  p02.c(2) = 1.0;
  RatioReport r = bergman_norm_ratio_check({p0, p1, p02}, 0.4);
  CHECK(r.std_over_mean < 1e-3);
  CHECK(r.ratios[0] > 0);
  // the unspecified constant comes out as pi under this convention set
  CHECK(r.mean == doctest::Approx(M_PI).epsilon(1e-6));
  // small-t stability of the ratio
  RatioReport rs = bergman_norm_ratio_check({p0, p02}, 0.1);
  CHECK(rs.mean == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("pointwise analytic bound plateaus for members, grows for the diagnostic case") {
  HermiteCoefficients p0 = zero_coefficients(1, 0);
  p0.c(0) = 1.0;
  PointwiseBoundReport ok = pointwise_analytic_bound_check(p0, 0.5, 0.25);
  CHECK(ok.plateau);

  HermiteCoefficients smooth = poisson_hermite_semigroup(random_coeffs(1, 20, 31), 0.8);
  CHECK(pointwise_analytic_bound_check(smooth, 0.5, 0.25).plateau);

  HermiteCoefficients flat = zero_coefficients(1, 30);
  for (int k = 0; k <= 30; ++k) flat.c(k) = 1.0 / std::sqrt(31.0);
  PointwiseBoundReport bad = pointwise_analytic_bound_check(flat, 0.5, 0.25);
  CHECK(!bad.plateau);

  CHECK_THROWS_AS((void)pointwise_analytic_bound_check(p0, 0.3, 0.5), std::invalid_argument);
}

TEST_CASE("gutzmer identity, n = 1") {
  HermiteCoefficients p0 = zero_coefficients(1, 0);
  p0.c(0) = 1.0;
  CHECK(gutzmer_check_1d(p0, 0.3, 0.0).rel_error < 1e-4);

  // real point: unitarity gives the plain norm on both sides
  GutzmerReport unit = gutzmer_check_1d(p0, 0.0, 0.0);
  CHECK(unit.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(unit.rhs == doctest::Approx(1.0).epsilon(1e-12));

  HermiteCoefficients p1 = zero_coefficients(1, 1);
  p1.c(1) = 1.0;
  CHECK(gutzmer_check_1d(p1, 0.2, 0.2).rel_error < 1e-4);

  HermiteCoefficients p2 = zero_coefficients(1, 2);
  p2.c(2) = 1.0;
  CHECK(gutzmer_check_1d(p2, 0.3, 0.4).rel_error < 1e-4);

  // mixed combination at a generic point
  HermiteCoefficients mix = random_coeffs(1, 5, 17);
  CHECK(gutzmer_check_1d(mix, 0.25, -0.35).rel_error < 1e-4);
}
