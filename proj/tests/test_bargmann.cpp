#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hkit/bargmann.hpp"
#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/transforms.hpp"

using namespace hkit;

namespace {

SampledFunction hermite_fn(const Grid& g, int k) {
  return sample(g, [k](const std::vector<double>& p) {
    auto h = hermite_sequence<double>(k, p[0]);
    return h[static_cast<std::size_t>(k)];
  });
}

double link_constant(int k) { return std::sqrt(std::pow(2.0, k) * std::tgamma(k + 1.0) * std::sqrt(M_PI)); }

}  // namespace

TEST_CASE("bargmann transform of the ground state is constant") {
  Grid g = gauss_hermite_grid(1, 96);
  SampledFunction phi0 = hermite_fn(g, 0);
  for (cd z : {cd(0, 0), cd(1.5, 0), cd(0, 2.0), cd(-2.0, 1.0), cd(3.0, -2.5)}) {
    const cd v = bargmann_transform(phi0, {z});
    CHECK(std::abs(v - cd(std::pow(M_PI, -0.25), 0.0)) < 1e-10);
  }
}

TEST_CASE("bargmann transform sends h_k to the normalized monomial") {
  // B h_k(z) = (2^k k! sqrt(pi))^{-1/2} z^k, the inverse of the link constant
  Grid g = gauss_hermite_grid(1, 96);
  for (int k : {1, 2, 5}) {
    SampledFunction hk = hermite_fn(g, k);
    const cd z(1.2, -0.7);
    const cd want = std::pow(z, k) / link_constant(k);
    CHECK(std::abs(bargmann_transform(hk, {z}) - want) < 1e-9);
  }
}

TEST_CASE("fourier intertwining Bg(-iz) = Bghat(z)") {
  Grid g = gauss_hermite_grid(1, 96);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  HermiteCoefficients c = zero_coefficients(1, 10);
  for (Eigen::Index i = 0; i < c.c.size(); ++i) c.c(i) = cd(U(rng), U(rng));
  SampledFunction f = hermite_synthesis_grid(c, g);
  SampledFunction fh = fourier_transform(f);
  for (int trial = 0; trial < 20; ++trial) {
    const cd z(3.0 * U(rng), 3.0 * U(rng));
    const cd lhs = bargmann_transform(f, {-cd(0, 1) * z});
    const cd rhs = bargmann_transform(fh, {z});
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("log-scaled output stays finite far out") {
  Grid g = gauss_hermite_grid(1, 96);
  SampledFunction phi0 = hermite_fn(g, 0);
  // the saddle of the quadrature integrand sits at xi = z/2, which must stay
  // inside the node range of the 96-point rule
  const ScaledValue sv = bargmann_transform_scaled(phi0, {cd(18.0, 0.0)});
  CHECK(std::isfinite(sv.mantissa.real()));
  CHECK(std::isfinite(sv.log_scale));
  // B phi_0 is globally constant, so mantissa * e^{log_scale} ~ pi^{-1/4}
  CHECK(std::abs(std::log(std::abs(sv.mantissa)) + sv.log_scale - std::log(std::pow(M_PI, -0.25))) < 1e-6);
}

TEST_CASE("cauchy taylor coefficients") {
  // constant integrand
  auto konst = [](const std::vector<cd>&) { return cd(std::pow(M_PI, -0.25), 0.0); };
  CauchyCoefficient c0 = taylor_coeffs_cauchy(konst, {0});
  CHECK(c0.converged);
  CHECK(std::abs(c0.value - cd(std::pow(M_PI, -0.25), 0.0)) < 1e-12);
  CHECK(std::abs(taylor_coeffs_cauchy(konst, {3}).value) < 1e-12);

  // f = Phi_1: c_1 = (2 sqrt(pi))^{-1/2}, others vanish
  Grid g = gauss_hermite_grid(1, 96);
  SampledFunction h1 = hermite_fn(g, 1);
  auto B1 = [&](const std::vector<cd>& z) { return bargmann_transform(h1, z); };
  CHECK(std::abs(taylor_coeffs_cauchy(B1, {1}).value - cd(1.0 / link_constant(1), 0.0)) < 1e-8);
  for (int k : {0, 2, 3, 6}) CHECK(std::abs(taylor_coeffs_cauchy(B1, {k}).value) < 1e-8);

  // order-2 coefficient of B Phi_2 against the series expansion
  SampledFunction h2 = hermite_fn(g, 2);
  auto B2 = [&](const std::vector<cd>& z) { return bargmann_transform(h2, z); };
  CHECK(std::abs(taylor_coeffs_cauchy(B2, {2}).value - cd(1.0 / link_constant(2), 0.0)) < 1e-8);
}

TEST_CASE("coefficient link (g, Phi_k) = (2^k k! sqrt(pi))^{1/2} c_k") {
  Grid g = gauss_hermite_grid(1, 96);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<HermiteCoefficients> gallery;
  HermiteCoefficients e2 = zero_coefficients(1, 10);
  e2.c(2) = 1.0;
  gallery.push_back(e2);
  for (unsigned s = 0; s < 4; ++s) {
    HermiteCoefficients c = zero_coefficients(1, 10);
    for (Eigen::Index i = 0; i < c.c.size(); ++i) c.c(i) = cd(U(rng), U(rng));
    gallery.push_back(c);
  }
  for (const auto& c : gallery) {
    SampledFunction f = hermite_synthesis_grid(c, g);
    auto B = [&](const std::vector<cd>& z) { return bargmann_transform(f, z); };
    for (int k = 0; k <= 10; ++k) {
      const cd ck = taylor_coeffs_cauchy(B, {k}).value;
      CHECK(std::abs(c.at({k}) - link_constant(k) * ck) < 1e-8);
    }
  }
}

TEST_CASE("cauchy coefficients are radius-independent on entire inputs") {
  Grid g = gauss_hermite_grid(1, 96);
  SampledFunction f = hermite_fn(g, 4);
  auto B = [&](const std::vector<cd>& z) { return bargmann_transform(f, z); };
  for (int k = 0; k <= 8; ++k) {
    const cd a = taylor_coeffs_cauchy(B, {k}, 1.0).value;
    const cd b = taylor_coeffs_cauchy(B, {k}, 1.5).value;
    CHECK(std::abs(a - b) < 1e-7);
  }
}

TEST_CASE("two-dimensional cauchy extraction") {
  Grid g = gauss_hermite_grid(2, 48);
  SampledFunction f = sample(g, [](const std::vector<double>& p) {
    auto a = hermite_sequence<double>(1, p[0]);
    auto b = hermite_sequence<double>(2, p[1]);
    return a[1] * b[2];
  });
  auto B = [&](const std::vector<cd>& z) { return bargmann_transform(f, z); };
  const cd want = cd(1.0 / (link_constant(1) * link_constant(2)), 0.0);
  CHECK(std::abs(taylor_coeffs_cauchy(B, {1, 2}).value - want) < 1e-8);
  CHECK(std::abs(taylor_coeffs_cauchy(B, {2, 1}).value) < 1e-8);
}

TEST_CASE("decay fits") {
  Grid g;
  g.axes = {uniform_axis(-20.0, 20.0, 2001)};
  SampledFunction gau = sample(g, [](const std::vector<double>& p) { return std::exp(-0.5 * p[0] * p[0]); });
  DecayHypothesis hg = fit_decay_hypothesis(gau, DecayKind::Gaussian);
  CHECK(hg.ok);
  CHECK(hg.rate == doctest::Approx(1.0).epsilon(1e-3));

  const double rt = std::sqrt(0.5 * M_PI);
  SampledFunction sech = sample(g, [rt](const std::vector<double>& p) { return 1.0 / std::cosh(rt * p[0]); });
  DecayHypothesis hs = fit_decay_hypothesis(sech, DecayKind::Exponential);
  CHECK(hs.ok);
  CHECK(hs.rate == doctest::Approx(rt).epsilon(0.02));

  SampledFunction h5 = sample(g, [](const std::vector<double>& p) {
    auto h = hermite_sequence<double>(5, p[0]);
    return h[5];
  });
  DecayHypothesis hp = fit_decay_hypothesis(h5, DecayKind::Pfannschmidt);
  CHECK(hp.ok);
  CHECK(hp.rate == doctest::Approx(1.0).epsilon(0.02));
  CHECK(hp.poly_degree == doctest::Approx(5.0).epsilon(0.1));

  SampledFunction lor = sample(g, [](const std::vector<double>& p) { return 1.0 / (1.0 + p[0] * p[0]); });
  CHECK(!fit_decay_hypothesis(lor, DecayKind::Exponential).ok);

  SampledFunction zero = sample(g, [](const std::vector<double>&) { return 0.0; });
  CHECK_THROWS_AS((void)fit_decay_hypothesis(zero, DecayKind::Gaussian), std::invalid_argument);
}

TEST_CASE("exponential coefficient bound on the self-reciprocal sech") {
  const double rt = std::sqrt(0.5 * M_PI);
  Grid g;
  g.axes = {uniform_axis(-40.0, 40.0, 8192)};
  SampledFunction psi = sample(g, [rt](const std::vector<double>& p) { return 1.0 / std::cosh(rt * p[0]); });

  // self-reciprocality oracle: psi_hat = psi under this Fourier convention
  Axis probe = uniform_axis(-10.0, 10.0, 101);
  SampledFunction hat = fourier_on_axis(psi, probe);
  for (std::size_t i = 0; i < probe.size(); ++i)
    CHECK(std::abs(hat.values(static_cast<Eigen::Index>(i)) - cd(1.0 / std::cosh(rt * probe.nodes[i]), 0.0)) < 1e-8);

  BoundReport r = coeff_bound_exponential_check(psi, 0.9 * rt, 60, 5.0);
  CHECK(r.precondition_ok);
  CHECK(r.pass);
  CHECK(r.C_min < 5.0);
}

TEST_CASE("exponential bound preconditions") {
  Grid g = gauss_hermite_grid(1, 64);
  SampledFunction phi0 = hermite_fn(g, 0);
  BoundReport ok = coeff_bound_exponential_check(phi0, 0.8, 20, 10.0);
  CHECK(ok.precondition_ok);
  CHECK(ok.pass);

  Grid gu;
  gu.axes = {uniform_axis(-20.0, 20.0, 1001)};
  SampledFunction lor = sample(gu, [](const std::vector<double>& p) { return 1.0 / (1.0 + p[0] * p[0]); });
  BoundReport bad = coeff_bound_exponential_check(lor, 0.8, 20, 10.0);
  CHECK(!bad.precondition_ok);
  CHECK(!bad.pass);
}

TEST_CASE("gaussian coefficient bound") {
  const double t = 0.25;
  const double a = std::tanh(2 * t);
  Grid g = gauss_hermite_grid(1, 96);
  SampledFunction psi = sample(g, [a](const std::vector<double>& p) { return std::exp(-0.5 * a * p[0] * p[0]); });
  BoundReport r = coeff_bound_gaussian_check(psi, t, 40, -1.0);
  CHECK(r.precondition_ok);
  CHECK(r.pass);
  // the coefficient decay e^{-2tk} sits strictly inside the bound rate e^{-tk}
  CHECK(r.C_min < 3.0);

  SampledFunction phi0 = hermite_fn(g, 0);
  CHECK(coeff_bound_gaussian_check(phi0, 0.4, 20, 10.0).pass);

  // separable two-dimensional Gaussian at the same rate
  Grid g2 = gauss_hermite_grid(2, 48);
  SampledFunction psi2 = sample(g2, [a](const std::vector<double>& p) {
    return std::exp(-0.5 * a * (p[0] * p[0] + p[1] * p[1]));
  });
  BoundReport r2 = coeff_bound_gaussian_check(psi2, t, 16, -1.0);
  CHECK(r2.precondition_ok);
  CHECK(r2.pass);
}

TEST_CASE("hardy classification trichotomy") {
  Grid g;
  g.axes = {uniform_axis(-16.0, 16.0, 2001)};
  Grid gh = gauss_hermite_grid(1, 96);

  SampledFunction gau = sample(g, [](const std::vector<double>& p) { return std::exp(-0.5 * p[0] * p[0]); });
  ClassificationResult ii = hardy_classify(gau);
  CHECK(ii.verdict == HardyVerdict::CaseII);
  CHECK(ii.minimal_type);

  SampledFunction h5 = sample(g, [](const std::vector<double>& p) {
    auto h = hermite_sequence<double>(5, p[0]);
    return h[5];
  });
  ClassificationResult iip = hardy_classify(h5);
  CHECK(iip.verdict == HardyVerdict::CaseII);
  CHECK(iip.residual_degree == doctest::Approx(5.0).epsilon(0.15));

  const double a = std::tanh(0.5);
  SampledFunction wide = sample(g, [a](const std::vector<double>& p) { return std::exp(-0.5 * a * p[0] * p[0]); });
  ClassificationResult iii = hardy_classify(wide);
  CHECK(iii.verdict == HardyVerdict::CaseIII);
  CHECK(iii.ab == doctest::Approx(a * a).epsilon(0.05));

  // scale consistency: the verdict only depends on the fitted rates
  SampledFunction scaled = wide;
  scaled.values *= 37.0;
  CHECK(hardy_classify(scaled).verdict == HardyVerdict::CaseIII);
}

TEST_CASE("case-i infeasibility probe") {
  CHECK(hardy_case_i_probe(1.2, 1.0) > 1e8);
  CHECK(hardy_case_i_probe(1.0, 1.2) > 1e8);
  CHECK(hardy_case_i_probe(0.8, 1.0) < 10.0);
  CHECK(hardy_case_i_probe(1.0, 1.0) < 10.0);
}

TEST_CASE("minimal type ladder") {
  HermiteCoefficients p3 = zero_coefficients(1, 3);
  p3.c(3) = 1.0;
  CHECK(minimal_type_check(p3).all_pass);

  // smoothed random vector: in E_s exactly for s < t0
  const double t0 = 0.55;
  HermiteCoefficients f = zero_coefficients(1, 40);
  for (int k = 0; k <= 40; ++k) f.c(k) = 1.0 / (k + 1.0);
  MinimalTypeReport ladder = minimal_type_check(hermite_semigroup(f, t0));
  CHECK(!ladder.all_pass);
  for (const auto& [s, pass] : ladder.ladder) {
    if (s <= 0.5) CHECK(pass);
    if (s >= 0.6) CHECK(!pass);
  }

  // super-exponential decay passes everywhere (the table must extend past
  // the turning point of e^{-0.01 k^2 + 4ks} at the top of the ladder)
  HermiteCoefficients sup = zero_coefficients(1, 320);
  for (int k = 0; k <= 320; ++k) sup.c(k) = std::exp(-0.01 * k * k);
  CHECK(minimal_type_check(sup).all_pass);
}
