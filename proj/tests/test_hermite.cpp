#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"

using namespace hkit;

namespace {

// Independent closed forms for the first few Hermite functions.
double h0_ref(double x) { return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x); }
double h1_ref(double x) { return std::sqrt(2.0) * x * h0_ref(x); }
double h2_ref(double x) { return (2.0 * x * x - 1.0) / std::sqrt(2.0) * h0_ref(x); }
double h3_ref(double x) { return (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0) * h0_ref(x); }

}  // namespace

TEST_CASE("recurrence matches closed forms") {
  for (double x : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
    auto h = hermite_sequence<double>(3, x);
    CHECK(h[0] == doctest::Approx(h0_ref(x)).epsilon(1e-14));
    CHECK(h[1] == doctest::Approx(h1_ref(x)).epsilon(1e-14));
    CHECK(h[2] == doctest::Approx(h2_ref(x)).epsilon(1e-13));
    CHECK(h[3] == doctest::Approx(h3_ref(x)).epsilon(1e-13));
  }
}

TEST_CASE("orthonormality under quadrature") {
  Axis a = gauss_hermite_axis(64);
  const int N = 20;
  Eigen::MatrixXd H = hermite_table_real(N, a.nodes);
  for (int j = 0; j <= N; ++j)
    for (int k = j; k <= N; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a.weights[i] * H(j, static_cast<Eigen::Index>(i)) * H(k, static_cast<Eigen::Index>(i));
      CHECK(s == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("scaled evaluation agrees with direct evaluation at moderate points") {
  const MultiIndex alpha = {4};
  for (double yi : {0.0, 0.5, 1.5}) {
    const cd z(0.8, yi);
    const cd direct = hermite_eval(alpha, {z});
    const ScaledValue sv = hermite_eval_scaled(alpha, {z});
    CHECK(std::abs(sv.value() - direct) < 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("scaled evaluation stays finite far up the imaginary axis") {
  const ScaledValue sv = hermite_eval_scaled({10}, {cd(0.3, 25.0)});
  CHECK(std::isfinite(sv.mantissa.real()));
  CHECK(std::isfinite(sv.log_scale));
  // |h_k(x+iy)| grows like e^{y^2/2}; the log scale must carry that growth
  CHECK(sv.log_scale > 250.0);
}

TEST_CASE("analysis/synthesis roundtrip, 1-d") {
  Grid g = gauss_hermite_grid(1, 64);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  HermiteCoefficients truth = zero_coefficients(1, 12);
  for (Eigen::Index i = 0; i < truth.c.size(); ++i) truth.c(i) = cd(U(rng), U(rng));
  SampledFunction f = hermite_synthesis_grid(truth, g);
  HermiteCoefficients back = hermite_coeffs(f, 12);
  CHECK(!back.aliasing_warning);
  CHECK((back.c - truth.c).norm() < 1e-10);
  // Parseval on the table
  CHECK(back.sum_abs2() == doctest::Approx(truth.c.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("analysis/synthesis roundtrip, 2-d") {
  Grid g = gauss_hermite_grid(2, 32);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  HermiteCoefficients truth = zero_coefficients(2, 8);
  for (Eigen::Index i = 0; i < truth.c.size(); ++i) truth.c(i) = cd(U(rng), U(rng));
  SampledFunction f = hermite_synthesis_grid(truth, g);
  HermiteCoefficients back = hermite_coeffs(f, 8);
  CHECK((back.c - truth.c).norm() < 1e-10);
}

TEST_CASE("aliasing heuristic flags an under-resolved request") {
  Grid g = gauss_hermite_grid(1, 24);
  SampledFunction f = sample(g, [](const std::vector<double>& p) { return std::exp(-0.5 * p[0] * p[0]); });
  CHECK(hermite_coeffs(f, 20).aliasing_warning);
  CHECK(!hermite_coeffs(f, 10).aliasing_warning);
}

TEST_CASE("projection and level energy") {
  HermiteCoefficients h = zero_coefficients(2, 4);
  for (std::size_t i = 0; i < h.indices.size(); ++i) h.c(static_cast<Eigen::Index>(i)) = 1.0;
  const HermiteCoefficients p2 = projection_Pk(h, 2);
  double e = 0;
  for (std::size_t i = 0; i < p2.indices.size(); ++i) e += std::norm(p2.c(static_cast<Eigen::Index>(i)));
  CHECK(e == doctest::Approx(3.0));  // three indices with |alpha| = 2
  CHECK(level_energy(h, 3) == doctest::Approx(4.0));
  CHECK_THROWS_AS((void)projection_Pk(h, 9), std::invalid_argument);
}

TEST_CASE("laguerre closed forms") {
  for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
    CHECK(laguerre_eval(0, 2, x) == doctest::Approx(1.0));
    CHECK(laguerre_eval(1, 3, x) == doctest::Approx(4.0 - x).epsilon(1e-13));
    CHECK(laguerre_eval(2, 0, x) == doctest::Approx(1.0 - 2.0 * x + 0.5 * x * x).epsilon(1e-12));
    // L_2^1(x) = 3 - 3x + x^2/2
    CHECK(laguerre_eval(2, 1, x) == doctest::Approx(3.0 - 3.0 * x + 0.5 * x * x).epsilon(1e-12));
  }
}

TEST_CASE("laguerre function weights") {
  // phi_k^a(s) = L_k^a(s^2/2) e^{-s^2/4}
  CHECK(laguerre_phi(1, 0, 2.0) == doctest::Approx((1.0 - 2.0) * std::exp(-1.0)).epsilon(1e-13));
  // imaginary-argument weight: L_k^a(-2 rho2) e^{rho2}, positive and increasing in rho2
  CHECK(laguerre_phi_imag(3, 0, 0.0) == doctest::Approx(1.0));
  CHECK(laguerre_phi_imag(3, 0, 2.0) > laguerre_phi_imag(3, 0, 1.0));
  CHECK(laguerre_phi_imag(2, 1, 1.5) == doctest::Approx(laguerre_eval(2, 1, -3.0) * std::exp(1.5)).epsilon(1e-13));
}

TEST_CASE("mehler kernel has the Hermite eigenrelation") {
  Axis a = gauss_hermite_axis(64);
  const double t = 0.3;
  for (int k : {0, 1, 2, 5}) {
    for (double x : {-1.1, 0.0, 0.8}) {
      double lhs = 0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        auto h = hermite_sequence<double>(k, a.nodes[j]);
        lhs += a.weights[j] * mehler_kernel(t, {x}, {a.nodes[j]}) * h[static_cast<std::size_t>(k)];
      }
      auto hx = hermite_sequence<double>(k, x);
      const double rhs = std::exp(-(2.0 * k + 1.0) * t) * hx[static_cast<std::size_t>(k)];
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("mehler kernel in two dimensions is the tensor product") {
  const double t = 0.4;
  const double k1 = mehler_kernel(t, {0.3}, {-0.2});
  const double k2 = mehler_kernel(t, {1.1}, {0.5});
  CHECK(mehler_kernel(t, {0.3, 1.1}, {-0.2, 0.5}) == doctest::Approx(k1 * k2).epsilon(1e-13));
  CHECK_THROWS_AS((void)mehler_kernel(0.0, {0.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("graded multi-index enumeration") {
  auto idx2 = multi_indices(2, 3);
  CHECK(idx2.size() == 10);
  CHECK(idx2.front() == MultiIndex{0, 0});
  CHECK(idx2.back() == MultiIndex{0, 3});
  for (std::size_t i = 1; i < idx2.size(); ++i)
    CHECK(total_degree(idx2[i]) >= total_degree(idx2[i - 1]));
  CHECK_THROWS_AS((void)multi_indices(3, 2), std::invalid_argument);
}
