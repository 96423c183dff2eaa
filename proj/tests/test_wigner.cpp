#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/transforms.hpp"
#include "hkit/wigner.hpp"

using namespace hkit;

namespace {

SampledFunction hermite_combo(const Grid& g, const std::vector<std::pair<int, cd>>& terms) {
  return sample(g, [&](const std::vector<double>& p) {
    cd v = 0;
    for (const auto& [k, a] : terms) {
      auto h = hermite_sequence<double>(k, p[0]);
      v += a * h[static_cast<std::size_t>(k)];
    }
    return v;
  });
}

}  // namespace

TEST_CASE("special hermite functions are orthonormal on phase space") {
  Grid g = gauss_hermite_grid(1, 48);
  std::vector<PhaseSpaceFunction> Phi;
  std::vector<std::pair<int, int>> idx;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      Phi.push_back(special_hermite({a}, {b}, g));
      idx.emplace_back(a, b);
    }
  for (std::size_t i = 0; i < Phi.size(); ++i)
    for (std::size_t j = i; j < Phi.size(); ++j) {
      const cd ip = inner_product(Phi[i], Phi[j]);
      const double want = (idx[i] == idx[j]) ? 1.0 : 0.0;
      CHECK(std::abs(ip - want) < 1e-10);
    }
}

TEST_CASE("wigner transform of hermite pairs matches the direct special hermite") {
  Grid g = gauss_hermite_grid(1, 48);
  SampledFunction h1 = hermite_combo(g, {{1, 1.0}});
  SampledFunction h3 = hermite_combo(g, {{3, 1.0}});
  PhaseSpaceFunction V = wigner_transform(h1, h3);
  PhaseSpaceFunction Phi = special_hermite({1}, {3}, g);
  CHECK((V.values - Phi.values).norm() < 1e-8);
}

TEST_CASE("moyal identity") {
  Grid g = gauss_hermite_grid(1, 48);
  SampledFunction f1 = hermite_combo(g, {{0, 1.0}, {2, cd(0.5, 0.25)}});
  SampledFunction f2 = hermite_combo(g, {{1, 1.0}, {4, -0.7}});
  SampledFunction f3 = hermite_combo(g, {{2, cd(0.0, 1.0)}, {3, 0.4}});
  SampledFunction f4 = hermite_combo(g, {{0, 0.6}, {5, 1.2}});
  const cd lhs = inner_product(wigner_transform(f1, f2), wigner_transform(f3, f4));
  const cd rhs = inner_product(f1, f3) * std::conj(inner_product(f2, f4));
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("diagonal special hermite functions are radial laguerre functions") {
  Grid g = gauss_hermite_grid(1, 48);
  const double c = std::pow(2 * M_PI, -0.5);
  for (int k : {0, 1, 3}) {
    PhaseSpaceFunction Phi = special_hermite({k}, {k}, g);
    for (std::size_t p : {std::size_t(100), std::size_t(777), std::size_t(1500)}) {
      const auto pt = Phi.grid.point(Phi.grid.unflat(p));
      const double s = std::hypot(pt[0], pt[1]);
      CHECK(std::abs(Phi.values(static_cast<Eigen::Index>(p))) ==
            doctest::Approx(c * std::abs(laguerre_phi(k, 0, s))).epsilon(1e-7));
    }
  }
}

TEST_CASE("rank-one rule W(V(f1,f2)) f3 = kappa (f3, f2~) f1~") {
  Grid g = gauss_hermite_grid(1, 48);
  SampledFunction f1 = hermite_combo(g, {{1, 1.0}, {3, 0.5}});
  SampledFunction f2 = hermite_combo(g, {{0, 1.0}, {2, -0.3}});
  SampledFunction f3 = hermite_combo(g, {{2, 1.0}, {1, cd(0.0, 0.8)}});
  PhaseSpaceFunction V = wigner_transform(f1, f2);
  SampledFunction lhs = weyl_apply_kernel(V, f3);
  const cd coef = weyl_rank_one_constant(1) * inner_product(f3, reflect(f2));
  SampledFunction f1r = reflect(f1);
  Eigen::VectorXcd rhs = coef * f1r.values;
  CHECK((lhs.values - rhs).norm() < 1e-7 * (1.0 + rhs.norm()));
}

TEST_CASE("spectral and kernel weyl matrices agree") {
  Grid fg = gauss_hermite_grid(1, 48);
  Grid g = phase_grid_for(fg);
  PhaseSpaceFunction F = sample_phase(g, 1, [](const std::vector<double>& p) {
    return (1.0 + 0.3 * p[0] - 0.2 * p[1] * p[1]) * std::exp(-0.5 * (p[0] * p[0] + p[1] * p[1]));
  });
  WeylOperatorMatrix Ms = weyl_matrix_spectral(F, 5);
  WeylOperatorMatrix Mk = weyl_matrix_kernel(F, 5);
  CHECK((Ms.M - Mk.M).norm() < 1e-7 * (1.0 + Ms.M.norm()));
}

TEST_CASE("twisted eigenrelation for special hermite functions") {
  Grid g = gauss_hermite_grid(1, 48);
  PhaseSpaceFunction P01 = special_hermite({0}, {1}, g);
  PhaseSpaceFunction P12 = special_hermite({1}, {2}, g);
  PhaseSpaceFunction P02 = special_hermite({0}, {2}, g);

  // matched middle index: Phi_{01} x_1 Phi_{12} = sqrt(2 pi) Phi_{02}
  PhaseSpaceFunction T = twisted_convolution(P01, P12, 1.0);
  Eigen::VectorXcd want = std::sqrt(2 * M_PI) * P02.values;
  CHECK((T.values - want).norm() < 1e-6 * want.norm());

  // mismatched middle index annihilates
  PhaseSpaceFunction Z = twisted_convolution(P01, P02, 1.0);
  CHECK(Z.values.norm() < 1e-7);
}

TEST_CASE("lambda = 0 twisted convolution is plain convolution") {
  Grid g = phase_grid_for(gauss_hermite_grid(1, 48));
  PhaseSpaceFunction G = sample_phase(g, 1, [](const std::vector<double>& p) {
    return std::exp(-0.5 * (p[0] * p[0] + p[1] * p[1]));
  });
  PhaseSpaceFunction C = twisted_convolution(G, G, 0.0);
  // (e^{-|z|^2/2} * e^{-|z|^2/2})(z) = pi e^{-|z|^2/4} in two variables
  for (std::size_t p : {std::size_t(0), std::size_t(300), std::size_t(1205)}) {
    const auto pt = C.grid.point(C.grid.unflat(p));
    const double want = M_PI * std::exp(-0.25 * (pt[0] * pt[0] + pt[1] * pt[1]));
    CHECK(std::abs(C.values(static_cast<Eigen::Index>(p)) - want) < 1e-7);
  }
}

TEST_CASE("radial calibration constants") {
  CHECK(calibrate_radial_constant(1) == doctest::Approx(2 * M_PI).epsilon(1e-10));
  CHECK(calibrate_radial_constant(2) == doctest::Approx(0.5 * std::pow(2 * M_PI, 2)).epsilon(1e-10));
}

TEST_CASE("radial laguerre reduction of the ground state") {
  auto phi0 = [](double s) { return laguerre_phi(0, 0, s); };
  WeylOperatorMatrix W = weyl_radial_laguerre(phi0, 4, 1);
  CHECK(std::abs(W.M(0, 0) - cd(2 * M_PI, 0)) < 1e-9);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(W.M(k, k)) < 1e-9);
}

TEST_CASE("radial route matches the spectral route for a radial gaussian") {
  // F(x,u) = e^{-(x^2+u^2)/2}: eigenvalues (4 pi / 3) 3^{-k} in closed form
  auto Fr = [](double s) { return std::exp(-0.5 * s * s); };
  WeylOperatorMatrix Wr = weyl_radial_laguerre(Fr, 5, 1);
  for (int k = 0; k <= 5; ++k)
    CHECK(std::abs(Wr.M(k, k) - cd(4 * M_PI / 3 * std::pow(3.0, -k), 0)) < 1e-9);

  Grid g = phase_grid_for(gauss_hermite_grid(1, 48));
  PhaseSpaceFunction F = sample_phase(g, 1, [](const std::vector<double>& p) {
    return std::exp(-0.5 * (p[0] * p[0] + p[1] * p[1]));
  });
  WeylOperatorMatrix Ws = weyl_matrix_spectral(F, 5);
  CHECK((Ws.M - Wr.M).norm() < 1e-8);
}

TEST_CASE("two-dimensional special hermite is the tensor product") {
  Grid g = gauss_hermite_grid(2, 20);
  PhaseSpaceFunction Phi = special_hermite({1, 0}, {0, 2}, g);
  Grid g1 = gauss_hermite_grid(1, 20);
  PhaseSpaceFunction A = special_hermite({1}, {0}, g1);
  PhaseSpaceFunction B = special_hermite({0}, {2}, g1);
  // spot check: value at a generic multi-point factors
  const std::vector<std::size_t> idx = {3, 7, 11, 15};
  const cd lhs = Phi.values(static_cast<Eigen::Index>(Phi.grid.flat(idx)));
  const cd a = A.values(static_cast<Eigen::Index>(A.grid.flat({3, 11})));
  const cd b = B.values(static_cast<Eigen::Index>(B.grid.flat({7, 15})));
  CHECK(std::abs(lhs - a * b) < 1e-10);
}
