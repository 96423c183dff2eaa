#pragma once

// Fourier-Wigner transform, special Hermite functions, the Weyl transform
// in kernel and spectral form, twisted convolution, and the radial
// Laguerre reduction.
//
// Conventions (all integrals are the plain quadrature sums of grid.hpp):
//   pi(x,u)phi(xi) = e^{i(x.xi + x.u/2)} phi(xi + u)
//   V(phi1,phi2)(x,u) = (2pi)^{-n/2} int e^{i(x.xi + x.u/2)} phi1(xi+u) conj(phi2(xi)) dxi
//   W(F)phi = int F(x,u) pi(x,u)phi dx du
// With these definitions Moyal's identity is exact and
//   W(V(phi1,phi2)) phi3 = kappa_n (phi3, phi2~) phi1~,   kappa_n = (2pi)^{n/2}.
// The kappa_n factor is forced by the V normalization; it is verified
// numerically in the tests and carried explicitly everywhere.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/transforms.hpp"

namespace hkit {

inline double weyl_rank_one_constant(int n) { return std::pow(2 * M_PI, 0.5 * n); }

inline Grid phase_grid_for(const Grid& fn_grid) {
  Grid g;
  g.axes = fn_grid.axes;
  g.axes.insert(g.axes.end(), fn_grid.axes.begin(), fn_grid.axes.end());
  return g;
}

namespace detail {

inline int default_synth_degree(const Grid& g) {
  std::size_t m = g.axes[0].size();
  for (const auto& a : g.axes) m = std::min(m, a.size());
  return std::min<int>(40, static_cast<int>(0.6 * static_cast<double>(m)));
}

}  // namespace detail

// V(phi1, phi2) on the tensor-square of the function grid (or a supplied
// phase grid). phi1 is evaluated off-grid through a band-limited Hermite
// synthesis of degree Nsynth.
inline PhaseSpaceFunction wigner_transform(const SampledFunction& phi1, const SampledFunction& phi2,
                                           int Nsynth = -1) {
  phi1.check();
  phi2.check();
  if (!phi1.grid.same_nodes(phi2.grid))
    throw std::invalid_argument("wigner_transform: grids do not match");
  const int n = phi1.dim();
  if (Nsynth < 0) Nsynth = detail::default_synth_degree(phi1.grid);
  const HermiteCoefficients c1 = hermite_coeffs(phi1, Nsynth);

  PhaseSpaceFunction V;
  V.n = n;
  V.grid = phase_grid_for(phi1.grid);
  V.values.resize(static_cast<Eigen::Index>(V.grid.size()));

  if (n == 1) {
    const auto& ax = phi1.grid.axes[0];
    const Eigen::Index m = static_cast<Eigen::Index>(ax.size());
    const double c = std::pow(2 * M_PI, -0.5);
    for (Eigen::Index ju = 0; ju < m; ++ju) {
      const double u = ax.nodes[static_cast<std::size_t>(ju)];
      // phi1(xi + u) by synthesis
      Eigen::VectorXcd p1(m);
      for (Eigen::Index k = 0; k < m; ++k)
        p1(k) = hermite_synthesis(c1, {cd(ax.nodes[static_cast<std::size_t>(k)] + u, 0.0)});
      for (Eigen::Index ix = 0; ix < m; ++ix) {
        const double x = ax.nodes[static_cast<std::size_t>(ix)];
        cd acc = 0;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double xi = ax.nodes[static_cast<std::size_t>(k)];
          acc += ax.weights[static_cast<std::size_t>(k)] * std::exp(cd(0.0, x * xi + 0.5 * x * u)) * p1(k) *
                 std::conj(phi2.values(k));
        }
        V.values(ix * m + ju) = c * acc;
      }
    }
  } else if (n == 2) {
    const std::size_t total = V.grid.size();
    const double c = std::pow(2 * M_PI, -1.0);
    const auto& g = phi1.grid;
    const std::size_t mq = g.size();
    for (std::size_t p = 0; p < total; ++p) {
      const auto pt = V.grid.point(V.grid.unflat(p));
      const double x0 = pt[0], x1 = pt[1], u0 = pt[2], u1 = pt[3];
      cd acc = 0;
      for (std::size_t q = 0; q < mq; ++q) {
        const auto qi = g.unflat(q);
        const auto xi = g.point(qi);
        const double ph = x0 * xi[0] + x1 * xi[1] + 0.5 * (x0 * u0 + x1 * u1);
        acc += g.weight(qi) * std::exp(cd(0.0, ph)) *
               hermite_synthesis(c1, {cd(xi[0] + u0, 0.0), cd(xi[1] + u1, 0.0)}) *
               std::conj(phi2.values(static_cast<Eigen::Index>(q)));
      }
      V.values(static_cast<Eigen::Index>(p)) = c * acc;
    }
  } else {
    throw std::invalid_argument("wigner_transform: only n = 1, 2 supported");
  }
  return V;
}

namespace detail {

// One-dimensional special Hermite value V(h_a, h_b)(x, u) by direct
// quadrature (exact Hermite evaluation, no synthesis truncation).
inline cd special_hermite_1d(int a, int b, double x, double u, const Axis& quad) {
  const double c = std::pow(2 * M_PI, -0.5);
  cd acc = 0;
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const double xi = quad.nodes[k];
    const auto ha = hermite_sequence<double>(a, xi + u);
    const auto hb = hermite_sequence<double>(b, xi);
    acc += quad.weights[k] * std::exp(cd(0.0, x * xi + 0.5 * x * u)) * ha[static_cast<std::size_t>(a)] *
           hb[static_cast<std::size_t>(b)];
  }
  return c * acc;
}

}  // namespace detail

// Phi_{alpha,beta} = V(Phi_alpha, Phi_beta); tensor product of 1-d factors.
inline PhaseSpaceFunction special_hermite(const MultiIndex& alpha, const MultiIndex& beta, const Grid& fn_grid,
                                          const Axis* quad = nullptr) {
  const int n = fn_grid.dim();
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
    throw std::invalid_argument("special_hermite: index dimension mismatch");
  const Axis& q = quad ? *quad : fn_grid.axes[0];

  PhaseSpaceFunction V;
  V.n = n;
  V.grid = phase_grid_for(fn_grid);
  V.values.resize(static_cast<Eigen::Index>(V.grid.size()));

  // cache the 1-d factors per axis on the axis node set
  std::vector<Eigen::MatrixXcd> fac(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    const auto& ax = fn_grid.axes[static_cast<std::size_t>(d)];
    const Eigen::Index m = static_cast<Eigen::Index>(ax.size());
    fac[static_cast<std::size_t>(d)].resize(m, m);
    for (Eigen::Index ix = 0; ix < m; ++ix)
      for (Eigen::Index ju = 0; ju < m; ++ju)
        fac[static_cast<std::size_t>(d)](ix, ju) = detail::special_hermite_1d(
            alpha[static_cast<std::size_t>(d)], beta[static_cast<std::size_t>(d)],
            ax.nodes[static_cast<std::size_t>(ix)], ax.nodes[static_cast<std::size_t>(ju)], q);
  }

  const std::size_t total = V.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    const auto idx = V.grid.unflat(p);
    cd v = 1;
    for (int d = 0; d < n; ++d)
      v *= fac[static_cast<std::size_t>(d)](static_cast<Eigen::Index>(idx[static_cast<std::size_t>(d)]),
                                            static_cast<Eigen::Index>(idx[static_cast<std::size_t>(d + n)]));
    V.values(static_cast<Eigen::Index>(p)) = v;
  }
  return V;
}

// W(F)phi by the double quadrature
//   (W(F)phi)(xi) = sum_{x,u} w F(x,u) e^{i(x.xi + x.u/2)} phi(xi + u),
// with phi evaluated off-grid through Hermite synthesis.
inline SampledFunction weyl_apply_kernel(const PhaseSpaceFunction& F, const SampledFunction& phi,
                                         int Nsynth = -1) {
  F.check();
  phi.check();
  if (F.n != phi.dim()) throw std::invalid_argument("weyl_apply_kernel: dimension mismatch");
  if (F.n != 1) throw std::invalid_argument("weyl_apply_kernel: implemented for n = 1");
  if (Nsynth < 0) Nsynth = detail::default_synth_degree(phi.grid);
  const HermiteCoefficients c = hermite_coeffs(phi, Nsynth);

  const auto& axx = F.grid.axes[0];
  const auto& axu = F.grid.axes[1];
  const auto& axf = phi.grid.axes[0];
  const Eigen::Index mx = static_cast<Eigen::Index>(axx.size());
  const Eigen::Index mu = static_cast<Eigen::Index>(axu.size());
  const Eigen::Index mf = static_cast<Eigen::Index>(axf.size());

  // phi(xi_i + u_k)
  Eigen::MatrixXcd P(mf, mu);
  for (Eigen::Index i = 0; i < mf; ++i)
    for (Eigen::Index k = 0; k < mu; ++k)
      P(i, k) = hermite_synthesis(c, {cd(axf.nodes[static_cast<std::size_t>(i)] + axu.nodes[static_cast<std::size_t>(k)], 0.0)});

  SampledFunction out;
  out.grid = phi.grid;
  out.values = Eigen::VectorXcd::Zero(mf);
  for (Eigen::Index i = 0; i < mf; ++i) {
    const double xi = axf.nodes[static_cast<std::size_t>(i)];
    cd acc = 0;
    for (Eigen::Index jx = 0; jx < mx; ++jx) {
      const double x = axx.nodes[static_cast<std::size_t>(jx)];
      const double wx = axx.weights[static_cast<std::size_t>(jx)];
      for (Eigen::Index ku = 0; ku < mu; ++ku) {
        const double u = axu.nodes[static_cast<std::size_t>(ku)];
        acc += wx * axu.weights[static_cast<std::size_t>(ku)] * F.values(jx * mu + ku) *
               std::exp(cd(0.0, x * xi + 0.5 * x * u)) * P(i, ku);
      }
    }
    out.values(i) = acc;
  }
  return out;
}

// Truncated matrix of W(F) in the Hermite basis, M[alpha,beta] = (W(F)Phi_beta, Phi_alpha).
struct WeylOperatorMatrix {
  int n = 1;
  int degree = 0;
  std::vector<MultiIndex> indices;  // shared row/column index set, |alpha| <= N
  Eigen::MatrixXcd M;

  double operator_norm_estimate() const { return M.norm(); }  // Frobenius upper bound
};

// Spectral assembly from the rank-one rule:
//   M[alpha,beta] = kappa_n (-1)^{|alpha|+|beta|} (F, Phi_{alpha,beta}).
inline WeylOperatorMatrix weyl_matrix_spectral(const PhaseSpaceFunction& F, int N) {
  F.check();
  WeylOperatorMatrix W;
  W.n = F.n;
  W.degree = N;
  W.indices = multi_indices(F.n, N);
  const std::size_t nn = W.indices.size();
  W.M.resize(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(nn));
  const double kap = weyl_rank_one_constant(F.n);

  Grid fn_grid;
  fn_grid.axes.assign(F.grid.axes.begin(), F.grid.axes.begin() + F.n);
  for (std::size_t a = 0; a < nn; ++a) {
    for (std::size_t b = 0; b < nn; ++b) {
      const PhaseSpaceFunction Phi = special_hermite(W.indices[a], W.indices[b], fn_grid);
      const double sgn = (total_degree(W.indices[a]) + total_degree(W.indices[b])) % 2 == 0 ? 1.0 : -1.0;
      W.M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = kap * sgn * inner_product(F, Phi);
    }
  }
  return W;
}

// Kernel-route assembly: apply W(F) to each Phi_beta and project.
inline WeylOperatorMatrix weyl_matrix_kernel(const PhaseSpaceFunction& F, int N) {
  F.check();
  if (F.n != 1) throw std::invalid_argument("weyl_matrix_kernel: implemented for n = 1");
  WeylOperatorMatrix W;
  W.n = F.n;
  W.degree = N;
  W.indices = multi_indices(F.n, N);
  const std::size_t nn = W.indices.size();
  W.M.resize(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(nn));

  Grid fn_grid;
  fn_grid.axes.assign(F.grid.axes.begin(), F.grid.axes.begin() + F.n);
  for (std::size_t b = 0; b < nn; ++b) {
    SampledFunction phib = sample(fn_grid, [&](const std::vector<double>& p) {
      return hermite_eval(W.indices[b], {cd(p[0], 0.0)});
    });
    const SampledFunction img = weyl_apply_kernel(F, phib);
    const HermiteCoefficients ci = hermite_coeffs(img, N);
    for (std::size_t a = 0; a < nn; ++a)
      W.M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = ci.at(W.indices[a]);
  }
  return W;
}

// lambda-twisted convolution
//   (F *_lambda G)(x,u) = int F(x-y,u-v) G(y,v) e^{i lambda (u.y - v.x)/2} dy dv.
// lambda = 0 is plain convolution. F is evaluated off-grid through a 2-d
// Hermite synthesis of degree Nsynth per axis.
inline PhaseSpaceFunction twisted_convolution(const PhaseSpaceFunction& F, const PhaseSpaceFunction& G,
                                              double lambda, int Nsynth = -1) {
  F.check();
  G.check();
  if (F.n != 1 || G.n != 1) throw std::invalid_argument("twisted_convolution: implemented for n = 1");
  if (!F.grid.same_nodes(G.grid)) throw std::invalid_argument("twisted_convolution: grids do not match");
  if (Nsynth < 0) Nsynth = detail::default_synth_degree(F.grid);

  const auto& axx = F.grid.axes[0];
  const auto& axu = F.grid.axes[1];
  const Eigen::Index mx = static_cast<Eigen::Index>(axx.size());
  const Eigen::Index mu = static_cast<Eigen::Index>(axu.size());

  // 2-d Hermite coefficients of F
  SampledFunction Ff;
  Ff.grid.axes = {axx, axu};
  Ff.values = F.values;
  const HermiteCoefficients cF = hermite_coeffs(Ff, Nsynth);
  // repack into a dense (N+1)x(N+1) table for fast tensor synthesis
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(Nsynth + 1, Nsynth + 1);
  for (std::size_t i = 0; i < cF.indices.size(); ++i)
    C(cF.indices[i][0], cF.indices[i][1]) = cF.c(static_cast<Eigen::Index>(i));

  // difference-point Hermite tables for the second axis: h_b(u_j - v_l)
  Eigen::MatrixXcd H2(Nsynth + 1, mu * mu);
  for (Eigen::Index j = 0; j < mu; ++j)
    for (Eigen::Index l = 0; l < mu; ++l) {
      auto h = hermite_sequence<double>(Nsynth, axu.nodes[static_cast<std::size_t>(j)] - axu.nodes[static_cast<std::size_t>(l)]);
      for (int b = 0; b <= Nsynth; ++b) H2(b, j * mu + l) = h[static_cast<std::size_t>(b)];
    }

  PhaseSpaceFunction out = F;
  out.values = Eigen::VectorXcd::Zero(mx * mu);

  Eigen::MatrixXcd G2(mx, mu);
  for (Eigen::Index k = 0; k < mx; ++k)
    for (Eigen::Index l = 0; l < mu; ++l) G2(k, l) = G.values(k * mu + l);

  for (Eigen::Index i = 0; i < mx; ++i) {
    const double x = axx.nodes[static_cast<std::size_t>(i)];
    // h_a(x_i - y_k) for all k
    Eigen::MatrixXcd H1(Nsynth + 1, mx);
    for (Eigen::Index k = 0; k < mx; ++k) {
      auto h = hermite_sequence<double>(Nsynth, x - axx.nodes[static_cast<std::size_t>(k)]);
      for (int a = 0; a <= Nsynth; ++a) H1(a, k) = h[static_cast<std::size_t>(a)];
    }
    // FD(k, (j,l)) = F(x_i - y_k, u_j - v_l)
    const Eigen::MatrixXcd FD = H1.transpose() * C * H2;  // (mx, mu*mu)
    for (Eigen::Index j = 0; j < mu; ++j) {
      const double u = axu.nodes[static_cast<std::size_t>(j)];
      cd acc = 0;
      for (Eigen::Index k = 0; k < mx; ++k) {
        const double y = axx.nodes[static_cast<std::size_t>(k)];
        const double wy = axx.weights[static_cast<std::size_t>(k)];
        cd inner = 0;
        for (Eigen::Index l = 0; l < mu; ++l) {
          const double v = axu.nodes[static_cast<std::size_t>(l)];
          inner += axu.weights[static_cast<std::size_t>(l)] * FD(k, j * mu + l) * G2(k, l) *
                   std::exp(cd(0.0, 0.5 * lambda * (u * y - v * x)));
        }
        acc += wy * inner;
      }
      out.values(i * mu + j) = acc;
    }
  }
  return out;
}

// Radial Laguerre reduction. For radial F (a function of s = |(x,u)|),
//   W(F) = c_n sum_k k!/(k+n-1)! ( int_0^inf F(s) phi_k^{n-1}(s) s^{2n-1} ds ) P_k.
// The constant c_n is not assumed; calibrate_radial_constant pins it by
// requiring W(phi_0^{n-1}) = (2 pi)^n P_0.
inline double radial_laguerre_integral(const std::function<double(double)>& F, int k, int n,
                                       double s_max = 30.0, int quad_order = 240) {
  auto [x, w] = gauss_legendre_nodes(quad_order);
  double acc = 0;
  for (int i = 0; i < quad_order; ++i) {
    const double s = 0.5 * s_max * (x[static_cast<std::size_t>(i)] + 1.0);
    acc += 0.5 * s_max * w[static_cast<std::size_t>(i)] * F(s) * laguerre_phi(k, n - 1, s) * std::pow(s, 2 * n - 1);
  }
  return acc;
}

inline double calibrate_radial_constant(int n) {
  auto phi0 = [n](double s) { return laguerre_phi(0, n - 1, s); };
  const double I0 = radial_laguerre_integral(phi0, 0, n);
  double fact = 1.0;  // (n-1)!
  for (int j = 2; j <= n - 1; ++j) fact *= j;
  // level-0 coefficient is c_n * (0!/(n-1)!) * I0 = (2 pi)^n
  return std::pow(2 * M_PI, n) * fact / I0;
}

inline WeylOperatorMatrix weyl_radial_laguerre(const std::function<double(double)>& F_radial, int N, int n) {
  const double cn = calibrate_radial_constant(n);
  WeylOperatorMatrix W;
  W.n = n;
  W.degree = N;
  W.indices = multi_indices(n, N);
  const std::size_t nn = W.indices.size();
  W.M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(nn));
  std::vector<double> lam(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    const double I = radial_laguerre_integral(F_radial, k, n);
    if (!std::isfinite(I)) throw std::invalid_argument("weyl_radial_laguerre: divergent radial integral");
    double ratio = 1.0;  // k!/(k+n-1)!
    for (int j = k + 1; j <= k + n - 1; ++j) ratio /= j;
    lam[static_cast<std::size_t>(k)] = cn * ratio * I;
  }
  for (std::size_t a = 0; a < nn; ++a)
    W.M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = lam[static_cast<std::size_t>(total_degree(W.indices[a]))];
  return W;
}

}  // namespace hkit
