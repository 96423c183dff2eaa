#pragma once

// Hermite functions, Laguerre functions, the Mehler kernel, and
// Hermite analysis/synthesis on coefficient tables.
//
// One-dimensional Hermite functions are generated by the normalized
// three-term recurrence
//   h_0(x) = pi^{-1/4} e^{-x^2/2}
//   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),
// which keeps them orthonormal in L^2(R). The same recurrence is run at
// complex arguments for the entire extensions. For large |Im z| the
// "poly part" p_k(z) = h_k(z) e^{z^2/2} (a polynomial) is the stable
// object; evaluate it and reattach the Gaussian explicitly.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hkit/grid.hpp"

namespace hkit {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

// All multi-indices with |alpha| <= N in dimension n, graded ordering.
inline std::vector<MultiIndex> multi_indices(int n, int N) {
  std::vector<MultiIndex> out;
  if (n == 1) {
    for (int k = 0; k <= N; ++k) out.push_back({k});
  } else if (n == 2) {
    for (int d = 0; d <= N; ++d)
      for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  } else {
    throw std::invalid_argument("multi_indices: only n = 1, 2 supported");
  }
  return out;
}

// h_0..h_N at a single (real or complex) point.
template <class T>
std::vector<T> hermite_sequence(int N, T x) {
  std::vector<T> h(static_cast<std::size_t>(N) + 1);
  h[0] = std::pow(M_PI, -0.25) * std::exp(-x * x * 0.5);
  if (N >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 1; k < N; ++k)
    h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
  return h;
}

// p_k(z) = h_k(z) e^{z^2/2}; same recurrence, Gaussian stripped.
template <class T>
std::vector<T> hermite_polypart_sequence(int N, T x) {
  std::vector<T> h(static_cast<std::size_t>(N) + 1);
  h[0] = std::pow(M_PI, -0.25);
  if (N >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 1; k < N; ++k)
    h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] - std::sqrt(double(k) / (k + 1)) * h[k - 1];
  return h;
}

// Table H(k, j) = h_k(pts[j]) for k = 0..N.
inline Eigen::MatrixXcd hermite_table(int N, const Eigen::VectorXcd& pts) {
  Eigen::MatrixXcd H(N + 1, pts.size());
  for (Eigen::Index j = 0; j < pts.size(); ++j) {
    auto h = hermite_sequence<cd>(N, pts(j));
    for (int k = 0; k <= N; ++k) H(k, j) = h[k];
  }
  return H;
}

inline Eigen::MatrixXd hermite_table_real(int N, const std::vector<double>& pts) {
  Eigen::MatrixXd H(N + 1, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    auto h = hermite_sequence<double>(N, pts[j]);
    for (int k = 0; k <= N; ++k) H(k, static_cast<Eigen::Index>(j)) = h[k];
  }
  return H;
}

// Phi_alpha at one point of C^n (product of 1-d factors).
inline cd hermite_eval(const MultiIndex& alpha, const std::vector<cd>& z) {
  if (alpha.size() != z.size()) throw std::invalid_argument("hermite_eval: dimension mismatch");
  cd v = 1;
  for (std::size_t d = 0; d < z.size(); ++d) {
    auto h = hermite_sequence<cd>(alpha[d], z[d]);
    v *= h[static_cast<std::size_t>(alpha[d])];
  }
  return v;
}

// Overflow-guarded evaluation: returns (mantissa, s) with
// Phi_alpha(z) = mantissa * e^{s}. Uses the poly part, whose growth is
// only |z|^k, and keeps the Gaussian factor in the exponent s.
struct ScaledValue {
  cd mantissa;
  double log_scale;
  cd value() const { return mantissa * std::exp(log_scale); }
};

inline ScaledValue hermite_eval_scaled(const MultiIndex& alpha, const std::vector<cd>& z) {
  cd poly = 1;
  cd zsq = 0;
  for (std::size_t d = 0; d < z.size(); ++d) {
    auto p = hermite_polypart_sequence<cd>(alpha[d], z[d]);
    poly *= p[static_cast<std::size_t>(alpha[d])];
    zsq += z[d] * z[d];
  }
  // Phi = poly * e^{-z^2/2}; move the whole real exponent into log_scale
  const cd expo = -zsq * 0.5;
  return {poly * std::exp(cd(0.0, expo.imag())), expo.real()};
}

// Hermite coefficient table c_alpha = (f, Phi_alpha), |alpha| <= N.
struct HermiteCoefficients {
  int dim = 1;
  int degree = 0;  // N
  std::vector<MultiIndex> indices;
  Eigen::VectorXcd c;
  bool aliasing_warning = false;

  std::size_t find(const MultiIndex& a) const {
    for (std::size_t i = 0; i < indices.size(); ++i)
      if (indices[i] == a) return i;
    throw std::invalid_argument("HermiteCoefficients: index out of table");
  }

  cd at(const MultiIndex& a) const { return c(static_cast<Eigen::Index>(find(a))); }

  double sum_abs2() const { return c.squaredNorm(); }
};

inline HermiteCoefficients zero_coefficients(int n, int N) {
  HermiteCoefficients h;
  h.dim = n;
  h.degree = N;
  h.indices = multi_indices(n, N);
  h.c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(h.indices.size()));
  return h;
}

inline HermiteCoefficients hermite_coeffs(const SampledFunction& f, int N) {
  f.check();
  const int n = f.dim();
  HermiteCoefficients out = zero_coefficients(n, N);

  // aliasing heuristic: the grid cannot resolve degrees much past 0.6*nodes
  std::size_t min_nodes = f.grid.axes[0].size();
  for (const auto& a : f.grid.axes) min_nodes = std::min(min_nodes, a.size());
  if (N > 0.6 * static_cast<double>(min_nodes)) out.aliasing_warning = true;

  // per-axis tables, then tensor contraction
  std::vector<Eigen::MatrixXd> H;
  for (const auto& a : f.grid.axes) H.push_back(hermite_table_real(N, a.nodes));

  if (n == 1) {
    const auto& ax = f.grid.axes[0];
    for (std::size_t i = 0; i < out.indices.size(); ++i) {
      const int k = out.indices[i][0];
      cd acc = 0;
      for (std::size_t j = 0; j < ax.size(); ++j)
        acc += ax.weights[j] * f.values(static_cast<Eigen::Index>(j)) * H[0](k, static_cast<Eigen::Index>(j));
      out.c(static_cast<Eigen::Index>(i)) = acc;
    }
  } else if (n == 2) {
    const auto& ax0 = f.grid.axes[0];
    const auto& ax1 = f.grid.axes[1];
    const Eigen::Index m0 = static_cast<Eigen::Index>(ax0.size());
    const Eigen::Index m1 = static_cast<Eigen::Index>(ax1.size());
    Eigen::MatrixXcd F(m0, m1);
    for (Eigen::Index i = 0; i < m0; ++i)
      for (Eigen::Index j = 0; j < m1; ++j) F(i, j) = f.values(i * m1 + j);
    Eigen::MatrixXd W0 = H[0];
    Eigen::MatrixXd W1 = H[1];
    for (Eigen::Index j = 0; j < m0; ++j) W0.col(j) *= ax0.weights[static_cast<std::size_t>(j)];
    for (Eigen::Index j = 0; j < m1; ++j) W1.col(j) *= ax1.weights[static_cast<std::size_t>(j)];
    Eigen::MatrixXcd C = W0 * F * W1.transpose();  // C(a,b)
    for (std::size_t i = 0; i < out.indices.size(); ++i)
      out.c(static_cast<Eigen::Index>(i)) = C(out.indices[i][0], out.indices[i][1]);
  } else {
    throw std::invalid_argument("hermite_coeffs: only n = 1, 2 supported");
  }
  return out;
}

// sum_{|alpha|<=N} c_alpha Phi_alpha(z) — the holomorphic extension mechanism.
inline cd hermite_synthesis(const HermiteCoefficients& h, const std::vector<cd>& z) {
  if (static_cast<int>(z.size()) != h.dim)
    throw std::invalid_argument("hermite_synthesis: dimension mismatch");
  std::vector<std::vector<cd>> per_axis;
  for (int d = 0; d < h.dim; ++d) per_axis.push_back(hermite_sequence<cd>(h.degree, z[d]));
  cd acc = 0;
  for (std::size_t i = 0; i < h.indices.size(); ++i) {
    cd b = 1;
    for (int d = 0; d < h.dim; ++d) b *= per_axis[d][static_cast<std::size_t>(h.indices[i][d])];
    acc += h.c(static_cast<Eigen::Index>(i)) * b;
  }
  return acc;
}

// Synthesis on a whole grid (real points).
inline SampledFunction hermite_synthesis_grid(const HermiteCoefficients& h, const Grid& g) {
  SampledFunction f;
  f.grid = g;
  f.values.resize(static_cast<Eigen::Index>(g.size()));
  std::vector<Eigen::MatrixXd> H;
  for (const auto& a : g.axes) H.push_back(hermite_table_real(h.degree, a.nodes));
  const std::size_t total = g.size();
  for (std::size_t p = 0; p < total; ++p) {
    const auto idx = g.unflat(p);
    cd acc = 0;
    for (std::size_t i = 0; i < h.indices.size(); ++i) {
      double b = 1;
      for (int d = 0; d < h.dim; ++d)
        b *= H[static_cast<std::size_t>(d)](h.indices[i][d], static_cast<Eigen::Index>(idx[static_cast<std::size_t>(d)]));
      acc += h.c(static_cast<Eigen::Index>(i)) * b;
    }
    f.values(static_cast<Eigen::Index>(p)) = acc;
  }
  return f;
}

// Spectral projection P_k: keep only |alpha| = k.
inline HermiteCoefficients projection_Pk(const HermiteCoefficients& h, int k) {
  if (k > h.degree) throw std::invalid_argument("projection_Pk: k exceeds truncation");
  HermiteCoefficients out = h;
  for (std::size_t i = 0; i < out.indices.size(); ++i)
    if (total_degree(out.indices[i]) != k) out.c(static_cast<Eigen::Index>(i)) = 0;
  return out;
}

inline double level_energy(const HermiteCoefficients& h, int k) {
  double s = 0;
  for (std::size_t i = 0; i < h.indices.size(); ++i)
    if (total_degree(h.indices[i]) == k) s += std::norm(h.c(static_cast<Eigen::Index>(i)));
  return s;
}

// Generalized Laguerre polynomial L_k^a(x); valid at negative x too
// (all recurrence terms then have one sign, so it is stable there).
inline double laguerre_eval(int k, int a, double x) {
  if (k < 0 || a < 0) throw std::invalid_argument("laguerre_eval: k, a must be >= 0");
  if (k == 0) return 1.0;
  double L0 = 1.0, L1 = 1.0 + a - x;
  for (int j = 1; j < k; ++j) {
    const double L2 = ((2.0 * j + a + 1.0 - x) * L1 - (j + a) * L0) / (j + 1.0);
    L0 = L1;
    L1 = L2;
  }
  return L1;
}

// Laguerre function phi_k^a(s) = L_k^a(s^2/2) e^{-s^2/4}.
inline double laguerre_phi(int k, int a, double s) {
  return laguerre_eval(k, a, 0.5 * s * s) * std::exp(-0.25 * s * s);
}

// phi_k^{n-1} evaluated at the imaginary point (2iy, 2iv):
// the argument s^2 becomes -4(y^2+v^2), giving L_k^{n-1}(-2 rho2) e^{rho2}
// with rho2 = y^2 + v^2. This is the membership weight of the analytic spaces.
inline double laguerre_phi_imag(int k, int a, double rho2) {
  return laguerre_eval(k, a, -2.0 * rho2) * std::exp(rho2);
}

// Kernel of e^{-tH}: K_t(x,y) = prod_j (2 pi sinh 2t)^{-1/2}
//   exp(-coth(2t)(x_j^2+y_j^2)/2 + x_j y_j / sinh(2t)).
// Satisfies int K_t(x,y) Phi_alpha(y) dy = e^{-(2|alpha|+n)t} Phi_alpha(x).
inline double mehler_kernel(double t, const std::vector<double>& x, const std::vector<double>& y) {
  if (!(t > 0)) throw std::invalid_argument("mehler_kernel: t must be > 0");
  if (x.size() != y.size()) throw std::invalid_argument("mehler_kernel: dimension mismatch");
  const double sh = std::sinh(2 * t);
  const double ch = std::cosh(2 * t);
  double v = 1;
  for (std::size_t d = 0; d < x.size(); ++d) {
    v *= std::pow(2 * M_PI * sh, -0.5) *
         std::exp(-0.5 * (ch / sh) * (x[d] * x[d] + y[d] * y[d]) + x[d] * y[d] / sh);
  }
  return v;
}

}  // namespace hkit
