#pragma once

// Tensor-product grids and quadrature rules. All integrals in the library
// are plain weighted sums over these grids; Gauss-Hermite weights are
// stored with the e^{x^2} compensation folded in, so that
//   sum_i w_i g(x_i)  ~  int g(x) dx
// for Gaussian-decaying g.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hkit {

using cd = std::complex<double>;

enum class NodeKind { GaussHermite, Uniform };

struct Axis {
  NodeKind kind = NodeKind::GaussHermite;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, compensated

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Hermite rule for weight e^{-x^2}. Nodes come from Golub-Welsch;
// the compensated weights w_i e^{x_i^2} are formed from the Christoffel
// identity w_i = 1 / sum_{k<m} p_k(x_i)^2 with p_k the orthonormal
// polynomials, i.e. directly as 1 / sum_{k<m} h_k(x_i)^2 in terms of the
// orthonormal Hermite functions. (Multiplying an eigenvector weight by
// e^{x_i^2} instead amplifies eigenvector round-off by up to e^{x_max^2}
// at the edge nodes and is catastrophically inaccurate for m >~ 40.)
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite_nodes(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite_nodes: m must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = std::sqrt(k / 2.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  std::vector<double> x(m), w(m);
  for (int i = 0; i < m; ++i) {
    x[i] = es.eigenvalues()(i);
    // h_0..h_{m-1} at x_i via the stable function recurrence
    const double xi = x[i];
    double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
    double s = h0 * h0;
    double h1 = std::sqrt(2.0) * xi * h0;
    if (m > 1) s += h1 * h1;
    for (int k = 1; k + 1 < m; ++k) {
      const double h2 = xi * std::sqrt(2.0 / (k + 1)) * h1 - std::sqrt(double(k) / (k + 1)) * h0;
      s += h2 * h2;
      h0 = h1;
      h1 = h2;
    }
    w[i] = 1.0 / s;
  }
  return {x, w};
}

inline Axis gauss_hermite_axis(int m, double scale = 1.0) {
  auto [x, w] = gauss_hermite_nodes(m);
  Axis a;
  a.kind = NodeKind::GaussHermite;
  a.nodes.resize(m);
  a.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    a.nodes[i] = x[i] * scale;
    a.weights[i] = w[i] * scale;
  }
  return a;
}

inline Axis uniform_axis(double lo, double hi, int m) {
  if (m < 2 || !(hi > lo)) throw std::invalid_argument("uniform_axis: bad range");
  Axis a;
  a.kind = NodeKind::Uniform;
  const double dx = (hi - lo) / (m - 1);
  a.nodes.resize(m);
  a.weights.assign(m, dx);
  for (int i = 0; i < m; ++i) a.nodes[i] = lo + i * dx;
  a.weights.front() = dx / 2;  // trapezoid ends
  a.weights.back() = dx / 2;
  return a;
}

// Gauss-Legendre on [-1,1], used internally (finite-interval quadratures).
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre_nodes: m must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(m), w(m);
  for (int i = 0; i < m; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = 2.0 * v0 * v0;
  }
  return {x, w};
}

struct Grid {
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& a : axes) s *= a.size();
    return s;
  }

  // row-major flat index of a multi-point
  std::size_t flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (int d = 0; d < dim(); ++d) f = f * axes[d].size() + idx[d];
    return f;
  }

  std::vector<std::size_t> unflat(std::size_t f) const {
    std::vector<std::size_t> idx(dim());
    for (int d = dim() - 1; d >= 0; --d) {
      idx[d] = f % axes[d].size();
      f /= axes[d].size();
    }
    return idx;
  }

  double weight(const std::vector<std::size_t>& idx) const {
    double w = 1;
    for (int d = 0; d < dim(); ++d) w *= axes[d].weights[idx[d]];
    return w;
  }

  std::vector<double> point(const std::vector<std::size_t>& idx) const {
    std::vector<double> p(dim());
    for (int d = 0; d < dim(); ++d) p[d] = axes[d].nodes[idx[d]];
    return p;
  }

  bool symmetric(double tol = 1e-12) const {
    for (const auto& a : axes) {
      const std::size_t m = a.size();
      for (std::size_t i = 0; i < m; ++i)
        if (std::abs(a.nodes[i] + a.nodes[m - 1 - i]) > tol) return false;
    }
    return true;
  }

  bool same_nodes(const Grid& o, double tol = 1e-12) const {
    if (dim() != o.dim()) return false;
    for (int d = 0; d < dim(); ++d) {
      if (axes[d].size() != o.axes[d].size()) return false;
      for (std::size_t i = 0; i < axes[d].size(); ++i)
        if (std::abs(axes[d].nodes[i] - o.axes[d].nodes[i]) > tol) return false;
    }
    return true;
  }

  void validate() const {
    if (axes.empty()) throw std::invalid_argument("Grid: no axes");
    for (const auto& a : axes) {
      if (a.nodes.size() != a.weights.size() || a.nodes.empty())
        throw std::invalid_argument("Grid: node/weight size mismatch");
      for (std::size_t i = 0; i + 1 < a.nodes.size(); ++i)
        if (!(a.nodes[i] < a.nodes[i + 1]))
          throw std::invalid_argument("Grid: nodes not strictly increasing");
      for (double w : a.weights)
        if (!(w > 0)) throw std::invalid_argument("Grid: weights must be positive");
    }
  }
};

inline Grid gauss_hermite_grid(int dim, int m, double scale = 1.0) {
  Grid g;
  Axis a = gauss_hermite_axis(m, scale);
  g.axes.assign(dim, a);
  return g;
}

// A complex-valued function sampled on a grid over R^n.
struct SampledFunction {
  Grid grid;
  Eigen::VectorXcd values;

  int dim() const { return grid.dim(); }

  void check() const {
    if (static_cast<std::size_t>(values.size()) != grid.size())
      throw std::invalid_argument("SampledFunction: value count does not match grid");
  }
};

// A function on phase space R^{2n}; the first n axes are the x-block,
// the last n the u-block.
struct PhaseSpaceFunction {
  Grid grid;
  int n = 1;
  Eigen::VectorXcd values;

  void check() const {
    if (grid.dim() != 2 * n)
      throw std::invalid_argument("PhaseSpaceFunction: grid must have 2n axes");
    if (static_cast<std::size_t>(values.size()) != grid.size())
      throw std::invalid_argument("PhaseSpaceFunction: value count does not match grid");
  }
};

template <class F>
SampledFunction sample(const Grid& g, F&& fn) {
  SampledFunction f;
  f.grid = g;
  f.values.resize(static_cast<Eigen::Index>(g.size()));
  const std::size_t total = g.size();
  for (std::size_t i = 0; i < total; ++i) f.values(static_cast<Eigen::Index>(i)) = cd(fn(g.point(g.unflat(i))));
  return f;
}

template <class F>
PhaseSpaceFunction sample_phase(const Grid& g, int n, F&& fn) {
  PhaseSpaceFunction f;
  f.grid = g;
  f.n = n;
  f.values.resize(static_cast<Eigen::Index>(g.size()));
  const std::size_t total = g.size();
  for (std::size_t i = 0; i < total; ++i) f.values(static_cast<Eigen::Index>(i)) = cd(fn(g.point(g.unflat(i))));
  return f;
}

// L^2 pairing (f, g) = int f conj(g).
inline cd inner_product(const SampledFunction& f, const SampledFunction& g) {
  if (!f.grid.same_nodes(g.grid))
    throw std::invalid_argument("inner_product: grids do not match");
  cd acc = 0;
  const std::size_t total = f.grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    const auto idx = f.grid.unflat(i);
    acc += f.grid.weight(idx) * f.values(static_cast<Eigen::Index>(i)) *
           std::conj(g.values(static_cast<Eigen::Index>(i)));
  }
  return acc;
}

inline cd inner_product(const PhaseSpaceFunction& f, const PhaseSpaceFunction& g) {
  if (!f.grid.same_nodes(g.grid))
    throw std::invalid_argument("inner_product: grids do not match");
  cd acc = 0;
  const std::size_t total = f.grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    const auto idx = f.grid.unflat(i);
    acc += f.grid.weight(idx) * f.values(static_cast<Eigen::Index>(i)) *
           std::conj(g.values(static_cast<Eigen::Index>(i)));
  }
  return acc;
}

inline double l2_norm(const SampledFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f)));
}

inline double l2_norm(const PhaseSpaceFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f)));
}

}  // namespace hkit
