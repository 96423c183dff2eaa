#pragma once

// Fourier-type transforms as dense quadrature operators, one axis at a
// time, so that nonuniform Gauss-Hermite grids work everywhere.
// Normalization is the symmetric one,
//   Ff(xi) = (2 pi)^{-n/2} int f(x) e^{-i x.xi} dx,
// the unique convention for which F Phi_alpha = (-i)^{|alpha|} Phi_alpha.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hkit/grid.hpp"

namespace hkit {

namespace detail {

// Dense 1-d transform matrix on an axis: out(i) = (2pi)^{-1/2} sum_j w_j in(j) e^{sign i x_j x_i}.
inline Eigen::MatrixXcd fourier_axis_matrix(const Axis& a, double sign) {
  const Eigen::Index m = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd M(m, m);
  const double c = std::pow(2 * M_PI, -0.5);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      M(i, j) = c * a.weights[static_cast<std::size_t>(j)] *
                std::exp(cd(0.0, sign * a.nodes[static_cast<std::size_t>(j)] * a.nodes[static_cast<std::size_t>(i)]));
  return M;
}

// Apply a matrix along axis d of a row-major flattened tensor.
inline void apply_along_axis(Eigen::VectorXcd& vals, const Grid& g, int d, const Eigen::MatrixXcd& M) {
  const std::size_t nd = g.axes[static_cast<std::size_t>(d)].size();
  std::size_t inner = 1;
  for (int e = d + 1; e < g.dim(); ++e) inner *= g.axes[static_cast<std::size_t>(e)].size();
  std::size_t outer = 1;
  for (int e = 0; e < d; ++e) outer *= g.axes[static_cast<std::size_t>(e)].size();

  Eigen::VectorXcd slice(static_cast<Eigen::Index>(nd));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * nd * inner + in;
      for (std::size_t k = 0; k < nd; ++k) slice(static_cast<Eigen::Index>(k)) = vals(static_cast<Eigen::Index>(base + k * inner));
      Eigen::VectorXcd out = M * slice;
      for (std::size_t k = 0; k < nd; ++k) vals(static_cast<Eigen::Index>(base + k * inner)) = out(static_cast<Eigen::Index>(k));
    }
  }
}

}  // namespace detail

inline SampledFunction fourier_transform(const SampledFunction& f, double sign = -1.0) {
  f.check();
  SampledFunction out = f;
  for (int d = 0; d < f.dim(); ++d)
    detail::apply_along_axis(out.values, out.grid, d, detail::fourier_axis_matrix(f.grid.axes[static_cast<std::size_t>(d)], sign));
  return out;
}

inline SampledFunction inverse_fourier_transform(const SampledFunction& f) {
  return fourier_transform(f, +1.0);
}

// 1-d transform onto an arbitrary output axis (rectangular operator); used
// when the input grid is too fine for the dense square matrix to be sensible.
inline SampledFunction fourier_on_axis(const SampledFunction& f, const Axis& out_axis, double sign = -1.0) {
  f.check();
  if (f.dim() != 1) throw std::invalid_argument("fourier_on_axis: one-dimensional inputs only");
  const auto& in = f.grid.axes[0];
  SampledFunction out;
  out.grid.axes = {out_axis};
  out.values.resize(static_cast<Eigen::Index>(out_axis.size()));
  const double c = std::pow(2 * M_PI, -0.5);
  for (std::size_t i = 0; i < out_axis.size(); ++i) {
    cd acc = 0;
    for (std::size_t j = 0; j < in.size(); ++j)
      acc += in.weights[j] * f.values(static_cast<Eigen::Index>(j)) *
             std::exp(cd(0.0, sign * in.nodes[j] * out_axis.nodes[i]));
    out.values(static_cast<Eigen::Index>(i)) = c * acc;
  }
  return out;
}

// Fourier transform in the x-block (block = 1) or u-block (block = 2) only.
inline PhaseSpaceFunction partial_fourier(const PhaseSpaceFunction& F, int block, double sign = -1.0) {
  F.check();
  if (block != 1 && block != 2) throw std::invalid_argument("partial_fourier: block must be 1 or 2");
  PhaseSpaceFunction out = F;
  const int lo = (block == 1) ? 0 : F.n;
  for (int d = lo; d < lo + F.n; ++d)
    detail::apply_along_axis(out.values, out.grid, d, detail::fourier_axis_matrix(F.grid.axes[static_cast<std::size_t>(d)], sign));
  return out;
}

inline PhaseSpaceFunction partial_fourier_1(const PhaseSpaceFunction& F) { return partial_fourier(F, 1); }
inline PhaseSpaceFunction partial_fourier_2(const PhaseSpaceFunction& F) { return partial_fourier(F, 2); }

// Swap the x-block and u-block of a phase-space value array.
inline PhaseSpaceFunction swap_blocks(const PhaseSpaceFunction& F) {
  F.check();
  PhaseSpaceFunction out = F;
  std::vector<Axis> ax(F.grid.axes.begin() + F.n, F.grid.axes.end());
  ax.insert(ax.end(), F.grid.axes.begin(), F.grid.axes.begin() + F.n);
  out.grid.axes = ax;
  const std::size_t total = F.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    auto idx = F.grid.unflat(p);
    std::vector<std::size_t> sidx(idx.begin() + F.n, idx.end());
    sidx.insert(sidx.end(), idx.begin(), idx.begin() + F.n);
    out.values(static_cast<Eigen::Index>(out.grid.flat(sidx))) = F.values(static_cast<Eigen::Index>(p));
  }
  return out;
}

// Symplectic Fourier transform
//   Fs F(x,u) = (2 pi)^{-n} int F(y,v) e^{i(u.y - x.v)} dy dv,
// an involution. Realized as +FT in the first block, -FT in the second,
// followed by a block swap.
inline PhaseSpaceFunction symplectic_fourier(const PhaseSpaceFunction& F) {
  F.check();
  PhaseSpaceFunction out = F;
  for (int d = 0; d < F.n; ++d)
    detail::apply_along_axis(out.values, out.grid, d, detail::fourier_axis_matrix(F.grid.axes[static_cast<std::size_t>(d)], +1.0));
  for (int d = F.n; d < 2 * F.n; ++d)
    detail::apply_along_axis(out.values, out.grid, d, detail::fourier_axis_matrix(F.grid.axes[static_cast<std::size_t>(d)], -1.0));
  return swap_blocks(out);
}

// f~(x) = f(-x); requires a grid symmetric about 0.
inline SampledFunction reflect(const SampledFunction& f) {
  f.check();
  if (!f.grid.symmetric(1e-10)) throw std::invalid_argument("reflect: grid not symmetric about 0");
  SampledFunction out = f;
  const std::size_t total = f.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    auto idx = f.grid.unflat(p);
    for (int d = 0; d < f.dim(); ++d)
      idx[static_cast<std::size_t>(d)] = f.grid.axes[static_cast<std::size_t>(d)].size() - 1 - idx[static_cast<std::size_t>(d)];
    out.values(static_cast<Eigen::Index>(f.grid.flat(idx))) = f.values(static_cast<Eigen::Index>(p));
  }
  return out;
}

inline PhaseSpaceFunction reflect(const PhaseSpaceFunction& F) {
  F.check();
  if (!F.grid.symmetric(1e-10)) throw std::invalid_argument("reflect: grid not symmetric about 0");
  PhaseSpaceFunction out = F;
  const std::size_t total = F.grid.size();
  for (std::size_t p = 0; p < total; ++p) {
    auto idx = F.grid.unflat(p);
    for (int d = 0; d < F.grid.dim(); ++d)
      idx[static_cast<std::size_t>(d)] = F.grid.axes[static_cast<std::size_t>(d)].size() - 1 - idx[static_cast<std::size_t>(d)];
    out.values(static_cast<Eigen::Index>(F.grid.flat(idx))) = F.values(static_cast<Eigen::Index>(p));
  }
  return out;
}

}  // namespace hkit
