#pragma once

// File formats:
//   functions    CSV header `axis1,...,axisK,re,im`, one row per grid point;
//                JSON alternative with an explicit grid block.
//   coefficients CSV header `alpha_1,...,alpha_n,re,im`.
//   matrices     CSV header `alpha_1,..,alpha_n,beta_1,..,beta_n,re,im`.
// Ingested functions are resampled onto the configured Gauss-Hermite grid by
// barycentric interpolation when the node sets differ.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkit/grid.hpp"
#include "hkit/hermite.hpp"
#include "hkit/wigner.hpp"

namespace hkit {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    // trim whitespace and a possible trailing \r
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& path, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
}

inline int parse_int(const std::string& s, const std::string& path, int line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": not an integer: '" + s + "'");
  }
}

// Local barycentric Lagrange interpolation matrix from source nodes to
// target nodes. A sliding window of at most 8 nearby nodes keeps the
// interpolation well conditioned on equispaced data (global high-degree
// interpolation is Runge-unstable); targets outside the sampled range get 0
// rather than a polynomial extrapolation.
inline Eigen::MatrixXd barycentric_matrix(const std::vector<double>& src, const std::vector<double>& dst) {
  const std::size_t m = src.size();
  if (m == 0) throw std::invalid_argument("barycentric_matrix: empty source axis");
  const std::size_t window = std::min<std::size_t>(m, 8);

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double x = dst[i];
    // exact node hit: copy the sample
    std::size_t hit = m;
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(x - src[j]) < 1e-13 * (1 + std::abs(src[j]))) hit = j;
    if (hit < m) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(hit)) = 1.0;
      continue;
    }
    if (x < src.front() || x > src.back()) continue;  // outside the hull: 0

    // window of nearest nodes around x
    const auto it = std::lower_bound(src.begin(), src.end(), x);
    std::size_t lo = static_cast<std::size_t>(it - src.begin());
    lo = (lo > window / 2) ? lo - window / 2 : 0;
    if (lo + window > m) lo = m - window;

    const double scale = 4.0 / (src[lo + window - 1] - src[lo]);
    std::vector<double> w(window, 1.0);
    for (std::size_t j = 0; j < window; ++j)
      for (std::size_t k = 0; k < window; ++k)
        if (k != j) w[j] /= (src[lo + j] - src[lo + k]) * scale;
    double denom = 0;
    std::vector<double> num(window);
    for (std::size_t j = 0; j < window; ++j) {
      num[j] = w[j] / ((x - src[lo + j]) * scale);
      denom += num[j];
    }
    for (std::size_t j = 0; j < window; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(lo + j)) = num[j] / denom;
  }
  return M;
}

// Apply a rectangular matrix along axis d of a row-major tensor with the
// given per-axis sizes; returns the new values and updates sizes[d].
inline Eigen::VectorXcd apply_rect_along_axis(const Eigen::VectorXcd& vals, std::vector<std::size_t>& sizes,
                                              int d, const Eigen::MatrixXd& M) {
  const std::size_t nd = sizes[static_cast<std::size_t>(d)];
  const std::size_t md = static_cast<std::size_t>(M.rows());
  std::size_t inner = 1, outer = 1;
  for (std::size_t e = static_cast<std::size_t>(d) + 1; e < sizes.size(); ++e) inner *= sizes[e];
  for (std::size_t e = 0; e < static_cast<std::size_t>(d); ++e) outer *= sizes[e];

  Eigen::VectorXcd out(static_cast<Eigen::Index>(outer * md * inner));
  Eigen::VectorXcd slice(static_cast<Eigen::Index>(nd));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      for (std::size_t k = 0; k < nd; ++k)
        slice(static_cast<Eigen::Index>(k)) = vals(static_cast<Eigen::Index>(o * nd * inner + k * inner + in));
      Eigen::VectorXcd res = M * slice;
      for (std::size_t k = 0; k < md; ++k)
        out(static_cast<Eigen::Index>(o * md * inner + k * inner + in)) = res(static_cast<Eigen::Index>(k));
    }
  sizes[static_cast<std::size_t>(d)] = md;
  return out;
}

struct RawFunction {
  std::vector<std::vector<double>> axes;  // node sets, ascending
  Eigen::VectorXcd values;                // row-major over the axes
};

inline RawFunction parse_function_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError(path + ":1: empty file");
  ++line_no;
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.back() != "im" || header[header.size() - 2] != "re")
    throw ParseError(path + ":1: expected header 'axis1,...,axisK,re,im'");
  const std::size_t K = header.size() - 2;
  for (std::size_t k = 0; k < K; ++k)
    if (header[k] != "axis" + std::to_string(k + 1))
      throw ParseError(path + ":1: expected column 'axis" + std::to_string(k + 1) + "', got '" + header[k] + "'");

  std::vector<std::vector<double>> coords(K);
  std::vector<cd> vals;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != K + 2)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(K + 2) +
                       " columns, got " + std::to_string(cells.size()));
    std::vector<double> row(K);
    for (std::size_t k = 0; k < K; ++k) row[k] = parse_double(cells[k], path, line_no);
    rows.push_back(row);
    vals.emplace_back(parse_double(cells[K], path, line_no), parse_double(cells[K + 1], path, line_no));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  // recover the tensor-product axes as the sorted unique coordinates
  RawFunction raw;
  raw.axes.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<double> u;
    for (const auto& row : rows) u.push_back(row[k]);
    std::sort(u.begin(), u.end());
    for (double x : u)
      if (raw.axes[k].empty() || x - raw.axes[k].back() > 1e-12 * (1 + std::abs(x))) raw.axes[k].push_back(x);
  }
  std::size_t total = 1;
  for (const auto& a : raw.axes) total *= a.size();
  if (total != rows.size())
    throw ParseError(path + ": rows do not form a complete tensor-product grid (" + std::to_string(rows.size()) +
                     " rows for " + std::to_string(total) + " grid points)");

  raw.values.setZero(static_cast<Eigen::Index>(total));
  std::vector<char> seen(total, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const auto& a = raw.axes[k];
      const auto it = std::lower_bound(a.begin(), a.end(), rows[r][k] - 1e-9);
      flat = flat * a.size() + static_cast<std::size_t>(it - a.begin());
    }
    if (seen[flat]) throw ParseError(path + ": duplicate grid point in row " + std::to_string(r + 2));
    seen[flat] = 1;
    raw.values(static_cast<Eigen::Index>(flat)) = vals[r];
  }
  return raw;
}

inline RawFunction parse_function_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.contains("grid") || !j["grid"].contains("axes"))
    throw ParseError(path + ": missing grid.axes block");
  RawFunction raw;
  for (const auto& a : j["grid"]["axes"]) {
    const auto& nodes = a.contains("nodes") ? a["nodes"] : a;
    std::vector<double> ax;
    for (const auto& x : nodes) ax.push_back(x.get<double>());
    for (std::size_t i = 1; i < ax.size(); ++i)
      if (!(ax[i] > ax[i - 1])) throw ParseError(path + ": invalid-grid: axis nodes must be strictly increasing");
    if (ax.empty()) throw ParseError(path + ": invalid-grid: empty axis");
    raw.axes.push_back(ax);
  }
  if (raw.axes.empty()) throw ParseError(path + ": invalid-grid: no axes");
  std::size_t total = 1;
  for (const auto& a : raw.axes) total *= a.size();
  if (!j.contains("values")) throw ParseError(path + ": missing values");
  const auto& vv = j["values"];
  if (vv.size() != total)
    throw ParseError(path + ": values length " + std::to_string(vv.size()) + " does not match grid size " +
                     std::to_string(total));
  raw.values.resize(static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    const auto& e = vv[i];
    if (e.is_array() && e.size() == 2)
      raw.values(static_cast<Eigen::Index>(i)) = cd(e[0].get<double>(), e[1].get<double>());
    else if (e.is_object() && e.contains("re"))
      raw.values(static_cast<Eigen::Index>(i)) = cd(e["re"].get<double>(), e.value("im", 0.0));
    else if (e.is_number())
      raw.values(static_cast<Eigen::Index>(i)) = cd(e.get<double>(), 0.0);
    else
      throw ParseError(path + ": value entry " + std::to_string(i) + " is not [re,im], {re,im}, or a number");
  }
  return raw;
}

inline bool axes_match(const std::vector<double>& a, const Axis& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b.nodes[i]) > 1e-10 * (1 + std::abs(a[i]))) return false;
  return true;
}

inline Eigen::VectorXcd resample(const RawFunction& raw, const Grid& target) {
  if (raw.axes.size() != static_cast<std::size_t>(target.dim()))
    throw ParseError("resample: file has " + std::to_string(raw.axes.size()) + " axes, configuration expects " +
                     std::to_string(target.dim()));
  Eigen::VectorXcd vals = raw.values;
  std::vector<std::size_t> sizes;
  for (const auto& a : raw.axes) sizes.push_back(a.size());
  for (int d = 0; d < target.dim(); ++d) {
    const Axis& ta = target.axes[static_cast<std::size_t>(d)];
    if (axes_match(raw.axes[static_cast<std::size_t>(d)], ta)) continue;
    vals = apply_rect_along_axis(vals, sizes, d, barycentric_matrix(raw.axes[static_cast<std::size_t>(d)], ta.nodes));
  }
  return vals;
}

}  // namespace detail

// Ingest a function over R^n onto the configured grid. Format is chosen from
// the file extension (.json vs anything else = CSV).
inline SampledFunction ingest_function(const std::string& path, const Grid& target) {
  const bool json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  const detail::RawFunction raw = json ? detail::parse_function_json(path) : detail::parse_function_csv(path);
  SampledFunction f;
  f.grid = target;
  f.values = detail::resample(raw, target);
  return f;
}

// Ingest a phase-space function (2n axes) onto the configured phase grid.
inline PhaseSpaceFunction ingest_phase_function(const std::string& path, const Grid& fn_grid) {
  const Grid target = phase_grid_for(fn_grid);
  const bool json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  const detail::RawFunction raw = json ? detail::parse_function_json(path) : detail::parse_function_csv(path);
  PhaseSpaceFunction F;
  F.n = fn_grid.dim();
  F.grid = target;
  F.values = detail::resample(raw, target);
  return F;
}

inline void emit_function_csv(std::ostream& os, const Grid& g, const Eigen::VectorXcd& values) {
  os.precision(17);
  for (int d = 0; d < g.dim(); ++d) os << "axis" << d + 1 << ",";
  os << "re,im\n";
  const std::size_t total = g.size();
  for (std::size_t p = 0; p < total; ++p) {
    const auto pt = g.point(g.unflat(p));
    for (double x : pt) os << x << ",";
    const cd v = values(static_cast<Eigen::Index>(p));
    os << v.real() << "," << v.imag() << "\n";
  }
}

inline void emit_function_csv(const std::string& path, const SampledFunction& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  emit_function_csv(os, f.grid, f.values);
}

inline void emit_function_csv(const std::string& path, const PhaseSpaceFunction& F) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  emit_function_csv(os, F.grid, F.values);
}

inline void emit_coefficients_csv(const std::string& path, const HermiteCoefficients& c) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os.precision(17);
  for (int d = 0; d < c.dim; ++d) os << "alpha_" << d + 1 << ",";
  os << "re,im\n";
  for (std::size_t i = 0; i < c.indices.size(); ++i) {
    for (int a : c.indices[i]) os << a << ",";
    const cd v = c.c(static_cast<Eigen::Index>(i));
    os << v.real() << "," << v.imag() << "\n";
  }
}

inline HermiteCoefficients ingest_coefficients_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(path + ":1: empty file");
  ++line_no;
  const auto header = detail::split_csv_line(line);
  if (header.size() < 3 || header.back() != "im" || header[header.size() - 2] != "re" || header[0] != "alpha_1")
    throw ParseError(path + ":1: expected header 'alpha_1,...,alpha_n,re,im'");
  const int n = static_cast<int>(header.size()) - 2;
  if (n > 2) throw ParseError(path + ":1: dimensions n <= 2 only");

  std::map<MultiIndex, cd> entries;
  int degree = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != static_cast<std::size_t>(n) + 2)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(n + 2) + " columns");
    MultiIndex a(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      a[static_cast<std::size_t>(d)] = detail::parse_int(cells[static_cast<std::size_t>(d)], path, line_no);
      if (a[static_cast<std::size_t>(d)] < 0)
        throw ParseError(path + ":" + std::to_string(line_no) + ": negative index");
    }
    degree = std::max(degree, total_degree(a));
    entries[a] = cd(detail::parse_double(cells[static_cast<std::size_t>(n)], path, line_no),
                    detail::parse_double(cells[static_cast<std::size_t>(n) + 1], path, line_no));
  }
  HermiteCoefficients c = zero_coefficients(n, degree);
  for (const auto& [a, v] : entries) c.c(static_cast<Eigen::Index>(c.find(a))) = v;
  return c;
}

inline void emit_matrix_csv(const std::string& path, const WeylOperatorMatrix& W) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os.precision(17);
  for (int d = 0; d < W.n; ++d) os << "alpha_" << d + 1 << ",";
  for (int d = 0; d < W.n; ++d) os << "beta_" << d + 1 << ",";
  os << "re,im\n";
  for (std::size_t a = 0; a < W.indices.size(); ++a)
    for (std::size_t b = 0; b < W.indices.size(); ++b) {
      for (int x : W.indices[a]) os << x << ",";
      for (int x : W.indices[b]) os << x << ",";
      const cd v = W.M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      os << v.real() << "," << v.imag() << "\n";
    }
}

}  // namespace hkit
