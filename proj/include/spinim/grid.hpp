#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spinim {

// Rectangular chart in the conformal parameter z = x + iy. Node (i, j) sits at
// (x0 + i hx, y0 + j hy); i runs along x.
struct Chart {
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  double x0 = 0.0, y0 = 0.0;

  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * ny; }
  // Throws std::invalid_argument unless hx, hy > 0 and nx, ny >= min_nodes.
  void validate(int min_nodes = 5) const;
};

// Square-cell chart covering [x0, x1] x [y0, y1] with spacing 1/resolution.
Chart make_chart(double x0, double x1, double y0, double y1, int resolution);

template <class T>
struct Grid {
  Chart chart;
  std::vector<T> v;

  Grid() = default;
  explicit Grid(const Chart& c, const T& fill = T()) : chart(c), v(c.nodes(), fill) {}

  T& at(int i, int j) { return v[static_cast<std::size_t>(j) * chart.nx + i]; }
  const T& at(int i, int j) const { return v[static_cast<std::size_t>(j) * chart.nx + i]; }
};

// Second-order differences: centered inside, three-point one-sided at the edges.
template <class T>
T fd_x(const Grid<T>& g, int i, int j) {
  const int n = g.chart.nx;
  const double s = 1.0 / (2.0 * g.chart.hx);
  if (i == 0) return s * (-3.0 * g.at(0, j) + 4.0 * g.at(1, j) - g.at(2, j));
  if (i == n - 1) return s * (3.0 * g.at(n - 1, j) - 4.0 * g.at(n - 2, j) + g.at(n - 3, j));
  return s * (g.at(i + 1, j) - g.at(i - 1, j));
}

template <class T>
T fd_y(const Grid<T>& g, int i, int j) {
  const int n = g.chart.ny;
  const double s = 1.0 / (2.0 * g.chart.hy);
  if (j == 0) return s * (-3.0 * g.at(i, 0) + 4.0 * g.at(i, 1) - g.at(i, 2));
  if (j == n - 1) return s * (3.0 * g.at(i, n - 1) - 4.0 * g.at(i, n - 2) + g.at(i, n - 3));
  return s * (g.at(i, j + 1) - g.at(i, j - 1));
}

template <class T>
T fd_dir(const Grid<T>& g, int i, int j, int dir) {
  return dir == 0 ? fd_x(g, i, j) : fd_y(g, i, j);
}

// Worker count: SPINIM_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs body(k) for k in [0, count) on up to thread_count() threads, static blocks.
void parallel_for(int count, const std::function<void(int)>& body);

template <class T, class F>
Grid<T> map_nodes(const Chart& c, F&& f) {
  Grid<T> out(c);
  parallel_for(c.ny, [&](int j) {
    for (int i = 0; i < c.nx; ++i) out.at(i, j) = f(i, j);
  });
  return out;
}

// Max of a scalar grid and where it occurs.
struct NodeMax {
  double value = 0.0;
  int i = -1, j = -1;
};
NodeMax grid_max(const Grid<double>& g);

// Observed order log(coarse/fine)/log(ratio). Residuals below the floor carry no
// discretization signal; the order is then reported as +infinity (exact data).
double convergence_order(double coarse, double fine, double ratio = 2.0, double floor = 1e-11);
inline bool order_is_exact(double order) { return std::isinf(order) && order > 0; }

enum class PathOrder { RowsFirst, ColumnsFirst };

// Path integration of d state / d(dir) = rhs(x, y, dir, state) with classical RK4:
// RowsFirst walks the bottom row y = y0 along x and then every column along y;
// ColumnsFirst walks the left column and then every row. renorm is applied
// after each step. Independent lines run in parallel.
template <class T, class Rhs, class Renorm>
Grid<T> integrate_paths(const Chart& c, const T& init, Rhs&& rhs, Renorm&& renorm, PathOrder order) {
  Grid<T> out(c, init);
  auto step = [&](const T& s, double x, double y, int dir, double h) {
    const double dx = dir == 0 ? h : 0.0, dy = dir == 1 ? h : 0.0;
    const T k1 = rhs(x, y, dir, s);
    const T k2 = rhs(x + 0.5 * dx, y + 0.5 * dy, dir, s + (0.5 * h) * k1);
    const T k3 = rhs(x + 0.5 * dx, y + 0.5 * dy, dir, s + (0.5 * h) * k2);
    const T k4 = rhs(x + dx, y + dy, dir, s + h * k3);
    return renorm(s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  out.at(0, 0) = init;
  if (order == PathOrder::RowsFirst) {
    for (int i = 1; i < c.nx; ++i) out.at(i, 0) = step(out.at(i - 1, 0), c.x(i - 1), c.y(0), 0, c.hx);
    parallel_for(c.nx, [&](int i) {
      for (int j = 1; j < c.ny; ++j) out.at(i, j) = step(out.at(i, j - 1), c.x(i), c.y(j - 1), 1, c.hy);
    });
  } else {
    for (int j = 1; j < c.ny; ++j) out.at(0, j) = step(out.at(0, j - 1), c.x(0), c.y(j - 1), 1, c.hy);
    parallel_for(c.ny, [&](int j) {
      for (int i = 1; i < c.nx; ++i) out.at(i, j) = step(out.at(i - 1, j), c.x(i - 1), c.y(j), 0, c.hx);
    });
  }
  return out;
}

// Tensor-product cubic Lagrange interpolation of node data at an arbitrary point
// of the chart (fourth-order accurate, used when no closed form is available).
template <class T>
T interpolate_cubic(const Grid<T>& g, double x, double y) {
  const Chart& c = g.chart;
  auto stencil = [](double t, int n, int& base, double w[4]) {
    int cell = static_cast<int>(std::floor(t));
    cell = std::clamp(cell, 0, n - 2);
    base = std::clamp(cell - 1, 0, n - 4);
    const double s = t - base;
    // nodes at base + 0..3, i.e. s - 0..3
    w[0] = -(s - 1) * (s - 2) * (s - 3) / 6.0;
    w[1] = s * (s - 2) * (s - 3) / 2.0;
    w[2] = -s * (s - 1) * (s - 3) / 2.0;
    w[3] = s * (s - 1) * (s - 2) / 6.0;
  };
  int bi, bj;
  double wx[4], wy[4];
  stencil((x - c.x0) / c.hx, c.nx, bi, wx);
  stencil((y - c.y0) / c.hy, c.ny, bj, wy);
  T acc = 0.0 * g.at(bi, bj);
  for (int b = 0; b < 4; ++b) {
    if (wy[b] == 0.0) continue;
    for (int a = 0; a < 4; ++a) {
      if (wx[a] == 0.0) continue;
      acc = acc + (wx[a] * wy[b]) * g.at(bi + a, bj + b);
    }
  }
  return acc;
}

}  // namespace spinim
