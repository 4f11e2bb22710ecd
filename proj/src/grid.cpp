#include "spinim/grid.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace spinim {

void Chart::validate(int min_nodes) const {
  if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("chart spacing must be positive");
  if (nx < min_nodes || ny < min_nodes)
    throw std::invalid_argument("chart needs at least " + std::to_string(min_nodes) + " nodes per direction");
}

Chart make_chart(double x0, double x1, double y0, double y1, int resolution) {
  if (resolution <= 0) throw std::invalid_argument("resolution must be positive");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("chart bounds must be increasing");
  Chart c;
  c.hx = c.hy = 1.0 / resolution;
  c.nx = static_cast<int>(std::lround((x1 - x0) * resolution)) + 1;
  c.ny = static_cast<int>(std::lround((y1 - y0) * resolution)) + 1;
  c.x0 = x0;
  c.y0 = y0;
  return c;
}

int thread_count() {
  if (const char* env = std::getenv("SPINIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long>(count) * w / workers);
    const int hi = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (int k = lo; k < hi; ++k) body(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

NodeMax grid_max(const Grid<double>& g) {
  NodeMax m;
  for (int j = 0; j < g.chart.ny; ++j)
    for (int i = 0; i < g.chart.nx; ++i)
      if (m.i < 0 || g.at(i, j) > m.value) m = {g.at(i, j), i, j};
  return m;
}

double convergence_order(double coarse, double fine, double ratio, double floor) {
  if (coarse <= floor && fine <= floor) return std::numeric_limits<double>::infinity();
  if (fine <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(coarse / fine) / std::log(ratio);
}

}  // namespace spinim
