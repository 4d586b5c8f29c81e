#include "beamalign/grid_search.hpp"

#include <cmath>
#include <numbers>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

// Per-axis tables shared by the serial and parallel kernels:
// rx_conj[i*Nr + r] = conj(w_rx(theta_i)[r]), tx_proj[j*Nr + r] = (H w_tx(theta_j))[r].
struct GridTables {
  std::size_t n_rx = 0;
  std::vector<cplx> rx_conj;
  std::vector<cplx> tx_proj;
};

GridTables build_tables(const ChannelMatrix& h, std::size_t g) {
  GridTables t;
  t.n_rx = h.rows();
  t.rx_conj.resize(g * h.rows());
  t.tx_proj.resize(g * h.rows());
  for (std::size_t i = 0; i < g; ++i) {
    const double theta = grid_angle(i, g);
    const auto w_rx = steering_vector(theta, h.rows());
    const auto w_tx = steering_vector(theta, h.cols());
    for (std::size_t r = 0; r < h.rows(); ++r) {
      t.rx_conj[i * h.rows() + r] = std::conj(w_rx[r]);
      cplx acc = 0.0;
      for (std::size_t c = 0; c < h.cols(); ++c) acc += h(r, c) * w_tx[c];
      t.tx_proj[i * h.rows() + r] = acc;
    }
  }
  return t;
}

inline double point_rate(const GridTables& t, double gain, std::size_t i, std::size_t j) {
  const cplx* a = &t.rx_conj[i * t.n_rx];
  const cplx* b = &t.tx_proj[j * t.n_rx];
  cplx g = 0.0;
  for (std::size_t r = 0; r < t.n_rx; ++r) g += a[r] * b[r];
  return std::log2(1.0 + gain * std::norm(g));
}

// Strict "a beats b": higher rate, then lexicographically smaller index pair.
inline bool beats(double rate_a, std::size_t ia, std::size_t ja,
                  double rate_b, std::size_t ib, std::size_t jb) {
  if (rate_a != rate_b) return rate_a > rate_b;
  return ia != ib ? ia < ib : ja < jb;
}

void check_grid(std::size_t g) {
  if (g < 2) throw DomainError("grid needs at least 2 points per axis");
}

SearchResult finish(std::size_t g, double rate, std::size_t i, std::size_t j) {
  return SearchResult{BeamAngles{grid_angle(i, g), grid_angle(j, g)}, rate, i, j};
}

}  // namespace

double grid_angle(std::size_t index, std::size_t points_per_axis) {
  return 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(points_per_axis);
}

SearchResult exhaustive_search_serial(const ChannelMatrix& h, const RateParams& params,
                                      std::size_t grid_points_per_axis) {
  const std::size_t g = grid_points_per_axis;
  check_grid(g);
  const auto tables = build_tables(h, g);
  params.validate();
  const double gain = params.gain();
  double best = -1.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      const double r = point_rate(tables, gain, i, j);
      if (r > best) {
        best = r;
        bi = i;
        bj = j;
      }
    }
  }
  return finish(g, best, bi, bj);
}

SearchResult exhaustive_search(const ChannelMatrix& h, const RateParams& params,
                               std::size_t grid_points_per_axis) {
  const std::size_t g = grid_points_per_axis;
  check_grid(g);
  const auto tables = build_tables(h, g);
  params.validate();
  const double gain = params.gain();
  const auto n = static_cast<long long>(g);

  double best = -1.0;
  std::size_t bi = 0, bj = 0;
#pragma omp parallel
  {
    double local = -1.0;
    std::size_t li = 0, lj = 0;
#pragma omp for schedule(static) nowait
    for (long long ii = 0; ii < n; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = 0; j < g; ++j) {
        const double r = point_rate(tables, gain, i, j);
        if (r > local) {
          local = r;
          li = i;
          lj = j;
        }
      }
    }
#pragma omp critical(beamalign_grid_best)
    {
      if (local >= 0.0 && beats(local, li, lj, best, bi, bj)) {
        best = local;
        bi = li;
        bj = lj;
      }
    }
  }
  return finish(g, best, bi, bj);
}

std::vector<double> rate_grid_serial(const ChannelMatrix& h, const RateParams& params,
                                     std::size_t grid_points_per_axis) {
  const std::size_t g = grid_points_per_axis;
  check_grid(g);
  params.validate();
  const double gain = params.gain();
  const auto tables = build_tables(h, g);
  std::vector<double> out(g * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) out[i * g + j] = point_rate(tables, gain, i, j);
  return out;
}

std::vector<double> rate_grid(const ChannelMatrix& h, const RateParams& params,
                              std::size_t grid_points_per_axis) {
  const std::size_t g = grid_points_per_axis;
  check_grid(g);
  const auto tables = build_tables(h, g);
  params.validate();
  const double gain = params.gain();
  std::vector<double> out(g * g);
  const auto n = static_cast<long long>(g);
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < g; ++j) out[i * g + j] = point_rate(tables, gain, i, j);
  }
  return out;
}

}  // namespace beamalign
