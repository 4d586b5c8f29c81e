#pragma once

#include <cstddef>
#include <vector>

#include "beamalign/model.hpp"

namespace beamalign {

struct SearchResult {
  BeamAngles angles;
  double rate = 0.0;
  std::size_t rx_index = 0;
  std::size_t tx_index = 0;
};

/// Angle of grid index i on the uniform periodic grid 2*pi*i/G over [0, 2pi).
double grid_angle(std::size_t index, std::size_t points_per_axis);

/// Exhaustive beam sweep over a G x G grid. Returns the maximizing grid point;
/// ties go to the lexicographically smallest (theta_rx, theta_tx).
/// OpenMP-parallel over receive angles.
SearchResult exhaustive_search(const ChannelMatrix& h, const RateParams& params,
                               std::size_t grid_points_per_axis);

/// Single-threaded reference for exhaustive_search. Same per-point arithmetic,
/// so both return bit-identical results.
SearchResult exhaustive_search_serial(const ChannelMatrix& h, const RateParams& params,
                                      std::size_t grid_points_per_axis);

/// Rate on the full grid, row-major with rx as the slow index.
std::vector<double> rate_grid(const ChannelMatrix& h, const RateParams& params,
                              std::size_t grid_points_per_axis);
std::vector<double> rate_grid_serial(const ChannelMatrix& h, const RateParams& params,
                                     std::size_t grid_points_per_axis);

}  // namespace beamalign
