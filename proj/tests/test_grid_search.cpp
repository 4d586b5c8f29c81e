#include <doctest.h>

#include <numbers>

#include "beamalign/error.hpp"
#include "beamalign/grid_search.hpp"
#include "oracles.hpp"

using namespace beamalign;

TEST_CASE("zero channel ties resolve to the origin") {
  const auto r = exhaustive_search(ChannelMatrix(2, 2), {}, 16);
  CHECK(r.rate == 0.0);
  CHECK(r.rx_index == 0);
  CHECK(r.tx_index == 0);
  CHECK(r.angles == BeamAngles{0.0, 0.0});
}

TEST_CASE("4x4 grid picks the best of 16 direct evaluations") {
  const auto h = ChannelMatrix::random(2, 2, 13);
  double best = -1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      best = std::max(best, oracle::rate(h, 1.0, 2 * std::numbers::pi * i / 4, 2 * std::numbers::pi * j / 4));
  CHECK(std::abs(exhaustive_search(h, {}, 4).rate - best) < 1e-12);
}

TEST_CASE("parallel and serial kernels agree bit for bit") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto h = ChannelMatrix::random(3, 2, seed);
    const auto a = exhaustive_search(h, {}, 97);
    const auto b = exhaustive_search_serial(h, {}, 97);
    CHECK(a.rate == b.rate);
    CHECK(a.rx_index == b.rx_index);
    CHECK(a.tx_index == b.tx_index);
    CHECK(rate_grid(h, {}, 50) == rate_grid_serial(h, {}, 50));
  }
}

TEST_CASE("rate grid layout and argmax") {
  const auto h = ChannelMatrix::random(2, 2, 21);
  const std::size_t g = 36;
  const auto grid = rate_grid(h, {}, g);
  REQUIRE(grid.size() == g * g);
  CHECK(std::abs(grid[5 * g + 7] - oracle::rate(h, 1.0, grid_angle(5, g), grid_angle(7, g))) < 1e-12);
  const auto best = exhaustive_search(h, {}, g);
  CHECK(grid[best.rx_index * g + best.tx_index] == best.rate);
  CHECK(*std::max_element(grid.begin(), grid.end()) == best.rate);
}

TEST_CASE("nested grids never lose rate") {
  const auto h = ChannelMatrix::random(2, 2, 8);
  CHECK(exhaustive_search(h, {}, 180).rate <= exhaustive_search(h, {}, 360).rate);
}

TEST_CASE("grid needs two points") {
  CHECK_THROWS_AS(exhaustive_search(ChannelMatrix(2, 2), {}, 1), DomainError);
  CHECK(grid_angle(90, 360) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("grid kernels validate link constants") {
  const RateParams bad{1, 1, 0};
  CHECK_THROWS_AS(exhaustive_search(ChannelMatrix(2, 2), bad, 4), DomainError);
  CHECK_THROWS_AS(rate_grid_serial(ChannelMatrix(2, 2), bad, 4), DomainError);
}
