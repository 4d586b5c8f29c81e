#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "beamalign/series.hpp"

namespace beamalign {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
};

/// Convex lattice polygon given by its extreme points in counter-clockwise order,
/// starting from the lexicographically smallest vertex. One vertex is a point,
/// two a segment.
class NewtonPolytope {
 public:
  NewtonPolytope() = default;

  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  /// Twice the enclosed area, exact.
  std::int64_t twice_area() const noexcept;

  friend bool operator==(const NewtonPolytope&, const NewtonPolytope&) = default;

 private:
  friend NewtonPolytope convex_hull(std::span<const LatticePoint> points);
  std::vector<LatticePoint> vertices_;
};

/// Andrew's monotone chain; collinear boundary points are dropped.
NewtonPolytope convex_hull(std::span<const LatticePoint> points);

/// Convex hull of an exponent set.
NewtonPolytope newton_polytope(std::span<const Exponent> support);

double polygon_area(const NewtonPolytope& p);

/// p (+) q by merging edge vectors in angular order.
NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q);

/// MV(P, Q) = Area(P + Q) - Area(P) - Area(Q). Integral for lattice polygons.
std::int64_t mixed_volume(const NewtonPolytope& p, const NewtonPolytope& q);

/// Bernstein-Kushnirenko bound on the number of isolated common roots in the
/// torus (C*)^2 for generic coefficients on the given supports.
std::int64_t root_bound_eta(std::span<const Exponent> b1, std::span<const Exponent> b2);

/// eta + delta.
double objective_value(std::int64_t eta, double delta);

}  // namespace beamalign
