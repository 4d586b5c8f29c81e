#include "beamalign/polytope.hpp"

#include <algorithm>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::int64_t cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }

// 0 for directions in [0, pi), 1 for [pi, 2pi).
int half_plane(LatticePoint v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

bool angle_less(LatticePoint a, LatticePoint b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

// Edges of a CCW polygon, starting at its lowest (then leftmost) vertex.
std::vector<LatticePoint> edges_from_bottom(const std::vector<LatticePoint>& v, LatticePoint& start) {
  const auto n = v.size();
  std::size_t s = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i].y < v[s].y || (v[i].y == v[s].y && v[i].x < v[s].x)) s = i;
  start = v[s];
  std::vector<LatticePoint> e;
  if (n < 2) return e;
  for (std::size_t k = 0; k < n; ++k) e.push_back(v[(s + k + 1) % n] - v[(s + k) % n]);
  return e;
}

}  // namespace

std::int64_t NewtonPolytope::twice_area() const noexcept {
  const auto n = vertices_.size();
  if (n < 3) return 0;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return acc < 0 ? -acc : acc;
}

NewtonPolytope convex_hull(std::span<const LatticePoint> points) {
  if (points.empty()) throw DomainError("convex hull of an empty point set");
  std::vector<LatticePoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  NewtonPolytope hull;
  if (pts.size() == 1) {
    hull.vertices_ = pts;
    return hull;
  }
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point repeats the first
  hull.vertices_ = std::move(h);
  return hull;
}

NewtonPolytope newton_polytope(std::span<const Exponent> support) {
  std::vector<LatticePoint> pts;
  pts.reserve(support.size());
  for (const auto& e : support) pts.push_back({e.rx, e.tx});
  return convex_hull(pts);
}

double polygon_area(const NewtonPolytope& p) { return 0.5 * static_cast<double>(p.twice_area()); }

NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q) {
  if (p.empty() || q.empty()) throw DomainError("minkowski sum of an empty polytope");
  LatticePoint sp, sq;
  const auto ep = edges_from_bottom(p.vertices(), sp);
  const auto eq = edges_from_bottom(q.vertices(), sq);

  std::vector<LatticePoint> edges;
  edges.reserve(ep.size() + eq.size());
  std::merge(ep.begin(), ep.end(), eq.begin(), eq.end(), std::back_inserter(edges), angle_less);

  std::vector<LatticePoint> walk{sp + sq};
  for (const auto& e : edges) walk.push_back(walk.back() + e);
  // The walk closes on its start; the hull pass merges parallel edges.
  return convex_hull(walk);
}

std::int64_t mixed_volume(const NewtonPolytope& p, const NewtonPolytope& q) {
  const std::int64_t twice = minkowski_sum(p, q).twice_area() - p.twice_area() - q.twice_area();
  return twice / 2;
}

std::int64_t root_bound_eta(std::span<const Exponent> b1, std::span<const Exponent> b2) {
  if (b1.empty() || b2.empty()) throw DomainError("root bound needs two nonempty supports");
  return mixed_volume(newton_polytope(b1), newton_polytope(b2));
}

double objective_value(std::int64_t eta, double delta) {
  if (eta < 0) throw DomainError("eta must be non-negative");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  return static_cast<double>(eta) + delta;
}

}  // namespace beamalign
