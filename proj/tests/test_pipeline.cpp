#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "beamalign/error.hpp"
#include "beamalign/grid_search.hpp"
#include "beamalign/io.hpp"
#include "beamalign/pipeline.hpp"
#include "oracles.hpp"

using namespace beamalign;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("beamalign_test_" + name);
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config validation") {
  AlignmentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eps_pairs = {{1.0, 0.5}};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.grid_points = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.degree_cap = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.centers.clear();
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("zero channel surfaces an empty truncation") {
  AlignmentConfig cfg;
  CHECK_THROWS_AS(align(ChannelMatrix(2, 2), {}, 0.7, 0.7, cfg), EmptyTruncation);
  const auto records = run_sweep(ChannelMatrix(2, 2), cfg);
  REQUIRE(records.size() == cfg.eps_pairs.size());
  for (const auto& r : records) {
    CHECK(r.status == "empty truncation");
    CHECK_FALSE(r.eta.has_value());
    CHECK_FALSE(r.r_est.has_value());
  }
}

TEST_CASE("seeded channel at (0.7, 0.7) is within 0.05 of the exhaustive sweep") {
  AlignmentConfig cfg;
  const auto h = cfg.channel();
  const auto res = align(h, cfg.alphas, 0.7, 0.7, cfg);
  const double r_exh = exhaustive_search(h, cfg.alphas, 360).rate;
  CHECK(std::abs(res.r_est - r_exh) < 0.05);
  CHECK(std::abs(res.r_est - oracle::rate(h, 1.0, res.best.rx, res.best.tx)) < 1e-12);
}

TEST_CASE("the estimate never loses to the expansion point or beats the true maximum") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    AlignmentConfig cfg;
    cfg.seed = seed;
    const auto h = cfg.channel();
    const double r_center = data_rate(h, cfg.alphas, cfg.centers.front());
    const double r_max = exhaustive_search(h, cfg.alphas, 3600).rate;
    for (const auto& [e1, e2] : cfg.eps_pairs) {
      try {
        const auto res = align(h, cfg.alphas, e1, e2, cfg);
        CHECK(res.r_est >= r_center);
        CHECK(res.r_est <= r_max + 1e-3);
        CHECK(res.best.rx >= 0.0);
        CHECK(res.best.rx <= 2 * std::numbers::pi);
      } catch (const SolverError&) {
      }
    }
  }
}

TEST_CASE("symmetric channels give swap-symmetric estimates") {
  const ChannelMatrix h(2, 2, {cplx(0.9, 0), cplx(-0.4, 0), cplx(-0.4, 0), cplx(0.3, 0)});
  AlignmentConfig cfg;
  const auto ds = derivative_series(h, {}, cfg.centers.front(), cfg.degree_cap);
  const auto p1 = threshold_select(ds.f1, 0.7), p2 = threshold_select(ds.f2, 0.7);
  const auto a = solve_system(p1, p2, cfg.solver_options());
  // f2 is f1 with the angles swapped.
  const auto b = solve_system(p2.transposed(), p1.transposed(), cfg.solver_options());
  REQUIRE(a.roots.size() == b.roots.size());
  for (const auto& r : a.roots) {
    double best = INFINITY;
    for (const auto& s : b.roots) best = std::min(best, std::abs(r.rx - s.tx) + std::abs(r.tx - s.rx));
    CHECK(best < 1e-6);
  }
}

TEST_CASE("sweep records") {
  AlignmentConfig cfg;
  cfg.eps_pairs = {{0.0, 0.0}, {0.6, 0.6}, {0.7, 0.7}, {0.7, 0.75}, {0.8, 0.8}};
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == cfg.eps_pairs.size());
  const double r_exh = exhaustive_search(cfg.channel(), cfg.alphas, cfg.grid_points).rate;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    CHECK(r.eps1 == cfg.eps_pairs[i].eps1);
    CHECK(r.eps2 == cfg.eps_pairs[i].eps2);
    CHECK(r.r_exh == r_exh);
    CHECK(r.wall_ms == 0.0);
    REQUIRE(r.eta.has_value());
    CHECK(*r.objective == static_cast<double>(*r.eta) + *r.delta);
    if (r.r_est) CHECK(*r.abs_diff == std::abs(*r.r_est - r.r_exh));
  }
  for (const auto& r : records) CHECK(*records.front().delta <= *r.delta);
  CHECK(*records[3].eta <= *records[2].eta);
  CHECK(*records[3].delta > *records[2].delta);
}

TEST_CASE("sweep timing is opt-in") {
  AlignmentConfig cfg;
  cfg.eps_pairs = {{0.7, 0.7}};
  cfg.record_timing = true;
  CHECK(run_sweep(cfg).front().wall_ms > 0.0);
  cfg.eps_pairs.clear();
  CHECK_THROWS_AS(run_sweep(cfg), DomainError);
}

TEST_CASE("pooled centers include the default one") {
  AlignmentConfig one, many;
  many.centers = {{std::numbers::pi, std::numbers::pi}, {std::numbers::pi / 2, std::numbers::pi / 2}};
  const auto h = one.channel();
  const auto a = align(h, {}, 0.7, 0.7, one);
  const auto b = align(h, {}, 0.7, 0.7, many);
  CHECK(b.r_est >= a.r_est);
  CHECK(b.eta == a.eta);
  CHECK(b.delta == a.delta);
}

TEST_CASE("series dump") {
  AlignmentConfig cfg;
  const auto path = temp_file("series.csv");
  dump_series_csv(cfg, Variable::rx, 0.6, path);
  const auto lines = read_lines(path);
  REQUIRE(!lines.empty());
  CHECK(lines.front() == "normalized,selected,deg_rx,deg_tx,coeff_real,coeff_imag");
  CHECK(lines.size() - 1 == monomial_count(cfg.degree_cap - 1));
  double top = 0.0;
  std::size_t selected = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string mag, sel;
    std::getline(ss, mag, ',');
    std::getline(ss, sel, ',');
    const double m = std::stod(mag);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    top = std::max(top, m);
    selected += sel == "1";
  }
  CHECK(top == 1.0);
  const auto ds = derivative_series(cfg.channel(), cfg.alphas, cfg.centers.front(), cfg.degree_cap);
  CHECK(selected == threshold_select(ds.f1, 0.6).size());

  dump_series_csv(cfg, Variable::tx, std::nullopt, path);
  CHECK(read_lines(path).front() == "normalized,deg_rx,deg_tx,coeff_real,coeff_imag");
  std::filesystem::remove(path);
  CHECK_THROWS(dump_series_csv(cfg, Variable::rx, 0.6, "/nonexistent-dir/x.csv"));
}
