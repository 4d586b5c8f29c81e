#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "beamalign/model.hpp"
#include "beamalign/series.hpp"
#include "beamalign/solver.hpp"
#include "beamalign/truncate.hpp"

namespace beamalign {

struct EpsPair {
  double eps1 = 0.0;  // threshold for the dR/dtheta_rx series
  double eps2 = 0.0;  // threshold for the dR/dtheta_tx series

  friend bool operator==(const EpsPair&, const EpsPair&) = default;
};

inline constexpr std::uint64_t kDefaultSeed = 209;

struct AlignmentConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n_tx = 2;
  std::size_t n_rx = 2;
  RateParams alphas;
  /// Truncation degree of the rate series; the derivative series stop at degree_cap - 1.
  int degree_cap = 20;
  /// Expansion points. Candidates from every center are pooled; eta and delta
  /// are reported for the first one.
  std::vector<BeamAngles> centers{{std::numbers::pi, std::numbers::pi}};
  std::vector<EpsPair> eps_pairs{{0.6, 0.6}, {0.7, 0.7}, {0.7, 0.75}, {0.8, 0.8}};
  std::size_t grid_points = 360;
  double imag_tol = 1e-6;
  double residual_tol = 1e-8;
  double cluster_tol = 1e-7;
  /// Fill wall_ms in sweep records. Off by default so results files are reproducible.
  bool record_timing = false;

  void validate() const;
  ChannelMatrix channel() const;
  SolverOptions solver_options() const;
};

/// dR/dtheta_rx and dR/dtheta_tx as truncated series about one center.
struct DerivativeSeries {
  TruncatedSeries f1;
  TruncatedSeries f2;
};

DerivativeSeries derivative_series(const ChannelMatrix& h, const RateParams& params,
                                   const BeamAngles& center, int degree_cap);

struct AlignmentResult {
  BeamAngles best;
  double r_est = 0.0;
  std::int64_t eta = 0;
  double delta = 0.0;
  std::size_t n_roots = 0;       // complex roots returned by the solver
  std::size_t n_real_roots = 0;  // real roots kept in [0, 2pi]^2
  bool no_roots = false;         // fell back to the expansion point
};

/// Estimates the rate-maximizing beam pair from the roots of the truncated
/// derivative system. Throws EmptyTruncation or SolverError.
AlignmentResult align(const ChannelMatrix& h, const RateParams& params, double eps1, double eps2,
                      const AlignmentConfig& cfg);

/// Same as align, reusing precomputed derivative series (one per cfg center).
AlignmentResult align(const ChannelMatrix& h, const RateParams& params,
                      const std::vector<DerivativeSeries>& series, double eps1, double eps2,
                      const AlignmentConfig& cfg);

struct ExperimentRecord {
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::optional<std::int64_t> eta;
  std::optional<double> delta;
  std::optional<double> objective;
  std::optional<double> r_est;
  double r_exh = 0.0;
  std::optional<double> abs_diff;
  std::size_t n_real_roots = 0;
  std::string status = "ok";  // ok | no_roots | empty truncation | degenerate system | non-isolated roots
  double wall_ms = 0.0;
};

/// One record per threshold pair, in input order. The exhaustive baseline is
/// computed once; pairs run concurrently. Per-pair failures land in `status`.
std::vector<ExperimentRecord> run_sweep(const ChannelMatrix& h, const AlignmentConfig& cfg);
std::vector<ExperimentRecord> run_sweep(const AlignmentConfig& cfg);

/// Normalized coefficient magnitudes of f1 or f2 about the first center, in
/// monomial order, with a 0/1 selection column when epsilon is given.
void dump_series_csv(const AlignmentConfig& cfg, Variable which, std::optional<double> epsilon,
                     const std::filesystem::path& path);

}  // namespace beamalign
