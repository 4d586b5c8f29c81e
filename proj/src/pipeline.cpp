#include "beamalign/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "beamalign/error.hpp"
#include "beamalign/grid_search.hpp"
#include "beamalign/io.hpp"
#include "beamalign/polytope.hpp"

namespace beamalign {

void AlignmentConfig::validate() const {
  if (n_tx == 0 || n_rx == 0) throw DomainError("antenna counts must be at least 1");
  alphas.validate();
  if (degree_cap < 2) throw DomainError("degree_cap must be at least 2");
  if (centers.empty()) throw DomainError("at least one expansion center is required");
  for (const auto& c : centers)
    if (!std::isfinite(c.rx) || !std::isfinite(c.tx)) throw DomainError("centers must be finite");
  for (const auto& p : eps_pairs)
    if (!(p.eps1 >= 0.0 && p.eps1 < 1.0 && p.eps2 >= 0.0 && p.eps2 < 1.0))
      throw DomainError("thresholds must lie in [0, 1)");
  if (grid_points < 2) throw DomainError("grid_points must be at least 2");
  if (!(imag_tol > 0.0) || !(residual_tol > 0.0) || !(cluster_tol > 0.0))
    throw DomainError("tolerances must be positive");
}

ChannelMatrix AlignmentConfig::channel() const { return ChannelMatrix::random(n_rx, n_tx, seed); }

SolverOptions AlignmentConfig::solver_options() const {
  SolverOptions o;
  o.residual_tol = residual_tol;
  o.cluster_tol = cluster_tol;
  o.strip_common_monomial = true;
  return o;
}

DerivativeSeries derivative_series(const ChannelMatrix& h, const RateParams& params,
                                   const BeamAngles& center, int degree_cap) {
  const auto r = rate_series(h, params, center, degree_cap);
  return DerivativeSeries{series_partial(r, Variable::rx), series_partial(r, Variable::tx)};
}

namespace {

std::vector<DerivativeSeries> all_series(const ChannelMatrix& h, const RateParams& params,
                                         const AlignmentConfig& cfg) {
  std::vector<DerivativeSeries> out;
  for (const auto& c : cfg.centers) out.push_back(derivative_series(h, params, c, cfg.degree_cap));
  return out;
}

// The truncation and metrics for one center, before solving.
struct TruncatedSystem {
  SparsePolynomial p1, p2;
  std::int64_t eta = 0;
  double delta = 0.0;
};

TruncatedSystem truncate_system(const DerivativeSeries& s, double eps1, double eps2) {
  auto zero_to_empty = [](const TruncatedSeries& t, double eps) {
    // A vanishing derivative has nothing to keep.
    if (t.is_zero()) throw EmptyTruncation();
    return threshold_select(t, eps);
  };
  TruncatedSystem sys;
  sys.p1 = zero_to_empty(s.f1, eps1);
  sys.p2 = zero_to_empty(s.f2, eps2);
  const auto b1 = sys.p1.support();
  const auto b2 = sys.p2.support();
  sys.eta = root_bound_eta(b1, b2);
  sys.delta = approximation_error(sys.p1, sys.p2);
  return sys;
}

struct Partial {
  std::optional<std::int64_t> eta;
  std::optional<double> delta;
};

AlignmentResult align_impl(const ChannelMatrix& h, const RateParams& params,
                           const std::vector<DerivativeSeries>& series, double eps1, double eps2,
                           const AlignmentConfig& cfg, Partial* partial) {
  if (series.size() != cfg.centers.size()) throw DomainError("one derivative series pair per center expected");
  AlignmentResult res;
  std::vector<BeamAngles> candidates(cfg.centers.begin(), cfg.centers.end());
  const DomainBox box{0.0, 2.0 * std::numbers::pi, true};
  for (std::size_t c = 0; c < series.size(); ++c) {
    const auto sys = truncate_system(series[c], eps1, eps2);
    if (c == 0) {
      res.eta = sys.eta;
      res.delta = sys.delta;
      if (partial) {
        partial->eta = sys.eta;
        partial->delta = sys.delta;
      }
    }
    const auto roots = solve_system(sys.p1, sys.p2, cfg.solver_options());
    const auto real = filter_real_domain(roots, cfg.imag_tol, box);
    res.n_roots += roots.roots.size();
    res.n_real_roots += real.size();
    candidates.insert(candidates.end(), real.begin(), real.end());
  }
  res.no_roots = res.n_real_roots == 0;

  res.best = candidates.front();
  res.r_est = data_rate(h, params, res.best);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double r = data_rate(h, params, candidates[i]);
    if (r > res.r_est) {
      res.r_est = r;
      res.best = candidates[i];
    }
  }
  return res;
}

}  // namespace

AlignmentResult align(const ChannelMatrix& h, const RateParams& params,
                      const std::vector<DerivativeSeries>& series, double eps1, double eps2,
                      const AlignmentConfig& cfg) {
  return align_impl(h, params, series, eps1, eps2, cfg, nullptr);
}

AlignmentResult align(const ChannelMatrix& h, const RateParams& params, double eps1, double eps2,
                      const AlignmentConfig& cfg) {
  cfg.validate();
  return align(h, params, all_series(h, params, cfg), eps1, eps2, cfg);
}

std::vector<ExperimentRecord> run_sweep(const ChannelMatrix& h, const AlignmentConfig& cfg) {
  cfg.validate();
  if (cfg.eps_pairs.empty()) throw DomainError("sweep needs at least one threshold pair");
  const auto series = all_series(h, cfg.alphas, cfg);
  const double r_exh = exhaustive_search(h, cfg.alphas, cfg.grid_points).rate;

  std::vector<ExperimentRecord> records(cfg.eps_pairs.size());
  const auto n = static_cast<long long>(records.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < n; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const EpsPair pair = cfg.eps_pairs[static_cast<std::size_t>(k)];
    ExperimentRecord rec;
    rec.eps1 = pair.eps1;
    rec.eps2 = pair.eps2;
    rec.r_exh = r_exh;
    Partial partial;
    try {
      const auto res = align_impl(h, cfg.alphas, series, pair.eps1, pair.eps2, cfg, &partial);
      rec.r_est = res.r_est;
      rec.abs_diff = std::abs(res.r_est - r_exh);
      rec.n_real_roots = res.n_real_roots;
      rec.status = res.no_roots ? "no_roots" : "ok";
    } catch (const std::exception& e) {
      rec.status = e.what();
    }
    rec.eta = partial.eta;
    rec.delta = partial.delta;
    if (partial.eta && partial.delta) rec.objective = objective_value(*partial.eta, *partial.delta);
    if (cfg.record_timing)
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    records[static_cast<std::size_t>(k)] = std::move(rec);
  }
  return records;
}

std::vector<ExperimentRecord> run_sweep(const AlignmentConfig& cfg) {
  cfg.validate();
  return run_sweep(cfg.channel(), cfg);
}

void dump_series_csv(const AlignmentConfig& cfg, Variable which, std::optional<double> epsilon,
                     const std::filesystem::path& path) {
  cfg.validate();
  const auto h = cfg.channel();
  const auto ds = derivative_series(h, cfg.alphas, cfg.centers.front(), cfg.degree_cap);
  const auto& s = which == Variable::rx ? ds.f1 : ds.f2;
  const auto normalized = normalize_magnitudes(s);

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << "normalized";
  if (epsilon) os << ",selected";
  os << ",deg_rx,deg_tx,coeff_real,coeff_imag\n";
  for (const auto& nt : normalized) {
    const auto c = s.coeff(nt.exponent);
    os << format_double(nt.magnitude);
    // Same rule as threshold_select: strictly above epsilon with a nonzero real part.
    if (epsilon) os << ',' << (nt.magnitude > *epsilon && c.real() != 0.0 ? 1 : 0);
    os << ',' << nt.exponent.rx << ',' << nt.exponent.tx << ',' << format_double(c.real()) << ','
       << format_double(c.imag()) << '\n';
  }
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace beamalign
