#include "beamalign/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

double merit(const SparsePolynomial& p1, const SparsePolynomial& p2, double s1, double s2, cd u, cd v) {
  const double a = std::abs(p1.evaluate(u, v)) / s1;
  const double b = std::abs(p2.evaluate(u, v)) / s2;
  return std::hypot(a, b);
}

double relative_residual(const SparsePolynomial& p, cd u, cd v) {
  const double scale = p.magnitude_at(u, v);
  if (scale == 0.0) return 0.0;
  return std::abs(p.evaluate(u, v)) / scale;
}

// Coefficient matrices of the Sylvester matrix S(y) = sum_k S_k y^k of p1, p2
// viewed as polynomials in x (= rx) with coefficients in y (= tx).
// Rows x^i p1 (i < m2) then x^j p2 (j < m1); columns are 1, x, ..., x^(n-1).
struct SylvesterPencil {
  int m1 = 0, m2 = 0, n = 0, d = 0;
  double y_scale = 1.0;             // y = y_scale * lambda
  std::vector<MatrixXd> blocks;     // scaled S_k
  std::vector<double> col_scale;    // S_scaled = R^-1 S C^-1 with C = diag(col_scale)
};

SylvesterPencil build_pencil(const SparsePolynomial& p1, const SparsePolynomial& p2) {
  SylvesterPencil sp;
  sp.m1 = p1.degree(Variable::rx);
  sp.m2 = p2.degree(Variable::rx);
  sp.n = sp.m1 + sp.m2;
  sp.d = std::max(p1.degree(Variable::tx), p2.degree(Variable::tx));
  if (sp.n == 0) throw SolverError(SolverError::Kind::Degenerate);

  sp.blocks.assign(sp.d + 1, MatrixXd::Zero(sp.n, sp.n));
  for (int i = 0; i < sp.m2; ++i)
    for (const auto& t : p1.terms()) sp.blocks[t.exponent.tx](i, i + t.exponent.rx) += t.coeff;
  for (int j = 0; j < sp.m1; ++j)
    for (const auto& t : p2.terms()) sp.blocks[t.exponent.tx](sp.m2 + j, j + t.exponent.rx) += t.coeff;

  // Balance the eigenvalue scale so the first and last blocks have equal norm.
  const double n0 = sp.blocks.front().norm();
  const double nd = sp.blocks.back().norm();
  if (sp.d > 0 && n0 > 0.0 && nd > 0.0) sp.y_scale = std::pow(n0 / nd, 1.0 / sp.d);
  for (int k = 1; k <= sp.d; ++k) sp.blocks[k] *= std::pow(sp.y_scale, k);

  for (int i = 0; i < sp.n; ++i) {
    double r = 0.0;
    for (const auto& b : sp.blocks) r = std::max(r, b.row(i).cwiseAbs().maxCoeff());
    if (r > 0.0)
      for (auto& b : sp.blocks) b.row(i) /= r;
  }
  sp.col_scale.assign(sp.n, 1.0);
  for (int j = 0; j < sp.n; ++j) {
    double c = 0.0;
    for (const auto& b : sp.blocks) c = std::max(c, b.col(j).cwiseAbs().maxCoeff());
    if (c > 0.0) {
      sp.col_scale[j] = c;
      for (auto& b : sp.blocks) b.col(j) /= c;
    }
  }
  return sp;
}

MatrixXcd evaluate_pencil(const SylvesterPencil& sp, cd lambda) {
  // Horner over the blocks.
  MatrixXcd s = sp.blocks[sp.d].cast<cd>();
  for (int k = sp.d - 1; k >= 0; --k) s = s * lambda + sp.blocks[k].cast<cd>();
  return s;
}

// The resultant vanishes identically iff S(y) is singular for every y; probe a
// few fixed generic points.
bool resultant_vanishes(const SylvesterPencil& sp) {
  static constexpr cd probes[] = {{0.6180339887, 0.4142135624},
                                  {-0.7071067812, 0.3090169944},
                                  {0.2360679775, -0.9510565163}};
  for (const auto& y : probes) {
    Eigen::JacobiSVD<MatrixXcd> svd(evaluate_pencil(sp, y));
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) > 1e-12 * sv(0)) return false;
  }
  return true;
}

// Roots of sum_k c[k] x^k via the companion matrix; negligible leading
// coefficients are dropped.
std::vector<cd> univariate_roots(std::vector<cd> c) {
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return {};
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * peak) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  MatrixXcd comp = MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::ComplexEigenSolver<MatrixXcd> es(comp, false);
  std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return out;
}

// Coefficients in x of p(x, y) at fixed y.
std::vector<cd> restrict_to_x(const SparsePolynomial& p, cd y) {
  std::vector<cd> c(p.degree(Variable::rx) + 1, 0.0);
  for (const auto& t : p.terms()) c[t.exponent.rx] += t.coeff * std::pow(y, t.exponent.tx);
  return c;
}

Exponent common_monomial(const SparsePolynomial& p1, const SparsePolynomial& p2) {
  Exponent m{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  for (const auto* p : {&p1, &p2})
    for (const auto& t : p->terms()) {
      m.rx = std::min(m.rx, t.exponent.rx);
      m.tx = std::min(m.tx, t.exponent.tx);
    }
  return m;
}

SparsePolynomial divide_monomial(const SparsePolynomial& p, Exponent m) {
  std::vector<Term> terms = p.terms();
  for (auto& t : terms) t.exponent = {t.exponent.rx - m.rx, t.exponent.tx - m.tx};
  return SparsePolynomial(std::move(terms), p.center());
}

struct Candidate {
  cd u, v;
  double r1, r2;
};

std::vector<Candidate> solve_hidden_tx(const SparsePolynomial& p1, const SparsePolynomial& p2,
                                       const SolverOptions& opts, std::size_t& n_candidates,
                                       std::size_t& pencil_size) {
  const auto sp = build_pencil(p1, p2);
  if (resultant_vanishes(sp)) throw SolverError(SolverError::Kind::NonIsolated);

  std::vector<cd> hidden_values;
  if (sp.d > 0) {
    const int n = sp.n, d = sp.d, big = n * d;
    pencil_size = static_cast<std::size_t>(big);
    // First companion linearization: A z = lambda B z with z = [s; lambda s; ...].
    MatrixXd a = MatrixXd::Zero(big, big);
    MatrixXd b = MatrixXd::Identity(big, big);
    for (int i = 0; i + 1 < d; ++i) a.block(i * n, (i + 1) * n, n, n).setIdentity();
    for (int k = 0; k < d; ++k) a.block((d - 1) * n, k * n, n, n) = -sp.blocks[k];
    b.block((d - 1) * n, (d - 1) * n, n, n) = sp.blocks[d];

    Eigen::GeneralizedEigenSolver<MatrixXd> ges;
    ges.compute(a, b, false);
    if (ges.info() != Eigen::Success) throw SolverError(SolverError::Kind::Degenerate);
    const double tiny = 1e-13 * std::max(1.0, a.norm());
    for (Eigen::Index k = 0; k < ges.alphas().size(); ++k) {
      const cd alpha = ges.alphas()(k);
      const double beta = ges.betas()(k);
      if (std::abs(alpha) < tiny && std::abs(beta) < tiny)
        throw SolverError(SolverError::Kind::Degenerate);
      if (std::abs(beta) <= 1e-12 * std::abs(alpha)) continue;  // infinite eigenvalue
      const cd lambda = alpha / beta;
      if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) || std::abs(lambda) > 1e8)
        continue;
      hidden_values.push_back(lambda);
    }
  }
  n_candidates = hidden_values.size();

  std::vector<Candidate> accepted;
  auto try_point = [&](cd u, cd v) {
    const auto pol = newton_polish(p1, p2, u, v, opts.polish_iterations);
    const double r1 = relative_residual(p1, pol.rx, pol.tx);
    const double r2 = relative_residual(p2, pol.rx, pol.tx);
    if (std::isfinite(r1) && std::isfinite(r2) && r1 <= opts.residual_tol && r2 <= opts.residual_tol) {
      accepted.push_back({pol.rx, pol.tx, r1, r2});
      return true;
    }
    return false;
  };

  for (const cd lambda : hidden_values) {
    const cd y = sp.y_scale * lambda;
    bool resolved = false;
    if (sp.n >= 2) {
      Eigen::JacobiSVD<MatrixXcd> svd(evaluate_pencil(sp, lambda), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const bool simple = sv(sp.n - 2) > 1e-6 * sv(0);
      if (simple) {
        VectorXcd null = svd.matrixV().col(sp.n - 1);
        for (int j = 0; j < sp.n; ++j) null(j) /= sp.col_scale[j];
        // Least-squares shift ratio of the monomial vector [1, x, x^2, ...].
        cd num = 0.0;
        double den = 0.0;
        for (int j = 0; j + 1 < sp.n; ++j) {
          num += std::conj(null(j)) * null(j + 1);
          den += std::norm(null(j));
        }
        if (den > 0.0) resolved = try_point(num / den, y);
      }
    }
    if (!resolved) {
      // Repeated hidden value or no monomial structure: solve for x directly.
      const auto& q = p1.degree(Variable::rx) >= 1 ? p1 : p2;
      for (const cd x : univariate_roots(restrict_to_x(q, y))) try_point(x, y);
    }
  }
  return accepted;
}

}  // namespace

PolishResult newton_polish(const SparsePolynomial& p1, const SparsePolynomial& p2,
                           std::complex<double> start_rx, std::complex<double> start_tx,
                           int max_iter) {
  if (max_iter < 1) throw DomainError("newton_polish needs at least one iteration");
  if (p1.empty() || p2.empty()) throw DomainError("newton_polish needs nonzero polynomials");
  const double s1 = p1.max_abs_coeff(), s2 = p2.max_abs_coeff();
  PolishResult res{start_rx, start_tx, merit(p1, p2, s1, s2, start_rx, start_tx), 0, false};
  if (!std::isfinite(res.residual)) return res;

  for (int it = 0; it < max_iter && res.residual > 0.0; ++it) {
    const auto j1 = p1.evaluate_with_gradient(res.rx, res.tx);
    const auto j2 = p2.evaluate_with_gradient(res.rx, res.tx);
    const cd det = j1.d_rx * j2.d_tx - j1.d_tx * j2.d_rx;
    if (det == 0.0 || !std::isfinite(std::abs(det))) {
      res.singular = true;
      break;
    }
    const cd du = (-j1.value * j2.d_tx + j2.value * j1.d_tx) / det;
    const cd dv = (-j2.value * j1.d_rx + j1.value * j2.d_rx) / det;
    if (!std::isfinite(std::abs(du)) || !std::isfinite(std::abs(dv))) {
      res.singular = true;
      break;
    }
    bool improved = false;
    double t = 1.0;
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      const cd u = res.rx + t * du, v = res.tx + t * dv;
      const double m = merit(p1, p2, s1, s2, u, v);
      if (m < res.residual) {
        res.rx = u;
        res.tx = v;
        res.residual = m;
        improved = true;
        break;
      }
    }
    if (!improved) break;
    ++res.iterations;
  }
  return res;
}

RootSet solve_system(const SparsePolynomial& p1, const SparsePolynomial& p2, const SolverOptions& opts) {
  if (p1.empty() || p2.empty()) throw DomainError("solve_system needs two nonzero polynomials");
  if (!(p1.center() == p2.center())) throw DomainError("polynomials are expanded about different centers");

  RootSet rs;
  rs.center = p1.center();
  SparsePolynomial q1 = p1, q2 = p2;
  if (opts.strip_common_monomial) {
    rs.stripped_factor = common_monomial(p1, p2);
    if (rs.stripped_factor.degree() > 0) {
      q1 = divide_monomial(p1, rs.stripped_factor);
      q2 = divide_monomial(p2, rs.stripped_factor);
    }
  }
  const bool swap = opts.hidden == Variable::rx;
  std::vector<Candidate> found = swap ? solve_hidden_tx(q1.transposed(), q2.transposed(), opts,
                                                        rs.candidates, rs.pencil_size)
                                      : solve_hidden_tx(q1, q2, opts, rs.candidates, rs.pencil_size);
  if (swap)
    for (auto& c : found) std::swap(c.u, c.v);

  // Best residual first, then greedy clustering.
  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return std::max(a.r1, a.r2) < std::max(b.r1, b.r2);
  });
  std::vector<Candidate> unique;
  for (const auto& c : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Candidate& k) {
      return std::sqrt(std::norm(k.u - c.u) + std::norm(k.v - c.v)) <= opts.cluster_tol;
    });
    if (!dup) unique.push_back(c);
  }

  for (const auto& c : unique) {
    if (std::abs(c.u) <= opts.cluster_tol || std::abs(c.v) <= opts.cluster_tol) ++rs.zero_coordinate_roots;
    rs.roots.push_back({c.u + rs.center.rx, c.v + rs.center.tx, c.r1, c.r2});
  }
  std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
    if (a.tx.real() != b.tx.real()) return a.tx.real() < b.tx.real();
    if (a.rx.real() != b.rx.real()) return a.rx.real() < b.rx.real();
    if (a.tx.imag() != b.tx.imag()) return a.tx.imag() < b.tx.imag();
    return a.rx.imag() < b.rx.imag();
  });
  return rs;
}

std::vector<BeamAngles> filter_real_domain(const RootSet& rs, double imag_tol, const DomainBox& domain) {
  if (!(imag_tol > 0.0)) throw DomainError("imag_tol must be positive");
  const double period = domain.hi - domain.lo;
  auto place = [&](double x, double& out) {
    if (domain.wrap) {
      x = domain.lo + std::fmod(x - domain.lo, period);
      if (x < domain.lo) x += period;
    }
    out = x;
    return x >= domain.lo && x <= domain.hi;
  };
  std::vector<BeamAngles> out;
  for (const auto& r : rs.roots) {
    if (std::abs(r.rx.imag()) > imag_tol || std::abs(r.tx.imag()) > imag_tol) continue;
    BeamAngles a;
    if (place(r.rx.real(), a.rx) && place(r.tx.real(), a.tx)) out.push_back(a);
  }
  return out;
}

}  // namespace beamalign
