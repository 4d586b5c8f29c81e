#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "beamalign/truncate.hpp"

namespace beamalign {

struct SolverOptions {
  /// Acceptance bound on |p(z)| / sum_a |c_a| |z^a| for each equation.
  double residual_tol = 1e-8;
  /// Roots closer than this (Euclidean in C^2) are merged.
  double cluster_tol = 1e-7;
  /// Damped Newton steps applied to every eigenvalue candidate.
  int polish_iterations = 10;
  /// Variable eliminated as the eigenvalue of the resultant pencil.
  Variable hidden = Variable::tx;
  /// Divide both polynomials by their common monomial factor u^a v^b before
  /// solving. Such a factor is a whole coordinate line of roots; stripping it
  /// keeps the isolated roots (and every torus root) instead of failing with
  /// Kind::NonIsolated.
  bool strip_common_monomial = false;
};

struct Root {
  std::complex<double> rx;  // global coordinates (center added back)
  std::complex<double> tx;
  double residual1 = 0.0;   // relative residual of p1
  double residual2 = 0.0;   // relative residual of p2
};

struct RootSet {
  std::vector<Root> roots;  // sorted by Re(tx), then Re(rx), then imaginary parts
  BeamAngles center;
  /// Roots with a zero local coordinate; the torus bound does not count them.
  std::size_t zero_coordinate_roots = 0;
  /// Finite eigenvalues of the pencil, i.e. hidden-variable candidates.
  std::size_t candidates = 0;
  /// Dimension of the linearized pencil.
  std::size_t pencil_size = 0;
  /// Common monomial factor removed under SolverOptions::strip_common_monomial.
  Exponent stripped_factor;
};

/// All isolated complex common roots of p1 = p2 = 0 via the hidden-variable
/// Sylvester resultant: the polynomial matrix S(y) is linearized into a
/// generalized eigenproblem, the free variable is read off the null vector
/// of S(y), and every candidate is polished by damped Newton.
///
/// Throws DomainError for empty or off-center inputs, and SolverError with
/// Kind::NonIsolated when the resultant vanishes identically or Kind::Degenerate
/// when no pencil can be formed (both polynomials free of the eliminated
/// variable) or the pencil is singular. No surviving roots is not an error.
RootSet solve_system(const SparsePolynomial& p1, const SparsePolynomial& p2,
                     const SolverOptions& opts = {});

struct DomainBox {
  double lo = 0.0;
  double hi = 2.0 * std::numbers::pi;
  /// Reduce real parts modulo (hi - lo) into the box before testing membership.
  bool wrap = false;
};

/// Real parts of the roots whose imaginary parts are both within imag_tol and
/// that lie in the box (per coordinate).
std::vector<BeamAngles> filter_real_domain(const RootSet& rs, double imag_tol,
                                           const DomainBox& domain = {});

struct PolishResult {
  std::complex<double> rx;
  std::complex<double> tx;
  double residual = 0.0;  // sqrt(sum_i (|p_i| / max|c_i|)^2)
  int iterations = 0;
  bool singular = false;  // stopped on a singular Jacobian
};

/// Damped Newton on (p1, p2) in the polynomials' local coordinates. The
/// residual never increases; if no step improves it the input is returned.
PolishResult newton_polish(const SparsePolynomial& p1, const SparsePolynomial& p2,
                           std::complex<double> start_rx, std::complex<double> start_tx,
                           int max_iter);

}  // namespace beamalign
