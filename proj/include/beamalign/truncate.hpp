#pragma once

#include <complex>
#include <vector>

#include "beamalign/series.hpp"

namespace beamalign {

struct Term {
  Exponent exponent;
  double coeff = 0.0;
};

/// Real bivariate polynomial in local coordinates about `center`. Terms have
/// unique exponents, nonzero finite coefficients, and are kept in MonomialOrder.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  /// Sorts, merges duplicate exponents and drops zero coefficients.
  SparsePolynomial(std::vector<Term> terms, BeamAngles center = {});

  const std::vector<Term>& terms() const noexcept { return terms_; }
  const BeamAngles& center() const noexcept { return center_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  int degree(Variable var) const noexcept;
  int total_degree() const noexcept;
  double max_abs_coeff() const noexcept;
  double abs_coeff_sum() const noexcept;
  std::vector<Exponent> support() const;

  std::complex<double> evaluate(std::complex<double> u, std::complex<double> v) const;
  /// Sum of |c| |u^a v^b|, the natural scale for a relative residual at (u, v).
  double magnitude_at(std::complex<double> u, std::complex<double> v) const;

  /// Value and gradient (d/du, d/dv) at a point.
  struct Jet {
    std::complex<double> value;
    std::complex<double> d_rx;
    std::complex<double> d_tx;
  };
  Jet evaluate_with_gradient(std::complex<double> u, std::complex<double> v) const;

  /// Exponents (a, b) -> (b, a).
  SparsePolynomial transposed() const;

 private:
  std::vector<Term> terms_;
  BeamAngles center_;
};

struct NormalizedTerm {
  Exponent exponent;
  double magnitude = 0.0;  // |c| / max |c|, in [0, 1]
};

/// Coefficient magnitudes over the whole stored triangle, divided by the largest,
/// in MonomialOrder. Throws DomainError("nothing to normalize") for a zero series.
std::vector<NormalizedTerm> normalize_magnitudes(const TruncatedSeries& s);

/// Keeps the terms whose normalized magnitude is strictly greater than epsilon.
/// The real part of each kept coefficient is retained.
/// Throws EmptyTruncation when nothing survives.
SparsePolynomial threshold_select(const TruncatedSeries& s, double epsilon);

/// 1 / (sum |c| over p1 + sum |c| over p2), with raw coefficient magnitudes.
double approximation_error(const SparsePolynomial& p1, const SparsePolynomial& p2);

}  // namespace beamalign
