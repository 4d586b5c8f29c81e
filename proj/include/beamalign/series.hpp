#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "beamalign/model.hpp"

namespace beamalign {

enum class Variable { rx = 0, tx = 1 };

/// Exponent pair of a monomial u^rx v^tx in local coordinates
/// u = theta_rx - center.rx, v = theta_tx - center.tx.
struct Exponent {
  int rx = 0;
  int tx = 0;

  int degree() const noexcept { return rx + tx; }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Ascending total degree; within a degree, lexicographic with theta_tx > theta_rx,
/// i.e. u^n < u^(n-1) v < ... < v^n.
struct MonomialOrder {
  bool operator()(const Exponent& a, const Exponent& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.tx < b.tx;
  }

  /// Position of e in the order, which is also its dense storage slot.
  static std::size_t rank(const Exponent& e) noexcept {
    const auto n = static_cast<std::size_t>(e.degree());
    return n * (n + 1) / 2 + static_cast<std::size_t>(e.tx);
  }
  static Exponent unrank(std::size_t index) noexcept;
};

/// Number of monomials of total degree <= d in two variables.
constexpr std::size_t monomial_count(int d) noexcept {
  return d < 0 ? 0 : static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 2) / 2;
}

/// Bivariate power series truncated at total degree D, expanded about `center`.
/// Coefficients are stored densely over the triangular index set in MonomialOrder.
class TruncatedSeries {
 public:
  TruncatedSeries(int degree_cap, BeamAngles center);

  static TruncatedSeries constant(cplx value, int degree_cap, BeamAngles center);
  /// The local coordinate of `var` (u or v) as a series.
  static TruncatedSeries variable(Variable var, int degree_cap, BeamAngles center);

  int degree_cap() const noexcept { return degree_cap_; }
  const BeamAngles& center() const noexcept { return center_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Zero for exponents beyond the cap.
  cplx coeff(const Exponent& e) const;
  void set(const Exponent& e, cplx value);
  cplx constant_term() const noexcept { return coeffs_.front(); }

  bool is_zero() const noexcept;
  cplx evaluate(double du, double dv) const;
  TruncatedSeries conj() const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(cplx scalar);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, cplx s) { return a *= s; }
  friend TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  void check_compatible(const TruncatedSeries& other) const;

  int degree_cap_;
  BeamAngles center_;
  std::vector<cplx> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
/// Cauchy product truncated at the common degree cap.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// exp(v) for v with zero constant term; the sum is finite because v is nilpotent
/// under truncation.
TruncatedSeries series_exp(const TruncatedSeries& v);

/// log(1 + u) for u with zero constant term.
TruncatedSeries series_log1p(const TruncatedSeries& u);

/// Taylor series of sin(center.var + w) in the local coordinate w of `var`.
TruncatedSeries series_sin_shifted(Variable var, const BeamAngles& center, int degree_cap);

/// Formal partial derivative; the result has degree cap D - 1.
TruncatedSeries series_partial(const TruncatedSeries& s, Variable var);

/// Truncated Taylor series of the rate R about `center`.
TruncatedSeries rate_series(const ChannelMatrix& h, const RateParams& params,
                            const BeamAngles& center, int degree_cap);

}  // namespace beamalign
