#include "beamalign/series.hpp"

#include <cmath>
#include <numbers>

#include "beamalign/error.hpp"

namespace beamalign {

Exponent MonomialOrder::unrank(std::size_t index) noexcept {
  std::size_t n = 0;
  while ((n + 1) * (n + 2) / 2 <= index) ++n;
  const auto tx = static_cast<int>(index - n * (n + 1) / 2);
  return Exponent{static_cast<int>(n) - tx, tx};
}

TruncatedSeries::TruncatedSeries(int degree_cap, BeamAngles center)
    : degree_cap_(degree_cap), center_(center) {
  if (degree_cap < 0) throw DomainError("series degree cap must be non-negative");
  coeffs_.assign(monomial_count(degree_cap), cplx{});
}

TruncatedSeries TruncatedSeries::constant(cplx value, int degree_cap, BeamAngles center) {
  TruncatedSeries s(degree_cap, center);
  s.coeffs_[0] = value;
  return s;
}

TruncatedSeries TruncatedSeries::variable(Variable var, int degree_cap, BeamAngles center) {
  TruncatedSeries s(degree_cap, center);
  if (degree_cap >= 1) s.set(var == Variable::rx ? Exponent{1, 0} : Exponent{0, 1}, 1.0);
  return s;
}

cplx TruncatedSeries::coeff(const Exponent& e) const {
  if (e.rx < 0 || e.tx < 0 || e.degree() > degree_cap_) return {};
  return coeffs_[MonomialOrder::rank(e)];
}

void TruncatedSeries::set(const Exponent& e, cplx value) {
  if (e.rx < 0 || e.tx < 0 || e.degree() > degree_cap_)
    throw DomainError("exponent outside the truncation triangle");
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw DomainError("series coefficients must be finite");
  coeffs_[MonomialOrder::rank(e)] = value;
}

bool TruncatedSeries::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (c != cplx{}) return false;
  return true;
}

cplx TruncatedSeries::evaluate(double du, double dv) const {
  std::vector<double> pu(degree_cap_ + 1, 1.0), pv(degree_cap_ + 1, 1.0);
  for (int k = 1; k <= degree_cap_; ++k) {
    pu[k] = pu[k - 1] * du;
    pv[k] = pv[k - 1] * dv;
  }
  cplx sum = 0.0;
  // Highest degree first so small terms accumulate before the constant.
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Exponent e = MonomialOrder::unrank(i);
    sum += coeffs_[i] * (pu[e.rx] * pv[e.tx]);
  }
  return sum;
}

TruncatedSeries TruncatedSeries::conj() const {
  TruncatedSeries out = *this;
  for (auto& c : out.coeffs_) c = std::conj(c);
  return out;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other) const {
  if (degree_cap_ != other.degree_cap_) throw DomainError("series degree caps differ");
  if (!(center_ == other.center_)) throw DomainError("series centers differ");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  TruncatedSeries out(a.degree_cap_, a.center_);
  // Each unordered pair of slots contributes a_i b_j + a_j b_i.
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k) {
    const Exponent ek = MonomialOrder::unrank(k);
    cplx acc{};
    for (int ra = 0; ra <= ek.rx; ++ra)
      for (int ta = 0; ta <= ek.tx; ++ta) {
        const std::size_t i = MonomialOrder::rank({ra, ta});
        const std::size_t j = MonomialOrder::rank({ek.rx - ra, ek.tx - ta});
        if (i < j) acc += a.coeffs_[i] * b.coeffs_[j] + a.coeffs_[j] * b.coeffs_[i];
        else if (i == j) acc += a.coeffs_[i] * b.coeffs_[i];
      }
    out.coeffs_[k] = acc;
  }
  return out;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries series_exp(const TruncatedSeries& v) {
  if (v.constant_term() != cplx{}) throw DomainError("series_exp needs a zero constant term");
  const int d = v.degree_cap();
  // Horner: 1 + v(1 + v/2(1 + v/3(...))).
  auto t = TruncatedSeries::constant(1.0, d, v.center());
  const auto one = t;
  for (int k = d; k >= 1; --k) t = one + (v * t) * cplx(1.0 / k);
  return t;
}

TruncatedSeries series_log1p(const TruncatedSeries& u) {
  if (u.constant_term() != cplx{}) throw DomainError("series_log1p needs a zero constant term");
  const int d = u.degree_cap();
  if (d == 0) return TruncatedSeries(0, u.center());
  // u(1 - u(1/2 - u(1/3 - ... u/D))).
  auto t = TruncatedSeries::constant(1.0 / d, d, u.center());
  for (int k = d - 1; k >= 1; --k) t = TruncatedSeries::constant(1.0 / k, d, u.center()) - u * t;
  return u * t;
}

TruncatedSeries series_sin_shifted(Variable var, const BeamAngles& center, int degree_cap) {
  const double c = var == Variable::rx ? center.rx : center.tx;
  const double derivs[4] = {std::sin(c), std::cos(c), -std::sin(c), -std::cos(c)};
  TruncatedSeries s(degree_cap, center);
  double inv_factorial = 1.0;
  for (int k = 0; k <= degree_cap; ++k) {
    if (k > 0) inv_factorial /= k;
    const Exponent e = var == Variable::rx ? Exponent{k, 0} : Exponent{0, k};
    s.set(e, derivs[k % 4] * inv_factorial);
  }
  return s;
}

TruncatedSeries series_partial(const TruncatedSeries& s, Variable var) {
  if (s.degree_cap() < 1) throw DomainError("cannot differentiate a degree-0 series");
  TruncatedSeries out(s.degree_cap() - 1, s.center());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Exponent e = MonomialOrder::unrank(i);
    if (var == Variable::rx) {
      out.set(e, static_cast<double>(e.rx + 1) * s.coeff({e.rx + 1, e.tx}));
    } else {
      out.set(e, static_cast<double>(e.tx + 1) * s.coeff({e.rx, e.tx + 1}));
    }
  }
  return out;
}

namespace {

// Series of the ULA steering entries exp(j*pi*k*sin(theta)) / sqrt(N) about the center.
std::vector<TruncatedSeries> steering_series(Variable var, std::size_t n_antennas,
                                             const BeamAngles& center, int d) {
  const double c = var == Variable::rx ? center.rx : center.tx;
  auto shift = series_sin_shifted(var, center, d);
  shift.set({0, 0}, 0.0);  // sin(c + w) - sin(c)
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_antennas));
  std::vector<TruncatedSeries> out;
  out.reserve(n_antennas);
  for (std::size_t k = 0; k < n_antennas; ++k) {
    const double kpi = std::numbers::pi * static_cast<double>(k);
    const cplx phase0 = std::polar(norm, kpi * std::sin(c));
    out.push_back(series_exp(shift * cplx(0.0, kpi)) * phase0);
  }
  return out;
}

}  // namespace

TruncatedSeries rate_series(const ChannelMatrix& h, const RateParams& params,
                            const BeamAngles& center, int degree_cap) {
  if (degree_cap < 2) throw DomainError("rate series needs degree cap >= 2");
  params.validate();
  const int d = degree_cap;
  const auto w_rx = steering_series(Variable::rx, h.rows(), center, d);
  const auto w_tx = steering_series(Variable::tx, h.cols(), center, d);

  // g = sum_t (sum_r conj(w_rx[r]) H[r,t]) w_tx[t]
  TruncatedSeries g(d, center);
  for (std::size_t t = 0; t < h.cols(); ++t) {
    TruncatedSeries a(d, center);
    for (std::size_t r = 0; r < h.rows(); ++r) a += w_rx[r].conj() * h(r, t);
    g += a * w_tx[t];
  }

  auto q = (g * g.conj()) * cplx(params.gain());
  const double q0 = q.constant_term().real();
  q.set({0, 0}, 0.0);
  // log(1 + q) = log(1 + q0) + log1p((q - q0) / (1 + q0))
  auto rate = series_log1p(q * cplx(1.0 / (1.0 + q0)));
  rate.set({0, 0}, std::log1p(q0));
  return rate * cplx(1.0 / std::numbers::ln2);
}

}  // namespace beamalign
