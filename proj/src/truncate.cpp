#include "beamalign/truncate.hpp"

#include <algorithm>
#include <cmath>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

std::vector<std::complex<double>> powers(std::complex<double> x, int n) {
  std::vector<std::complex<double>> p(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

}  // namespace

SparsePolynomial::SparsePolynomial(std::vector<Term> terms, BeamAngles center)
    : center_(center) {
  for (const auto& t : terms) {
    if (t.exponent.rx < 0 || t.exponent.tx < 0) throw DomainError("negative exponent in polynomial");
    if (!std::isfinite(t.coeff)) throw DomainError("polynomial coefficients must be finite");
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return MonomialOrder{}(a.exponent, b.exponent); });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0.0; });
}

int SparsePolynomial::degree(Variable var) const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, var == Variable::rx ? t.exponent.rx : t.exponent.tx);
  return d;
}

int SparsePolynomial::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.back().exponent.degree();
}

double SparsePolynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

double SparsePolynomial::abs_coeff_sum() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

std::vector<Exponent> SparsePolynomial::support() const {
  std::vector<Exponent> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.exponent);
  return out;
}

std::complex<double> SparsePolynomial::evaluate(std::complex<double> u, std::complex<double> v) const {
  const auto pu = powers(u, degree(Variable::rx));
  const auto pv = powers(v, degree(Variable::tx));
  std::complex<double> sum = 0.0;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    sum += it->coeff * pu[it->exponent.rx] * pv[it->exponent.tx];
  return sum;
}

double SparsePolynomial::magnitude_at(std::complex<double> u, std::complex<double> v) const {
  const double au = std::abs(u), av = std::abs(v);
  double sum = 0.0;
  for (const auto& t : terms_)
    sum += std::abs(t.coeff) * std::pow(au, t.exponent.rx) * std::pow(av, t.exponent.tx);
  return sum;
}

SparsePolynomial::Jet SparsePolynomial::evaluate_with_gradient(std::complex<double> u,
                                                               std::complex<double> v) const {
  const auto pu = powers(u, degree(Variable::rx));
  const auto pv = powers(v, degree(Variable::tx));
  Jet j{};
  for (const auto& t : terms_) {
    const int a = t.exponent.rx, b = t.exponent.tx;
    j.value += t.coeff * pu[a] * pv[b];
    if (a > 0) j.d_rx += t.coeff * static_cast<double>(a) * pu[a - 1] * pv[b];
    if (b > 0) j.d_tx += t.coeff * static_cast<double>(b) * pu[a] * pv[b - 1];
  }
  return j;
}

SparsePolynomial SparsePolynomial::transposed() const {
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& term : terms_) t.push_back({{term.exponent.tx, term.exponent.rx}, term.coeff});
  return SparsePolynomial(std::move(t), BeamAngles{center_.tx, center_.rx});
}

std::vector<NormalizedTerm> normalize_magnitudes(const TruncatedSeries& s) {
  double peak = 0.0;
  for (const auto& c : s.coeffs()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) throw DomainError("nothing to normalize");
  std::vector<NormalizedTerm> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double m = std::abs(s.coeffs()[i]);
    // The peak maps to exactly 1 regardless of rounding in the division.
    out.push_back({MonomialOrder::unrank(i), m == peak ? 1.0 : m / peak});
  }
  return out;
}

SparsePolynomial threshold_select(const TruncatedSeries& s, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("threshold must lie in [0, 1]");
  const auto normalized = normalize_magnitudes(s);
  std::vector<Term> kept;
  for (const auto& nt : normalized) {
    if (nt.magnitude > epsilon) {
      const double c = s.coeff(nt.exponent).real();
      if (c != 0.0) kept.push_back({nt.exponent, c});
    }
  }
  if (kept.empty()) throw EmptyTruncation();
  return SparsePolynomial(std::move(kept), s.center());
}

double approximation_error(const SparsePolynomial& p1, const SparsePolynomial& p2) {
  if (p1.empty() && p2.empty()) throw DomainError("approximation error needs at least one term");
  return 1.0 / (p1.abs_coeff_sum() + p2.abs_coeff_sum());
}

}  // namespace beamalign
