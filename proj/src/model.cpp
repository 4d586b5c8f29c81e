#include "beamalign/model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "beamalign/error.hpp"

namespace beamalign {

namespace {

// Uniform double in (0, 1) from the top 53 bits. std::normal_distribution is
// implementation-defined, so the Gaussian transform is done by hand to keep
// seeded channels identical across standard libraries.
double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void RateParams::validate() const {
  if (!(alpha3 > 0.0)) throw DomainError("alpha3 must be positive");
  const double g = gain();
  if (!std::isfinite(g) || !(g > 0.0)) throw DomainError("rate gain must be finite and positive");
}

ChannelMatrix::ChannelMatrix(std::size_t rows, std::size_t cols)
    : ChannelMatrix(rows, cols, std::vector<cplx>(rows * cols)) {}

ChannelMatrix::ChannelMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw DomainError("channel must have at least one row and column");
  if (entries_.size() != rows_ * cols_) throw DomainError("channel entry count does not match shape");
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw DomainError("channel entries must be finite");
  }
}

ChannelMatrix ChannelMatrix::random(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> entries(rows * cols);
  const double scale = std::sqrt(0.5);
  for (auto& e : entries) {
    // Box-Muller: one complex sample per pair of uniforms.
    const double u1 = open_unit(rng);
    const double u2 = open_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    e = cplx(scale * r * std::cos(phi), scale * r * std::sin(phi));
  }
  ChannelMatrix h(rows, cols, std::move(entries));
  h.seed_ = seed;
  return h;
}

ChannelMatrix ChannelMatrix::identity(std::size_t n) {
  ChannelMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = 1.0;
  return h;
}

ChannelMatrix ChannelMatrix::transposed() const {
  ChannelMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  t.seed_ = seed_;
  return t;
}

std::vector<cplx> steering_vector(double theta, std::size_t n_antennas) {
  if (n_antennas == 0) throw DomainError("steering vector needs at least one antenna");
  if (!std::isfinite(theta)) throw DomainError("steering angle must be finite");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_antennas));
  const double phase_step = std::numbers::pi * std::sin(theta);
  std::vector<cplx> w(n_antennas);
  for (std::size_t k = 0; k < n_antennas; ++k) w[k] = std::polar(norm, phase_step * static_cast<double>(k));
  return w;
}

double data_rate(const ChannelMatrix& h, const RateParams& params,
                 std::span<const cplx> w_rx, std::span<const cplx> w_tx) {
  if (w_rx.size() != h.rows() || w_tx.size() != h.cols())
    throw DomainError("beamforming vector sizes " + std::to_string(w_rx.size()) + "x" +
                      std::to_string(w_tx.size()) + " do not match channel " +
                      std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  params.validate();
  cplx g = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    cplx row = 0.0;
    for (std::size_t t = 0; t < h.cols(); ++t) row += h(r, t) * w_tx[t];
    g += std::conj(w_rx[r]) * row;
  }
  return std::log2(1.0 + params.gain() * std::norm(g));
}

double data_rate(const ChannelMatrix& h, const RateParams& params, const BeamAngles& angles) {
  const auto w_rx = steering_vector(angles.rx, h.rows());
  const auto w_tx = steering_vector(angles.tx, h.cols());
  return data_rate(h, params, w_rx, w_tx);
}

RateGradient rate_gradient_fd(const ChannelMatrix& h, const RateParams& params,
                              const BeamAngles& angles, double step) {
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  auto at = [&](double drx, double dtx) {
    return data_rate(h, params, BeamAngles{angles.rx + drx, angles.tx + dtx});
  };
  return RateGradient{(at(step, 0) - at(-step, 0)) / (2.0 * step),
                      (at(0, step) - at(0, -step)) / (2.0 * step)};
}

}  // namespace beamalign
