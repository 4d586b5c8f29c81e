#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace beamalign {

using cplx = std::complex<double>;

/// Receive/transmit beam angles in radians. The domain of interest is [0, 2pi].
struct BeamAngles {
  double rx = 0.0;
  double tx = 0.0;

  friend bool operator==(const BeamAngles&, const BeamAngles&) = default;
};

/// Link constants; only the gain alpha1*alpha2/alpha3 enters the rate.
struct RateParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 1.0;

  double gain() const noexcept { return alpha1 * alpha2 / alpha3; }

  /// Throws DomainError unless alpha3 > 0 and the gain is finite and positive.
  void validate() const;
};

/// Complex N_r x N_t channel H = H_r + j H_i, stored row-major.
class ChannelMatrix {
 public:
  /// All-zero channel.
  ChannelMatrix(std::size_t rows, std::size_t cols);
  ChannelMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  /// I.i.d. circularly-symmetric complex normal entries (real and imaginary
  /// parts N(0, 1/2)). Same seed and shape reproduce identical bits.
  static ChannelMatrix random(std::size_t rows, std::size_t cols, std::uint64_t seed);
  static ChannelMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::span<const cplx> entries() const noexcept { return entries_; }

  ChannelMatrix transposed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::optional<std::uint64_t> seed_;
  std::vector<cplx> entries_;
};

/// Half-wavelength ULA response: w[k] = exp(j*pi*k*sin(theta)) / sqrt(N).
std::vector<cplx> steering_vector(double theta, std::size_t n_antennas);

/// Rate log2(1 + gain * |w_rx^H H w_tx|^2) for explicit beamforming vectors.
double data_rate(const ChannelMatrix& h, const RateParams& params,
                 std::span<const cplx> w_rx, std::span<const cplx> w_tx);

/// Rate with ULA steering vectors sized from the channel (N_r = rows, N_t = cols).
double data_rate(const ChannelMatrix& h, const RateParams& params, const BeamAngles& angles);

struct RateGradient {
  double d_rx = 0.0;  // dR/dtheta_rx
  double d_tx = 0.0;  // dR/dtheta_tx
};

/// Central finite differences of the rate. Reference for every series-based derivative.
RateGradient rate_gradient_fd(const ChannelMatrix& h, const RateParams& params,
                              const BeamAngles& angles, double step = 1e-5);

}  // namespace beamalign
