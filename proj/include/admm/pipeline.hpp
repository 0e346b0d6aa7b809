#pragma once

// Degradation (blur, crop to the valid region, noise, dropout) and quality metrics.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "admm/image.hpp"

namespace admm {

struct DegradeSpec {
  Kernel kernel;
  /// Blurred-signal-to-noise ratio in dB; +infinity means noiseless.
  double bsnr_db = 40.0;
  /// Fraction of valid-region pixels dropped at random, in [0, 1).
  double dropout_fraction = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Degraded {
  /// Observed (h-2l)x(w-2l) image; dropped pixels are zero.
  ImageGrid y;
  /// Full h x w observation map.
  MaskMap mask;
  double sigma = 0.0;
};

/// y = crop_valid(A x) + n on the observed pixels. Noise sigma follows
/// 10 log10(var(M A x) / sigma^2) = bsnr_db with the mean-removed variance
/// over observed pixels. Deterministic for a given seed.
Degraded degrade(const ImageGrid& x, const DegradeSpec& spec);

/// A decibel figure; `infinite` is set when the error energy is zero.
struct Decibels {
  double db = 0.0;
  bool infinite = false;
};

/// 10 log10(sum_region (y - x)^2 / sum_region (xhat - x)^2).
/// `y` and `xhat` may be full size or centered windows of the region grid;
/// every region pixel must lie inside both.
Decibels isnr(const ImageGrid& x_true, const ImageGrid& y_observed, const ImageGrid& x_hat, const MaskMap& region);
/// 10 log10(sum_region x^2 / sum_region (xhat - x)^2).
Decibels snr(const ImageGrid& x_true, const ImageGrid& x_hat, const MaskMap& region);

/// Mean-removed sample variance.
double variance(std::span<const double> v);
/// 10 log10(var(blurred) / sigma^2).
double bsnr_db(std::span<const double> blurred, double sigma);
/// Values of `x` at the observed pixels of `mask`, row-major.
std::vector<double> observed_values(const ImageGrid& x, const MaskMap& mask);

/// Centered embedding of a window into an h x w grid (identity when sizes match).
ImageGrid embed_centered(const ImageGrid& x, int height, int width);

/// Deterministic non-periodic test image in [0, 255]: a ramp with shapes and
/// mild texture, so left/right and top/bottom borders differ.
ImageGrid make_test_scene(int height, int width, std::uint64_t seed = 1);

/// Fixed-algorithm generator: mt19937_64 with hand-written uniform and
/// Box-Muller transforms, so streams do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in (0, 1).
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace admm
