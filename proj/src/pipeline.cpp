#include "admm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "admm/errors.hpp"
#include "admm/spectral.hpp"

namespace admm {

double Rng::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::index(std::uint64_t n) {
  if (n == 0) throw ParameterError("Rng::index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

void DegradeSpec::validate() const {
  if (!(dropout_fraction >= 0.0 && dropout_fraction < 1.0)) {
    throw ParameterError("dropout fraction must be in [0, 1)");
  }
  if (std::isnan(bsnr_db) || bsnr_db == -std::numeric_limits<double>::infinity()) {
    throw ParameterError("bsnr must be a number of dB or +inf");
  }
}

double variance(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size());
}

double bsnr_db(std::span<const double> blurred, double sigma) {
  if (!(sigma > 0.0)) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(variance(blurred) / (sigma * sigma));
}

std::vector<double> observed_values(const ImageGrid& x, const MaskMap& mask) {
  if (x.height() != mask.height() || x.width() != mask.width()) {
    throw DimensionError("observed_values: image and mask shapes differ");
  }
  std::vector<double> out;
  out.reserve(mask.observed_count());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mask.observed(i)) out.push_back(x[i]);
  }
  return out;
}

Degraded degrade(const ImageGrid& x, const DegradeSpec& spec) {
  spec.validate();
  const int l = spec.kernel.half_width();
  const int h = x.height();
  const int w = x.width();
  if (h <= 2 * l || w <= 2 * l) {
    throw DimensionError("degrade: a " + std::to_string(h) + "x" + std::to_string(w) +
                         " image has no valid region for a kernel with l = " + std::to_string(l));
  }
  const ImageGrid blurred = conv_periodic(x, kernel_spectrum(spec.kernel, h, w));
  Degraded out;
  out.mask = valid_region_mask(h, w, l);
  const int vh = h - 2 * l;
  const int vw = w - 2 * l;
  out.y = crop(blurred, l, l, vh, vw);

  Rng rng(spec.seed);
  const auto m = static_cast<std::size_t>(vh) * static_cast<std::size_t>(vw);
  const auto drop = static_cast<std::size_t>(std::llround(spec.dropout_fraction * static_cast<double>(m)));
  if (drop > 0) {
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    for (std::size_t i = 0; i < drop; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.index(m - i));
      std::swap(order[i], order[j]);
    }
    for (std::size_t i = 0; i < drop; ++i) {
      const int r = static_cast<int>(order[i] / static_cast<std::size_t>(vw));
      const int c = static_cast<int>(order[i] % static_cast<std::size_t>(vw));
      out.mask.set(r + l, c + l, false);
      out.y(r, c) = 0.0;
    }
  }

  if (std::isfinite(spec.bsnr_db)) {
    const double var = variance(observed_values(blurred, out.mask));
    out.sigma = std::sqrt(var / std::pow(10.0, spec.bsnr_db / 10.0));
    for (int r = 0; r < vh; ++r) {
      for (int c = 0; c < vw; ++c) {
        if (out.mask.observed(r + l, c + l)) out.y(r, c) += out.sigma * rng.normal();
      }
    }
  }
  return out;
}

ImageGrid embed_centered(const ImageGrid& x, int height, int width) {
  if (x.height() == height && x.width() == width) return x;
  if (x.height() > height || x.width() > width || (height - x.height()) % 2 != 0 || (width - x.width()) % 2 != 0) {
    throw DimensionError("a " + std::to_string(x.height()) + "x" + std::to_string(x.width()) +
                         " image is not a centered window of " + std::to_string(height) + "x" + std::to_string(width));
  }
  return embed(x, height, width, (height - x.height()) / 2, (width - x.width()) / 2);
}

namespace {

void require_region(const ImageGrid& window, const MaskMap& region, const char* what) {
  const int r0 = (region.height() - window.height()) / 2;
  const int c0 = (region.width() - window.width()) / 2;
  for (int r = 0; r < region.height(); ++r) {
    for (int c = 0; c < region.width(); ++c) {
      const bool inside = r >= r0 && r < r0 + window.height() && c >= c0 && c < c0 + window.width();
      if (region.observed(r, c) && !inside) {
        throw DimensionError(std::string(what) + " does not cover the metric region");
      }
    }
  }
}

Decibels ratio_db(double num, double den) {
  if (den == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {10.0 * std::log10(num / den), false};
}

double region_energy(const ImageGrid& a, const ImageGrid* b, const MaskMap& region) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!region.observed(i)) continue;
    const double d = b ? a[i] - (*b)[i] : a[i];
    s += d * d;
  }
  return s;
}

}  // namespace

Decibels isnr(const ImageGrid& x_true, const ImageGrid& y_observed, const ImageGrid& x_hat, const MaskMap& region) {
  if (x_true.height() != region.height() || x_true.width() != region.width()) {
    throw DimensionError("isnr: true image and region shapes differ");
  }
  require_region(y_observed, region, "observed image");
  require_region(x_hat, region, "estimate");
  const ImageGrid y = embed_centered(y_observed, region.height(), region.width());
  const ImageGrid xh = embed_centered(x_hat, region.height(), region.width());
  return ratio_db(region_energy(y, &x_true, region), region_energy(xh, &x_true, region));
}

Decibels snr(const ImageGrid& x_true, const ImageGrid& x_hat, const MaskMap& region) {
  if (x_true.height() != region.height() || x_true.width() != region.width()) {
    throw DimensionError("snr: true image and region shapes differ");
  }
  require_region(x_hat, region, "estimate");
  const ImageGrid xh = embed_centered(x_hat, region.height(), region.width());
  return ratio_db(region_energy(x_true, nullptr, region), region_energy(xh, &x_true, region));
}

ImageGrid make_test_scene(int height, int width, std::uint64_t seed) {
  if (height < 1 || width < 1) throw DimensionError("make_test_scene: empty size");
  Rng rng(seed);
  ImageGrid x(height, width);
  const double hh = height;
  const double ww = width;
  // Ramp plus a low-frequency wave; neither is periodic over the grid.
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double u = c / ww;
      const double v = r / hh;
      x(r, c) = 40.0 + 120.0 * u + 50.0 * v + 20.0 * std::sin(2.3 * std::numbers::pi * u * v + 0.7);
    }
  }
  const int shapes = 6 + static_cast<int>(rng.index(4));
  for (int s = 0; s < shapes; ++s) {
    const double cy = rng.uniform() * hh;
    const double cx = rng.uniform() * ww;
    const double size = (0.08 + 0.18 * rng.uniform()) * std::min(hh, ww);
    const double level = 255.0 * rng.uniform();
    const bool disk = rng.uniform() < 0.5;
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const double dy = r - cy;
        const double dx = c - cx;
        const bool in = disk ? dx * dx + dy * dy <= size * size : std::abs(dx) <= size && std::abs(dy) <= 0.6 * size;
        if (in) x(r, c) = level;
      }
    }
  }
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      x(r, c) = std::clamp(x(r, c) + 6.0 * std::sin(0.9 * r) * std::cos(0.7 * c), 0.0, 255.0);
    }
  }
  return x;
}

}  // namespace admm
