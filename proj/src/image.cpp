#include "admm/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "admm/errors.hpp"
#include "admm/kernels.hpp"

namespace admm {

namespace {

std::string shape_str(int h, int w) { return std::to_string(h) + "x" + std::to_string(w); }

}  // namespace

ImageGrid::ImageGrid(int height, int width, double fill) : height_(height), width_(width) {
  if (height <= 0 || width <= 0) throw DimensionError("ImageGrid: non-positive shape " + shape_str(height, width));
  data_.assign(static_cast<std::size_t>(height) * width, fill);
}

ImageGrid::ImageGrid(int height, int width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height <= 0 || width <= 0) throw DimensionError("ImageGrid: non-positive shape " + shape_str(height, width));
  if (data_.size() != static_cast<std::size_t>(height) * width) {
    throw DimensionError("ImageGrid: data length " + std::to_string(data_.size()) + " does not match " +
                         shape_str(height, width));
  }
}

void require_same_shape(const ImageGrid& a, const ImageGrid& b, std::string_view what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + shape_str(a.height(), a.width()) + " vs " +
                         shape_str(b.height(), b.width()));
  }
}

ImageGrid grid_axpy(double a, const ImageGrid& x, const ImageGrid& y) {
  require_same_shape(x, y, "grid_axpy");
  ImageGrid out(x.height(), x.width());
  kernels::omp::axpy(a, x.values(), y.values(), out.values());
  return out;
}

double dot(const ImageGrid& x, const ImageGrid& y) {
  require_same_shape(x, y, "dot");
  return kernels::omp::dot(x.values(), y.values());
}

double sum_squares(const ImageGrid& x) { return kernels::omp::dot(x.values(), x.values()); }

bool all_finite(const ImageGrid& x) {
  return std::all_of(x.values().begin(), x.values().end(), [](double v) { return std::isfinite(v); });
}

ImageGrid crop(const ImageGrid& x, int row0, int col0, int height, int width) {
  if (row0 < 0 || col0 < 0 || row0 + height > x.height() || col0 + width > x.width()) {
    throw DimensionError("crop: window " + shape_str(height, width) + " at (" + std::to_string(row0) + "," +
                         std::to_string(col0) + ") exceeds " + shape_str(x.height(), x.width()));
  }
  ImageGrid out(height, width);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) out(r, c) = x(row0 + r, col0 + c);
  return out;
}

ImageGrid embed(const ImageGrid& x, int height, int width, int row0, int col0) {
  if (row0 < 0 || col0 < 0 || row0 + x.height() > height || col0 + x.width() > width) {
    throw DimensionError("embed: " + shape_str(x.height(), x.width()) + " does not fit in " +
                         shape_str(height, width));
  }
  ImageGrid out(height, width);
  for (int r = 0; r < x.height(); ++r)
    for (int c = 0; c < x.width(); ++c) out(row0 + r, col0 + c) = x(r, c);
  return out;
}

// ---------------------------------------------------------------- kernels

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::uniform: return "uniform";
    case KernelKind::out_of_focus: return "out-of-focus";
    case KernelKind::linear_motion: return "motion";
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::custom: return "custom";
  }
  return "custom";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "uniform") return KernelKind::uniform;
  if (name == "out-of-focus" || name == "out_of_focus" || name == "disk") return KernelKind::out_of_focus;
  if (name == "motion" || name == "linear-motion" || name == "linear_motion") return KernelKind::linear_motion;
  if (name == "gaussian") return KernelKind::gaussian;
  throw ParameterError("unknown blur kind '" + std::string(name) + "'");
}

Kernel::Kernel(int half_width, std::vector<double> taps, KernelKind kind)
    : half_width_(half_width), taps_(std::move(taps)), kind_(kind) {
  if (half_width < 0) throw ParameterError("Kernel: negative half width");
  const auto s = static_cast<std::size_t>(support());
  if (taps_.size() != s * s) {
    throw DimensionError("Kernel: expected " + std::to_string(s * s) + " taps, got " + std::to_string(taps_.size()));
  }
  if (!std::isfinite(sum())) throw NumericalError("Kernel: taps do not sum to a finite value");
}

double Kernel::sum() const { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

namespace {

std::vector<double> normalized(std::vector<double> taps) {
  const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
  if (!(total > 0.0)) throw ParameterError("kernel generator produced zero total weight");
  for (double& t : taps) t /= total;
  return taps;
}

std::vector<double> disk_taps(int l, double radius) {
  // Area coverage of each pixel square by the disk, estimated on a fixed
  // sub-pixel lattice.
  constexpr int kSub = 32;
  const int s = 2 * l + 1;
  std::vector<double> taps(static_cast<std::size_t>(s) * s, 0.0);
  const double r2 = radius * radius;
  for (int dr = -l; dr <= l; ++dr) {
    for (int dc = -l; dc <= l; ++dc) {
      int inside = 0;
      for (int i = 0; i < kSub; ++i) {
        const double y = dr - 0.5 + (i + 0.5) / kSub;
        for (int j = 0; j < kSub; ++j) {
          const double x = dc - 0.5 + (j + 0.5) / kSub;
          if (x * x + y * y <= r2) ++inside;
        }
      }
      taps[static_cast<std::size_t>(dr + l) * s + (dc + l)] = static_cast<double>(inside) / (kSub * kSub);
    }
  }
  return taps;
}

std::vector<double> motion_taps(int l, double length, double angle_deg) {
  // Each tap is the length of the centered segment that falls inside its
  // pixel square, estimated with dense midpoint samples along the segment.
  const int s = 2 * l + 1;
  std::vector<double> taps(static_cast<std::size_t>(s) * s, 0.0);
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(theta);
  const double uy = -std::sin(theta);  // rows grow downwards
  const int samples = static_cast<int>(std::ceil(64.0 * length));
  for (int k = 0; k < samples; ++k) {
    const double t = length * ((k + 0.5) / samples - 0.5);
    const int r = std::clamp(static_cast<int>(std::floor(t * uy + 0.5)), -l, l);
    const int c = std::clamp(static_cast<int>(std::floor(t * ux + 0.5)), -l, l);
    taps[static_cast<std::size_t>(r + l) * s + (c + l)] += 1.0;
  }
  return taps;
}

}  // namespace

Kernel make_kernel(KernelKind kind, int l, const KernelParams& params) {
  if (l < 0) throw ParameterError("make_kernel: half width must be >= 0");
  const int s = 2 * l + 1;
  const auto count = static_cast<std::size_t>(s) * s;
  switch (kind) {
    case KernelKind::uniform:
      return Kernel(l, std::vector<double>(count, 1.0 / static_cast<double>(count)), kind);
    case KernelKind::gaussian: {
      if (!(params.sigma > 0.0)) throw ParameterError("gaussian kernel: sigma must be > 0");
      std::vector<double> taps(count);
      const double denom = 2.0 * params.sigma * params.sigma;
      for (int dr = -l; dr <= l; ++dr)
        for (int dc = -l; dc <= l; ++dc)
          taps[static_cast<std::size_t>(dr + l) * s + (dc + l)] = std::exp(-(dr * dr + dc * dc) / denom);
      return Kernel(l, normalized(std::move(taps)), kind);
    }
    case KernelKind::out_of_focus: {
      const double radius = params.radius < 0.0 ? static_cast<double>(l) : params.radius;
      if (radius > l) throw ParameterError("out-of-focus kernel: radius exceeds half width");
      if (radius == 0.0) return Kernel(l, normalized(disk_taps(l, 0.5)), kind);
      return Kernel(l, normalized(disk_taps(l, radius)), kind);
    }
    case KernelKind::linear_motion: {
      const double length = params.length < 0.0 ? static_cast<double>(s) : params.length;
      if (!(length >= 1.0)) throw ParameterError("motion kernel: length must be >= 1");
      if (length > s + 1e-12) throw ParameterError("motion kernel: length exceeds support 2l+1");
      return Kernel(l, normalized(motion_taps(l, length, params.angle_deg)), kind);
    }
    case KernelKind::custom:
      break;
  }
  throw ParameterError("make_kernel: custom kernels are built from explicit taps");
}

// ---------------------------------------------------------------- masks

MaskMap::MaskMap(int height, int width, bool fill) : height_(height), width_(width) {
  if (height <= 0 || width <= 0) throw DimensionError("MaskMap: non-positive shape " + shape_str(height, width));
  observed_.assign(static_cast<std::size_t>(height) * width, fill ? 1 : 0);
}

MaskMap::MaskMap(int height, int width, std::vector<std::uint8_t> observed)
    : height_(height), width_(width), observed_(std::move(observed)) {
  if (height <= 0 || width <= 0) throw DimensionError("MaskMap: non-positive shape " + shape_str(height, width));
  if (observed_.size() != static_cast<std::size_t>(height) * width) {
    throw DimensionError("MaskMap: flag count does not match " + shape_str(height, width));
  }
  for (auto& f : observed_) f = f ? 1 : 0;
}

std::size_t MaskMap::observed_count() const {
  return static_cast<std::size_t>(std::count(observed_.begin(), observed_.end(), std::uint8_t{1}));
}

ImageGrid MaskMap::weights() const {
  ImageGrid out(height_, width_);
  for (std::size_t i = 0; i < observed_.size(); ++i) out[i] = observed_[i] ? 1.0 : 0.0;
  return out;
}

void MaskMap::require_nonempty() const {
  if (observed_count() == 0) throw ParameterError("mask has no observed pixels");
}

MaskMap valid_region_mask(int height, int width, int l) {
  if (l < 0) throw ParameterError("valid_region_mask: negative band width");
  if (height <= 2 * l || width <= 2 * l) {
    throw DimensionError("valid_region_mask: band of width " + std::to_string(l) + " exceeds " +
                         shape_str(height, width));
  }
  MaskMap mask(height, width, false);
  for (int r = l; r < height - l; ++r)
    for (int c = l; c < width - l; ++c) mask.set(r, c, true);
  return mask;
}

// ---------------------------------------------------------------- stacks

std::size_t CoeffStack::total_size() const {
  std::size_t n = 0;
  for (const auto& b : bands) n += b.size();
  return n;
}

bool CoeffStack::same_shape(const CoeffStack& other) const {
  if (levels != other.levels || bands.size() != other.bands.size()) return false;
  for (std::size_t i = 0; i < bands.size(); ++i)
    if (!bands[i].same_shape(other.bands[i])) return false;
  return true;
}

namespace {
void require_same_stack(const CoeffStack& a, const CoeffStack& b, std::string_view what) {
  if (!a.same_shape(b)) throw DimensionError(std::string(what) + ": coefficient stack shape mismatch");
}
}  // namespace

double dot(const CoeffStack& a, const CoeffStack& b) {
  require_same_stack(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.bands.size(); ++i) s += kernels::omp::dot(a.bands[i].values(), b.bands[i].values());
  return s;
}

double sum_squares(const CoeffStack& a) { return dot(a, a); }

CoeffStack stack_axpy(double a, const CoeffStack& x, const CoeffStack& y) {
  require_same_stack(x, y, "stack_axpy");
  CoeffStack out{x.levels, {}};
  out.bands.reserve(x.bands.size());
  for (std::size_t i = 0; i < x.bands.size(); ++i) out.bands.push_back(grid_axpy(a, x.bands[i], y.bands[i]));
  return out;
}

CoeffStack zeros_like(const CoeffStack& a) {
  CoeffStack out{a.levels, {}};
  out.bands.reserve(a.bands.size());
  for (const auto& b : a.bands) out.bands.emplace_back(b.height(), b.width());
  return out;
}

}  // namespace admm
