#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace admm {

/// Real-valued 2-D pixel array in row-major order.
///
/// Intensities are nominally in [0, 255] but nothing enforces that; the
/// solvers treat images as plain vectors in R^(height*width). A
/// default-constructed grid is empty (0x0) and is only useful as a
/// placeholder.
class ImageGrid {
 public:
  ImageGrid() = default;
  ImageGrid(int height, int width, double fill = 0.0);
  ImageGrid(int height, int width, std::vector<double> data);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  double operator()(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool same_shape(const ImageGrid& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }
  bool operator==(const ImageGrid& other) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// Throws DimensionError unless `a` and `b` have the same shape.
void require_same_shape(const ImageGrid& a, const ImageGrid& b, std::string_view what);

/// a*x + y, elementwise.
ImageGrid grid_axpy(double a, const ImageGrid& x, const ImageGrid& y);
double dot(const ImageGrid& x, const ImageGrid& y);
double sum_squares(const ImageGrid& x);
bool all_finite(const ImageGrid& x);

/// Copies the height x width window starting at (row0, col0).
ImageGrid crop(const ImageGrid& x, int row0, int col0, int height, int width);
/// Places `x` at (row0, col0) inside a zero grid of the given size.
ImageGrid embed(const ImageGrid& x, int height, int width, int row0, int col0);

enum class KernelKind { uniform, out_of_focus, linear_motion, gaussian, custom };

std::string_view to_string(KernelKind kind);
/// Accepts "uniform", "out-of-focus"/"out_of_focus"/"disk", "motion"/"linear-motion",
/// "gaussian". Throws ParameterError otherwise.
KernelKind parse_kernel_kind(std::string_view name);

/// Generator parameters; unused fields are ignored for a given kind.
/// Negative radius/length select the default (l and 2l+1 respectively).
struct KernelParams {
  double sigma = 0.0;
  double radius = -1.0;
  double length = -1.0;
  double angle_deg = 0.0;
};

/// Compact (2l+1)x(2l+1) point-spread function. Tap (0,0) of the logical
/// filter sits at array index (l, l).
class Kernel {
 public:
  Kernel() : Kernel(0, {1.0}, KernelKind::custom) {}
  Kernel(int half_width, std::vector<double> taps, KernelKind kind);

  int half_width() const { return half_width_; }
  int support() const { return 2 * half_width_ + 1; }
  KernelKind kind() const { return kind_; }
  std::span<const double> taps() const { return taps_; }

  /// Tap at logical offset (dr, dc), both in [-l, l].
  double at(int dr, int dc) const {
    return taps_[static_cast<std::size_t>(dr + half_width_) * support() + (dc + half_width_)];
  }
  double sum() const;

 private:
  int half_width_;
  std::vector<double> taps_;
  KernelKind kind_;
};

/// Builds one of the four named blurs, normalized to unit DC gain.
Kernel make_kernel(KernelKind kind, int half_width, const KernelParams& params = {});

/// Boolean observation map; true marks an observed pixel.
class MaskMap {
 public:
  MaskMap() = default;
  MaskMap(int height, int width, bool fill);
  MaskMap(int height, int width, std::vector<std::uint8_t> observed);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return observed_.size(); }
  bool observed(int row, int col) const { return observed_[static_cast<std::size_t>(row) * width_ + col] != 0; }
  bool observed(std::size_t i) const { return observed_[i] != 0; }
  void set(int row, int col, bool value) { observed_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0; }
  std::span<const std::uint8_t> flags() const { return observed_; }

  std::size_t observed_count() const;
  bool all_observed() const { return observed_count() == observed_.size(); }

  /// 0/1 grid, the diagonal of M*M.
  ImageGrid weights() const;
  /// Throws ParameterError when no pixel is observed.
  void require_nonempty() const;

  bool operator==(const MaskMap& other) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> observed_;
};

/// Mask that is true on the centered (height-2l)x(width-2l) region.
MaskMap valid_region_mask(int height, int width, int half_width);

/// Frame coefficients: 3*levels detail bands followed by one approximation band.
struct CoeffStack {
  int levels = 0;
  std::vector<ImageGrid> bands;

  std::size_t total_size() const;
  bool same_shape(const CoeffStack& other) const;
};

double dot(const CoeffStack& a, const CoeffStack& b);
double sum_squares(const CoeffStack& a);
/// a*x + y bandwise.
CoeffStack stack_axpy(double a, const CoeffStack& x, const CoeffStack& y);
CoeffStack zeros_like(const CoeffStack& a);

}  // namespace admm
