#include "admm/frames.hpp"

#include <string>

#include "admm/errors.hpp"
#include "admm/kernels.hpp"

namespace admm {

void FrameSpec::validate() const {
  if (levels < 1 || levels > 6) throw ParameterError("FrameSpec: levels must be in [1, 6], got " + std::to_string(levels));
}

namespace {

template <bool Parallel>
void split(const ImageGrid& x, int axis, int shift, ImageGrid& lo, ImageGrid& hi) {
  if constexpr (Parallel) {
    kernels::omp::haar_split(x.values(), x.height(), x.width(), axis, shift, lo.values(), hi.values());
  } else {
    kernels::serial::haar_split(x.values(), x.height(), x.width(), axis, shift, lo.values(), hi.values());
  }
}

template <bool Parallel>
void merge(const ImageGrid& lo, const ImageGrid& hi, int axis, int shift, ImageGrid& out) {
  if constexpr (Parallel) {
    kernels::omp::haar_merge(lo.values(), hi.values(), lo.height(), lo.width(), axis, shift, out.values());
  } else {
    kernels::serial::haar_merge(lo.values(), hi.values(), lo.height(), lo.width(), axis, shift, out.values());
  }
}

template <bool Parallel>
CoeffStack analyze_impl(const ImageGrid& x, const FrameSpec& spec) {
  spec.validate();
  const int h = x.height();
  const int w = x.width();
  CoeffStack z{spec.levels, {}};
  z.bands.reserve(spec.band_count());
  ImageGrid approx = x;
  ImageGrid row_lo(h, w), row_hi(h, w);
  for (int level = 0; level < spec.levels; ++level) {
    const int shift = 1 << level;
    split<Parallel>(approx, 1, shift, row_lo, row_hi);
    ImageGrid ll(h, w), lh(h, w), hl(h, w), hh(h, w);
    split<Parallel>(row_lo, 0, shift, ll, lh);
    split<Parallel>(row_hi, 0, shift, hl, hh);
    z.bands.push_back(std::move(lh));
    z.bands.push_back(std::move(hl));
    z.bands.push_back(std::move(hh));
    approx = std::move(ll);
  }
  z.bands.push_back(std::move(approx));
  return z;
}

template <bool Parallel>
ImageGrid synthesize_impl(const CoeffStack& z, const FrameSpec& spec) {
  spec.validate();
  if (z.levels != spec.levels || static_cast<int>(z.bands.size()) != spec.band_count()) {
    throw DimensionError("synthesize: expected " + std::to_string(spec.band_count()) + " bands, got " +
                         std::to_string(z.bands.size()));
  }
  const ImageGrid& last = z.bands.back();
  for (const auto& b : z.bands) require_same_shape(b, last, "synthesize");
  const int h = last.height();
  const int w = last.width();
  ImageGrid approx = last;
  ImageGrid row_lo(h, w), row_hi(h, w), out(h, w);
  for (int level = spec.levels - 1; level >= 0; --level) {
    const int shift = 1 << level;
    const auto base = static_cast<std::size_t>(3 * level);
    merge<Parallel>(approx, z.bands[base], 0, shift, row_lo);
    merge<Parallel>(z.bands[base + 1], z.bands[base + 2], 0, shift, row_hi);
    merge<Parallel>(row_lo, row_hi, 1, shift, out);
    std::swap(approx, out);
  }
  return approx;
}

}  // namespace

CoeffStack analyze(const ImageGrid& x, const FrameSpec& spec) { return analyze_impl<true>(x, spec); }
ImageGrid synthesize(const CoeffStack& z, const FrameSpec& spec) { return synthesize_impl<true>(z, spec); }
CoeffStack analyze_reference(const ImageGrid& x, const FrameSpec& spec) { return analyze_impl<false>(x, spec); }
ImageGrid synthesize_reference(const CoeffStack& z, const FrameSpec& spec) { return synthesize_impl<false>(z, spec); }

double l1_norm(const CoeffStack& z) {
  double s = 0.0;
  for (const auto& b : z.bands) s += kernels::omp::sum_abs(b.values());
  return s;
}

}  // namespace admm
