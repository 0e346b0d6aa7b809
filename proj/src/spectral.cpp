#include "admm/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "admm/errors.hpp"

namespace admm {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (shape, kind) under a lock and then reused
// from any thread.
enum class PlanKind { r2c, c2r, forward, backward };

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, int h, int w) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(static_cast<int>(kind), h, w);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto n = static_cast<std::size_t>(h) * w;
    auto* real = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    auto* cpx = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* cpx2 = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::r2c: plan = fftw_plan_dft_r2c_2d(h, w, real, cpx, flags); break;
      case PlanKind::c2r: plan = fftw_plan_dft_c2r_2d(h, w, cpx, real, flags); break;
      case PlanKind::forward: plan = fftw_plan_dft_2d(h, w, cpx, cpx2, FFTW_FORWARD, flags); break;
      case PlanKind::backward: plan = fftw_plan_dft_2d(h, w, cpx, cpx2, FFTW_BACKWARD, flags); break;
    }
    fftw_free(real);
    fftw_free(cpx);
    fftw_free(cpx2);
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

int half_width(int w) { return w / 2 + 1; }

std::vector<cplx> r2c(const ImageGrid& x) {
  const int h = x.height();
  const int w = x.width();
  std::vector<cplx> out(static_cast<std::size_t>(h) * half_width(w));
  // Out-of-place r2c preserves its input.
  fftw_execute_dft_r2c(PlanCache::instance().get(PlanKind::r2c, h, w), const_cast<double*>(x.data()),
                       as_fftw(out.data()));
  return out;
}

// Consumes `half` (c2r destroys its input).
ImageGrid c2r_scaled(std::vector<cplx>& half, int h, int w) {
  ImageGrid out(h, w);
  fftw_execute_dft_c2r(PlanCache::instance().get(PlanKind::c2r, h, w), as_fftw(half.data()), out.data());
  const double scale = 1.0 / static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale;
  return out;
}

std::vector<cplx> c2c(std::vector<cplx> in, int h, int w, PlanKind kind) {
  std::vector<cplx> out(in.size());
  fftw_execute_dft(PlanCache::instance().get(kind, h, w), as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

std::vector<cplx> expand_half(const std::vector<cplx>& half, int h, int w) {
  const int hw = half_width(w);
  std::vector<cplx> full(static_cast<std::size_t>(h) * w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (j < hw) {
        full[static_cast<std::size_t>(i) * w + j] = half[static_cast<std::size_t>(i) * hw + j];
      } else {
        const int ii = (h - i) % h;
        const int jj = w - j;
        full[static_cast<std::size_t>(i) * w + j] = std::conj(half[static_cast<std::size_t>(ii) * hw + jj]);
      }
    }
  }
  return full;
}

bool check_hermitian(const std::vector<cplx>& d, int h, int w) {
  double scale = 1.0;
  for (const auto& v : d) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * scale;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const cplx a = d[static_cast<std::size_t>(i) * w + j];
      const cplx b = d[static_cast<std::size_t>((h - i) % h) * w + (w - j) % w];
      if (std::abs(a - std::conj(b)) > tol) return false;
    }
  }
  return true;
}

void require_spectrum_shape(const ImageGrid& x, const Spectrum& s, const char* what) {
  if (x.height() != s.height() || x.width() != s.width()) {
    throw DimensionError(std::string(what) + ": grid " + std::to_string(x.height()) + "x" + std::to_string(x.width()) +
                         " does not match spectrum " + std::to_string(s.height()) + "x" + std::to_string(s.width()));
  }
}

}  // namespace

Spectrum::Spectrum(int height, int width, std::vector<cplx> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height <= 0 || width <= 0) throw DimensionError("Spectrum: non-positive shape");
  if (data_.size() != static_cast<std::size_t>(height) * width) throw DimensionError("Spectrum: data length mismatch");
  hermitian_ = check_hermitian(data_, height, width);
}

Spectrum Spectrum::conj() const {
  std::vector<cplx> d(data_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::conj(data_[i]);
  return Spectrum(height_, width_, std::move(d));
}

Spectrum dft(const ImageGrid& x) {
  return Spectrum(x.height(), x.width(), expand_half(r2c(x), x.height(), x.width()));
}

ImageGrid idft_real(const Spectrum& s) {
  const auto out = c2c(s.values(), s.height(), s.width(), PlanKind::backward);
  ImageGrid x(s.height(), s.width());
  const double scale = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = out[i].real() * scale;
  return x;
}

Spectrum kernel_spectrum(const Kernel& k, int height, int width) {
  const int l = k.half_width();
  if (k.support() > height || k.support() > width) {
    throw DimensionError("kernel_spectrum: " + std::to_string(k.support()) + "x" + std::to_string(k.support()) +
                         " kernel does not fit in " + std::to_string(height) + "x" + std::to_string(width));
  }
  ImageGrid embedded(height, width);
  for (int dr = -l; dr <= l; ++dr) {
    for (int dc = -l; dc <= l; ++dc) {
      const int r = (dr + height) % height;
      const int c = (dc + width) % width;
      embedded(r, c) += k.at(dr, dc);
    }
  }
  return dft(embedded);
}

ImageGrid conv_periodic(const ImageGrid& x, const Spectrum& s) {
  require_spectrum_shape(x, s, "conv_periodic");
  if (!s.hermitian()) return conv_periodic_reference(x, s);
  const int h = x.height();
  const int w = x.width();
  const int hw = half_width(w);
  auto half = r2c(x);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < hw; ++j) half[static_cast<std::size_t>(i) * hw + j] *= s(i, j);
  return c2r_scaled(half, h, w);
}

ImageGrid conv_periodic_reference(const ImageGrid& x, const Spectrum& s) {
  require_spectrum_shape(x, s, "conv_periodic");
  std::vector<cplx> in(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i];
  auto freq = c2c(std::move(in), x.height(), x.width(), PlanKind::forward);
  for (std::size_t i = 0; i < freq.size(); ++i) freq[i] *= s.values()[i];
  const auto back = c2c(std::move(freq), x.height(), x.width(), PlanKind::backward);
  ImageGrid out(x.height(), x.width());
  const double scale = 1.0 / static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = back[i].real() * scale;
  return out;
}

std::pair<Spectrum, Spectrum> diff_spectra(int height, int width) {
  if (height < 2 || width < 2) throw DimensionError("diff_spectra: grid must be at least 2x2");
  std::vector<cplx> dh(static_cast<std::size_t>(height) * width);
  std::vector<cplx> dv(dh.size());
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < height; ++i) {
    const cplx ev = 1.0 - std::polar(1.0, -two_pi * i / height);
    for (int j = 0; j < width; ++j) {
      dh[static_cast<std::size_t>(i) * width + j] = 1.0 - std::polar(1.0, -two_pi * j / width);
      dv[static_cast<std::size_t>(i) * width + j] = ev;
    }
  }
  // Exact zeros at DC so the constant image is annihilated exactly.
  dh[0] = 0.0;
  dv[0] = 0.0;
  return {Spectrum(height, width, std::move(dh)), Spectrum(height, width, std::move(dv))};
}

InverseFilterCache build_inverse_cache(InverseKind kind, const Spectrum& blur, double gamma, const Spectrum* diff_h,
                                       const Spectrum* diff_v) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("build_inverse_cache: gamma must be > 0");
  if (kind == InverseKind::tv_K_diag) {
    if (diff_h == nullptr || diff_v == nullptr) {
      throw ParameterError("build_inverse_cache: tv_K_diag needs both difference spectra");
    }
    if (diff_h->height() != blur.height() || diff_h->width() != blur.width() || diff_v->height() != blur.height() ||
        diff_v->width() != blur.width()) {
      throw DimensionError("build_inverse_cache: difference spectra shape mismatch");
    }
  }
  std::vector<cplx> d(blur.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double a2 = std::norm(blur.values()[i]);
    switch (kind) {
      case InverseKind::synthesis_F: d[i] = a2 / (a2 + gamma); break;
      case InverseKind::analysis_inv: d[i] = 1.0 / (a2 + gamma); break;
      case InverseKind::tv_K_diag: {
        const double denom = a2 + gamma * (std::norm(diff_h->values()[i]) + std::norm(diff_v->values()[i]));
        if (!(denom > 0.0)) {
          throw NumericalError("build_inverse_cache: singular TV system (blur annihilates the constant image)");
        }
        d[i] = 1.0 / denom;
        break;
      }
    }
  }
  return InverseFilterCache{Spectrum(blur.height(), blur.width(), std::move(d)), gamma, kind};
}

ImageGrid apply_diag_inverse(const InverseFilterCache& cache, const ImageGrid& x) {
  return conv_periodic(x, cache.spectrum);
}

}  // namespace admm
