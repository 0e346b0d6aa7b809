#include "admm/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>

namespace admm::kernels {

namespace {

inline double soft1(double v, double tau) {
  const double mag = std::abs(v) - tau;
  if (mag <= 0.0) return 0.0;
  return v > 0.0 ? mag : -mag;
}

// Returns the shrink factor max(|v|-tau, 0)/|v| with 0/0 := 0.
inline double vsoft_factor(double a, double b, double tau) {
  const double norm = std::sqrt(a * a + b * b);
  if (norm <= tau || norm == 0.0) return 0.0;
  return (norm - tau) / norm;
}

inline int wrap(int k, int n) {
  k %= n;
  return k < 0 ? k + n : k;
}

}  // namespace

// ---------------------------------------------------------------- serial

namespace serial {

void axpy(double a, In x, In y, Out out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + y[i];
}

void subtract(In x, In y, Out out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - y[i];
}

void scale(double a, In x, Out out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i];
}

void soft(In v, double tau, Out out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = soft1(v[i], tau);
}

void vector_soft(In vh, In vv, double tau, Out out_h, Out out_v) {
  for (std::size_t i = 0; i < out_h.size(); ++i) {
    const double f = vsoft_factor(vh[i], vv[i], tau);
    out_h[i] = f * vh[i];
    out_v[i] = f * vv[i];
  }
}

void masked_prox(In v, In y, In weight, double mu, Out out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (y[i] + mu * v[i]) / (weight[i] + mu);
}

void diff_h(In x, int h, int w, Out out) {
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) out[row + c] = x[row + c] - x[row + wrap(c - 1, w)];
  }
}

void diff_v(In x, int h, int w, Out out) {
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    const std::size_t prev = static_cast<std::size_t>(wrap(r - 1, h)) * w;
    for (int c = 0; c < w; ++c) out[row + c] = x[row + c] - x[prev + c];
  }
}

void diff_h_adjoint(In g, int h, int w, Out out) {
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) out[row + c] = g[row + c] - g[row + wrap(c + 1, w)];
  }
}

void diff_v_adjoint(In g, int h, int w, Out out) {
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    const std::size_t next = static_cast<std::size_t>(wrap(r + 1, h)) * w;
    for (int c = 0; c < w; ++c) out[row + c] = g[row + c] - g[next + c];
  }
}

void haar_split(In x, int h, int w, int axis, int shift, Out low, Out high) {
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      const std::size_t j = axis == 1 ? static_cast<std::size_t>(r) * w + wrap(c + shift, w)
                                      : static_cast<std::size_t>(wrap(r + shift, h)) * w + c;
      low[i] = 0.5 * (x[i] + x[j]);
      high[i] = 0.5 * (x[i] - x[j]);
    }
  }
}

void haar_merge(In lo, In hi, int h, int w, int axis, int shift, Out out) {
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      const std::size_t j = axis == 1 ? static_cast<std::size_t>(r) * w + wrap(c - shift, w)
                                      : static_cast<std::size_t>(wrap(r - shift, h)) * w + c;
      out[i] = 0.5 * (lo[i] + lo[j]) + 0.5 * (hi[i] - hi[j]);
    }
  }
}

double dot(In x, In y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double sum_abs(In x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double sum_norm2(In gh, In gv) {
  double s = 0.0;
  for (std::size_t i = 0; i < gh.size(); ++i) s += std::sqrt(gh[i] * gh[i] + gv[i] * gv[i]);
  return s;
}

}  // namespace serial

// ---------------------------------------------------------------- OpenMP

namespace omp {

namespace {
inline std::ptrdiff_t len(Out o) { return static_cast<std::ptrdiff_t>(o.size()); }
inline std::ptrdiff_t len(In o) { return static_cast<std::ptrdiff_t>(o.size()); }
}  // namespace

void axpy(double a, In x, In y, Out out) {
  const std::ptrdiff_t n = len(out);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a * x[i] + y[i];
}

void subtract(In x, In y, Out out) {
  const std::ptrdiff_t n = len(out);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void scale(double a, In x, Out out) {
  const std::ptrdiff_t n = len(out);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a * x[i];
}

void soft(In v, double tau, Out out) {
  const std::ptrdiff_t n = len(out);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = soft1(v[i], tau);
}

void vector_soft(In vh, In vv, double tau, Out out_h, Out out_v) {
  const std::ptrdiff_t n = len(out_h);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double f = vsoft_factor(vh[i], vv[i], tau);
    out_h[i] = f * vh[i];
    out_v[i] = f * vv[i];
  }
}

void masked_prox(In v, In y, In weight, double mu, Out out) {
  const std::ptrdiff_t n = len(out);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = (y[i] + mu * v[i]) / (weight[i] + mu);
}

void diff_h(In x, int h, int w, Out out) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    out[row] = x[row] - x[row + w - 1];
    for (int c = 1; c < w; ++c) out[row + c] = x[row + c] - x[row + c - 1];
  }
}

void diff_v(In x, int h, int w, Out out) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    const std::size_t prev = static_cast<std::size_t>(r == 0 ? h - 1 : r - 1) * w;
    for (int c = 0; c < w; ++c) out[row + c] = x[row + c] - x[prev + c];
  }
}

void diff_h_adjoint(In g, int h, int w, Out out) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    for (int c = 0; c + 1 < w; ++c) out[row + c] = g[row + c] - g[row + c + 1];
    out[row + w - 1] = g[row + w - 1] - g[row];
  }
}

void diff_v_adjoint(In g, int h, int w, Out out) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    const std::size_t row = static_cast<std::size_t>(r) * w;
    const std::size_t next = static_cast<std::size_t>(r + 1 == h ? 0 : r + 1) * w;
    for (int c = 0; c < w; ++c) out[row + c] = g[row + c] - g[next + c];
  }
}

void haar_split(In x, int h, int w, int axis, int shift, Out low, Out high) {
  if (axis == 1) {
    const int s = wrap(shift, w);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
      const std::size_t row = static_cast<std::size_t>(r) * w;
      for (int c = 0; c < w; ++c) {
        const int cj = c + s < w ? c + s : c + s - w;
        const double a = x[row + c];
        const double b = x[row + cj];
        low[row + c] = 0.5 * (a + b);
        high[row + c] = 0.5 * (a - b);
      }
    }
  } else {
    const int s = wrap(shift, h);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
      const std::size_t row = static_cast<std::size_t>(r) * w;
      const std::size_t other = static_cast<std::size_t>(r + s < h ? r + s : r + s - h) * w;
      for (int c = 0; c < w; ++c) {
        const double a = x[row + c];
        const double b = x[other + c];
        low[row + c] = 0.5 * (a + b);
        high[row + c] = 0.5 * (a - b);
      }
    }
  }
}

void haar_merge(In lo, In hi, int h, int w, int axis, int shift, Out out) {
  if (axis == 1) {
    const int s = wrap(shift, w);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
      const std::size_t row = static_cast<std::size_t>(r) * w;
      for (int c = 0; c < w; ++c) {
        const int cj = c - s >= 0 ? c - s : c - s + w;
        out[row + c] = 0.5 * (lo[row + c] + lo[row + cj]) + 0.5 * (hi[row + c] - hi[row + cj]);
      }
    }
  } else {
    const int s = wrap(shift, h);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
      const std::size_t row = static_cast<std::size_t>(r) * w;
      const std::size_t other = static_cast<std::size_t>(r - s >= 0 ? r - s : r - s + h) * w;
      for (int c = 0; c < w; ++c) {
        out[row + c] = 0.5 * (lo[row + c] + lo[other + c]) + 0.5 * (hi[row + c] - hi[other + c]);
      }
    }
  }
}

double dot(In x, In y) {
  const std::ptrdiff_t n = len(x);
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs(In x) {
  const std::ptrdiff_t n = len(x);
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += std::abs(x[i]);
  return s;
}

double sum_norm2(In gh, In gv) {
  const std::ptrdiff_t n = len(gh);
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += std::sqrt(gh[i] * gh[i] + gv[i] * gv[i]);
  return s;
}

}  // namespace omp

int thread_count() { return omp_get_max_threads(); }

int apply_thread_env() {
  if (const char* env = std::getenv("ADMM_NUM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // ignore malformed values; OpenMP defaults stay in effect
    }
  }
  return omp_get_max_threads();
}

}  // namespace admm::kernels
