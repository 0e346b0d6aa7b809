#include "admm/prox.hpp"

#include <cmath>

#include "admm/errors.hpp"
#include "admm/kernels.hpp"

namespace admm {

namespace {

void require_threshold(double tau) {
  if (!(tau >= 0.0)) throw ParameterError("threshold must be >= 0");
}

void require_penalty(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("penalty mu must be > 0");
}

}  // namespace

void ProxParams::validate() const {
  require_penalty(mu);
  if (!(lambda >= 0.0)) throw ParameterError("lambda must be >= 0");
}

std::vector<double> soft(std::span<const double> v, double tau) {
  require_threshold(tau);
  std::vector<double> out(v.size());
  kernels::omp::soft(v, tau, out);
  return out;
}

ImageGrid soft(const ImageGrid& v, double tau) {
  require_threshold(tau);
  ImageGrid out(v.height(), v.width());
  kernels::omp::soft(v.values(), tau, out.values());
  return out;
}

CoeffStack soft(const CoeffStack& z, double tau) {
  require_threshold(tau);
  CoeffStack out{z.levels, {}};
  out.bands.reserve(z.bands.size());
  for (const auto& b : z.bands) out.bands.push_back(soft(b, tau));
  return out;
}

std::array<double, 2> vector_soft(std::array<double, 2> v, double tau) {
  require_threshold(tau);
  std::array<double, 2> out{};
  kernels::serial::vector_soft(std::span<const double>(&v[0], 1), std::span<const double>(&v[1], 1), tau,
                               std::span<double>(&out[0], 1), std::span<double>(&out[1], 1));
  return out;
}

void vector_soft(const ImageGrid& vh, const ImageGrid& vv, double tau, ImageGrid& out_h, ImageGrid& out_v) {
  require_threshold(tau);
  require_same_shape(vh, vv, "vector_soft");
  if (!out_h.same_shape(vh)) out_h = ImageGrid(vh.height(), vh.width());
  if (!out_v.same_shape(vh)) out_v = ImageGrid(vh.height(), vh.width());
  kernels::omp::vector_soft(vh.values(), vv.values(), tau, out_h.values(), out_v.values());
}

ImageGrid prox_quadratic(const ImageGrid& v, const ImageGrid& y, double mu) {
  require_penalty(mu);
  require_same_shape(v, y, "prox_quadratic");
  ImageGrid out(v.height(), v.width());
  const ImageGrid ones(v.height(), v.width(), 1.0);
  kernels::omp::masked_prox(v.values(), y.values(), ones.values(), mu, out.values());
  return out;
}

ImageGrid prox_masked_quadratic(const ImageGrid& v, const ImageGrid& y_embedded, const ImageGrid& weights, double mu) {
  require_penalty(mu);
  require_same_shape(v, y_embedded, "prox_masked_quadratic");
  require_same_shape(v, weights, "prox_masked_quadratic");
  ImageGrid out(v.height(), v.width());
  kernels::omp::masked_prox(v.values(), y_embedded.values(), weights.values(), mu, out.values());
  return out;
}

ImageGrid prox_masked_quadratic(const ImageGrid& v, const ImageGrid& y_embedded, const MaskMap& mask, double mu) {
  if (mask.height() != v.height() || mask.width() != v.width()) {
    throw DimensionError("prox_masked_quadratic: mask shape mismatch");
  }
  return prox_masked_quadratic(v, y_embedded, mask.weights(), mu);
}

}  // namespace admm
