#pragma once

#include <array>
#include <span>
#include <vector>

#include "admm/image.hpp"

namespace admm {

/// Penalty and regularization weight attached to one ADMM block.
struct ProxParams {
  double mu = 1.0;
  double lambda = 0.0;
  void validate() const;
};

/// sign(v) * max(|v| - tau, 0), elementwise.
std::vector<double> soft(std::span<const double> v, double tau);
ImageGrid soft(const ImageGrid& v, double tau);
/// Soft threshold applied uniformly to every band.
CoeffStack soft(const CoeffStack& z, double tau);

/// (v / |v|) * max(|v| - tau, 0) with 0/|0| = 0.
std::array<double, 2> vector_soft(std::array<double, 2> v, double tau);
/// vector_soft applied per pixel to the pair (vh[i], vv[i]).
void vector_soft(const ImageGrid& vh, const ImageGrid& vv, double tau, ImageGrid& out_h, ImageGrid& out_v);

/// prox of v -> 0.5*|y - v|^2 with penalty mu: (y + mu*v)/(1 + mu).
ImageGrid prox_quadratic(const ImageGrid& v, const ImageGrid& y, double mu);

/// prox of v -> 0.5*|y - M v|^2 with penalty mu: (M*y + mu*v)/(M*M + mu).
/// `y_embedded` is M*y on the full grid (zeros where unobserved).
ImageGrid prox_masked_quadratic(const ImageGrid& v, const ImageGrid& y_embedded, const MaskMap& mask, double mu);
/// Same map with a precomputed 0/1 weight grid.
ImageGrid prox_masked_quadratic(const ImageGrid& v, const ImageGrid& y_embedded, const ImageGrid& weights, double mu);

}  // namespace admm
