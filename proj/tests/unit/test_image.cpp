#include <doctest.h>

#include <cmath>

#include "admm/errors.hpp"
#include "admm/image.hpp"

using namespace admm;

TEST_CASE("grid_axpy") {
  const ImageGrid x(1, 2, std::vector<double>{1.0, 2.0});
  const ImageGrid y(1, 2, std::vector<double>{3.0, 4.0});
  CHECK(grid_axpy(0.0, x, y) == y);
  const ImageGrid z = grid_axpy(1.0, x, grid_axpy(-1.0, x, ImageGrid(1, 2)));
  CHECK(z == ImageGrid(1, 2));
  const ImageGrid r = grid_axpy(2.0, x, y);
  CHECK(r(0, 0) == 5.0);
  CHECK(r(0, 1) == 8.0);
  CHECK_THROWS_AS(grid_axpy(1.0, x, ImageGrid(2, 1)), DimensionError);
}

TEST_CASE("grid arithmetic is exact on integers") {
  ImageGrid x(3, 3), y(3, 3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(i * 1000 + 7);
    y[i] = -static_cast<double>(i * 3);
  }
  const ImageGrid r = grid_axpy(3.0, x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(r[i] == 3.0 * static_cast<double>(i * 1000 + 7) - static_cast<double>(i * 3));
  CHECK(dot(x, x) == sum_squares(x));
}

TEST_CASE("crop and embed") {
  ImageGrid x(4, 5);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  const ImageGrid c = crop(x, 1, 2, 2, 3);
  CHECK(c(0, 0) == x(1, 2));
  CHECK(c(1, 2) == x(2, 4));
  const ImageGrid e = embed(c, 4, 5, 1, 2);
  CHECK(e(1, 2) == x(1, 2));
  CHECK(e(0, 0) == 0.0);
  CHECK_THROWS_AS(crop(x, 3, 0, 2, 2), DimensionError);
  CHECK_THROWS_AS(embed(x, 3, 3, 0, 0), DimensionError);
}

TEST_CASE("non-positive shapes are rejected") {
  CHECK_THROWS_AS(ImageGrid(0, 3), DimensionError);
  CHECK_THROWS_AS(ImageGrid(2, 2, std::vector<double>(3)), DimensionError);
  CHECK_THROWS_AS(MaskMap(0, 1, true), DimensionError);
}

TEST_CASE("uniform kernels") {
  const Kernel k0 = make_kernel(KernelKind::uniform, 0);
  CHECK(k0.support() == 1);
  CHECK(k0.at(0, 0) == 1.0);
  const Kernel k9 = make_kernel(KernelKind::uniform, 9);
  CHECK(k9.support() == 19);
  for (double t : k9.taps()) CHECK(t == doctest::Approx(1.0 / 361.0).epsilon(1e-15));
}

TEST_CASE("gaussian kernel taps follow the sampled formula") {
  const Kernel g = make_kernel(KernelKind::gaussian, 1, {.sigma = 0.5});
  long double total = 0.0L;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) total += std::exp(-static_cast<long double>(i * i + j * j) / 0.5L);
  }
  const double center = static_cast<double>(1.0L / total);
  const double edge = static_cast<double>(std::exp(-1.0L / 0.5L) / total);
  const double corner = static_cast<double>(std::exp(-2.0L / 0.5L) / total);
  CHECK(g.at(0, 0) == doctest::Approx(center).epsilon(1e-14));
  CHECK(g.at(0, 1) == doctest::Approx(edge).epsilon(1e-14));
  CHECK(g.at(-1, -1) == doctest::Approx(corner).epsilon(1e-14));
  CHECK_THROWS_AS(make_kernel(KernelKind::gaussian, 1, {.sigma = 0.0}), ParameterError);
  CHECK_THROWS_AS(make_kernel(KernelKind::gaussian, 1, {.sigma = -1.0}), ParameterError);
}

TEST_CASE("every named kernel has unit sum") {
  for (int l : {0, 1, 2, 4, 9}) {
    for (KernelKind kind : {KernelKind::uniform, KernelKind::out_of_focus, KernelKind::linear_motion, KernelKind::gaussian}) {
      KernelParams p;
      p.sigma = 1.3;
      p.angle_deg = 30.0;
      const Kernel k = make_kernel(kind, l, p);
      CHECK(k.support() == 2 * l + 1);
      CHECK(std::abs(k.sum() - 1.0) < 1e-12);
      for (double t : k.taps()) CHECK(t >= 0.0);
    }
  }
}

TEST_CASE("out-of-focus and motion kernel shapes") {
  const Kernel disk = make_kernel(KernelKind::out_of_focus, 4);
  CHECK(disk.at(0, 0) == doctest::Approx(disk.at(1, 0)));
  CHECK(disk.at(0, 0) > disk.at(4, 4));
  CHECK(disk.at(4, 4) == 0.0);
  CHECK(disk.at(2, 1) == doctest::Approx(disk.at(-1, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(make_kernel(KernelKind::out_of_focus, 2, {.radius = 3.0}), ParameterError);

  const Kernel motion = make_kernel(KernelKind::linear_motion, 3);
  for (int c = -3; c <= 3; ++c) CHECK(motion.at(0, c) == doctest::Approx(1.0 / 7.0));
  CHECK(motion.at(1, 0) == 0.0);
  const Kernel vertical = make_kernel(KernelKind::linear_motion, 3, {.angle_deg = 90.0});
  for (int r = -3; r <= 3; ++r) CHECK(vertical.at(r, 0) == doctest::Approx(1.0 / 7.0).epsilon(1e-9));
  CHECK_THROWS_AS(make_kernel(KernelKind::linear_motion, 2, {.length = 6.0}), ParameterError);
}

TEST_CASE("kernel kind names") {
  CHECK(parse_kernel_kind("uniform") == KernelKind::uniform);
  CHECK(parse_kernel_kind("out-of-focus") == KernelKind::out_of_focus);
  CHECK(parse_kernel_kind("motion") == KernelKind::linear_motion);
  CHECK(parse_kernel_kind("gaussian") == KernelKind::gaussian);
  CHECK_THROWS_AS(parse_kernel_kind("boxy"), ParameterError);
  for (KernelKind k : {KernelKind::uniform, KernelKind::out_of_focus, KernelKind::linear_motion, KernelKind::gaussian}) {
    CHECK(parse_kernel_kind(to_string(k)) == k);
  }
}

TEST_CASE("valid_region_mask") {
  const MaskMap big = valid_region_mask(256, 256, 9);
  CHECK(big.observed_count() == 56644);
  CHECK(big.size() - big.observed_count() == 8892);

  CHECK(valid_region_mask(7, 5, 0).all_observed());

  const MaskMap small = valid_region_mask(6, 6, 1);
  CHECK(small.observed_count() == 16);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      const bool border = r == 0 || c == 0 || r == 5 || c == 5;
      CHECK(small.observed(r, c) == !border);
    }
  }
  for (int h = 3; h < 12; ++h) {
    for (int l = 0; 2 * l < h; ++l) CHECK(valid_region_mask(h, h + 2, l).observed_count() == static_cast<std::size_t>((h - 2 * l) * (h + 2 - 2 * l)));
  }
  CHECK_THROWS_AS(valid_region_mask(4, 10, 2), DimensionError);
}

TEST_CASE("mask weights and emptiness") {
  MaskMap m(2, 2, false);
  CHECK_THROWS_AS(m.require_nonempty(), ParameterError);
  m.set(1, 0, true);
  const ImageGrid w = m.weights();
  CHECK(w(1, 0) == 1.0);
  CHECK(w(0, 0) == 0.0);
  CHECK(m.observed_count() == 1);
}

TEST_CASE("coefficient stacks") {
  CoeffStack z{2, std::vector<ImageGrid>(7, ImageGrid(4, 4, 1.0))};
  CHECK(z.total_size() == 7 * 16);
  CHECK(sum_squares(z) == 7 * 16);
  const CoeffStack s = stack_axpy(2.0, z, zeros_like(z));
  CHECK(dot(s, z) == 2.0 * 7 * 16);
  CoeffStack bad{2, std::vector<ImageGrid>(6, ImageGrid(4, 4))};
  CHECK_THROWS_AS(dot(z, bad), DimensionError);
}
