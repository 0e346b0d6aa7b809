#include <doctest.h>

#include <cmath>
#include <random>

#include "admm/errors.hpp"
#include "admm/prox.hpp"
#include "dense_oracle.hpp"

using namespace admm;

namespace {

double l1(const ImageGrid& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i]);
  return s;
}

double dist2(const ImageGrid& a, const ImageGrid& b) { return sum_squares(grid_axpy(-1.0, b, a)); }

}  // namespace

TEST_CASE("soft threshold") {
  const std::vector<double> v{3.0, -0.5, 0.0};
  CHECK(soft(v, 0.0) == v);
  CHECK(soft(v, 1.0) == std::vector<double>{2.0, 0.0, 0.0});
  const std::vector<double> neg{-3.0, 0.5, -0.0};
  const auto a = soft(neg, 1.0);
  const auto b = soft(v, 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == -b[i]);
  CHECK_THROWS_AS(soft(v, -0.1), ParameterError);
}

TEST_CASE("vector soft threshold") {
  CHECK(vector_soft({0.0, 0.0}, 1.0) == std::array<double, 2>{0.0, 0.0});
  const auto s = vector_soft({3.0, 4.0}, 1.0);
  CHECK(s[0] == doctest::Approx(2.4).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(3.2).epsilon(1e-15));
  CHECK(vector_soft({0.3, 0.4}, 0.5) == std::array<double, 2>{0.0, 0.0});
  CHECK(vector_soft({0.3, 0.4}, 0.7) == std::array<double, 2>{0.0, 0.0});
  CHECK(vector_soft({0.3, -0.4}, 0.0) == std::array<double, 2>{0.3, -0.4});
  CHECK_THROWS_AS(vector_soft(std::array<double, 2>{1.0, 1.0}, -1.0), ParameterError);
}

TEST_CASE("quadratic prox") {
  std::mt19937_64 rng(1);
  const ImageGrid y = oracle::random_grid(5, 6, rng);
  const ImageGrid v = oracle::random_grid(5, 6, rng);
  const ImageGrid fixed = prox_quadratic(y, y, 0.7);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(fixed[i] == doctest::Approx(y[i]).epsilon(1e-15));
  const ImageGrid mid = prox_quadratic(v, y, 1.0);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(mid[i] == doctest::Approx(0.5 * (y[i] + v[i])).epsilon(1e-15));
  const double mu = 0.37;
  const ImageGrid w = prox_quadratic(v, y, mu);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs((w[i] - y[i]) + mu * (w[i] - v[i])) < 1e-14);
  CHECK_THROWS_AS(prox_quadratic(v, y, 0.0), ParameterError);
  CHECK_THROWS_AS(prox_quadratic(v, ImageGrid(6, 5), 1.0), DimensionError);
}

TEST_CASE("masked quadratic prox") {
  std::mt19937_64 rng(2);
  const ImageGrid y = oracle::random_grid(6, 6, rng);
  const ImageGrid v = oracle::random_grid(6, 6, rng);
  const double mu = 0.8;

  const MaskMap all(6, 6, true);
  CHECK(prox_masked_quadratic(v, y, all, mu) == prox_quadratic(v, y, mu));

  MaskMap m(6, 6, true);
  std::bernoulli_distribution coin(0.4);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) m.set(r, c, !coin(rng));
  }
  ImageGrid y_emb = y;
  for (std::size_t i = 0; i < y.size(); ++i) y_emb[i] *= m.observed(i) ? 1.0 : 0.0;
  const ImageGrid out = prox_masked_quadratic(v, y_emb, m, mu);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!m.observed(i)) CHECK(out[i] == doctest::Approx(v[i]).epsilon(1e-15));
  }
  const oracle::MatrixXd md = oracle::mask_diag(m);
  const oracle::MatrixXd lhs = md.transpose() * md + mu * oracle::MatrixXd::Identity(36, 36);
  const oracle::VectorXd dense = lhs.lu().solve(md.transpose() * oracle::vec(y_emb) + mu * oracle::vec(v));
  CHECK(oracle::rel_err(oracle::vec(out), dense) < 1e-12);
  CHECK_THROWS_AS(prox_masked_quadratic(v, y_emb, m, -1.0), ParameterError);
  CHECK_THROWS_AS(prox_masked_quadratic(v, y_emb, MaskMap(5, 6, true), 1.0), DimensionError);
}

TEST_CASE("proxes are firmly nonexpansive") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const ImageGrid a = oracle::random_grid(4, 4, rng, -3.0, 3.0);
    const ImageGrid b = oracle::random_grid(4, 4, rng, -3.0, 3.0);
    const ImageGrid a2 = oracle::random_grid(4, 4, rng, -3.0, 3.0);
    const ImageGrid b2 = oracle::random_grid(4, 4, rng, -3.0, 3.0);
    const ImageGrid y = oracle::random_grid(4, 4, rng);
    auto firm = [](const ImageGrid& pa, const ImageGrid& pb, const ImageGrid& xa, const ImageGrid& xb) {
      return dist2(pa, pb) <= dot(grid_axpy(-1.0, pb, pa), grid_axpy(-1.0, xb, xa)) + 1e-12;
    };
    CHECK(firm(soft(a, 0.7), soft(b, 0.7), a, b));
    CHECK(firm(prox_quadratic(a, y, 0.5), prox_quadratic(b, y, 0.5), a, b));
    ImageGrid oah, oav, obh, obv;
    vector_soft(a, a2, 0.9, oah, oav);
    vector_soft(b, b2, 0.9, obh, obv);
    const double lhs = dist2(oah, obh) + dist2(oav, obv);
    const double rhs = dot(grid_axpy(-1.0, obh, oah), grid_axpy(-1.0, b, a)) +
                       dot(grid_axpy(-1.0, obv, oav), grid_axpy(-1.0, b2, a2));
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("prox outputs minimize their objectives under perturbation") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> small(-1e-3, 1e-3);
  const double mu = 0.6, lambda = 0.4;
  const ImageGrid v = oracle::random_grid(3, 3, rng, -2.0, 2.0);
  const ImageGrid y = oracle::random_grid(3, 3, rng);
  const ImageGrid vv = oracle::random_grid(3, 3, rng, -2.0, 2.0);

  const ImageGrid ws = soft(v, lambda / mu);
  auto f_soft = [&](const ImageGrid& w) { return lambda * l1(w) + 0.5 * mu * dist2(w, v); };
  const ImageGrid wq = prox_quadratic(v, y, mu);
  auto f_quad = [&](const ImageGrid& w) { return 0.5 * dist2(y, w) + 0.5 * mu * dist2(w, v); };
  ImageGrid wh, wv;
  vector_soft(v, vv, lambda / mu, wh, wv);
  auto f_vec = [&](const ImageGrid& gh, const ImageGrid& gv) {
    double tv = 0.0;
    for (std::size_t i = 0; i < gh.size(); ++i) tv += std::hypot(gh[i], gv[i]);
    return lambda * tv + 0.5 * mu * (dist2(gh, v) + dist2(gv, vv));
  };

  for (int t = 0; t < 100; ++t) {
    ImageGrid e(3, 3), e2(3, 3);
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = small(rng);
      e2[i] = small(rng);
    }
    CHECK(f_soft(ws) <= f_soft(grid_axpy(1.0, e, ws)) + 1e-14);
    CHECK(f_quad(wq) <= f_quad(grid_axpy(1.0, e, wq)) + 1e-14);
    CHECK(f_vec(wh, wv) <= f_vec(grid_axpy(1.0, e, wh), grid_axpy(1.0, e2, wv)) + 1e-14);
  }
}

TEST_CASE("zero threshold vector soft is the identity") {
  std::mt19937_64 rng(5);
  const ImageGrid a = oracle::random_grid(4, 5, rng);
  const ImageGrid b = oracle::random_grid(4, 5, rng);
  ImageGrid oa, ob;
  vector_soft(a, b, 0.0 / 1.3, oa, ob);
  CHECK(oa == a);
  CHECK(ob == b);
}

TEST_CASE("coefficient stack soft threshold is uniform over bands") {
  CoeffStack z{1, {ImageGrid(2, 2, 2.0), ImageGrid(2, 2, -2.0), ImageGrid(2, 2, 0.5), ImageGrid(2, 2, 3.0)}};
  const CoeffStack s = soft(z, 1.0);
  CHECK(s.bands[0](0, 0) == 1.0);
  CHECK(s.bands[1](1, 1) == -1.0);
  CHECK(s.bands[2](0, 1) == 0.0);
  CHECK(s.bands[3](1, 0) == 2.0);
}

TEST_CASE("prox parameters") {
  CHECK_NOTHROW((ProxParams{1.0, 0.0}.validate()));
  CHECK_THROWS_AS((ProxParams{0.0, 1.0}.validate()), ParameterError);
  CHECK_THROWS_AS((ProxParams{1.0, -1.0}.validate()), ParameterError);
}
