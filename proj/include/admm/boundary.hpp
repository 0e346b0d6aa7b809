#pragma once

// Unknown-boundary linear solves via the Sherman-Morrison-Woodbury identity.
//
// With B the rows of a circulant operator `op` that the mask drops,
//   op* M*M op = op* op - B* B,
// so for C = (gamma I + op* op)^-1 (diagonal in the DFT domain)
//   (op* M*M op + gamma I)^-1 = C - C B* (B C B* - I)^-1 B C.
// The boundary-sized system is solved as (I - B C B*) q = -B C rhs by
// conjugate gradient, warm-started from the previous call.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "admm/errors.hpp"
#include "admm/image.hpp"

namespace admm {

/// Row-major list of the unobserved pixels of a mask: the rows of B.
class BoundarySelector {
 public:
  BoundarySelector() = default;
  explicit BoundarySelector(MaskMap mask);

  const MaskMap& mask() const { return mask_; }
  std::size_t size() const { return index_.size(); }
  const std::vector<std::size_t>& boundary_index() const { return index_; }
  int row(std::size_t k) const { return static_cast<int>(index_[k] / static_cast<std::size_t>(mask_.width())); }
  int col(std::size_t k) const { return static_cast<int>(index_[k] % static_cast<std::size_t>(mask_.width())); }

  std::vector<double> gather(const ImageGrid& full) const;
  /// Full-size grid with w at the boundary positions and zeros elsewhere.
  ImageGrid scatter(std::span<const double> w) const;

 private:
  MaskMap mask_;
  std::vector<std::size_t> index_;
};

namespace space {

inline void axpy_inplace(double a, const ImageGrid& x, ImageGrid& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}
inline void axpy_inplace(double a, const CoeffStack& x, CoeffStack& y) {
  for (std::size_t b = 0; b < y.bands.size(); ++b) axpy_inplace(a, x.bands[b], y.bands[b]);
}
inline ImageGrid zeros_like(const ImageGrid& x) { return ImageGrid(x.height(), x.width()); }
inline CoeffStack zeros_like(const CoeffStack& x) { return admm::zeros_like(x); }

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace space

/// B v: apply the full forward operator then keep the boundary rows.
template <class Domain, class Forward>
std::vector<double> apply_B(const Domain& v, const BoundarySelector& sel, Forward&& forward_op) {
  const ImageGrid full = forward_op(v);
  if (full.height() != sel.mask().height() || full.width() != sel.mask().width()) {
    throw DimensionError("apply_B: forward operator output does not match the mask");
  }
  return sel.gather(full);
}

/// B* w: scatter to the boundary positions then apply the adjoint operator.
template <class Adjoint>
auto apply_B_adjoint(std::span<const double> w, const BoundarySelector& sel, Adjoint&& adjoint_op) {
  if (w.size() != sel.size()) {
    throw DimensionError("apply_B_adjoint: expected " + std::to_string(sel.size()) + " entries, got " +
                         std::to_string(w.size()));
  }
  return adjoint_op(sel.scatter(w));
}

/// Warm-start state of the boundary CG solve. Owned by one solver instance.
///
/// `operator_solution` and `c_bt_solution` track (I - BCB*) q and C B* q for
/// the current q so a warm-started call needs no extra operator application;
/// they are recomputed exactly every `refresh_interval` calls.
template <class Domain>
struct CgState {
  std::vector<double> solution;
  int iters_per_outer = 1;
  /// Relative residual target; 0 runs exactly iters_per_outer steps.
  double tolerance = 0.0;
  int refresh_interval = 50;

  std::vector<double> operator_solution;
  Domain c_bt_solution{};
  bool primed = false;
  int calls = 0;

  int last_iterations = 0;
  double last_relative_residual = 0.0;
  bool fallback_used = false;
  long total_iterations = 0;
};

/// Linear operators defining one SMW solve.
template <class Domain>
struct SmwOperators {
  std::function<Domain(const Domain&)> c_apply;     // (gamma I + op* op)^-1
  std::function<ImageGrid(const Domain&)> forward;  // op
  std::function<Domain(const ImageGrid&)> adjoint;  // op*
};

/// Approximately solves (op* M*M op + gamma I) w = rhs.
///
/// Exact when CG is run to convergence; with the default one step per call
/// it returns the warm-started one-step approximation and advances
/// `cg.solution`. Falls back to CG on the normal equations when a
/// non-positive curvature direction appears; throws NumericalError if that
/// breaks down too.
template <class Domain>
Domain smw_solve(const Domain& rhs, const SmwOperators<Domain>& ops, const BoundarySelector& sel, CgState<Domain>& cg) {
  Domain t = ops.c_apply(rhs);
  const std::size_t k = sel.size();
  if (k == 0) return t;

  struct Product {
    std::vector<double> s_p;  // (I - BCB*) p
    Domain c_bt_p;            // C B* p
  };
  auto matvec = [&](const std::vector<double>& p) {
    Product out{{}, ops.c_apply(apply_B_adjoint(std::span<const double>(p), sel, ops.adjoint))};
    const std::vector<double> bcb = apply_B(out.c_bt_p, sel, ops.forward);
    out.s_p.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.s_p[i] = p[i] - bcb[i];
    return out;
  };

  const std::vector<double> b = apply_B(t, sel, ops.forward);

  ++cg.calls;
  const bool refresh = cg.refresh_interval > 0 && cg.calls % cg.refresh_interval == 0;
  if (cg.solution.size() != k) {
    cg.solution.assign(k, 0.0);
    cg.primed = false;
  }
  if (!cg.primed || refresh) {
    bool zero = true;
    for (double v : cg.solution) zero = zero && v == 0.0;
    if (zero) {
      cg.operator_solution.assign(k, 0.0);
      cg.c_bt_solution = space::zeros_like(t);
    } else {
      Product sq = matvec(cg.solution);
      cg.operator_solution = std::move(sq.s_p);
      cg.c_bt_solution = std::move(sq.c_bt_p);
    }
    cg.primed = true;
  }

  auto& q = cg.solution;
  auto& sq = cg.operator_solution;
  std::vector<double> r(k);
  for (std::size_t i = 0; i < k; ++i) r[i] = -b[i] - sq[i];
  const double bnorm = std::sqrt(space::dot(b, b));
  const double scale = bnorm > 0.0 ? bnorm : 1.0;

  auto step = [&](double alpha, const std::vector<double>& p, const Product& prod) {
    for (std::size_t i = 0; i < k; ++i) {
      q[i] += alpha * p[i];
      sq[i] += alpha * prod.s_p[i];
      r[i] -= alpha * prod.s_p[i];
    }
    space::axpy_inplace(alpha, prod.c_bt_p, cg.c_bt_solution);
  };

  const int max_steps = std::max(1, cg.iters_per_outer);
  int steps = 0;
  double rr = space::dot(r, r);
  std::vector<double> p = r;
  bool breakdown = false;
  while (steps < max_steps) {
    if (rr == 0.0 || (cg.tolerance > 0.0 && std::sqrt(rr) <= cg.tolerance * scale)) break;
    Product prod = matvec(p);
    const double curvature = space::dot(p, prod.s_p);
    if (!(curvature > 0.0)) {
      breakdown = true;
      break;
    }
    const double alpha = rr / curvature;
    step(alpha, p, prod);
    ++steps;
    const double rr_new = space::dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < k; ++i) p[i] = r[i] + beta * p[i];
  }

  if (breakdown) {
    // CG on the normal equations S^2 q = -S b (S symmetric).
    cg.fallback_used = true;
    std::vector<double> s = matvec(r).s_p;
    double ss = space::dot(s, s);
    std::vector<double> dir = s;
    const int budget = std::max(max_steps, 1);
    int fb_steps = 0;
    while (fb_steps < budget) {
      if (cg.tolerance > 0.0 && std::sqrt(space::dot(r, r)) <= cg.tolerance * scale) break;
      if (ss == 0.0) {
        if (space::dot(r, r) == 0.0) break;
        throw NumericalError("smw_solve: boundary system is singular (S r = 0 with r != 0, " + std::to_string(k) +
                             " boundary unknowns)");
      }
      Product prod = matvec(dir);
      const double denom = space::dot(prod.s_p, prod.s_p);
      if (!(denom > 0.0)) {
        throw NumericalError("smw_solve: conjugate gradient broke down (zero curvature on the normal equations, " +
                             std::to_string(k) + " boundary unknowns)");
      }
      const double alpha = ss / denom;
      step(alpha, dir, prod);
      ++fb_steps;
      s = matvec(r).s_p;
      const double ss_new = space::dot(s, s);
      const double beta = ss_new / ss;
      ss = ss_new;
      for (std::size_t i = 0; i < k; ++i) dir[i] = s[i] + beta * dir[i];
    }
    steps += fb_steps;
  }

  cg.last_iterations = steps;
  cg.total_iterations += steps;
  cg.last_relative_residual = std::sqrt(space::dot(r, r)) / scale;

  space::axpy_inplace(-1.0, cg.c_bt_solution, t);
  return t;
}

}  // namespace admm
