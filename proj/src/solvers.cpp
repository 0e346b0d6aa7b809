#include "admm/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "admm/errors.hpp"
#include "admm/kernels.hpp"
#include "admm/prox.hpp"

namespace admm {

namespace {

namespace k = kernels::omp;

struct VariantName {
  Variant variant;
  const char* name;
};

constexpr VariantName kVariantNames[] = {
    {Variant::fs_md, "fs_md"}, {Variant::fs_cg, "fs_cg"}, {Variant::fa_md, "fa_md"},
    {Variant::fa_cg, "fa_cg"}, {Variant::tv_md, "tv_md"}, {Variant::tv_cg, "tv_cg"},
    {Variant::fs_bc, "fs_bc"}, {Variant::fa_bc, "fa_bc"}, {Variant::tv_bc, "tv_bc"},
};

std::string normalized(std::string_view name) {
  std::string s(name);
  for (char& c : s) {
    if (c == '-') c = '_';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::string variant_list() {
  std::string out;
  for (const auto& v : kVariantNames) {
    if (!out.empty()) out += ", ";
    out += v.name;
  }
  return out;
}

CoeffStack as_stack(int levels, std::span<const ImageGrid> planes) {
  return CoeffStack{levels, std::vector<ImageGrid>(planes.begin(), planes.end())};
}

ImageGrid minus(const ImageGrid& a, const ImageGrid& b) {
  ImageGrid out(a.height(), a.width());
  k::subtract(a.values(), b.values(), out.values());
  return out;
}

ImageGrid diff_h(const ImageGrid& x) {
  ImageGrid out(x.height(), x.width());
  k::diff_h(x.values(), x.height(), x.width(), out.values());
  return out;
}

ImageGrid diff_v(const ImageGrid& x) {
  ImageGrid out(x.height(), x.width());
  k::diff_v(x.values(), x.height(), x.width(), out.values());
  return out;
}

ImageGrid diff_adjoint_sum(const ImageGrid& gh, const ImageGrid& gv) {
  ImageGrid a(gh.height(), gh.width()), b(gh.height(), gh.width());
  k::diff_h_adjoint(gh.values(), gh.height(), gh.width(), a.values());
  k::diff_v_adjoint(gv.values(), gv.height(), gv.width(), b.values());
  k::axpy(1.0, b.values(), a.values(), a.values());
  return a;
}

double weighted_residual(const ImageGrid& y, const ImageGrid& ax, const ImageGrid& w) {
  double s = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double r = y[i] - ax[i];
    s += w[i] * r * r;
  }
  return 0.5 * s;
}

}  // namespace

Regularizer regularizer_of(Variant v) {
  switch (v) {
    case Variant::fs_md:
    case Variant::fs_cg:
    case Variant::fs_bc:
      return Regularizer::synthesis;
    case Variant::fa_md:
    case Variant::fa_cg:
    case Variant::fa_bc:
      return Regularizer::analysis;
    default:
      return Regularizer::tv;
  }
}

BoundaryMode boundary_mode_of(Variant v) {
  switch (v) {
    case Variant::fs_md:
    case Variant::fa_md:
    case Variant::tv_md:
      return BoundaryMode::mask_decoupling;
    case Variant::fs_cg:
    case Variant::fa_cg:
    case Variant::tv_cg:
      return BoundaryMode::reeves_sorel;
    default:
      return BoundaryMode::periodic;
  }
}

std::string_view to_string(Variant v) {
  for (const auto& entry : kVariantNames) {
    if (entry.variant == v) return entry.name;
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  const std::string key = normalized(name);
  for (const auto& entry : kVariantNames) {
    if (key == entry.name) return entry.variant;
  }
  throw ParameterError("unknown variant '" + std::string(name) + "' (expected one of " + variant_list() + ")");
}

Method parse_method(std::string_view name) {
  const std::string key = normalized(name);
  if (key == "tv_et") return {Variant::tv_bc, true};
  if (key == "fa_et") return {Variant::fa_bc, true};
  if (key == "fs_et") return {Variant::fs_bc, true};
  return {parse_variant(name), false};
}

std::string method_name(const Method& m) {
  std::string s(to_string(m.variant));
  if (m.edgetaper) s = s.substr(0, 2) + "_et";
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

MuPair default_mu(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("default_mu: lambda must be > 0");
  return {std::min(1.0, 5000.0 * lambda), 10.0 * lambda};
}

MuPair AdmmConfig::penalties() const {
  if (mu.empty()) return default_mu(lambda);
  return {mu[0], mu[1]};
}

void AdmmConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be > 0");
  if (!mu.empty() && mu.size() != 2) {
    throw ParameterError("mu must list 2 penalties (data block, regularizer block), got " + std::to_string(mu.size()));
  }
  for (double m : mu) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("every mu must be > 0");
  }
  if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
  if (!(rel_obj_tol > 0.0)) throw ParameterError("rel_obj_tol must be > 0");
  if (cg_iters < 1) throw ParameterError("cg_iters must be >= 1");
  if (!(cg_tol >= 0.0)) throw ParameterError("cg_tol must be >= 0");
  if (regularizer_of(variant) != Regularizer::tv) frame.validate();
}

AdmmSolver::AdmmSolver(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, AdmmConfig cfg)
    : cfg_(std::move(cfg)), reg_(regularizer_of(cfg_.variant)), mode_(boundary_mode_of(cfg_.variant)) {
  cfg_.validate();
  if (y.size() == 0) throw DimensionError("observed image is empty");
  if (!all_finite(y)) throw ParameterError("observed image contains non-finite values");
  mask.require_nonempty();
  const int mh = mask.height();
  const int mw = mask.width();
  if (y.height() > mh || y.width() > mw || (mh - y.height()) % 2 != 0 || (mw - y.width()) % 2 != 0) {
    throw DimensionError("observed image " + std::to_string(y.height()) + "x" + std::to_string(y.width()) +
                         " is not a centered window of the " + std::to_string(mh) + "x" + std::to_string(mw) +
                         " mask");
  }
  const int r0 = (mh - y.height()) / 2;
  const int c0 = (mw - y.width()) / 2;

  const MuPair mu = cfg_.penalties();
  lambda_ = cfg_.lambda;
  mu1_ = mu.mu1;
  mu2_ = mu.mu2;
  gamma_ = mu2_ / mu1_;

  if (mode_ == BoundaryMode::periodic) {
    for (int r = 0; r < y.height(); ++r) {
      for (int c = 0; c < y.width(); ++c) {
        if (!mask.observed(r + r0, c + c0)) {
          throw ParameterError(std::string(to_string(cfg_.variant)) +
                               ": periodic variants need every pixel of the observed image; use an md or cg variant "
                               "for masks with missing pixels");
        }
      }
    }
    height_ = y.height();
    width_ = y.width();
    y_emb_ = y;
    weights_ = ImageGrid(height_, width_, 1.0);
  } else {
    for (int r = 0; r < mh; ++r) {
      for (int c = 0; c < mw; ++c) {
        const bool inside = r >= r0 && r < r0 + y.height() && c >= c0 && c < c0 + y.width();
        if (mask.observed(r, c) && !inside) {
          throw DimensionError("mask marks pixels outside the observed image as observed");
        }
      }
    }
    height_ = mh;
    width_ = mw;
    weights_ = mask.weights();
    y_emb_ = embed(y, mh, mw, r0, c0);
    for (std::size_t i = 0; i < y_emb_.size(); ++i) y_emb_[i] *= weights_[i];
    row0_ = r0;
    col0_ = c0;
  }

  if (kernel.support() > std::min(height_, width_)) {
    throw DimensionError("kernel support " + std::to_string(kernel.support()) + " exceeds the image grid");
  }
  blur_ = kernel_spectrum(kernel, height_, width_);
  blur_adj_ = blur_.conj();

  switch (reg_) {
    case Regularizer::synthesis:
      inverse_ = build_inverse_cache(InverseKind::synthesis_F, blur_, gamma_);
      break;
    case Regularizer::analysis:
      inverse_ = build_inverse_cache(InverseKind::analysis_inv, blur_, gamma_);
      break;
    case Regularizer::tv: {
      const auto [dh, dv] = diff_spectra(height_, width_);
      inverse_ = build_inverse_cache(InverseKind::tv_K_diag, blur_, gamma_, &dh, &dv);
      break;
    }
  }

  if (mode_ == BoundaryMode::reeves_sorel) {
    boundary_ = BoundarySelector(mask);
    cg_image_.iters_per_outer = cg_stack_.iters_per_outer = cfg_.cg_iters;
    cg_image_.tolerance = cg_stack_.tolerance = cfg_.cg_tol;
  }
  initialize();
}

ImageGrid AdmmSolver::blur(const ImageGrid& x) const { return conv_periodic(x, blur_); }
ImageGrid AdmmSolver::blur_adjoint(const ImageGrid& x) const { return conv_periodic(x, blur_adj_); }

ImageGrid AdmmSolver::data_operator(const ImageGrid& blurred) const {
  if (mode_ != BoundaryMode::reeves_sorel) return blurred;
  ImageGrid out(height_, width_);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = weights_[i] * blurred[i];
  return out;
}

double AdmmSolver::data_term(const ImageGrid& blurred) const { return weighted_residual(y_emb_, blurred, weights_); }

void AdmmSolver::initialize() {
  state_ = AdmmState{};
  const ImageGrid& x0 = y_emb_;
  x_ = x0;
  const ImageGrid ax = blur(x0);
  state_.u.push_back(data_operator(ax));
  switch (reg_) {
    case Regularizer::synthesis: {
      CoeffStack z0 = analyze(x0, cfg_.frame);
      state_.z = z0.bands;
      for (auto& b : z0.bands) state_.u.push_back(std::move(b));
      break;
    }
    case Regularizer::analysis: {
      state_.z = {x0};
      CoeffStack p = analyze(x0, cfg_.frame);
      for (auto& b : p.bands) state_.u.push_back(std::move(b));
      break;
    }
    case Regularizer::tv:
      state_.z = {x0};
      state_.u.push_back(diff_h(x0));
      state_.u.push_back(diff_v(x0));
      break;
  }
  for (const auto& u : state_.u) state_.d.emplace_back(u.height(), u.width());
}

AdmmSolver::Primal AdmmSolver::quadratic_step_impl(std::span<const ImageGrid> zeta) {
  if (zeta.size() != state_.u.size()) {
    throw DimensionError("quadratic_step: expected " + std::to_string(state_.u.size()) + " blocks, got " +
                         std::to_string(zeta.size()));
  }
  for (std::size_t j = 0; j < zeta.size(); ++j) require_same_shape(zeta[j], state_.u[j], "quadratic_step");

  // H1* zeta1; H1 = M A for cg variants.
  const ImageGrid at_zeta = blur_adjoint(data_operator(zeta[0]));
  const auto reg_planes = zeta.subspan(1);
  Primal out;

  auto image_ops = [this]() {
    SmwOperators<ImageGrid> ops;
    ops.c_apply = [this](const ImageGrid& v) { return apply_diag_inverse(inverse_, v); };
    ops.forward = [this](const ImageGrid& v) { return blur(v); };
    ops.adjoint = [this](const ImageGrid& g) { return blur_adjoint(g); };
    return ops;
  };

  switch (reg_) {
    case Regularizer::analysis: {
      ImageGrid rhs = synthesize(as_stack(cfg_.frame.levels, reg_planes), cfg_.frame);
      k::scale(gamma_, rhs.values(), rhs.values());
      k::axpy(1.0, at_zeta.values(), rhs.values(), rhs.values());
      ImageGrid z = mode_ == BoundaryMode::reeves_sorel ? smw_solve(rhs, image_ops(), boundary_, cg_image_)
                                                        : apply_diag_inverse(inverse_, rhs);
      out.x = z;
      out.z.push_back(std::move(z));
      break;
    }
    case Regularizer::tv: {
      ImageGrid rhs = diff_adjoint_sum(reg_planes[0], reg_planes[1]);
      k::scale(gamma_, rhs.values(), rhs.values());
      k::axpy(1.0, at_zeta.values(), rhs.values(), rhs.values());
      ImageGrid z = mode_ == BoundaryMode::reeves_sorel ? smw_solve(rhs, image_ops(), boundary_, cg_image_)
                                                        : apply_diag_inverse(inverse_, rhs);
      out.x = z;
      out.z.push_back(std::move(z));
      break;
    }
    case Regularizer::synthesis: {
      const int levels = cfg_.frame.levels;
      if (mode_ == BoundaryMode::reeves_sorel) {
        CoeffStack rhs = analyze(at_zeta, cfg_.frame);
        for (std::size_t b = 0; b < rhs.bands.size(); ++b) {
          k::axpy(gamma_, reg_planes[b].values(), rhs.bands[b].values(), rhs.bands[b].values());
        }
        SmwOperators<CoeffStack> ops;
        ops.c_apply = [this](const CoeffStack& s) {
          // (W* A* A W + g I)^-1 = (I - W* F W) / g
          CoeffStack fs = analyze(apply_diag_inverse(inverse_, synthesize(s, cfg_.frame)), cfg_.frame);
          for (std::size_t b = 0; b < fs.bands.size(); ++b) {
            k::subtract(s.bands[b].values(), fs.bands[b].values(), fs.bands[b].values());
            k::scale(1.0 / gamma_, fs.bands[b].values(), fs.bands[b].values());
          }
          return fs;
        };
        ops.forward = [this](const CoeffStack& s) { return blur(synthesize(s, cfg_.frame)); };
        ops.adjoint = [this](const ImageGrid& g) { return analyze(blur_adjoint(g), cfg_.frame); };
        CoeffStack z = smw_solve(rhs, ops, boundary_, cg_stack_);
        out.x = synthesize(z, cfg_.frame);
        out.z = std::move(z.bands);
      } else {
        // z = zeta2 + P v / g with v = A* zeta1 - F (A* zeta1 + g W zeta2); x = W zeta2 + v / g.
        const ImageGrid w_zeta = synthesize(as_stack(levels, reg_planes), cfg_.frame);
        ImageGrid wr(height_, width_);
        k::axpy(gamma_, w_zeta.values(), at_zeta.values(), wr.values());
        ImageGrid v = minus(at_zeta, apply_diag_inverse(inverse_, wr));
        k::scale(1.0 / gamma_, v.values(), v.values());
        CoeffStack pv = analyze(v, cfg_.frame);
        for (std::size_t b = 0; b < pv.bands.size(); ++b) {
          k::axpy(1.0, reg_planes[b].values(), pv.bands[b].values(), pv.bands[b].values());
        }
        out.z = std::move(pv.bands);
        out.x = ImageGrid(height_, width_);
        k::axpy(1.0, w_zeta.values(), v.values(), out.x.values());
      }
      break;
    }
  }
  return out;
}

std::vector<ImageGrid> AdmmSolver::quadratic_step(std::span<const ImageGrid> zeta) {
  return quadratic_step_impl(zeta).z;
}

ImageGrid AdmmSolver::image_of(std::span<const ImageGrid> z) const {
  if (reg_ == Regularizer::synthesis) {
    if (static_cast<int>(z.size()) != cfg_.frame.band_count()) {
      throw DimensionError("expected " + std::to_string(cfg_.frame.band_count()) + " coefficient bands, got " +
                           std::to_string(z.size()));
    }
    return synthesize(as_stack(cfg_.frame.levels, z), cfg_.frame);
  }
  if (z.size() != 1) throw DimensionError("expected a single image plane, got " + std::to_string(z.size()));
  return z[0];
}

double AdmmSolver::objective(std::span<const ImageGrid> z) const {
  const ImageGrid x = image_of(z);
  if (x.height() != height_ || x.width() != width_) {
    throw DimensionError("objective: expected a " + std::to_string(height_) + "x" + std::to_string(width_) + " image");
  }
  const double data = data_term(blur(x));
  double reg = 0.0;
  switch (reg_) {
    case Regularizer::synthesis:
      for (const auto& b : z) reg += k::sum_abs(b.values());
      break;
    case Regularizer::analysis:
      reg = l1_norm(analyze(x, cfg_.frame));
      break;
    case Regularizer::tv: {
      const ImageGrid gh = diff_h(x);
      const ImageGrid gv = diff_v(x);
      reg = k::sum_norm2(gh.values(), gv.values());
      break;
    }
  }
  return data + lambda_ * reg;
}

double AdmmSolver::iterate() {
  auto& st = state_;
  const std::size_t blocks = st.u.size();
  std::vector<ImageGrid> zeta(blocks);
  for (std::size_t j = 0; j < blocks; ++j) {
    zeta[j] = ImageGrid(st.u[j].height(), st.u[j].width());
    k::axpy(1.0, st.u[j].values(), st.d[j].values(), zeta[j].values());
  }
  Primal primal = quadratic_step_impl(zeta);
  zeta.clear();

  double residual_sq = 0.0;
  // Updates u_j = prox(Hz - d_j) and d_j -= Hz - u_j, given hz = H_j z.
  auto update_block = [&](std::size_t j, const ImageGrid& hz, auto&& prox) {
    ImageGrid s = minus(hz, st.d[j]);
    st.u[j] = prox(s);
    ImageGrid r = minus(hz, st.u[j]);
    k::subtract(st.d[j].values(), r.values(), st.d[j].values());
    residual_sq += k::dot(r.values(), r.values());
  };

  const ImageGrid ax = blur(primal.x);
  {
    const ImageGrid h1 = data_operator(ax);
    update_block(0, h1, [&](const ImageGrid& s) { return prox_masked_quadratic(s, y_emb_, weights_, mu1_); });
  }

  const double tau = lambda_ / mu2_;
  double reg = 0.0;
  switch (reg_) {
    case Regularizer::synthesis:
      for (std::size_t b = 0; b < primal.z.size(); ++b) {
        update_block(b + 1, primal.z[b], [&](const ImageGrid& s) { return soft(s, tau); });
        reg += k::sum_abs(primal.z[b].values());
      }
      break;
    case Regularizer::analysis: {
      CoeffStack p = analyze(primal.x, cfg_.frame);
      for (std::size_t b = 0; b < p.bands.size(); ++b) {
        update_block(b + 1, p.bands[b], [&](const ImageGrid& s) { return soft(s, tau); });
        reg += k::sum_abs(p.bands[b].values());
      }
      break;
    }
    case Regularizer::tv: {
      const ImageGrid gh = diff_h(primal.x);
      const ImageGrid gv = diff_v(primal.x);
      ImageGrid sh = minus(gh, st.d[1]);
      ImageGrid sv = minus(gv, st.d[2]);
      vector_soft(sh, sv, tau, st.u[1], st.u[2]);
      ImageGrid rh = minus(gh, st.u[1]);
      ImageGrid rv = minus(gv, st.u[2]);
      k::subtract(st.d[1].values(), rh.values(), st.d[1].values());
      k::subtract(st.d[2].values(), rv.values(), st.d[2].values());
      residual_sq += k::dot(rh.values(), rh.values()) + k::dot(rv.values(), rv.values());
      reg = k::sum_norm2(gh.values(), gv.values());
      break;
    }
  }

  st.z = std::move(primal.z);
  x_ = std::move(primal.x);
  ++st.iter;
  st.primal_residual = std::sqrt(residual_sq);
  const double obj = data_term(ax) + lambda_ * reg;
  st.objective_trace.push_back(obj);
  return obj;
}

SolveResult AdmmSolver::run() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  SolveResult res;
  double prev = std::numeric_limits<double>::quiet_NaN();
  while (state_.iter < cfg_.max_iters) {
    const double obj = iterate();
    if (!std::isfinite(obj)) {
      throw NumericalError(std::string(to_string(cfg_.variant)) + ": objective became non-finite at iteration " +
                           std::to_string(state_.iter));
    }
    if (cfg_.target_objective && obj <= *cfg_.target_objective) {
      res.converged = true;
      res.stop = StopReason::target_objective;
      break;
    }
    if (!cfg_.target_objective && state_.iter > 1) {
      const double change = std::abs(obj - prev);
      const double rel = prev != 0.0 ? change / std::abs(prev) : (change == 0.0 ? 0.0 : change);
      if (rel < cfg_.rel_obj_tol) {
        res.converged = true;
        res.stop = StopReason::tolerance;
        break;
      }
    }
    prev = obj;
  }
  const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
  res.estimate = x_;
  res.iterations = state_.iter;
  res.final_objective = state_.objective_trace.empty() ? objective(state_.z) : state_.objective_trace.back();
  res.seconds = elapsed;
  res.seconds_per_iteration = res.iterations > 0 ? elapsed / res.iterations : 0.0;
  res.objective_trace = state_.objective_trace;
  res.cg_iterations = cg_image_.total_iterations + cg_stack_.total_iterations;
  return res;
}

SolveResult solve(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, const AdmmConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  AdmmSolver solver(y, kernel, mask, cfg);
  SolveResult res = solver.run();
  res.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return res;
}

SolveResult solve(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, const Method& method, AdmmConfig cfg) {
  cfg.variant = method.variant;
  if (!method.edgetaper) return solve(y, kernel, mask, cfg);
  return solve(edgetaper(y, kernel), kernel, mask, cfg);
}

std::vector<double> edgetaper_profile(const Kernel& kernel, int axis) {
  if (axis != 0 && axis != 1) throw ParameterError("edgetaper_profile: axis must be 0 or 1");
  const int l = kernel.half_width();
  const int s = kernel.support();
  std::vector<double> proj(static_cast<std::size_t>(s), 0.0);
  for (int a = -l; a <= l; ++a) {
    for (int b = -l; b <= l; ++b) proj[static_cast<std::size_t>((axis == 0 ? a : b) + l)] += kernel.at(a, b);
  }
  std::vector<double> ac(static_cast<std::size_t>(2 * s - 1), 0.0);
  double peak = 0.0;
  for (int lag = -(s - 1); lag <= s - 1; ++lag) {
    double v = 0.0;
    for (int i = 0; i < s; ++i) {
      const int j = i + lag;
      if (j >= 0 && j < s) v += proj[static_cast<std::size_t>(i)] * proj[static_cast<std::size_t>(j)];
    }
    ac[static_cast<std::size_t>(lag + s - 1)] = v;
    peak = std::max(peak, v);
  }
  if (!(peak > 0.0)) throw ParameterError("edgetaper: kernel projection has no positive autocorrelation");
  for (double& v : ac) v /= peak;
  return ac;
}

ImageGrid edgetaper(const ImageGrid& y, const Kernel& kernel) {
  const int h = y.height();
  const int w = y.width();
  if (kernel.support() > std::min(h, w)) {
    throw DimensionError("edgetaper: kernel support " + std::to_string(kernel.support()) + " exceeds the " +
                         std::to_string(h) + "x" + std::to_string(w) + " image");
  }
  const int span = 2 * kernel.half_width();
  auto window = [&](int n, const std::vector<double>& ac) {
    std::vector<double> beta(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      const int dist = std::min(i, n - 1 - i);
      if (dist <= span) beta[static_cast<std::size_t>(i)] = ac[static_cast<std::size_t>(dist + span)];
    }
    return beta;
  };
  const std::vector<double> br = window(h, edgetaper_profile(kernel, 0));
  const std::vector<double> bc = window(w, edgetaper_profile(kernel, 1));
  const ImageGrid blurred = conv_periodic(y, kernel_spectrum(kernel, h, w));
  ImageGrid out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double a = (1.0 - br[static_cast<std::size_t>(r)]) * (1.0 - bc[static_cast<std::size_t>(c)]);
      out(r, c) = a * y(r, c) + (1.0 - a) * blurred(r, c);
    }
  }
  return out;
}

}  // namespace admm
