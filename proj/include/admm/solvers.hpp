#pragma once

// ADMM deconvolution solvers.
//
// Every variant minimizes 0.5*|y - M A x|^2 + lambda*R(x) by the
// multi-block ADMM iteration
//   zeta  = u + d
//   z     = (sum_j mu_j Hj* Hj)^-1 sum_j mu_j Hj* zeta_j
//   u_j   = prox_{g_j/mu_j}(Hj z - d_j)
//   d_j  -= Hj z - u_j
// and differs only in the block operators Hj and in how the quadratic
// step is inverted:
//
//   *_md  mask decoupling: H1 = A, the mask lives in g1; FFT-only inverse.
//   *_cg  H1 = M A; Sherman-Morrison-Woodbury inverse with a boundary CG.
//   *_bc  periodic baseline on the observed grid (M = I).
//
// Regularizers: fs = l1 on synthesis coefficients (x = W z), fa = l1 on
// Parseval analysis coefficients P x, tv = isotropic total variation.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "admm/boundary.hpp"
#include "admm/frames.hpp"
#include "admm/image.hpp"
#include "admm/spectral.hpp"

namespace admm {

enum class Variant { fs_md, fs_cg, fa_md, fa_cg, tv_md, tv_cg, fs_bc, fa_bc, tv_bc };
enum class Regularizer { synthesis, analysis, tv };
enum class BoundaryMode { periodic, mask_decoupling, reeves_sorel };

Regularizer regularizer_of(Variant v);
BoundaryMode boundary_mode_of(Variant v);
std::string_view to_string(Variant v);
/// Accepts "tv-md" or "tv_md" style names. Throws ParameterError otherwise.
Variant parse_variant(std::string_view name);

/// A variant plus the optional edge-taper preprocessing of periodic baselines
/// ("tv-et" = edgetaper + tv-bc).
struct Method {
  Variant variant = Variant::tv_md;
  bool edgetaper = false;
};
Method parse_method(std::string_view name);
std::string method_name(const Method& m);

struct MuPair {
  double mu1 = 1.0;
  double mu2 = 1.0;
};

/// Penalty heuristic: mu2 = 10*lambda, mu1 = min(1, 5000*lambda).
MuPair default_mu(double lambda);

struct AdmmConfig {
  double lambda = 1e-2;
  /// {mu1, mu2}; empty selects default_mu(lambda).
  std::vector<double> mu;
  int max_iters = 1000;
  double rel_obj_tol = 1e-4;
  Variant variant = Variant::tv_md;
  FrameSpec frame;
  /// Boundary CG steps per outer iteration and optional relative tolerance
  /// (CG variants only).
  int cg_iters = 1;
  double cg_tol = 0.0;
  /// When set, stop as soon as the objective is <= this value.
  std::optional<double> target_objective;

  MuPair penalties() const;
  void validate() const;
};

struct AdmmState {
  /// Primal planes: one image (fa, tv) or the frame bands (fs).
  std::vector<ImageGrid> z;
  /// u[0], d[0]: data block. u[1..], d[1..]: regularizer planes (frame bands,
  /// or the horizontal/vertical TV planes).
  std::vector<ImageGrid> u;
  std::vector<ImageGrid> d;
  int iter = 0;
  std::vector<double> objective_trace;
  /// sqrt(sum_j |Hj z - u_j|^2) after the latest iteration.
  double primal_residual = 0.0;
};

enum class StopReason { tolerance, target_objective, max_iters };

struct SolveResult {
  ImageGrid estimate;
  int iterations = 0;
  double final_objective = 0.0;
  bool converged = false;
  StopReason stop = StopReason::max_iters;
  double seconds = 0.0;
  double seconds_per_iteration = 0.0;
  std::vector<double> objective_trace;
  long cg_iterations = 0;
};

class AdmmSolver {
 public:
  /// `y` is the observed image and `mask` the full-size observation map.
  /// For md/cg variants y is either full size or the centered window of the
  /// mask that contains every observed pixel. Periodic variants work on the
  /// y grid alone and reject masks with missing pixels inside it.
  AdmmSolver(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, AdmmConfig cfg);

  const AdmmConfig& config() const { return cfg_; }
  const AdmmState& state() const { return state_; }
  int height() const { return height_; }
  int width() const { return width_; }
  int row_offset() const { return row0_; }
  int col_offset() const { return col0_; }
  const ImageGrid& y_embedded() const { return y_emb_; }
  double gamma() const { return gamma_; }

  /// Quadratic step for the given zeta planes (same layout as u).
  std::vector<ImageGrid> quadratic_step(std::span<const ImageGrid> zeta);
  /// Exact objective of the variant's problem at primal planes z.
  double objective(std::span<const ImageGrid> z) const;
  /// Image represented by primal planes z (W z for synthesis).
  ImageGrid image_of(std::span<const ImageGrid> z) const;

  /// One ADMM iteration; returns the objective at the new iterate.
  double iterate();
  SolveResult run();

 private:
  struct Primal {
    std::vector<ImageGrid> z;
    ImageGrid x;
  };

  Primal quadratic_step_impl(std::span<const ImageGrid> zeta);
  void initialize();

  ImageGrid blur(const ImageGrid& x) const;
  ImageGrid blur_adjoint(const ImageGrid& x) const;
  ImageGrid data_operator(const ImageGrid& blurred) const;
  double data_term(const ImageGrid& blurred) const;

  AdmmConfig cfg_;
  Regularizer reg_;
  BoundaryMode mode_;
  int height_ = 0;
  int width_ = 0;
  int row0_ = 0;
  int col0_ = 0;
  double lambda_ = 0.0;
  double mu1_ = 1.0;
  double mu2_ = 1.0;
  double gamma_ = 1.0;

  ImageGrid y_emb_;
  ImageGrid weights_;
  Spectrum blur_;
  Spectrum blur_adj_;
  InverseFilterCache inverse_;
  BoundarySelector boundary_;
  CgState<ImageGrid> cg_image_;
  CgState<CoeffStack> cg_stack_;
  AdmmState state_;
  ImageGrid x_;
};

/// Runs the configured variant to completion.
SolveResult solve(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, const AdmmConfig& cfg);
/// Same, honoring the edge-taper preprocessing flag of `method`.
SolveResult solve(const ImageGrid& y, const Kernel& kernel, const MaskMap& mask, const Method& method, AdmmConfig cfg);

/// Normalized autocorrelation of the kernel's projection on one axis
/// (axis 0: rows, 1: columns), for lags -2l..2l; peak 1 at lag 0.
std::vector<double> edgetaper_profile(const Kernel& kernel, int axis);

/// Blends y with its periodically blurred copy near the border:
/// out = w*y + (1-w)*blur(y), w = (1 - b_row)(1 - b_col) where b is the
/// autocorrelation profile by distance to the nearest edge.
ImageGrid edgetaper(const ImageGrid& y, const Kernel& kernel);

}  // namespace admm
