#pragma once

// Pixelwise and stencil kernels shared by the solvers.
//
// Every kernel exists twice: `serial` is the plain reference loop and `omp`
// is the OpenMP version used by the library. Tests check that the two agree
// (bitwise for maps, to rounding for reductions); bench/ times them.

#include <span>

namespace admm::kernels {

using In = std::span<const double>;
using Out = std::span<double>;

namespace serial {

void axpy(double a, In x, In y, Out out);
/// out = x - y
void subtract(In x, In y, Out out);
void scale(double a, In x, Out out);
void soft(In v, double tau, Out out);
void vector_soft(In vh, In vv, double tau, Out out_h, Out out_v);
/// (y + mu*v) / (w + mu), w the 0/1 observation weight.
void masked_prox(In v, In y, In weight, double mu, Out out);

/// Periodic first differences on an h x w grid:
/// horizontal x[i,j] - x[i,j-1], vertical x[i,j] - x[i-1,j].
void diff_h(In x, int h, int w, Out out);
void diff_v(In x, int h, int w, Out out);
/// Adjoints: dh*(g)[i,j] = g[i,j] - g[i,j+1], dv*(g)[i,j] = g[i,j] - g[i+1,j].
void diff_h_adjoint(In g, int h, int w, Out out);
void diff_v_adjoint(In g, int h, int w, Out out);

/// One undecimated Haar step along rows (axis 1) or columns (axis 0) with
/// dilation `shift`: low = (x[k] + x[k+s])/2, high = (x[k] - x[k+s])/2, periodic.
void haar_split(In x, int h, int w, int axis, int shift, Out low, Out high);
/// Adjoint of haar_split: out = low* (lo) + high* (hi).
void haar_merge(In lo, In hi, int h, int w, int axis, int shift, Out out);

double dot(In x, In y);
double sum_abs(In x);
/// sum_i sqrt(gh_i^2 + gv_i^2)
double sum_norm2(In gh, In gv);

}  // namespace serial

namespace omp {

void axpy(double a, In x, In y, Out out);
void subtract(In x, In y, Out out);
void scale(double a, In x, Out out);
void soft(In v, double tau, Out out);
void vector_soft(In vh, In vv, double tau, Out out_h, Out out_v);
void masked_prox(In v, In y, In weight, double mu, Out out);

void diff_h(In x, int h, int w, Out out);
void diff_v(In x, int h, int w, Out out);
void diff_h_adjoint(In g, int h, int w, Out out);
void diff_v_adjoint(In g, int h, int w, Out out);

void haar_split(In x, int h, int w, int axis, int shift, Out low, Out high);
void haar_merge(In lo, In hi, int h, int w, int axis, int shift, Out out);

double dot(In x, In y);
double sum_abs(In x);
double sum_norm2(In gh, In gv);

}  // namespace omp

/// Number of OpenMP threads the library kernels will use.
int thread_count();
/// Applies the ADMM_NUM_THREADS environment override, if set. Returns the
/// resulting thread count.
int apply_thread_env();

}  // namespace admm::kernels
