#pragma once

// 2-D DFT machinery for periodic (circulant) operators.
//
// Conventions: forward DFT unnormalized, inverse scaled by 1/n. A Spectrum
// holds the full h x w table of eigenvalues of a circulant operator; every
// operator below is of the form U* diag(s) U, so the normalization choice
// cancels out.

#include <complex>
#include <utility>
#include <vector>

#include "admm/image.hpp"

namespace admm {

using cplx = std::complex<double>;

class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int height, int width, std::vector<cplx> data);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }
  const cplx& operator()(int row, int col) const { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  const std::vector<cplx>& values() const { return data_; }

  /// True when data[-i,-j] == conj(data[i,j]) (the operator maps reals to reals).
  bool hermitian() const { return hermitian_; }
  Spectrum conj() const;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<cplx> data_;
  bool hermitian_ = false;
};

/// Full 2-D DFT of a real grid (unnormalized).
Spectrum dft(const ImageGrid& x);
/// Real part of the inverse DFT (scaled by 1/n).
ImageGrid idft_real(const Spectrum& s);

/// Eigenvalues of periodic convolution with `k` on a height x width grid:
/// DFT of the taps embedded with the center tap at index (0, 0).
Spectrum kernel_spectrum(const Kernel& k, int height, int width);

/// real(IDFT(DFT(x) .* s)). Uses a real-to-complex transform when s is
/// Hermitian and the full complex transform otherwise.
ImageGrid conv_periodic(const ImageGrid& x, const Spectrum& s);
/// Same operator evaluated with full complex transforms only; kept as the
/// reference path for tests.
ImageGrid conv_periodic_reference(const ImageGrid& x, const Spectrum& s);

/// Spectra of the periodic first differences (horizontal, vertical).
std::pair<Spectrum, Spectrum> diff_spectra(int height, int width);

enum class InverseKind { synthesis_F, analysis_inv, tv_K_diag };

/// Diagonal (in the DFT domain) inverse filter with its defining ratio gamma = mu2/mu1.
struct InverseFilterCache {
  Spectrum spectrum;
  double gamma = 0.0;
  InverseKind kind = InverseKind::analysis_inv;
};

/// synthesis_F: |L|^2/(|L|^2+g); analysis_inv: 1/(|L|^2+g);
/// tv_K_diag: 1/(|L|^2 + g|Dh|^2 + g|Dv|^2) (mu1 factored out).
InverseFilterCache build_inverse_cache(InverseKind kind, const Spectrum& blur, double gamma,
                                       const Spectrum* diff_h = nullptr, const Spectrum* diff_v = nullptr);

ImageGrid apply_diag_inverse(const InverseFilterCache& cache, const ImageGrid& x);

}  // namespace admm
