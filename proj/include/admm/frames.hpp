#pragma once

#include "admm/image.hpp"

namespace admm {

/// Undecimated (a trous) Haar frame with periodic boundary.
///
/// Each 1-D step uses the filter pair ((1, 1)/2, (1, -1)/2) at dilation
/// 2^(level-1); the pair satisfies |H0|^2 + |H1|^2 = 1, so the separable
/// 2-D cascade is a Parseval frame (P*P = I) with no further rescaling.
/// Band order: for each level, (LH, HL, HH), then the final LL band.
struct FrameSpec {
  int levels = 4;

  int band_count() const { return 3 * levels + 1; }
  /// Throws ParameterError unless 1 <= levels <= 6.
  void validate() const;
};

/// Analysis operator P.
CoeffStack analyze(const ImageGrid& x, const FrameSpec& spec = {});
/// Synthesis operator W = P*.
ImageGrid synthesize(const CoeffStack& z, const FrameSpec& spec = {});

/// Serial versions of the same transforms, used as the test reference.
CoeffStack analyze_reference(const ImageGrid& x, const FrameSpec& spec = {});
ImageGrid synthesize_reference(const CoeffStack& z, const FrameSpec& spec = {});

/// Sum of absolute values over all bands.
double l1_norm(const CoeffStack& z);

}  // namespace admm
