#pragma once

// Grayscale image files, mask images and JSON sidecars.

#include <cstdint>
#include <filesystem>
#include <string>

#include "admm/image.hpp"

namespace admm {

/// Reads an 8-bit grayscale binary PGM (P5) or PNG, chosen by the file's magic bytes.
ImageGrid read_image(const std::filesystem::path& path);
/// Writes by extension (.pgm or .png). Values are clamped to [0, 255] and
/// rounded half-to-even.
void write_image(const std::filesystem::path& path, const ImageGrid& img);

ImageGrid read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ImageGrid& img);
ImageGrid read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageGrid& img);

/// Parses PGM bytes already in memory.
ImageGrid decode_pgm(const std::string& bytes, const std::string& source = "<memory>");
std::string encode_pgm(const ImageGrid& img);

/// 0/255 image of a mask and back (values >= 128 are observed).
ImageGrid mask_to_image(const MaskMap& mask);
MaskMap mask_from_image(const ImageGrid& img);

/// Degradation record written next to the observed image.
struct DegradeSidecar {
  std::string blur = "uniform";
  int half_width = 0;
  double bsnr_db = 0.0;
  double dropout = 0.0;
  std::uint64_t seed = 0;
  double sigma = 0.0;
  int height = 0;
  int width = 0;
};

void write_sidecar(const std::filesystem::path& path, const DegradeSidecar& s);
DegradeSidecar read_sidecar(const std::filesystem::path& path);

}  // namespace admm
