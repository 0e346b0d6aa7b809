#include "admm/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "admm/errors.hpp"

namespace admm {

namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::uint8_t to_byte(double v) {
  if (std::isnan(v)) return 0;
  return static_cast<std::uint8_t>(std::nearbyint(std::clamp(v, 0.0, 255.0)));
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

// Header tokens are separated by whitespace; '#' starts a comment to end of line.
class PgmHeader {
 public:
  PgmHeader(const std::string& bytes, std::string source) : b_(bytes), source_(std::move(source)) {}

  long next_int(const char* what) {
    skip();
    if (pos_ >= b_.size() || !std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      throw IoError(source_ + ": malformed PGM header (" + what + ")");
    }
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > 1'000'000'000L) throw IoError(source_ + ": PGM " + what + " out of range");
      ++pos_;
    }
    return v;
  }

  /// Consumes the single whitespace byte that ends the header.
  std::size_t data_offset() {
    if (pos_ >= b_.size() || !std::isspace(static_cast<unsigned char>(b_[pos_]))) {
      throw IoError(source_ + ": malformed PGM header");
    }
    return pos_ + 1;
  }

  void skip_magic() { pos_ = 2; }

 private:
  void skip() {
    while (pos_ < b_.size()) {
      const char c = b_[pos_];
      if (c == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& b_;
  std::string source_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageGrid decode_pgm(const std::string& bytes, const std::string& source) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw IoError(source + ": not a PGM file");
  if (bytes[1] == '2') throw IoError(source + ": unsupported format: ASCII PGM (P2); only binary P5 is supported");
  if (bytes[1] != '5') throw IoError(source + ": unsupported format: P" + std::string(1, bytes[1]));
  PgmHeader hdr(bytes, source);
  hdr.skip_magic();
  const long w = hdr.next_int("width");
  const long h = hdr.next_int("height");
  const long maxval = hdr.next_int("maxval");
  if (w < 1 || h < 1) throw IoError(source + ": PGM has zero size");
  if (maxval < 1) throw IoError(source + ": PGM maxval must be positive");
  if (maxval > 255) throw IoError(source + ": unsupported format: 16-bit PGM (maxval " + std::to_string(maxval) + ")");
  const std::size_t off = hdr.data_offset();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() < off + n) {
    throw IoError(source + ": truncated PGM data (expected " + std::to_string(n) + " bytes, found " +
                  std::to_string(bytes.size() - std::min(bytes.size(), off)) + ")");
  }
  ImageGrid img(static_cast<int>(h), static_cast<int>(w));
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<unsigned char>(bytes[off + i]);
  return img;
}

std::string encode_pgm(const ImageGrid& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.reserve(out.size() + img.size());
  for (std::size_t i = 0; i < img.size(); ++i) out.push_back(static_cast<char>(to_byte(img[i])));
  return out;
}

ImageGrid read_pgm(const std::filesystem::path& path) { return decode_pgm(read_bytes(path), path.string()); }

void write_pgm(const std::filesystem::path& path, const ImageGrid& img) { write_bytes(path, encode_pgm(img)); }

ImageGrid read_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw IoError(path.string() + ": cannot read PNG (" + image.message + ")");
  }
  const auto fmt = image.format;
  if (fmt & PNG_FORMAT_FLAG_COLOR) {
    png_image_free(&image);
    throw IoError(path.string() + ": unsupported format: color PNG; only grayscale is supported");
  }
  if (fmt & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError(path.string() + ": unsupported format: 16-bit PNG; only 8-bit grayscale is supported");
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    throw IoError(path.string() + ": PNG decode failed (" + image.message + ")");
  }
  ImageGrid img(static_cast<int>(image.height), static_cast<int>(image.width));
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = buf[i];
  return img;
}

void write_png(const std::filesystem::path& path, const ImageGrid& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buf(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) buf[i] = to_byte(img[i]);
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr)) {
    throw IoError(path.string() + ": PNG write failed (" + image.message + ")");
  }
}

ImageGrid read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  char magic[8] = {};
  in.read(magic, sizeof magic);
  const auto got = in.gcount();
  if (got >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(magic), 0, 8) == 0) return read_png(path);
  if (got >= 2 && magic[0] == 'P') return read_pgm(path);
  throw IoError(path.string() + ": unsupported format (expected binary PGM or PNG)");
}

void write_image(const std::filesystem::path& path, const ImageGrid& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return write_pgm(path, img);
  if (ext == ".png") return write_png(path, img);
  throw IoError(path.string() + ": unsupported output format '" + ext + "' (use .pgm or .png)");
}

ImageGrid mask_to_image(const MaskMap& mask) {
  ImageGrid img(mask.height(), mask.width());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = mask.observed(i) ? 255.0 : 0.0;
  return img;
}

MaskMap mask_from_image(const ImageGrid& img) {
  std::vector<std::uint8_t> flags(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) flags[i] = img[i] >= 128.0 ? 1 : 0;
  return MaskMap(img.height(), img.width(), std::move(flags));
}

void write_sidecar(const std::filesystem::path& path, const DegradeSidecar& s) {
  nlohmann::json j;
  j["blur"] = s.blur;
  j["l"] = s.half_width;
  j["bsnr_db"] = std::isfinite(s.bsnr_db) ? nlohmann::json(s.bsnr_db) : nlohmann::json("inf");
  j["dropout"] = s.dropout;
  j["seed"] = s.seed;
  j["sigma"] = s.sigma;
  j["height"] = s.height;
  j["width"] = s.width;
  write_bytes(path, j.dump(2) + "\n");
}

DegradeSidecar read_sidecar(const std::filesystem::path& path) {
  try {
    const auto j = nlohmann::json::parse(read_bytes(path));
    DegradeSidecar s;
    s.blur = j.at("blur").get<std::string>();
    s.half_width = j.at("l").get<int>();
    const auto& b = j.at("bsnr_db");
    s.bsnr_db = b.is_string() ? std::numeric_limits<double>::infinity() : b.get<double>();
    s.dropout = j.at("dropout").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.sigma = j.at("sigma").get<double>();
    s.height = j.at("height").get<int>();
    s.width = j.at("width").get<int>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": invalid sidecar JSON (" + e.what() + ")");
  }
}

}  // namespace admm
