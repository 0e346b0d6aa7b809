#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "admm/errors.hpp"
#include "admm/io.hpp"
#include "admm/report.hpp"
#include "dense_oracle.hpp"

using namespace admm;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "admm_io_tests";
  fs::create_directories(dir);
  return dir;
}

void write_raw(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

std::string bytes_of(std::initializer_list<unsigned char> b) { return std::string(b.begin(), b.end()); }

ImageGrid integer_image(int h, int w, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 255);
  ImageGrid g(h, w);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = d(rng);
  return g;
}

}  // namespace

TEST_CASE("binary PGM decoding") {
  const ImageGrid g = decode_pgm(bytes_of({'P', '5', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n', 0, 128, 255, 7}));
  CHECK(g.height() == 2);
  CHECK(g.width() == 2);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 128.0);
  CHECK(g(1, 0) == 255.0);
  CHECK(g(1, 1) == 7.0);

  const ImageGrid e = decode_pgm(bytes_of({'P', '5', ' ', '2', ' ', '2', ' ', '2', '5', '5', '\n', 0, 255, 128, 64}));
  CHECK(e == ImageGrid(2, 2, std::vector<double>{0.0, 255.0, 128.0, 64.0}));

  const ImageGrid c = decode_pgm("P5 # comment\n3 1 255\nabc");
  CHECK(c(0, 2) == 'c');

  CHECK_THROWS_AS(decode_pgm("P2\n2 2\n255\n0 0 0 0\n"), IoError);
  CHECK_THROWS_AS(decode_pgm("P5\n2 2\n65535\n" + std::string(8, '\0')), IoError);
  CHECK_THROWS_AS(decode_pgm("P5\n2 2\n255\n" + std::string(3, '\0')), IoError);
  CHECK_THROWS_AS(decode_pgm("P5\n2\n"), IoError);
  CHECK_THROWS_AS(decode_pgm("GIF89a"), IoError);
  try {
    decode_pgm("P2\n1 1\n255\n0\n");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("unsupported format") != std::string::npos);
  }
}

TEST_CASE("PGM and PNG round trips") {
  std::mt19937_64 rng(1);
  const ImageGrid g = integer_image(13, 17, rng);
  CHECK(decode_pgm(encode_pgm(g)) == g);
  const fs::path dir = scratch_dir();
  write_image(dir / "a.pgm", g);
  write_image(dir / "a.png", g);
  CHECK(read_image(dir / "a.pgm") == g);
  CHECK(read_image(dir / "a.png") == g);
  CHECK(read_pgm(dir / "a.pgm") == g);
  CHECK(read_png(dir / "a.png") == g);
  CHECK_THROWS_AS(write_image(dir / "a.bmp", g), IoError);
  CHECK_THROWS_AS(read_image(dir / "missing.pgm"), IoError);
  write_raw(dir / "junk.pgm", "hello");
  CHECK_THROWS_AS(read_image(dir / "junk.pgm"), IoError);
}

TEST_CASE("PNG inputs other than 8-bit grayscale are rejected") {
  const fs::path dir = scratch_dir();
  write_raw(dir / "rgb.png",
            bytes_of({0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
                      0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x02, 0x00, 0x00, 0x00, 0x90, 0x77, 0x53,
                      0xde, 0x00, 0x00, 0x00, 0x0c, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x10, 0x50, 0x30, 0x00,
                      0x00, 0x00, 0xa4, 0x00, 0x61, 0x34, 0x66, 0x7d, 0x72, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e,
                      0x44, 0xae, 0x42, 0x60, 0x82}));
  write_raw(dir / "g16.png",
            bytes_of({0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
                      0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x10, 0x00, 0x00, 0x00, 0x00, 0x6a, 0xee, 0x47,
                      0x16, 0x00, 0x00, 0x00, 0x0b, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x10, 0x32, 0x01, 0x00,
                      0x00, 0x5b, 0x00, 0x47, 0x96, 0xfb, 0x1b, 0x65, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44,
                      0xae, 0x42, 0x60, 0x82}));
  CHECK_THROWS_AS(read_image(dir / "rgb.png"), IoError);
  CHECK_THROWS_AS(read_image(dir / "g16.png"), IoError);
  write_raw(dir / "cut.png", bytes_of({0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00}));
  CHECK_THROWS_AS(read_image(dir / "cut.png"), IoError);
}

TEST_CASE("writers clamp and round half to even") {
  const ImageGrid g(1, 6, std::vector<double>{-3.0, 0.5, 1.5, 2.5, 254.7, 300.0});
  const ImageGrid back = decode_pgm(encode_pgm(g));
  CHECK(back == ImageGrid(1, 6, std::vector<double>{0.0, 0.0, 2.0, 2.0, 255.0, 255.0}));
  const fs::path p = scratch_dir() / "r.png";
  write_image(p, g);
  CHECK(read_image(p) == back);
}

TEST_CASE("mask images") {
  MaskMap m = valid_region_mask(6, 7, 1);
  m.set(2, 3, false);
  const ImageGrid img = mask_to_image(m);
  CHECK(img(0, 0) == 0.0);
  CHECK(img(1, 1) == 255.0);
  CHECK(mask_from_image(img) == m);
  const fs::path p = scratch_dir() / "m.png";
  write_image(p, img);
  CHECK(mask_from_image(read_image(p)) == m);
  CHECK(mask_from_image(ImageGrid(1, 3, std::vector<double>{127.0, 128.0, 200.0})) ==
        MaskMap(1, 3, std::vector<std::uint8_t>{0, 1, 1}));
}

TEST_CASE("sidecar round trip") {
  const fs::path p = scratch_dir() / "s.json";
  DegradeSidecar s{"gaussian", 3, 37.5, 0.2, 99, 1.25, 40, 30};
  write_sidecar(p, s);
  const DegradeSidecar r = read_sidecar(p);
  CHECK(r.blur == "gaussian");
  CHECK(r.half_width == 3);
  CHECK(r.bsnr_db == 37.5);
  CHECK(r.dropout == 0.2);
  CHECK(r.seed == 99u);
  CHECK(r.sigma == 1.25);
  CHECK(r.height == 40);
  CHECK(r.width == 30);

  s.bsnr_db = std::numeric_limits<double>::infinity();
  write_sidecar(p, s);
  CHECK(std::isinf(read_sidecar(p).bsnr_db));
  write_raw(p, "{\"blur\": 1}");
  CHECK_THROWS_AS(read_sidecar(p), IoError);
}

TEST_CASE("CSV fields and report layout") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");

  BenchmarkReport rep;
  BenchmarkRow row;
  row.image = "img,1.pgm";
  row.blur = "uniform l=4";
  row.bsnr_db = 40.0;
  row.variant = "tv-md";
  row.lambda = 0.01;
  row.isnr = {5.5, false};
  row.snr = Decibels{20.25, false};
  row.iterations = 12;
  rep.rows.push_back(row);
  row.variant = "tv-bc";
  row.snr.reset();
  row.bsnr_db = std::numeric_limits<double>::infinity();
  rep.rows.push_back(row);

  std::ostringstream csv;
  rep.write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind(std::string(kReportHeader) + "\r\n", 0) == 0);
  std::size_t lines = 0;
  for (std::size_t pos = text.find("\r\n"); pos != std::string::npos; pos = text.find("\r\n", pos + 2)) ++lines;
  CHECK(lines == 3);
  CHECK(text.find("\"img,1.pgm\"") != std::string::npos);
  CHECK(text.find(",inf,") != std::string::npos);

  std::ostringstream js;
  rep.write_json(js);
  const auto j = nlohmann::json::parse(js.str());
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["variant"] == "tv-md");
  CHECK(j["rows"][0]["snr_db"].get<double>() == doctest::Approx(20.25));
  CHECK(j["rows"][1]["snr_db"].is_null());
  CHECK(j["rows"][1]["bsnr_db"] == "inf");

  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK_THROWS_AS(parse_report_format("xml"), ParameterError);
}

TEST_CASE("benchmark configuration parsing") {
  const BenchmarkConfig d = parse_benchmark_config("{}");
  CHECK(d.blurs.size() == 4);
  CHECK(d.blurs[3].kind == KernelKind::gaussian);
  CHECK(d.blurs[3].params.sigma == 2.0);

  const BenchmarkConfig c = parse_benchmark_config(R"({
    "images": ["scene:32:4"], "blurs": [{"kind": "motion", "l": 2, "length": 5, "angle": 30}],
    "bsnr_db": [40, "inf"], "variants": ["tv-md"], "lambdas": [0.1], "max_iters": 7, "format": "json"})");
  CHECK(c.images == std::vector<std::string>{"scene:32:4"});
  CHECK(c.blurs[0].kind == KernelKind::linear_motion);
  CHECK(c.blurs[0].params.angle_deg == 30.0);
  CHECK(std::isinf(c.bsnr_db[1]));
  CHECK(c.max_iters == 7);
  CHECK(c.format == ReportFormat::json);

  CHECK_THROWS_AS(parse_benchmark_config("[1, 2]"), ParameterError);
  CHECK_THROWS_AS(parse_benchmark_config("{\"lambdas\": []}"), ParameterError);
  CHECK_THROWS_AS(parse_benchmark_config("{\"lambdas\": [-1]}"), ParameterError);
  CHECK_THROWS_AS(parse_benchmark_config("{\"blurs\": [{\"kind\": \"box\"}]}"), ParameterError);
  CHECK_THROWS_AS(parse_benchmark_config("{not json"), ParameterError);
  CHECK(load_benchmark_image("scene:16:2") == make_test_scene(16, 16, 2));
  CHECK_THROWS_AS(load_benchmark_image("scene:x"), ParameterError);
}

TEST_CASE("tiny benchmark sweep") {
  BenchmarkConfig cfg = parse_benchmark_config(R"({
    "images": ["scene:24:3"], "blurs": [{"kind": "uniform", "l": 1}], "bsnr_db": [40],
    "variants": ["tv-bc", "tv-et", "tv-md", "tv-cg"], "lambdas": [0.05, 0.2], "max_iters": 40})");
  const BenchmarkReport rep = run_benchmark(cfg);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.rows[0].variant == "tv-bc");
  CHECK(rep.rows[0].lambda == 0.05);
  CHECK(rep.rows[4].lambda == 0.2);
  for (const auto& r : rep.rows) {
    CHECK(r.image == "scene:24:3");
    CHECK(r.iterations >= 1);
    CHECK(r.snr.has_value() == (r.variant == "tv-md" || r.variant == "tv-cg"));
  }
  const BenchmarkReport again = run_benchmark(cfg);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(again.rows[i].isnr.db == rep.rows[i].isnr.db);
    CHECK(again.rows[i].iterations == rep.rows[i].iterations);
  }
}
