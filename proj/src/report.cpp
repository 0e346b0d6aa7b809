#include "admm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "admm/errors.hpp"
#include "admm/io.hpp"
#include "admm/solvers.hpp"

namespace admm {

namespace {

using nlohmann::json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string db_text(const Decibels& d) { return d.infinite ? "inf" : fmt("%.4f", d.db); }

json db_json(const Decibels& d) { return d.infinite ? json("inf") : json(d.db); }

std::string bsnr_text(double v) { return std::isfinite(v) ? fmt("%g", v) : "inf"; }

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ParameterError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void BenchmarkReport::write_csv(std::ostream& out) const {
  out << kReportHeader << "\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.image) << ',' << csv_field(r.blur) << ',' << bsnr_text(r.bsnr_db) << ','
        << csv_field(r.variant) << ',' << fmt("%.6g", r.lambda) << ',' << db_text(r.isnr) << ','
        << (r.snr ? db_text(*r.snr) : "") << ',' << r.iterations << ',' << fmt("%.6f", r.wall_seconds) << ','
        << fmt("%.6g", r.seconds_per_iteration) << "\r\n";
  }
}

void BenchmarkReport::write_json(std::ostream& out) const {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"image", r.image},
                   {"blur", r.blur},
                   {"bsnr_db", std::isfinite(r.bsnr_db) ? json(r.bsnr_db) : json("inf")},
                   {"variant", r.variant},
                   {"lambda", r.lambda},
                   {"isnr_db", db_json(r.isnr)},
                   {"snr_db", r.snr ? db_json(*r.snr) : json(nullptr)},
                   {"iterations", r.iterations},
                   {"wall_seconds", r.wall_seconds},
                   {"seconds_per_iteration", r.seconds_per_iteration}});
  }
  out << json{{"rows", arr}}.dump(2) << "\n";
}

void BenchmarkReport::save(const std::filesystem::path& path, ReportFormat format) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == ReportFormat::csv) {
    write_csv(out);
  } else {
    write_json(out);
  }
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void BenchmarkConfig::validate() const {
  if (images.empty()) throw ParameterError("benchmark: no images");
  if (blurs.empty()) throw ParameterError("benchmark: no blurs");
  if (bsnr_db.empty()) throw ParameterError("benchmark: no bsnr values");
  if (variants.empty()) throw ParameterError("benchmark: no variants");
  if (lambdas.empty()) throw ParameterError("benchmark: empty lambda grid");
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ParameterError("benchmark: lambda grid values must be > 0");
  }
  for (const auto& v : variants) parse_method(v);
  if (max_iters < 1) throw ParameterError("benchmark: max_iters must be >= 1");
  if (!(tol > 0.0)) throw ParameterError("benchmark: tol must be > 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ParameterError("benchmark: dropout must be in [0, 1)");
}

BenchmarkConfig parse_benchmark_config(const std::string& json_text) {
  BenchmarkConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParameterError("benchmark config must be a JSON object");
    if (j.contains("images")) cfg.images = j["images"].get<std::vector<std::string>>();
    if (j.contains("blurs")) {
      for (const auto& b : j["blurs"]) {
        BlurSetting s;
        s.kind = parse_kernel_kind(b.at("kind").get<std::string>());
        s.half_width = b.value("l", 4);
        s.params.sigma = b.value("sigma", 0.0);
        s.params.radius = b.value("radius", -1.0);
        s.params.length = b.value("length", -1.0);
        s.params.angle_deg = b.value("angle", 0.0);
        cfg.blurs.push_back(s);
      }
    }
    if (j.contains("bsnr_db")) {
      cfg.bsnr_db.clear();
      for (const auto& v : j["bsnr_db"]) {
        cfg.bsnr_db.push_back(v.is_string() && v.get<std::string>() == "inf" ? INFINITY : v.get<double>());
      }
    }
    cfg.dropout = j.value("dropout", cfg.dropout);
    if (j.contains("variants")) cfg.variants = j["variants"].get<std::vector<std::string>>();
    if (j.contains("lambdas")) cfg.lambdas = j["lambdas"].get<std::vector<double>>();
    cfg.max_iters = j.value("max_iters", cfg.max_iters);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.cg_iters = j.value("cg_iters", cfg.cg_iters);
    cfg.frame_levels = j.value("frame_levels", cfg.frame_levels);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.match_cg_to_md = j.value("match_cg_to_md", cfg.match_cg_to_md);
    if (j.contains("format")) cfg.format = parse_report_format(j["format"].get<std::string>());
  } catch (const json::exception& e) {
    throw ParameterError(std::string("invalid benchmark config: ") + e.what());
  }
  if (cfg.blurs.empty()) {
    BlurSetting gauss{KernelKind::gaussian, 4, {}};
    gauss.params.sigma = 2.0;
    cfg.blurs = {{KernelKind::uniform, 4, {}}, {KernelKind::out_of_focus, 4, {}}, {KernelKind::linear_motion, 4, {}},
                 gauss};
  }
  cfg.validate();
  return cfg;
}

BenchmarkConfig load_benchmark_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_benchmark_config(ss.str());
}

ImageGrid load_benchmark_image(const std::string& entry) {
  if (entry.rfind("scene:", 0) == 0) {
    int size = 0;
    unsigned long long seed = 1;
    const int got = std::sscanf(entry.c_str() + 6, "%d:%llu", &size, &seed);
    if (got < 1 || size < 2) throw ParameterError("bad synthetic image entry '" + entry + "'");
    return make_test_scene(size, size, seed);
  }
  return read_image(entry);
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  std::vector<Method> methods;
  for (const auto& v : cfg.variants) methods.push_back(parse_method(v));

  BenchmarkReport report;
  for (const auto& image_name : cfg.images) {
    const ImageGrid x = load_benchmark_image(image_name);
    for (const auto& blur : cfg.blurs) {
      const Kernel kernel = make_kernel(blur.kind, blur.half_width, blur.params);
      for (double bsnr : cfg.bsnr_db) {
        DegradeSpec ds{kernel, bsnr, cfg.dropout, cfg.seed};
        const Degraded deg = degrade(x, ds);
        for (double lambda : cfg.lambdas) {
          std::map<Regularizer, double> md_objective;
          // md runs first so cg variants can be stopped at the same objective value.
          std::vector<std::size_t> order;
          for (std::size_t i = 0; i < methods.size(); ++i) {
            if (boundary_mode_of(methods[i].variant) != BoundaryMode::reeves_sorel) order.push_back(i);
          }
          for (std::size_t i = 0; i < methods.size(); ++i) {
            if (boundary_mode_of(methods[i].variant) == BoundaryMode::reeves_sorel) order.push_back(i);
          }
          std::vector<BenchmarkRow> cell(methods.size());
          for (std::size_t i : order) {
            const Method& m = methods[i];
            AdmmConfig ac;
            ac.lambda = lambda;
            ac.max_iters = cfg.max_iters;
            ac.rel_obj_tol = cfg.tol;
            ac.cg_iters = cfg.cg_iters;
            ac.frame.levels = cfg.frame_levels;
            const Regularizer reg = regularizer_of(m.variant);
            const BoundaryMode mode = boundary_mode_of(m.variant);
            if (mode == BoundaryMode::reeves_sorel && cfg.match_cg_to_md && md_objective.count(reg)) {
              ac.target_objective = md_objective[reg];
            }
            const SolveResult res = solve(deg.y, kernel, deg.mask, m, ac);
            if (mode == BoundaryMode::mask_decoupling) md_objective[reg] = res.final_objective;

            BenchmarkRow row;
            row.image = image_name;
            row.blur = std::string(to_string(blur.kind));
            row.bsnr_db = bsnr;
            row.variant = method_name(m);
            row.lambda = lambda;
            row.isnr = isnr(x, deg.y, res.estimate, deg.mask);
            if (mode != BoundaryMode::periodic) row.snr = snr(x, res.estimate, MaskMap(x.height(), x.width(), true));
            row.iterations = res.iterations;
            row.wall_seconds = res.seconds;
            row.seconds_per_iteration = res.seconds_per_iteration;
            cell[i] = std::move(row);
          }
          for (auto& row : cell) report.rows.push_back(std::move(row));
        }
      }
    }
  }
  return report;
}

}  // namespace admm
