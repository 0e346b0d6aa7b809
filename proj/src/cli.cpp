#include "admm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "admm/errors.hpp"
#include "admm/io.hpp"
#include "admm/kernels.hpp"
#include "admm/pipeline.hpp"
#include "admm/report.hpp"
#include "admm/solvers.hpp"

namespace admm {

namespace {

struct BlurOptions {
  std::string kind = "uniform";
  int l = 4;
  double sigma = 0.0;
  double radius = -1.0;
  double length = -1.0;
  double angle = 0.0;

  void add_to(CLI::App& app) {
    app.add_option("--blur", kind, "uniform, out-of-focus, motion or gaussian")->capture_default_str();
    app.add_option("--l", l, "kernel half-width; the support is (2l+1)x(2l+1)")->capture_default_str();
    app.add_option("--sigma", sigma, "gaussian standard deviation");
    app.add_option("--radius", radius, "out-of-focus radius (default l)");
    app.add_option("--length", length, "motion length (default 2l+1)");
    app.add_option("--angle", angle, "motion angle in degrees");
  }

  Kernel make() const {
    KernelParams p;
    p.sigma = sigma;
    p.radius = radius;
    p.length = length;
    p.angle_deg = angle;
    return make_kernel(parse_kernel_kind(kind), l, p);
  }
};

double parse_db(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("--bsnr expects a number of dB or 'inf', got '" + s + "'");
  }
}

std::string db_line(const char* name, const Decibels& d) {
  char buf[96];
  if (d.infinite) {
    std::snprintf(buf, sizeof buf, "%s = inf dB (perfect reconstruction)", name);
  } else {
    std::snprintf(buf, sizeof buf, "%s = %.2f dB", name, d.db);
  }
  return buf;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  kernels::apply_thread_env();

  CLI::App app{"ADMM image deconvolution with unknown boundaries", "admm-deconv"};
  app.require_subcommand(1);

  // degrade
  auto* degrade_cmd = app.add_subcommand("degrade", "blur, crop, add noise and drop pixels");
  std::string d_in, d_out, d_mask, d_sidecar, d_bsnr = "40";
  double d_dropout = 0.0;
  std::uint64_t d_seed = 0;
  BlurOptions d_blur;
  degrade_cmd->add_option("--in", d_in, "clean image (PGM or PNG)")->required();
  d_blur.add_to(*degrade_cmd);
  degrade_cmd->add_option("--bsnr", d_bsnr, "blurred SNR in dB, or inf")->capture_default_str();
  degrade_cmd->add_option("--dropout", d_dropout, "fraction of valid pixels dropped")->capture_default_str();
  degrade_cmd->add_option("--seed", d_seed, "noise and dropout seed")->capture_default_str();
  degrade_cmd->add_option("--out", d_out, "observed image")->required();
  degrade_cmd->add_option("--mask", d_mask, "full-size 0/255 mask image")->required();
  degrade_cmd->add_option("--sidecar", d_sidecar, "JSON record (default: <out>.json)");

  // deblur
  auto* deblur_cmd = app.add_subcommand("deblur", "run one ADMM variant");
  std::string b_in, b_mask, b_out, b_variant = "tv-md";
  double b_lambda = 1e-3, b_tol = 1e-4, b_cg_tol = 0.0;
  std::optional<double> b_mu1, b_mu2;
  int b_iters = 1000, b_cg_iters = 1, b_levels = 4;
  BlurOptions b_blur;
  deblur_cmd->add_option("--in", b_in, "observed image")->required();
  deblur_cmd->add_option("--mask", b_mask, "mask image (default: every pixel observed)");
  b_blur.add_to(*deblur_cmd);
  deblur_cmd->add_option("--variant", b_variant, "fs|fa|tv followed by -md, -cg, -bc or -et")->capture_default_str();
  deblur_cmd->add_option("--lambda", b_lambda, "regularization weight")->capture_default_str();
  deblur_cmd->add_option("--mu1", b_mu1, "data-block penalty (default min(1, 5000 lambda))");
  deblur_cmd->add_option("--mu2", b_mu2, "regularizer penalty (default 10 lambda)");
  deblur_cmd->add_option("--max-iters", b_iters)->capture_default_str();
  deblur_cmd->add_option("--tol", b_tol, "relative objective change stopping threshold")->capture_default_str();
  deblur_cmd->add_option("--cg-iters", b_cg_iters, "boundary CG steps per iteration")->capture_default_str();
  deblur_cmd->add_option("--cg-tol", b_cg_tol, "boundary CG relative residual target");
  deblur_cmd->add_option("--levels", b_levels, "Haar frame levels")->capture_default_str();
  deblur_cmd->add_option("--out", b_out, "estimate image")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "ISNR and SNR of an estimate");
  std::string m_true, m_obs, m_est, m_mask;
  metrics_cmd->add_option("--true", m_true, "clean image")->required();
  metrics_cmd->add_option("--obs", m_obs, "observed image")->required();
  metrics_cmd->add_option("--est", m_est, "estimate")->required();
  metrics_cmd->add_option("--mask", m_mask, "region (default: whole observed window)");

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "run a sweep and write a report");
  std::string k_config, k_out, k_format;
  bench_cmd->add_option("--config", k_config, "JSON sweep description")->required();
  bench_cmd->add_option("--out", k_out, "report path")->required();
  bench_cmd->add_option("--format", k_format, "csv or json (default from config)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == degrade_cmd) {
      const ImageGrid x = read_image(d_in);
      DegradeSpec spec{d_blur.make(), parse_db(d_bsnr), d_dropout, d_seed};
      const Degraded deg = degrade(x, spec);
      write_image(d_out, deg.y);
      write_image(d_mask, mask_to_image(deg.mask));
      DegradeSidecar sc{d_blur.kind, d_blur.l, spec.bsnr_db, d_dropout, d_seed, deg.sigma, x.height(), x.width()};
      write_sidecar(d_sidecar.empty() ? d_out + ".json" : d_sidecar, sc);
      out << "observed " << deg.y.height() << "x" << deg.y.width() << ", sigma = " << deg.sigma << ", "
          << (deg.mask.size() - deg.mask.observed_count()) << " unobserved pixels\n";
    } else if (active == deblur_cmd) {
      const Method method = parse_method(b_variant);
      const ImageGrid y = read_image(b_in);
      const MaskMap mask = b_mask.empty() ? MaskMap(y.height(), y.width(), true) : mask_from_image(read_image(b_mask));
      AdmmConfig cfg;
      cfg.lambda = b_lambda;
      if (b_mu1 || b_mu2) {
        const MuPair def = default_mu(b_lambda);
        cfg.mu = {b_mu1.value_or(def.mu1), b_mu2.value_or(def.mu2)};
      }
      cfg.max_iters = b_iters;
      cfg.rel_obj_tol = b_tol;
      cfg.cg_iters = b_cg_iters;
      cfg.cg_tol = b_cg_tol;
      cfg.frame.levels = b_levels;
      const SolveResult res = solve(y, b_blur.make(), mask, method, cfg);
      write_image(b_out, res.estimate);
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: %s after %d iterations, objective %.6g, %.3f s (%.4g s/iter)\n",
                    method_name(method).c_str(), res.converged ? "converged" : "stopped at max-iters",
                    res.iterations, res.final_objective, res.seconds, res.seconds_per_iteration);
      out << buf;
    } else if (active == metrics_cmd) {
      const ImageGrid x = read_image(m_true);
      const ImageGrid y = read_image(m_obs);
      const ImageGrid est = read_image(m_est);
      MaskMap region;
      if (!m_mask.empty()) {
        region = mask_from_image(read_image(m_mask));
      } else {
        region = MaskMap(x.height(), x.width(), false);
        const int r0 = (x.height() - y.height()) / 2;
        const int c0 = (x.width() - y.width()) / 2;
        for (int r = 0; r < y.height(); ++r) {
          for (int c = 0; c < y.width(); ++c) region.set(r + r0, c + c0, true);
        }
      }
      out << db_line("ISNR", isnr(x, y, est, region)) << "\n" << db_line("SNR", snr(x, est, region)) << "\n";
    } else if (active == bench_cmd) {
      BenchmarkConfig cfg = load_benchmark_config(k_config);
      if (!k_format.empty()) cfg.format = parse_report_format(k_format);
      const BenchmarkReport report = run_benchmark(cfg);
      report.save(k_out, cfg.format);
      out << report.rows.size() << " rows written to " << k_out << "\n";
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace admm
