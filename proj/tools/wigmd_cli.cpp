// Command-line front end for the wigmd toolkit. Talks to the shared library
// through the C API only.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wigmd.h"

namespace {

using nlohmann::ordered_json;

struct CommonOptions {
  std::optional<std::string> config_path;
  std::optional<int> grid_size;
  std::optional<double> half_width;
  std::optional<int> truncation;
  std::optional<uint64_t> seed;
  std::optional<std::string> output_dir;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file mirroring the run configuration");
  cmd->add_option("--grid-size", opts.grid_size, "grid size N (power of two)");
  cmd->add_option("--half-width", opts.half_width, "grid half-width L");
  cmd->add_option("--truncation", opts.truncation, "Hermite truncation K");
  cmd->add_option("--seed", opts.seed, "base seed for all randomized sweeps");
  cmd->add_option("--out", opts.output_dir, "report output directory");
  cmd->add_option("--format", opts.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

// flags > config file > library defaults; WIGMD_OUTPUT_DIR overrides the
// output directory last
ordered_json build_config(const CommonOptions& opts) {
  ordered_json cfg = ordered_json::object();
  if (opts.config_path) {
    std::ifstream in(*opts.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + *opts.config_path);
    try {
      cfg = ordered_json::parse(in);
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--config", std::string("bad json: ") + e.what());
    }
  }
  if (opts.grid_size) cfg["N"] = *opts.grid_size;
  if (opts.half_width) cfg["L"] = *opts.half_width;
  if (opts.truncation) cfg["K"] = *opts.truncation;
  if (opts.seed) cfg["seed"] = *opts.seed;
  if (opts.output_dir) cfg["output_dir"] = *opts.output_dir;
  if (const char* env = std::getenv("WIGMD_OUTPUT_DIR")) cfg["output_dir"] = env;
  return cfg;
}

struct ReportDeleter {
  void operator()(wigmd_report* r) const { wigmd_report_destroy(r); }
};
using ReportPtr = std::unique_ptr<wigmd_report, ReportDeleter>;

int run_and_write(const std::string& suite, const ordered_json& cfg, const std::string& format) {
  wigmd_report* raw = nullptr;
  const wigmd_status st = wigmd_run_suite(suite.c_str(), cfg.dump().c_str(), &raw);
  if (st != WIGMD_OK) {
    std::cerr << "error: " << wigmd_last_error() << "\n";
    return 2;
  }
  ReportPtr report(raw);

  const std::string outdir = cfg.value("output_dir", std::string("reports"));
  std::filesystem::create_directories(outdir);
  const std::string path = outdir + "/" + suite + "." + format;
  std::ofstream out(path, std::ios::binary);
  out << (format == "csv" ? wigmd_report_csv(report.get()) : wigmd_report_json(report.get()));
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }

  const bool pass = wigmd_report_pass(report.get()) != 0;
  std::cout << suite << ": " << (pass ? "PASS" : "FAIL") << " (" << wigmd_report_case_count(report.get())
            << " cases, report: " << path << ")\n";
  if (!pass) {
    std::cerr << "failed invariant: " << wigmd_report_first_failure(report.get()) << "\n";
    return 1;
  }
  return 0;
}

struct SignalDeleter {
  void operator()(wigmd_signal* s) const { wigmd_signal_destroy(s); }
};
struct FieldDeleter {
  void operator()(wigmd_field* f) const { wigmd_field_destroy(f); }
};
struct KernelDeleter {
  void operator()(wigmd_kernel* k) const { wigmd_kernel_destroy(k); }
};

int wigner_compute(const std::string& input, const std::string& outdir, const std::string& kernel_expr,
                   bool want_ppm, bool want_svg) {
  wigmd_signal* raw_signal = nullptr;
  if (wigmd_signal_load(input.c_str(), &raw_signal) != WIGMD_OK) {
    std::cerr << "error: " << wigmd_last_error() << "\n";
    return 2;
  }
  std::unique_ptr<wigmd_signal, SignalDeleter> signal(raw_signal);

  wigmd_field* raw_field = nullptr;
  if (kernel_expr.empty()) {
    if (wigmd_cross_wigner(signal.get(), signal.get(), &raw_field) != WIGMD_OK) {
      std::cerr << "error: " << wigmd_last_error() << "\n";
      return 2;
    }
  } else {
    wigmd_kernel* raw_kernel = nullptr;
    if (wigmd_kernel_parse(kernel_expr.c_str(), &raw_kernel) != WIGMD_OK) {
      std::cerr << "error: " << wigmd_last_error() << "\n";
      return 2;
    }
    std::unique_ptr<wigmd_kernel, KernelDeleter> kernel(raw_kernel);
    if (wigmd_cohen(signal.get(), signal.get(), kernel.get(), &raw_field) != WIGMD_OK) {
      std::cerr << "error: " << wigmd_last_error() << "\n";
      return 2;
    }
  }
  std::unique_ptr<wigmd_field, FieldDeleter> field(raw_field);

  std::filesystem::create_directories(outdir);
  const std::string stem = outdir + "/" + std::filesystem::path(input).stem().string();
  if (wigmd_field_save_text(field.get(), (stem + ".wigner.txt").c_str()) != WIGMD_OK) {
    std::cerr << "error: " << wigmd_last_error() << "\n";
    return 2;
  }
  std::cout << "field: " << stem << ".wigner.txt\n";
  if (want_ppm) {
    if (wigmd_field_save_ppm(field.get(), (stem + ".wigner.ppm").c_str()) != WIGMD_OK) {
      std::cerr << "error: " << wigmd_last_error() << "\n";
      return 2;
    }
    std::cout << "heatmap: " << stem << ".wigner.ppm\n";
  }
  if (want_svg) {
    if (wigmd_field_save_svg(field.get(), (stem + ".wigner.svg").c_str()) != WIGMD_OK) {
      std::cerr << "error: " << wigmd_last_error() << "\n";
      return 2;
    }
    std::cout << "contours: " << stem << ".wigner.svg\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wigmd - Wigner / phase-space uncertainty verification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wigmd_version()));

  // verify <suite>
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every assertion holds");
  verify->require_subcommand(1);

  CommonOptions md_opts;
  std::string md_family = "hermite";
  int md_n = 10;
  int md_seeds = 50;
  bool md_no_cross = false;
  CLI::App* md = verify->add_subcommand("mean-dispersion", "partial-sum lower bounds for orthonormal families");
  md->add_option("--family", md_family, "family kind: hermite or random")
      ->check(CLI::IsMember({"hermite", "random"}));
  md->add_option("--n", md_n, "largest partial-sum index n");
  md->add_option("--seeds", md_seeds, "number of seeded families in random mode");
  md->add_flag("--no-cross-path", md_no_cross, "skip the grid-vs-spectral agreement checks");
  add_common(md, md_opts);

  CommonOptions cov_opts;
  int cov_families = 20;
  CLI::App* cov = verify->add_subcommand("covariance", "phase-space second-moment bounds");
  cov->add_option("--families", cov_families, "number of seeded random families");
  add_common(cov, cov_opts);

  CommonOptions id_opts;
  std::string id_signal = "all";
  CLI::App* ident = verify->add_subcommand("identities", "bracket identities, intertwining and eigenrelations");
  ident->add_option("--signal", id_signal, "signal selection: all, h<k>, mixed, shifted, modulated");
  add_common(ident, id_opts);

  CommonOptions cohen_opts;
  std::vector<std::string> cohen_kernels;
  CLI::App* cohen = verify->add_subcommand("cohen", "Cohen-class kernel suite");
  cohen->add_option("--kernel", cohen_kernels, "kernel polynomial, e.g. \"0.5*xi*eta\" (repeatable)");
  add_common(cohen, cohen_opts);

  CommonOptions riesz_opts;
  std::string riesz_matrix = "sweep";
  CLI::App* riesz = verify->add_subcommand("riesz", "Riesz-basis lower bounds");
  riesz->add_option("--matrix", riesz_matrix,
                    "matrix source: sweep, identity, diag:..., random:cond=..,seed=.., or a CSV path");
  add_common(riesz, riesz_opts);

  // wigner compute
  CLI::App* wig = app.add_subcommand("wigner", "phase-space transforms of stored signals");
  CLI::App* wig_compute = wig->add_subcommand("compute", "compute W(f) (or a Cohen transform) of a signal file");
  std::string wc_input, wc_out = "reports", wc_kernel;
  bool wc_ppm = false, wc_svg = false;
  wig_compute->add_option("--input", wc_input, "signal file (two-column re,im with header)")->required();
  wig_compute->add_option("--output", wc_out, "output directory");
  wig_compute->add_option("--kernel", wc_kernel, "optional Cohen kernel polynomial");
  wig_compute->add_flag("--ppm", wc_ppm, "write a PPM heatmap");
  wig_compute->add_flag("--svg", wc_svg, "write an SVG contour sketch");

  // report
  CommonOptions rep_opts;
  std::vector<std::string> rep_suites;
  CLI::App* report = app.add_subcommand("report", "run suites and write their reports");
  report->add_option("--suite", rep_suites, "suite name (repeatable; default: all)");
  add_common(report, rep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (md->parsed()) {
      ordered_json cfg = build_config(md_opts);
      cfg["family"] = md_family;
      cfg["n_max"] = md_n;
      if (md_family == "random") cfg["families"] = md_seeds;
      if (md_no_cross) cfg["cross_path"] = false;
      return run_and_write("mean-dispersion", cfg, md_opts.format);
    }
    if (cov->parsed()) {
      ordered_json cfg = build_config(cov_opts);
      cfg["families"] = cov_families;
      return run_and_write("covariance", cfg, cov_opts.format);
    }
    if (ident->parsed()) {
      ordered_json cfg = build_config(id_opts);
      cfg["signal"] = id_signal;
      return run_and_write("identities", cfg, id_opts.format);
    }
    if (cohen->parsed()) {
      ordered_json cfg = build_config(cohen_opts);
      if (!cohen_kernels.empty()) cfg["kernels"] = cohen_kernels;
      return run_and_write("cohen", cfg, cohen_opts.format);
    }
    if (riesz->parsed()) {
      ordered_json cfg = build_config(riesz_opts);
      cfg["matrix"] = riesz_matrix;
      return run_and_write("riesz", cfg, riesz_opts.format);
    }
    if (wig_compute->parsed()) {
      const char* env = std::getenv("WIGMD_OUTPUT_DIR");
      return wigner_compute(wc_input, env ? env : wc_out, wc_kernel, wc_ppm, wc_svg);
    }
    if (report->parsed()) {
      ordered_json cfg = build_config(rep_opts);
      std::vector<std::string> suites = rep_suites;
      if (suites.empty()) suites = {"mean-dispersion", "covariance", "identities", "cohen", "riesz"};
      int rc = 0;
      for (const std::string& suite : suites) rc = std::max(rc, run_and_write(suite, cfg, rep_opts.format));
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "no subcommand selected\n";
  return 2;
}
