#include "harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

namespace wigmd {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kSchemaVersion = "1";

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Case equality_case(std::string name, double lhs, double rhs, double tol) {
  Case c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = -std::abs(lhs - rhs);
  c.tolerance = tol;
  c.pass = std::abs(lhs - rhs) <= tol;
  return c;
}

Case bound_case(std::string name, double lhs, double rhs, double tol) {
  Case c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = lhs - rhs;
  c.tolerance = tol;
  c.pass = c.margin >= -tol;
  return c;
}

CoeffVector basis_vector(int truncation, int k) {
  CoeffVector v(static_cast<size_t>(truncation));
  v[static_cast<size_t>(k)] = 1.0;
  return v;
}

void append_format(std::string& out, const char* fmt, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  out += buf;
}

}  // namespace

void RunConfig::validate() const {
  if (!power_of_two(grid_size) || grid_size < 8)
    fail(Errc::invalid_argument, "grid size must be a power of two, at least 8");
  if (!(grid_half_width > 0.0)) fail(Errc::invalid_argument, "grid half-width must be positive");
  if (truncation < 1) fail(Errc::invalid_argument, "truncation must be positive");
  if (n_max < 0 || n_max >= truncation) fail(Errc::invalid_argument, "n_max must lie in [0, K)");
  if (families < 1) fail(Errc::invalid_argument, "families must be positive");
  if (family != "hermite" && family != "random") fail(Errc::invalid_argument, "family must be hermite or random");
  if (!(tol.grid > 0.0) || !(tol.spectral > 0.0)) fail(Errc::invalid_argument, "tolerances must be positive");
  if (!resolves_degree(grid(), truncation - 1))
    fail(Errc::unresolved_degree, "grid does not resolve the requested truncation");
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["N"] = grid_size;
  j["L"] = grid_half_width;
  j["K"] = truncation;
  j["seed"] = seed;
  j["families"] = families;
  j["n_max"] = n_max;
  j["family"] = family;
  j["signal"] = signal;
  j["kernels"] = kernels;
  j["matrix"] = matrix;
  j["cross_path"] = cross_path;
  j["tolerance_grid"] = tol.grid;
  j["tolerance_spectral"] = tol.spectral;
  j["output_dir"] = output_dir;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("bad config json: ") + e.what());
  }
  RunConfig c;
  c.grid_size = j.value("N", c.grid_size);
  c.grid_half_width = j.value("L", c.grid_half_width);
  c.truncation = j.value("K", c.truncation);
  c.seed = j.value("seed", c.seed);
  c.families = j.value("families", c.families);
  c.n_max = j.value("n_max", c.n_max);
  c.family = j.value("family", c.family);
  c.signal = j.value("signal", c.signal);
  if (j.contains("kernels")) c.kernels = j["kernels"].get<std::vector<std::string>>();
  c.matrix = j.value("matrix", c.matrix);
  c.cross_path = j.value("cross_path", c.cross_path);
  c.tol.grid = j.value("tolerance_grid", c.tol.grid);
  c.tol.spectral = j.value("tolerance_spectral", c.tol.spectral);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.validate();
  return c;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min({hw, 8, count}));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

MDSumReport md_sum(const CoeffVector& f, const OrthonormalFamily& family, int n, MdPath path,
                   const Grid1D& grid) {
  if (std::abs(l2_norm(f) - 1.0) > 1e-8) fail(Errc::not_normalized, "not normalized");
  if (n < 0 || n >= family.count()) fail(Errc::out_of_range, "n exceeds family size");
  if (gram_deviation(family) > 1e-8) fail(Errc::not_orthonormal, "family is not orthonormal");

  MDSumReport r;
  r.n = n;
  r.terms.resize(static_cast<size_t>(n) + 1);

  if (path == MdPath::spectral) {
    for (int k = 0; k <= n; ++k)
      r.terms[static_cast<size_t>(k)] = spectral_lhat_form(f, family.vectors[static_cast<size_t>(k)]);
  } else {
    const Signal f_sig = synthesize(f, grid);
    if (out_of_band_fraction(f_sig) > 1e-6)
      r.warnings.push_back("grid quality: f has more than 1e-6 relative energy in the outer grid band");
    for (int k = 0; k <= n; ++k) {
      const Signal g_sig = synthesize(family.vectors[static_cast<size_t>(k)], grid);
      if (out_of_band_fraction(g_sig) > 1e-6)
        r.warnings.push_back("grid quality: family member " + std::to_string(k) +
                             " has more than 1e-6 relative energy in the outer grid band");
      r.terms[static_cast<size_t>(k)] = lhat_form_grid(cross_wigner(f_sig, g_sig));
    }
  }

  double running = 0.0;
  for (int k = 0; k <= n; ++k) {
    running += r.terms[static_cast<size_t>(k)];
    r.partial_sums.push_back(running);
    const double bound = (k + 1.0) * (k + 1.0);
    r.bounds.push_back(bound);
    r.margins.push_back(running - bound);
  }

  // proof diagnostics, in exact coefficient arithmetic
  const int truncation = family.truncation;
  r.alpha.assign(static_cast<size_t>(truncation), 0.0);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l < truncation; ++l)
      r.alpha[static_cast<size_t>(l)] += std::norm(family.vectors[static_cast<size_t>(k)][static_cast<size_t>(l)]);
  for (double a : r.alpha) r.alpha_total += a;
  for (int l = n + 1; l < truncation; ++l) r.remainder += r.alpha[static_cast<size_t>(l)];
  r.c.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    r.c[static_cast<size_t>(k)] = r.remainder > 0.0 ? (1.0 - r.alpha[static_cast<size_t>(k)]) / r.remainder : 0.0;
  return r;
}

EqualityVerdict equality_characterization(const OrthonormalFamily& family, int n0, double tol) {
  if (n0 < 0 || n0 >= family.count()) fail(Errc::out_of_range, "n0 exceeds family size");
  if (gram_deviation(family) > 1e-8) fail(Errc::not_orthonormal, "family is not orthonormal");

  EqualityVerdict v;
  double running = 0.0;
  bool so_far = true;
  for (int n = 0; n <= n0; ++n) {
    const CoeffVector& g = family.vectors[static_cast<size_t>(n)];
    running += spectral_lhat_form(g, g);
    v.partial_sums.push_back(running);
    const double bound = (n + 1.0) * (n + 1.0);
    so_far = so_far && std::abs(running - bound) <= tol * bound;
    v.equality_up_to.push_back(so_far);
  }
  v.at_equality = v.equality_up_to.back();

  for (int k = 0; k <= n0; ++k) {
    const CoeffVector& g = family.vectors[static_cast<size_t>(k)];
    const cplx diag = g[static_cast<size_t>(k)];
    bool phased = v.equality_up_to[static_cast<size_t>(k)] && std::abs(std::abs(diag) - 1.0) <= 1e-6;
    if (phased)
      for (size_t j = 0; j < g.size(); ++j)
        if (j != static_cast<size_t>(k) && std::abs(g[j]) > 1e-6) phased = false;
    v.phased_hermite.push_back(phased);
    v.phases.push_back(diag);
  }
  return v;
}

CovarianceSumReport covariance_sum(const OrthonormalFamily& family, int n, const Grid1D& grid) {
  if (n < 0 || n >= family.count()) fail(Errc::out_of_range, "n exceeds family size");
  if (gram_deviation(family) > 1e-8) fail(Errc::not_orthonormal, "family is not orthonormal");

  CovarianceSumReport r;
  r.n = n;
  r.terms.resize(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Signal f = synthesize(family.vectors[static_cast<size_t>(k)], grid);
    r.terms[static_cast<size_t>(k)] = covariance(cross_wigner(f, f)).energy_moment;
  }
  for (double t : r.terms) r.sum += t;
  r.bound = 0.5 * (n + 1.0) * (n + 1.0);
  r.margin = r.sum - r.bound;
  return r;
}

AltOperatorReport alt_operator_suite(const OrthonormalFamily& family, int n, const Grid1D& grid) {
  if (n < 0 || n >= family.count()) fail(Errc::out_of_range, "n exceeds family size");
  if (gram_deviation(family) > 1e-8) fail(Errc::not_orthonormal, "family is not orthonormal");

  static const PolyOp phase_op = PolyOp::parse("0.25*(D1^2 + D2^2) + M1^2 + M2^2");
  AltOperatorReport r;
  r.n = n;
  r.bound = (n + 1.0) * (n + 1.0);
  for (int k = 0; k <= n; ++k) {
    const Signal f = synthesize(family.vectors[static_cast<size_t>(k)], grid);
    r.signal_side_sum += inner_product(harmonic_oscillator(f), f).real();
    r.phase_side_sum += quadratic_form(phase_op, cross_wigner(f, f)).real();
  }
  return r;
}

Signal named_signal(std::string_view name, const Grid1D& grid) {
  if (name.size() >= 2 && name[0] == 'h') {
    const int k = std::atoi(std::string(name.substr(1)).c_str());
    return hermite_function(k, grid);
  }
  if (name == "mixed") {
    CoeffVector a(6);
    const double s = 1.0 / std::sqrt(6.0);
    a[0] = s;
    a[3] = 2.0 * s;
    a[5] = cplx{0.0, s};
    return synthesize(a, grid);
  }
  if (name == "shifted") {
    std::vector<cplx> s(static_cast<size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
      const double t = grid.node(i);
      s[static_cast<size_t>(i)] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * (t - 1.0) * (t - 1.0));
    }
    return Signal(grid, std::move(s));
  }
  if (name == "modulated") {
    std::vector<cplx> s(static_cast<size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
      const double t = grid.node(i);
      s[static_cast<size_t>(i)] =
          std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t) * cplx{std::cos(t), std::sin(t)};
    }
    return Signal(grid, std::move(s));
  }
  fail(Errc::invalid_argument, "unknown signal name: " + std::string(name));
}

bool Report::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const Case& c) { return c.pass; });
}

const Case* Report::first_failure() const {
  for (const Case& c : cases)
    if (!c.pass) return &c;
  return nullptr;
}

std::string Report::to_json() const {
  ordered_json j;
  j["config"] = ordered_json::parse(config.to_json());
  j["suite"] = suite;
  ordered_json case_list = ordered_json::array();
  for (const Case& c : cases) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["margin"] = c.margin;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    case_list.push_back(std::move(jc));
  }
  j["cases"] = std::move(case_list);
  j["versions"] = ordered_json{{"wigmd", kVersion}, {"schema", kSchemaVersion}};
  j["seed"] = config.seed;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::string out;
  if (!table.empty()) {
    out = "k,term,partial_sum,bound,margin\n";
    for (const auto& row : table) {
      for (size_t i = 0; i < row.size(); ++i) {
        append_format(out, "%.17g", row[i]);
        out += (i + 1 < row.size()) ? "," : "\n";
      }
    }
    return out;
  }
  out = "name,lhs,rhs,margin,tolerance,pass\n";
  for (const Case& c : cases) {
    out += '"' + c.name + '"';
    out += ',';
    append_format(out, "%.17g", c.lhs);
    out += ',';
    append_format(out, "%.17g", c.rhs);
    out += ',';
    append_format(out, "%.17g", c.margin);
    out += ',';
    append_format(out, "%.17g", c.tolerance);
    out += c.pass ? ",true\n" : ",false\n";
  }
  return out;
}

namespace {

void merge_warnings(Report& report, std::vector<std::string> extra) {
  report.warnings.insert(report.warnings.end(), extra.begin(), extra.end());
  std::sort(report.warnings.begin(), report.warnings.end());
  report.warnings.erase(std::unique(report.warnings.begin(), report.warnings.end()), report.warnings.end());
}

struct SweepResult {
  MDSumReport spectral_h0;
  MDSumReport spectral_rand;
  MDSumReport grid_h0;
  MDSumReport grid_rand;
  bool has_grid = false;
};

}  // namespace

Report run_mean_dispersion(const RunConfig& config) {
  config.validate();
  const Grid1D grid = config.grid();
  const int K = config.truncation;
  const int n = config.n_max;

  Report rep;
  rep.config = config;
  rep.suite = "mean-dispersion";

  if (config.family == "hermite") {
    const OrthonormalFamily family = hermite_family(K, n + 1);
    const CoeffVector f0 = basis_vector(K, 0);
    const MDSumReport spect = md_sum(f0, family, n, MdPath::spectral, grid);
    const MDSumReport gridr = md_sum(f0, family, n, MdPath::grid, grid);
    merge_warnings(rep, gridr.warnings);

    for (int k = 0; k <= n; ++k) {
      const double bound = spect.bounds[static_cast<size_t>(k)];
      rep.cases.push_back(equality_case("hermite partial sum n=" + std::to_string(k) + " (grid path)",
                                        gridr.partial_sums[static_cast<size_t>(k)], bound,
                                        config.tol.grid * bound));
      rep.cases.push_back(equality_case("hermite partial sum n=" + std::to_string(k) + " (spectral path)",
                                        spect.partial_sums[static_cast<size_t>(k)], bound,
                                        config.tol.spectral * bound));
      rep.cases.push_back(equality_case("cross-path term k=" + std::to_string(k),
                                        gridr.terms[static_cast<size_t>(k)], spect.terms[static_cast<size_t>(k)],
                                        config.tol.grid * std::max(1.0, spect.terms[static_cast<size_t>(k)])));
      rep.table.push_back({static_cast<double>(k), gridr.terms[static_cast<size_t>(k)],
                           gridr.partial_sums[static_cast<size_t>(k)], bound,
                           gridr.margins[static_cast<size_t>(k)]});
    }
    rep.cases.push_back(equality_case("alpha diagnostics: total equals n+1", spect.alpha_total, n + 1.0, 1e-10));
    const double worst_alpha = *std::max_element(spect.alpha.begin(), spect.alpha.end());
    rep.cases.push_back(bound_case("alpha diagnostics: alpha_l <= 1", 1.0 + 1e-10, worst_alpha, 0.0));
    double worst_dd1 = 0.0;
    for (int k = 0; k <= n; ++k)
      worst_dd1 = std::max(worst_dd1, std::abs(spect.alpha[static_cast<size_t>(k)] +
                                               spect.c[static_cast<size_t>(k)] * spect.remainder - 1.0));
    rep.cases.push_back(equality_case("alpha diagnostics: alpha_k + c_k R_n = 1", worst_dd1, 0.0, 1e-10));

    // alternative operators carrying the same bound
    const int n_alt = std::min(2, n);
    const AltOperatorReport alt = alt_operator_suite(family, n_alt, grid);
    rep.cases.push_back(equality_case("alternative operator sum, signal side (n=" + std::to_string(n_alt) + ")",
                                      alt.signal_side_sum, alt.bound, config.tol.grid * alt.bound));
    rep.cases.push_back(equality_case("alternative operator sum, phase side (n=" + std::to_string(n_alt) + ")",
                                      alt.phase_side_sum, alt.bound, 1e-5 * alt.bound));
    return rep;
  }

  // random sweep
  std::vector<SweepResult> results(static_cast<size_t>(config.families));
  parallel_for(config.families, [&](int s) {
    const std::uint64_t family_seed = config.seed + static_cast<std::uint64_t>(s);
    const OrthonormalFamily family = random_orthonormal_family(K, n + 1, family_seed);
    const CoeffVector f0 = basis_vector(K, 0);
    const CoeffVector fr = random_unit_vector(K, config.seed + 1000003 + static_cast<std::uint64_t>(s));
    SweepResult& r = results[static_cast<size_t>(s)];
    r.spectral_h0 = md_sum(f0, family, n, MdPath::spectral, grid);
    r.spectral_rand = md_sum(fr, family, n, MdPath::spectral, grid);
    if (config.cross_path) {
      r.grid_h0 = md_sum(f0, family, n, MdPath::grid, grid);
      r.grid_rand = md_sum(fr, family, n, MdPath::grid, grid);
      r.has_grid = true;
    }
  });

  std::vector<double> min_margin(static_cast<size_t>(n) + 1, 1e300);
  double worst_dev = 0.0;
  double worst_alpha_total = 0.0;
  double worst_alpha_range = 0.0;
  double worst_dd1 = 0.0;
  int worst_family = 0;
  double worst_final_margin = 1e300;
  for (int s = 0; s < config.families; ++s) {
    const SweepResult& r = results[static_cast<size_t>(s)];
    for (const MDSumReport* m : {&r.spectral_h0, &r.spectral_rand}) {
      for (int k = 0; k <= n; ++k)
        min_margin[static_cast<size_t>(k)] = std::min(min_margin[static_cast<size_t>(k)], m->margins[static_cast<size_t>(k)]);
      worst_alpha_total = std::max(worst_alpha_total, std::abs(m->alpha_total - (n + 1.0)));
      for (double a : m->alpha) worst_alpha_range = std::max(worst_alpha_range, std::max(-a, a - 1.0));
      for (int k = 0; k <= n; ++k)
        worst_dd1 = std::max(worst_dd1, std::abs(m->alpha[static_cast<size_t>(k)] +
                                                 m->c[static_cast<size_t>(k)] * m->remainder - 1.0));
    }
    if (r.spectral_h0.margins.back() < worst_final_margin) {
      worst_final_margin = r.spectral_h0.margins.back();
      worst_family = s;
    }
    if (r.has_grid) {
      merge_warnings(rep, r.grid_h0.warnings);
      merge_warnings(rep, r.grid_rand.warnings);
      for (int k = 0; k <= n; ++k) {
        const double s0 = r.spectral_h0.terms[static_cast<size_t>(k)];
        const double s1 = r.spectral_rand.terms[static_cast<size_t>(k)];
        worst_dev = std::max(worst_dev, std::abs(r.grid_h0.terms[static_cast<size_t>(k)] - s0) / std::max(1.0, s0));
        worst_dev = std::max(worst_dev, std::abs(r.grid_rand.terms[static_cast<size_t>(k)] - s1) / std::max(1.0, s1));
      }
    }
  }

  for (int k = 0; k <= n; ++k)
    rep.cases.push_back(bound_case("sweep min margin n=" + std::to_string(k) + " (" +
                                       std::to_string(config.families) + " families, both f choices)",
                                   min_margin[static_cast<size_t>(k)] + (k + 1.0) * (k + 1.0),
                                   (k + 1.0) * (k + 1.0), config.tol.grid));
  if (config.cross_path)
    rep.cases.push_back(equality_case("sweep max grid/spectral relative deviation", worst_dev, 0.0, config.tol.grid));
  rep.cases.push_back(equality_case("alpha diagnostics: total equals n+1 (worst)", worst_alpha_total, 0.0, 1e-10));
  rep.cases.push_back(bound_case("alpha diagnostics: range within [0,1] (worst excess)", 1e-10, worst_alpha_range, 0.0));
  rep.cases.push_back(equality_case("alpha diagnostics: alpha_k + c_k R_n = 1 (worst)", worst_dd1, 0.0, 1e-10));

  const MDSumReport& worst = results[static_cast<size_t>(worst_family)].spectral_h0;
  for (int k = 0; k <= n; ++k)
    rep.table.push_back({static_cast<double>(k), worst.terms[static_cast<size_t>(k)],
                         worst.partial_sums[static_cast<size_t>(k)], worst.bounds[static_cast<size_t>(k)],
                         worst.margins[static_cast<size_t>(k)]});
  return rep;
}

Report run_covariance(const RunConfig& config) {
  config.validate();
  const Grid1D grid = config.grid();
  const int K = config.truncation;

  Report rep;
  rep.config = config;
  rep.suite = "covariance";

  const int n_hermite = std::min(K - 1, std::max(config.n_max, 10));
  const OrthonormalFamily hermites = hermite_family(K, n_hermite + 1);
  const CovarianceSumReport hcov = covariance_sum(hermites, n_hermite, grid);
  for (int k = 0; k <= n_hermite; ++k) {
    double partial = 0.0;
    for (int j = 0; j <= k; ++j) partial += hcov.terms[static_cast<size_t>(j)];
    const double bound = 0.5 * (k + 1.0) * (k + 1.0);
    rep.cases.push_back(equality_case("hermite covariance sum n=" + std::to_string(k), partial, bound,
                                      1e-5 * bound));
    rep.table.push_back({static_cast<double>(k), hcov.terms[static_cast<size_t>(k)], partial, bound,
                         partial - bound});
  }
  const EqualityVerdict hverdict = equality_characterization(hermites, n_hermite, config.tol.grid);
  rep.cases.push_back(equality_case("hermite family flagged at equality", hverdict.at_equality ? 1.0 : 0.0, 1.0, 0.0));

  // random families: margin and no false equality verdicts
  const int n_random = std::min(4, K - 1);
  std::vector<double> margins(static_cast<size_t>(config.families));
  std::vector<int> false_verdicts(static_cast<size_t>(config.families), 0);
  parallel_for(config.families, [&](int s) {
    const OrthonormalFamily fam =
        random_orthonormal_family(K, n_random + 1, config.seed + 2000000 + static_cast<std::uint64_t>(s));
    margins[static_cast<size_t>(s)] = covariance_sum(fam, n_random, grid).margin;
    if (equality_characterization(fam, n_random, config.tol.grid).at_equality)
      false_verdicts[static_cast<size_t>(s)] = 1;
  });
  const double min_margin = *std::min_element(margins.begin(), margins.end());
  const int false_total = std::accumulate(false_verdicts.begin(), false_verdicts.end(), 0);
  rep.cases.push_back(bound_case("random families min covariance margin (n=" + std::to_string(n_random) + ")",
                                 min_margin, 0.0, config.tol.grid));
  rep.cases.push_back(equality_case("random families flagged at equality (count)", false_total, 0.0, 0.0));

  // phased Hermite family must still be detected as the equality case
  std::vector<cplx> phases;
  for (int k = 0; k <= n_hermite; ++k) {
    const double a = 0.3 * (k + 1);
    phases.push_back(cplx{std::cos(a), std::sin(a)});
  }
  const EqualityVerdict phased =
      equality_characterization(phased_hermite_family(K, n_hermite + 1, phases), n_hermite, config.tol.grid);
  bool phases_ok = phased.at_equality;
  for (int k = 0; k <= n_hermite && phases_ok; ++k)
    phases_ok = phased.phased_hermite[static_cast<size_t>(k)] &&
                std::abs(phased.phases[static_cast<size_t>(k)] - phases[static_cast<size_t>(k)]) <= 1e-8;
  rep.cases.push_back(equality_case("phased hermite family recovered with phases", phases_ok ? 1.0 : 0.0, 1.0, 0.0));
  return rep;
}

Report run_identities(const RunConfig& config) {
  config.validate();
  const Grid1D grid = config.grid();

  Report rep;
  rep.config = config;
  rep.suite = "identities";

  std::vector<std::string> signal_names;
  if (config.signal == "all")
    signal_names = {"h0", "h3", "mixed", "shifted", "modulated"};
  else
    signal_names = {config.signal};

  for (const std::string& name : signal_names) {
    const Signal f = named_signal(name, grid);
    for (const IdentityCheck& check : bracket_identity_report(f))
      rep.cases.push_back(equality_case(name + " " + check.name, std::abs(check.lhs), std::abs(check.rhs),
                                        config.tol.grid));
  }

  // intertwining identities for the four generators and three composite words
  const auto block = hermite_block(grid, 3);
  const std::vector<std::pair<std::string, Field2D>> tensors = {
      {"h0(x)h0", outer_product(block[0], block[0])},
      {"h1(x)h2", outer_product(block[1], block[2])},
  };
  for (const char* expr : {"D1", "D2", "M1", "M2", "M1*D1", "D2^2", "M2*D1"}) {
    const PolyOp op = PolyOp::parse(expr);
    for (const auto& [uname, u] : tensors) {
      rep.cases.push_back(equality_case(std::string("intertwine left ") + expr + " on " + uname,
                                        intertwine_left_residual(op, u), 0.0, config.tol.grid));
      rep.cases.push_back(equality_case(std::string("intertwine right ") + expr + " on " + uname,
                                        intertwine_right_residual(op, u), 0.0, config.tol.grid));
    }
  }

  // eigenrelation of the Hermite-Wigner functions
  {
    const auto basis = hermite_block(grid, 6);
    double worst = 0.0;
    for (int j = 0; j <= 5; ++j)
      for (int k = 0; k <= 5; ++k) {
        const Field2D w = cross_wigner(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(k)]);
        const double eig = 2.0 * k + 1.0;
        worst = std::max(worst, (apply_op(lhat_op(), w) - cplx{eig, 0.0} * w).norm() / eig);
      }
    rep.cases.push_back(equality_case("eigenrelation max relative residual (j,k <= 5)", worst, 0.0, config.tol.grid));
  }

  // oscillator transport through the transform
  {
    double worst = lhat_wigner_identity_residual(block[0], hermite_function(3, grid));
    const Signal f = synthesize(random_unit_vector(10, config.seed + 11), grid);
    const Signal g = synthesize(random_unit_vector(10, config.seed + 12), grid);
    worst = std::max(worst, lhat_wigner_identity_residual(f, g));
    rep.cases.push_back(equality_case("oscillator transport residual", worst, 0.0, config.tol.grid));
  }

  // 90-degree rotation under the Fourier transform
  {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const Signal f = synthesize(random_unit_vector(8, config.seed + 100 + static_cast<std::uint64_t>(t)), grid);
      worst = std::max(worst, fourier_rotation_residual(f, f));
    }
    rep.cases.push_back(equality_case("fourier rotation max residual (10 signals)", worst, 0.0, config.tol.grid));
  }

  // realness of the oscillator quadratic form
  {
    const Signal f = named_signal("mixed", grid);
    const cplx q = quadratic_form(lhat_op(), cross_wigner(f, f));
    rep.cases.push_back(equality_case("oscillator quadratic form imaginary part", std::abs(q.imag()), 0.0, 1e-8));
  }
  return rep;
}

Report run_cohen(const RunConfig& config) {
  config.validate();
  const Grid1D base = config.grid();

  Report rep;
  rep.config = config;
  rep.suite = "cohen";

  for (const std::string& expr : config.kernels) {
    const KernelPoly kernel = KernelPoly::parse(expr);
    const std::string tag = "kernel [" + expr + "] ";

    // dispersive kernels transport mass by their group delay and need larger
    // windows than the default plane
    const Grid1D grid = cohen_adequate_grid(kernel, base);
    if (!(grid == base))
      rep.warnings.push_back("cohen: kernel [" + expr + "] evaluated on N=" + std::to_string(grid.size()) +
                             ", L=" + std::to_string(grid.half_width()) +
                             " (group delay exceeds the default plane)");
    const auto block = hermite_block(grid, 6);

    if (kernel.is_zero()) {
      const Field2D w = cross_wigner(block[0], block[1]);
      rep.cases.push_back(equality_case(tag + "reproduces the wigner field", max_abs_diff(cohen_apply(w, kernel), w),
                                        0.0, 1e-12));
    }

    // isometry of all pairings
    {
      const Signal r1 = synthesize(random_unit_vector(8, config.seed + 31), grid);
      const Signal r2 = synthesize(random_unit_vector(8, config.seed + 32), grid);
      const std::vector<std::pair<const Signal*, const Signal*>> pairs = {
          {&block[0], &block[0]}, {&block[1], &block[0]}, {&block[2], &block[1]}, {&r1, &r2}};
      std::vector<Field2D> q_fields;
      for (const auto& [pf, pg] : pairs) q_fields.push_back(cohen_transform(*pf, *pg, kernel));
      double worst = 0.0;
      for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = 0; b < pairs.size(); ++b) {
          const cplx got = moyal_product(q_fields[a], q_fields[b]);
          const cplx want = inner_product(*pairs[a].first, *pairs[b].first) *
                            std::conj(inner_product(*pairs[a].second, *pairs[b].second));
          worst = std::max(worst, std::abs(got - want));
        }
      rep.cases.push_back(equality_case(tag + "moyal products preserved (worst pair)", worst, 0.0, 1e-7));
    }

    // modified-oscillator sums on the Hermite family; shorter sums on the
    // bumped grids keep the dispersive kernels inside the time budget
    const int n_sum = (grid == base) ? 5 : 2;
    {
      const OrthonormalFamily hermites = hermite_family(6, 6);
      const CohenSumReport mod = cohen_md_sum(hermites, hermites, kernel, n_sum, CohenBound::modified, grid);
      double running = 0.0;
      for (int k = 0; k <= n_sum; ++k) {
        running += mod.terms[static_cast<size_t>(k)];
        if (k == n_sum || k == 2) {
          const double bound = (k + 1.0) * (k + 1.0);
          rep.cases.push_back(equality_case(tag + "hermite modified sum n=" + std::to_string(k), running, bound,
                                            1e-5 * bound));
        }
      }
      const int n_star = std::min(3, n_sum);
      const CohenSumReport star = cohen_md_sum(hermites, hermites, kernel, n_star, CohenBound::star, grid);
      rep.cases.push_back(equality_case(tag + "hermite star sum n=" + std::to_string(n_star), star.sum,
                                        star.bound, 1e-5 * star.bound));
    }

    // kernel intertwining identities, words up to length two
    {
      const Field2D u12 = outer_product(block[1], block[2]);
      const std::vector<std::string> words = {"M1", "M2", "D1", "D2", "M1*D1", "D2*M2"};
      std::vector<std::pair<double, double>> residuals(words.size());
      parallel_for(static_cast<int>(words.size()), [&](int i) {
        residuals[static_cast<size_t>(i)] =
            cohen_intertwine_check(PolyOp::parse(words[static_cast<size_t>(i)]), kernel, u12);
      });
      double worst_i = 0.0, worst_ii = 0.0;
      for (const auto& [res_i, res_ii] : residuals) {
        worst_i = std::max(worst_i, res_i);
        worst_ii = std::max(worst_ii, res_ii);
      }
      rep.cases.push_back(equality_case(tag + "intertwine (i) worst residual", worst_i, 0.0, config.tol.grid));
      rep.cases.push_back(equality_case(tag + "intertwine (ii) worst residual", worst_ii, 0.0, config.tol.grid));
    }
  }

  // bound sweep over random families, kept small here; the full sweep runs in the tests
  {
    const int sweep = std::min(config.families, 8);
    const int n = 2;
    double min_margin = 1e300;
    std::vector<double> margins(static_cast<size_t>(sweep) * config.kernels.size());
    parallel_for(sweep * static_cast<int>(config.kernels.size()), [&](int idx) {
      const int s = idx / static_cast<int>(config.kernels.size());
      const KernelPoly kernel = KernelPoly::parse(config.kernels[static_cast<size_t>(idx) % config.kernels.size()]);
      const OrthonormalFamily fam =
          random_orthonormal_family(config.truncation, n + 1, config.seed + 3000000 + static_cast<std::uint64_t>(s));
      margins[static_cast<size_t>(idx)] = cohen_md_sum(fam, fam, kernel, n, CohenBound::modified, base).margin;
    });
    for (double m : margins) min_margin = std::min(min_margin, m);
    rep.cases.push_back(bound_case("random families modified sum min margin (n=2)", min_margin, 0.0, config.tol.grid));
  }
  return rep;
}

Report run_riesz(const RunConfig& config) {
  config.validate();
  const int K = config.truncation;
  const int n = config.n_max;

  Report rep;
  rep.config = config;
  rep.suite = "riesz";

  auto warn_convergence = [&](const OperatorMatrix& v, const std::string& label) {
    if (!v.norm_estimates_converged())
      rep.warnings.push_back("riesz: " + label + " norm estimates changed by more than 1% between K/2 and K; " +
                             "treat bounds as truncated estimates");
  };

  if (config.matrix == "sweep") {
    const OperatorMatrix id = OperatorMatrix::identity(K);
    const RieszBoundReport id_bound = riesz_bound(id, id, n);
    rep.cases.push_back(equality_case("identity matrix reproduces the orthonormal bound", id_bound.lhs,
                                      (n + 1.0) * (n + 1.0), 1e-12 * (n + 1.0) * (n + 1.0)));
    rep.cases.push_back(
        equality_case("identity matrix bound is tight", id_bound.margin, 0.0, 1e-12 * (n + 1.0) * (n + 1.0)));
    const RieszBoundReport id_md = riesz_md_bound(id, n);
    rep.cases.push_back(equality_case("identity matrix mean-dispersion bound is tight", id_md.margin, 0.0,
                                      1e-12 * (n + 1.0) * (n + 1.0)));

    const std::vector<double> alt = {0.8, 1.25};
    const OperatorMatrix diag = OperatorMatrix::diagonal(K, alt);
    double diag_min = 1e300;
    for (int nn = 0; nn <= std::min(10, K - 1); ++nn) diag_min = std::min(diag_min, riesz_bound(diag, diag, nn).margin);
    rep.cases.push_back(bound_case("alternating diagonal min margin (n <= 10)", diag_min, 0.0, 0.0));

    // the degenerate branch: condition 4 makes the floor vanish for n+1 < 16
    const OperatorMatrix wide = OperatorMatrix::random_conditioned(K, 4.0, config.seed + 77);
    const RieszBoundReport degenerate = riesz_bound(wide, wide, std::min(8, K - 1));
    rep.cases.push_back(equality_case("degenerate branch rhs vanishes", degenerate.rhs, 0.0, 0.0));
    rep.cases.push_back(bound_case("degenerate branch lhs stays nonnegative", degenerate.lhs, 0.0, 0.0));

    // seeded sweep of well-conditioned matrices
    const int sweep = 20;
    std::vector<double> margins(static_cast<size_t>(sweep), 1e300);
    std::vector<double> md_margins(static_cast<size_t>(sweep), 1e300);
    std::vector<double> sandwich(static_cast<size_t>(sweep), 0.0);
    std::vector<double> bessel(static_cast<size_t>(sweep), 0.0);
    parallel_for(sweep, [&](int t) {
      const double cond = 1.2 + 0.8 * t / (sweep - 1.0);
      const OperatorMatrix v =
          OperatorMatrix::random_conditioned(K, cond, config.seed + 500 + static_cast<std::uint64_t>(t));
      for (int nn = 0; nn <= n; ++nn) {
        margins[static_cast<size_t>(t)] = std::min(margins[static_cast<size_t>(t)], riesz_bound(v, v, nn).margin);
        md_margins[static_cast<size_t>(t)] =
            std::min(md_margins[static_cast<size_t>(t)], riesz_md_bound(v, nn).margin);
      }
      // norm sandwich: 1/||U||^2 <= ||u_k||^2 <= ||U^{-1}||^2
      const auto family = riesz_family(v);
      double worst = 0.0;
      const double lo = 1.0 / (v.norm_u() * v.norm_u());
      const double hi = v.norm_u_inverse() * v.norm_u_inverse();
      for (const auto& u : family) {
        const double nn2 = l2_norm(u) * l2_norm(u);
        worst = std::max(worst, std::max(lo - nn2, nn2 - hi));
      }
      sandwich[static_cast<size_t>(t)] = worst;
      // Bessel-type bound for a random test vector
      const CoeffVector probe = random_unit_vector(K, config.seed + 900 + static_cast<std::uint64_t>(t));
      double total = 0.0;
      for (const auto& u : family) total += std::norm(coeff_dot(probe, u));
      bessel[static_cast<size_t>(t)] = hi - total;
    });
    rep.cases.push_back(bound_case("sweep min bound margin (20 matrices, n <= " + std::to_string(n) + ")",
                                   *std::min_element(margins.begin(), margins.end()), 0.0, config.tol.grid));
    rep.cases.push_back(bound_case("sweep min mean-dispersion margin",
                                   *std::min_element(md_margins.begin(), md_margins.end()), 0.0, config.tol.grid));
    rep.cases.push_back(bound_case("norm sandwich worst violation", 1e-10,
                                   *std::max_element(sandwich.begin(), sandwich.end()), 0.0));
    rep.cases.push_back(bound_case("bessel bound min slack", *std::min_element(bessel.begin(), bessel.end()), 0.0,
                                   config.tol.spectral));
    return rep;
  }

  const OperatorMatrix v = [&] {
    try {
      return OperatorMatrix::from_generator(K, config.matrix);
    } catch (const Error& e) {
      if (e.code() != Errc::parse_error) throw;
      // not a generator spec: treat it as a CSV file of row-major re,im pairs
      std::ifstream in(config.matrix, std::ios::binary);
      if (!in) fail(Errc::io_error, "matrix source is neither a generator spec nor a readable file: " + config.matrix);
      std::stringstream buf;
      buf << in.rdbuf();
      return OperatorMatrix::from_csv_text(buf.str());
    }
  }();
  warn_convergence(v, config.matrix);
  double prev_lhs = 0.0;
  const int n_top = std::min(n, v.truncation() - 1);
  for (int nn = 0; nn <= n_top; ++nn) {
    const RieszBoundReport b = riesz_bound(v, v, nn);
    rep.cases.push_back(bound_case("bound margin n=" + std::to_string(nn), b.lhs, b.rhs, config.tol.grid));
    rep.table.push_back({static_cast<double>(nn), b.lhs - prev_lhs, b.lhs, b.rhs, b.margin});
    prev_lhs = b.lhs;
    const RieszBoundReport md = riesz_md_bound(v, nn);
    rep.cases.push_back(bound_case("mean-dispersion margin n=" + std::to_string(nn), md.lhs, md.rhs, config.tol.grid));
  }
  return rep;
}

Report run_suite(const std::string& suite, const RunConfig& config) {
  if (suite == "mean-dispersion") return run_mean_dispersion(config);
  if (suite == "covariance") return run_covariance(config);
  if (suite == "identities") return run_identities(config);
  if (suite == "cohen") return run_cohen(config);
  if (suite == "riesz") return run_riesz(config);
  fail(Errc::invalid_argument, "unknown suite: " + suite);
}

}  // namespace wigmd
