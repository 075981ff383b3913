#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cohen.hpp"
#include "hermite.hpp"
#include "moments.hpp"
#include "ops.hpp"
#include "riesz.hpp"

namespace wigmd {

// Tolerance policy: one relative tolerance for grid-path (quadrature) checks,
// a tighter one for spectral-path (exact-up-to-rounding) checks.
struct Tolerances {
  double grid = 1e-6;
  double spectral = 1e-10;
};

struct RunConfig {
  int grid_size = 512;
  double grid_half_width = 12.0;
  int truncation = 32;  // K
  std::uint64_t seed = 1;
  int families = 200;
  int n_max = 8;
  std::string family = "hermite";  // or "random"
  std::string signal = "all";      // identities suite selection
  std::vector<std::string> kernels = {"0", "0.5*xi*eta", "xi^2"};
  std::string matrix = "sweep";    // riesz suite source
  bool cross_path = true;
  Tolerances tol;
  std::string output_dir = "reports";

  void validate() const;
  Grid1D grid() const { return Grid1D(grid_half_width, grid_size); }
  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

enum class MdPath { grid, spectral };

// One mean-dispersion sum with the proof-side diagnostics.
struct MDSumReport {
  int n = 0;
  std::vector<double> terms;         // <L̂ W(f, g_k), W(f, g_k)>, k = 0..n
  std::vector<double> partial_sums;  // running sums
  std::vector<double> bounds;        // (k+1)^2
  std::vector<double> margins;       // partial_sum - bound
  std::vector<double> alpha;         // alpha_l = sum_{k<=n} |<g_k, h_l>|^2, l = 0..K-1
  double alpha_total = 0.0;          // sums to n+1
  double remainder = 0.0;            // R_n = sum_{l>n} alpha_l
  std::vector<double> c;             // c_k, with alpha_k + c_k R_n = 1
  std::vector<std::string> warnings;
};

MDSumReport md_sum(const CoeffVector& f, const OrthonormalFamily& family, int n, MdPath path,
                   const Grid1D& grid);

struct EqualityVerdict {
  std::vector<double> partial_sums;
  std::vector<bool> equality_up_to;     // per n <= n0: all partial sums so far at the bound
  bool at_equality = false;             // equality_up_to[n0]
  std::vector<bool> phased_hermite;     // per k: coefficients match c_k h_k
  std::vector<cplx> phases;             // recovered c_k (meaningful when phased)
};

EqualityVerdict equality_characterization(const OrthonormalFamily& family, int n0, double tol);

struct CovarianceSumReport {
  int n = 0;
  std::vector<double> terms;  // energy moments of W(f_k)
  double sum = 0.0;
  double bound = 0.0;  // (n+1)^2 / 2
  double margin = 0.0;
};

CovarianceSumReport covariance_sum(const OrthonormalFamily& family, int n, const Grid1D& grid);

struct AltOperatorReport {
  int n = 0;
  double signal_side_sum = 0.0;  // sum <(M^2+D^2) f_k, f_k>
  double phase_side_sum = 0.0;   // sum <[ (D1^2+D2^2)/4 + M1^2+M2^2 ] W(f_k), W(f_k)>
  double bound = 0.0;            // (n+1)^2
};

AltOperatorReport alt_operator_suite(const OrthonormalFamily& family, int n, const Grid1D& grid);

// "h0".."h31", "mixed" ((h0 + 2 h3 + i h5)/sqrt(6)), "shifted" (unit gaussian
// centered at 1), "modulated" (e^{it} h0).
Signal named_signal(std::string_view name, const Grid1D& grid);

struct Case {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // bound cases: lhs - rhs; identity cases: -|lhs - rhs|
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  RunConfig config;
  std::string suite;
  std::vector<Case> cases;
  std::vector<std::string> warnings;
  // per-k table rows (k, term, partial_sum, bound, margin) for md-style suites
  std::vector<std::array<double, 5>> table;

  bool pass() const;
  const Case* first_failure() const;
  std::string to_json() const;
  std::string to_csv() const;
};

Report run_mean_dispersion(const RunConfig& config);
Report run_covariance(const RunConfig& config);
Report run_identities(const RunConfig& config);
Report run_cohen(const RunConfig& config);
Report run_riesz(const RunConfig& config);
// dispatch by name: "mean-dispersion", "covariance", "identities", "cohen", "riesz"
Report run_suite(const std::string& suite, const RunConfig& config);

// Deterministic index-parallel loop; results must be written to disjoint slots.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace wigmd
