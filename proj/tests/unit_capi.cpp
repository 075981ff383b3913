#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "wigmd.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "wigmd_capi_test";
    std::filesystem::create_directories(path);
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(wigmd_version()) == "1.0.0");

  wigmd_grid* grid = nullptr;
  CHECK(wigmd_grid_create(12.0, 500, &grid) == WIGMD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(wigmd_last_error()).find("power of two") != std::string::npos);
  CHECK(wigmd_grid_create(12.0, 512, &grid) == WIGMD_OK);
  CHECK(wigmd_grid_size(grid) == 512);
  CHECK(wigmd_grid_half_width(grid) == 12.0);
  CHECK(wigmd_grid_spacing(grid) == doctest::Approx(24.0 / 512));
  wigmd_grid_destroy(grid);
}

TEST_CASE("signal lifecycle and operators") {
  wigmd_grid* grid = nullptr;
  REQUIRE(wigmd_grid_create(12.0, 256, &grid) == WIGMD_OK);

  wigmd_signal* h0 = nullptr;
  REQUIRE(wigmd_signal_hermite(grid, 0, &h0) == WIGMD_OK);
  CHECK(wigmd_signal_size(h0) == 256);
  CHECK(wigmd_signal_squared_norm(h0) == doctest::Approx(1.0).epsilon(1e-10));

  double inner[2] = {0, 0};
  wigmd_signal* h1 = nullptr;
  REQUIRE(wigmd_signal_hermite(grid, 1, &h1) == WIGMD_OK);
  CHECK(wigmd_signal_inner(h0, h1, inner) == WIGMD_OK);
  CHECK(std::abs(inner[0]) <= 1e-10);

  // momentum of the ground state is i x h0
  wigmd_signal* dh0 = nullptr;
  wigmd_signal* xh0 = nullptr;
  REQUIRE(wigmd_signal_momentum(h0, &dh0) == WIGMD_OK);
  REQUIRE(wigmd_signal_position(h0, &xh0) == WIGMD_OK);
  std::vector<double> a(2 * 256), b(2 * 256);
  CHECK(wigmd_signal_samples(dh0, a.data()) == WIGMD_OK);
  CHECK(wigmd_signal_samples(xh0, b.data()) == WIGMD_OK);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    worst = std::max(worst, std::abs(a[2 * i] - (-b[2 * i + 1])));
    worst = std::max(worst, std::abs(a[2 * i + 1] - b[2 * i]));
  }
  CHECK(worst <= 1e-8);

  double mom[5];
  CHECK(wigmd_signal_moments(h1, mom) == WIGMD_OK);
  CHECK(std::abs(mom[0]) <= 1e-8);
  CHECK(mom[2] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(mom[4] == doctest::Approx(3.0).epsilon(1e-6));

  // fourier eigenvalue of h1 is -i
  wigmd_signal* h1_hat = nullptr;
  REQUIRE(wigmd_signal_fourier(h1, &h1_hat) == WIGMD_OK);

  TempDir tmp;
  CHECK(wigmd_signal_save(h1, tmp.file("h1.sig").c_str()) == WIGMD_OK);
  wigmd_signal* back = nullptr;
  REQUIRE(wigmd_signal_load(tmp.file("h1.sig").c_str(), &back) == WIGMD_OK);
  std::vector<double> c(2 * 256);
  CHECK(wigmd_signal_samples(back, c.data()) == WIGMD_OK);
  CHECK(wigmd_signal_samples(h1, b.data()) == WIGMD_OK);
  CHECK(b == c);  // bit-exact round trip
  CHECK(wigmd_signal_load("/nonexistent/path.sig", &back) == WIGMD_ERR_IO);

  wigmd_signal_destroy(back);
  wigmd_signal_destroy(h1_hat);
  wigmd_signal_destroy(dh0);
  wigmd_signal_destroy(xh0);
  wigmd_signal_destroy(h0);
  wigmd_signal_destroy(h1);
  wigmd_grid_destroy(grid);
}

TEST_CASE("fields, operators and kernels") {
  wigmd_grid* grid = nullptr;
  REQUIRE(wigmd_grid_create(12.0, 256, &grid) == WIGMD_OK);
  wigmd_signal* h0 = nullptr;
  wigmd_signal* h2 = nullptr;
  REQUIRE(wigmd_signal_hermite(grid, 0, &h0) == WIGMD_OK);
  REQUIRE(wigmd_signal_hermite(grid, 2, &h2) == WIGMD_OK);

  wigmd_field* w = nullptr;
  REQUIRE(wigmd_cross_wigner(h0, h2, &w) == WIGMD_OK);
  CHECK(wigmd_field_size(w) == 256);
  CHECK(wigmd_field_squared_norm(w) == doctest::Approx(1.0).epsilon(1e-7));

  double moyal[2];
  CHECK(wigmd_field_moyal(w, w, moyal) == WIGMD_OK);
  CHECK(moyal[0] == doctest::Approx(1.0).epsilon(1e-7));

  // quadratic form of the phase-space oscillator picks the eigenvalue 5
  wigmd_op* lhat = nullptr;
  REQUIRE(wigmd_op_lhat(&lhat) == WIGMD_OK);
  double q[2];
  CHECK(wigmd_op_quadratic_form(lhat, w, q) == WIGMD_OK);
  CHECK(q[0] == doctest::Approx(5.0).epsilon(1e-6));

  wigmd_op* bad = nullptr;
  CHECK(wigmd_op_parse("(M1", &bad) == WIGMD_ERR_PARSE);
  wigmd_op* comm = nullptr;
  REQUIRE(wigmd_op_parse("M1*D1 - D1*M1", &comm) == WIGMD_OK);
  wigmd_field* out = nullptr;
  REQUIRE(wigmd_op_apply(comm, w, &out) == WIGMD_OK);

  wigmd_kernel* kern = nullptr;
  CHECK(wigmd_kernel_parse("i*xi", &kern) == WIGMD_ERR_KERNEL_NOT_REAL);
  REQUIRE(wigmd_kernel_parse("0.5*xi*eta", &kern) == WIGMD_OK);
  wigmd_field* qf = nullptr;
  REQUIRE(wigmd_cohen(h0, h2, kern, &qf) == WIGMD_OK);
  double qq[2];
  CHECK(wigmd_field_moyal(qf, qf, qq) == WIGMD_OK);
  CHECK(qq[0] == doctest::Approx(1.0).epsilon(1e-7));

  double cov[7];
  REQUIRE(wigmd_cross_wigner(h0, h0, &out) == WIGMD_OK);
  CHECK(wigmd_field_covariance(out, cov) == WIGMD_OK);
  CHECK(cov[5] == doctest::Approx(0.5).epsilon(1e-6));

  TempDir tmp;
  CHECK(wigmd_field_save_text(w, tmp.file("w.txt").c_str()) == WIGMD_OK);
  CHECK(wigmd_field_save_ppm(w, tmp.file("w.ppm").c_str()) == WIGMD_OK);
  CHECK(wigmd_field_save_svg(w, tmp.file("w.svg").c_str()) == WIGMD_OK);

  wigmd_field_destroy(qf);
  wigmd_kernel_destroy(kern);
  wigmd_field_destroy(out);
  wigmd_op_destroy(comm);
  wigmd_op_destroy(lhat);
  wigmd_field_destroy(w);
  wigmd_signal_destroy(h0);
  wigmd_signal_destroy(h2);
  wigmd_grid_destroy(grid);
}

TEST_CASE("families and matrices") {
  wigmd_family* family = nullptr;
  REQUIRE(wigmd_family_random(16, 8, 99, &family) == WIGMD_OK);
  CHECK(wigmd_family_gram_deviation(family) <= 1e-12);
  wigmd_family_destroy(family);

  CHECK(wigmd_family_random(4, 8, 1, &family) == WIGMD_ERR_INVALID_ARGUMENT);

  wigmd_opmatrix* m = nullptr;
  REQUIRE(wigmd_opmatrix_generate(16, "random:cond=2,seed=3", &m) == WIGMD_OK);
  double norms[4];
  CHECK(wigmd_opmatrix_norms(m, norms) == WIGMD_OK);
  CHECK(norms[0] * norms[1] == doctest::Approx(2.0).epsilon(1e-9));  // ||U|| ||U^-1|| = cond
  wigmd_opmatrix_destroy(m);
  CHECK(wigmd_opmatrix_generate(16, "garbage", &m) == WIGMD_ERR_PARSE);
}

TEST_CASE("suite runner through the C surface") {
  const char* config = R"({"N":256,"families":3,"n_max":3,"seed":5,"kernels":["0"]})";
  wigmd_report* report = nullptr;
  REQUIRE(wigmd_run_suite("riesz", config, &report) == WIGMD_OK);
  CHECK(wigmd_report_pass(report) == 1);
  CHECK(wigmd_report_case_count(report) > 0);
  CHECK(wigmd_report_first_failure(report) == nullptr);

  const auto j = nlohmann::json::parse(std::string(wigmd_report_json(report)));
  CHECK(j["suite"] == "riesz");
  CHECK(j["config"]["N"] == 256);
  const std::string csv = wigmd_report_csv(report);
  CHECK(csv.find("name,lhs,rhs,margin,tolerance,pass") != std::string::npos);
  wigmd_report_destroy(report);

  CHECK(wigmd_run_suite("nonsense", nullptr, &report) == WIGMD_ERR_INVALID_ARGUMENT);
  CHECK(wigmd_run_suite("riesz", "{\"N\":13}", &report) == WIGMD_ERR_INVALID_ARGUMENT);
}
