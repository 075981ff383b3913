#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "grid.hpp"
#include "hermite.hpp"
#include "oracles.hpp"
#include "wigner.hpp"

using namespace wigmd;

namespace {
const Grid1D kGrid(12.0, 512);
}

TEST_CASE("wigner grid geometry") {
  const Grid2D g = Grid2D::wigner(kGrid);
  CHECK(g.y.spacing() == doctest::Approx(std::numbers::pi / (512 * kGrid.spacing())));
  CHECK(g.cell_area() == doctest::Approx(std::numbers::pi / 512));
  CHECK(g.y.node(256) == 0.0);
}

TEST_CASE("gaussian wigner matches the closed form") {
  const Signal h0 = hermite_function(0, kGrid);
  const Field2D w = cross_wigner(h0, h0);
  CHECK(w.at(256, 256).real() == doctest::Approx(0.7978845608028654).epsilon(1e-10));

  const double c = std::sqrt(2.0 / std::numbers::pi);
  double worst = 0.0;
  for (int a = 0; a < 512; a += 7)
    for (int b = 0; b < 512; b += 7) {
      const double x = w.grid().x.node(a);
      const double xi = w.grid().y.node(b);
      worst = std::max(worst, std::abs(w.at(a, b) - c * std::exp(-(x * x + xi * xi))));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("cross wigner values against dense quadrature") {
  const Signal h0 = hermite_function(0, kGrid);
  const Signal h1 = hermite_function(1, kGrid);
  const Field2D w = cross_wigner(h0, h1);
  for (auto [ia, ib] : {std::pair{256, 256}, std::pair{280, 240}, std::pair{230, 300}}) {
    const double x = w.grid().x.node(ia);
    const double xi = w.grid().y.node(ib);
    const cplx want = oracle::wigner_point([](double t) { return cplx{oracle::hermite_fn(0, t), 0.0}; },
                                           [](double t) { return cplx{oracle::hermite_fn(1, t), 0.0}; }, x, xi);
    CHECK(std::abs(w.at(ia, ib) - want) <= 1e-9);
  }
}

TEST_CASE("moyal products") {
  const auto block = hermite_block(kGrid, 7);
  const Field2D w25 = cross_wigner(block[2], block[5]);
  CHECK(w25.squared_norm() == doctest::Approx(1.0).epsilon(1e-7));

  // orthonormality of a subset of Hermite-Wigner pairs
  const Field2D w00 = cross_wigner(block[0], block[0]);
  const Field2D w34 = cross_wigner(block[3], block[4]);
  CHECK(std::abs(moyal_product(w00, w00) - 1.0) <= 1e-8);
  CHECK(std::abs(moyal_product(w25, w34)) <= 1e-7);
  CHECK(std::abs(moyal_product(w00, w25)) <= 1e-7);

  // property: <W(f,g), W(f,g)> = ||f||^2 ||g||^2
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Signal f = synthesize(random_unit_vector(16, seed), kGrid);
    const Signal g = synthesize(random_unit_vector(16, seed + 50), kGrid);
    const Field2D w = cross_wigner(f, g);
    CHECK(std::abs(moyal_product(w, w) - f.squared_norm() * g.squared_norm()) <= 1e-7);
  }
}

TEST_CASE("bilinearity sends zero to zero") {
  const Signal h0 = hermite_function(0, kGrid);
  CHECK(cross_wigner(h0, Signal::zero(kGrid)).norm() == 0.0);
  CHECK(wig_transform(Field2D(Grid2D::tensor(kGrid))).norm() == 0.0);
}

TEST_CASE("wig transform of a pure tensor is the cross wigner") {
  const Signal h1 = hermite_function(1, kGrid);
  const Signal h2 = hermite_function(2, kGrid);
  const Field2D via_tensor = wig_transform(outer_product(h1, h2));
  const Field2D direct = cross_wigner(h1, h2);
  CHECK(max_abs_diff(via_tensor, direct) <= 1e-9);
}

TEST_CASE("wig round trip on a hermite tensor") {
  const Signal h1 = hermite_function(1, kGrid);
  const Signal h2 = hermite_function(2, kGrid);
  const Field2D u = outer_product(h1, h2);
  const Field2D back = wig_inverse(wig_transform(u));
  CHECK(max_abs_diff(back, u) <= 1e-7);
}

TEST_CASE("realness and interchange symmetry") {
  const Signal f = synthesize(random_unit_vector(16, 77), kGrid);
  const Signal g = synthesize(random_unit_vector(16, 78), kGrid);
  const Field2D wf = cross_wigner(f, f);
  CHECK(max_abs_imag(wf) <= 1e-10 * f.squared_norm());

  const Field2D wfg = cross_wigner(f, g);
  const Field2D wgf = cross_wigner(g, f);
  double worst = 0.0;
  for (int a = 0; a < 512; a += 3)
    for (int b = 0; b < 512; b += 3) worst = std::max(worst, std::abs(wgf.at(a, b) - std::conj(wfg.at(a, b))));
  CHECK(worst <= 1e-12);
}

TEST_CASE("fourier rotation of the wigner plane") {
  const Signal h0 = hermite_function(0, kGrid);
  CHECK(fourier_rotation_residual(h0, h0) <= 1e-9);

  const Signal h1 = hermite_function(1, kGrid);
  const Signal h3 = hermite_function(3, kGrid);
  CHECK(fourier_rotation_residual(h1, h3) <= 1e-7);

  // The transformed-signal Wigner plane only reaches |xi| < L/2, so the test
  // band must keep Hermite tails inside that window (degree 9 is already
  // marginal at L = 12).
  for (std::uint64_t seed : {4ull, 5ull}) {
    const Signal f = synthesize(random_unit_vector(8, seed), kGrid);
    CHECK(fourier_rotation_residual(f, f) <= 1e-6);
  }
}

TEST_CASE("grid mismatch is rejected") {
  const Signal h0 = hermite_function(0, kGrid);
  const Signal other = Signal::zero(Grid1D(12.0, 256));
  CHECK_THROWS_WITH_AS(cross_wigner(h0, other), "grid mismatch", Error);
  const Field2D w = cross_wigner(h0, h0);
  CHECK_THROWS_AS(moyal_product(w, Field2D(Grid2D::wigner(Grid1D(12.0, 256)))), Error);
  CHECK_THROWS_AS(wig_transform(w), Error);  // wigner-grid field is not a tensor field
}
