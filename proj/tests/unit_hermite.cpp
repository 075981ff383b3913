#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "grid.hpp"
#include "hermite.hpp"
#include "oracles.hpp"

using namespace wigmd;

namespace {
const Grid1D kGrid(12.0, 512);
}

TEST_CASE("ground state matches the closed form pointwise") {
  const Signal h0 = hermite_function(0, kGrid);
  double worst = 0.0;
  for (int i = 0; i < kGrid.size(); ++i) {
    const double t = kGrid.node(i);
    worst = std::max(worst, std::abs(h0[i] - std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("h_2 at the origin") {
  const Signal h2 = hermite_function(2, kGrid);
  // -1/(sqrt(2) pi^{1/4})
  CHECK(h2[256].real() == doctest::Approx(-0.5311259660135984).epsilon(1e-12));
  CHECK(h2[256].real() == doctest::Approx(oracle::hermite_fn(2, 0.0)).epsilon(1e-12));
}

TEST_CASE("recurrence agrees with closed forms up to degree 10") {
  const auto block = hermite_block(kGrid, 11);
  for (int k = 0; k <= 10; ++k) {
    double worst = 0.0;
    for (int i = 100; i < 412; ++i)
      worst = std::max(worst, std::abs(block[static_cast<size_t>(k)][i] - oracle::hermite_fn(k, kGrid.node(i))));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("orthonormality up to degree 16") {
  const auto block = hermite_block(kGrid, 17);
  double worst = 0.0;
  for (int j = 0; j <= 16; ++j)
    for (int k = 0; k <= j; ++k) {
      const cplx g = inner_product(block[static_cast<size_t>(j)], block[static_cast<size_t>(k)]);
      worst = std::max(worst, std::abs(g - (j == k ? cplx{1.0, 0.0} : cplx{})));
    }
  CHECK(worst <= 1e-8);
}

TEST_CASE("fourier eigenrelation up to degree 16") {
  const auto block = hermite_block(kGrid, 17);
  const auto dual_block = hermite_block(kGrid.dual(), 17);
  cplx eig{1.0, 0.0};
  for (int k = 0; k <= 16; ++k) {
    CHECK(max_abs_diff(fourier_transform(block[static_cast<size_t>(k)]), eig * dual_block[static_cast<size_t>(k)]) <=
          1e-8);
    eig *= cplx{0.0, -1.0};
  }
}

TEST_CASE("unresolved degree is rejected") {
  const Grid1D small(8.0, 64);  // resolves degrees up to sqrt(2k+1) <= 4, i.e. k <= 7
  CHECK_THROWS_WITH_AS(hermite_function(40, small), "unresolved degree", Error);
  CHECK_THROWS_AS(analyze(Signal::zero(small), 40), Error);
  CHECK_THROWS_AS(synthesize(CoeffVector(40), small), Error);
  CHECK_NOTHROW(hermite_function(2, small));
}

TEST_CASE("analyze picks out coefficients") {
  const auto block = hermite_block(kGrid, 8);
  const CoeffVector e3 = analyze(block[3], 8);
  for (int k = 0; k < 8; ++k)
    CHECK(std::abs(e3[static_cast<size_t>(k)] - (k == 3 ? cplx{1.0, 0.0} : cplx{})) <= 1e-8);

  const CoeffVector mix = analyze(block[0] + block[1], 4);
  CHECK(std::abs(mix[0] - 1.0) <= 1e-8);
  CHECK(std::abs(mix[1] - 1.0) <= 1e-8);
  CHECK(std::abs(mix[2]) <= 1e-8);
  CHECK(std::abs(mix[3]) <= 1e-8);

  const double s5 = 1.0 / std::sqrt(5.0);
  const Signal f = cplx{s5, 0.0} * block[0] + cplx{2.0 * s5, 0.0} * hermite_function(5, kGrid);
  const CoeffVector a = analyze(f, 8);
  CHECK(std::abs(a[0] - s5) <= 1e-7);
  CHECK(std::abs(a[5] - 2.0 * s5) <= 1e-7);
  for (int k : {1, 2, 3, 4, 6, 7}) CHECK(std::abs(a[static_cast<size_t>(k)]) <= 1e-7);
}

TEST_CASE("synthesize basics and round trip") {
  CHECK(max_abs_diff(synthesize({cplx{1.0, 0.0}}, kGrid), hermite_function(0, kGrid)) <= 1e-12);

  const Signal s = synthesize({cplx{0.6, 0.0}, cplx{0.0, 0.8}}, kGrid);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-8);

  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const CoeffVector a = random_unit_vector(16, seed);
    const CoeffVector back = analyze(synthesize(a, kGrid), 16);
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - back[i]));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("analyze is an isometry on the resolved span") {
  for (std::uint64_t seed : {5ull, 6ull}) {
    const Signal f = synthesize(random_unit_vector(24, seed), kGrid);
    CHECK(std::abs(l2_norm(analyze(f, 24)) - f.norm()) <= 1e-7);
  }
}

TEST_CASE("random orthonormal families") {
  const OrthonormalFamily f44 = random_orthonormal_family(4, 4, 123);
  CHECK(gram_deviation(f44) <= 1e-12);

  const OrthonormalFamily f81 = random_orthonormal_family(8, 1, 7);
  CHECK(std::abs(l2_norm(f81.vectors[0]) - 1.0) <= 1e-12);

  const OrthonormalFamily a = random_orthonormal_family(32, 16, 99);
  const OrthonormalFamily b = random_orthonormal_family(32, 16, 99);
  CHECK(gram_deviation(a) <= 1e-12);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 32; ++i)
      CHECK(a.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)] ==
            b.vectors[static_cast<size_t>(j)][static_cast<size_t>(i)]);

  CHECK_THROWS_WITH_AS(random_orthonormal_family(4, 5, 1), "family larger than truncation", Error);
}
