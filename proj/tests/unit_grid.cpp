#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "grid.hpp"
#include "hermite.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace wigmd;

namespace {

const Grid1D kGrid(12.0, 512);

Signal from_closed_form(const Grid1D& g, int k) {
  std::vector<cplx> s(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) s[static_cast<size_t>(i)] = oracle::hermite_fn(k, g.node(i));
  return Signal(g, std::move(s));
}

Signal random_bandlimited(const Grid1D& g, int K, std::uint64_t seed) {
  return synthesize(random_unit_vector(K, seed), g);
}

}  // namespace

TEST_CASE("grid construction and invariants") {
  CHECK(kGrid.spacing() == doctest::Approx(24.0 / 512));
  CHECK(kGrid.node(256) == 0.0);
  CHECK(kGrid.node(0) == -12.0);
  CHECK(kGrid.dual().half_width() == doctest::Approx(std::numbers::pi / kGrid.spacing()));
  CHECK(kGrid.dual().size() == 512);
  CHECK_THROWS_AS(Grid1D(12.0, 500), Error);   // not a power of two
  CHECK_THROWS_AS(Grid1D(12.0, 4), Error);     // too small
  CHECK_THROWS_AS(Grid1D(-1.0, 512), Error);
}

TEST_CASE("gaussian is a fixed point of the transform") {
  const Signal h0 = from_closed_form(kGrid, 0);
  const Signal h0_hat = fourier_transform(h0);
  // the dual of the default grid has a different spacing, so compare against
  // the closed form evaluated there
  const Signal expect = from_closed_form(kGrid.dual(), 0);
  CHECK(max_abs_diff(h0_hat, expect) <= 1e-10);
}

TEST_CASE("transform of zero is zero and is linear") {
  const Signal z = Signal::zero(kGrid);
  CHECK(fourier_transform(z).norm() == 0.0);
}

TEST_CASE("transform matches direct summation oracle") {
  const Grid1D g(10.0, 64);
  Rng rng(11);
  std::vector<cplx> samples(64);
  for (auto& v : samples) v = rng.complex_gaussian();
  // smooth it so it is grid-representable (random data is fine for a pure DFT identity)
  const Signal f(g, samples);
  const Signal got = fourier_transform(f);
  const auto want = oracle::naive_centered_dft(samples, 10.0, -1, g.spacing() / std::sqrt(2 * std::numbers::pi));
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(got[i] - want[static_cast<size_t>(i)]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("fourier transform powers: F^2 reverses, F^4 is the identity") {
  const Signal h1 = from_closed_form(kGrid, 1);
  const Signal h1_hat = fourier_transform(h1);
  // h_1 is an eigenfunction with eigenvalue -i
  CHECK(max_abs_diff(h1_hat, cplx{0.0, -1.0} * from_closed_form(kGrid.dual(), 1)) <= 1e-10);

  const Signal f = random_bandlimited(kGrid, 16, 3);
  const Signal f2 = fourier_transform(fourier_transform(f));
  double worst = 0.0;
  for (int i = 1; i < f.size(); ++i) worst = std::max(worst, std::abs(f2[i] - f[f.size() - i]));
  CHECK(worst <= 1e-10);  // (F^2 f)(t) = f(-t)

  const Signal f4 = fourier_transform(fourier_transform(f2));
  CHECK(max_abs_diff(f4, f) <= 1e-8);
}

TEST_CASE("inner products against quadrature oracle") {
  const Signal h0 = from_closed_form(kGrid, 0);
  const Signal h1 = from_closed_form(kGrid, 1);
  const Signal h3 = hermite_function(3, kGrid);

  CHECK(std::abs(inner_product(h0, h0) - 1.0) <= 1e-10);
  CHECK(std::abs(inner_product(h0, h1)) <= 1e-10);
  CHECK(std::abs(inner_product(h3, h3) - 1.0) <= 1e-8);

  const cplx dense = oracle::integrate([](double t) { return cplx{oracle::hermite_fn(3, t) * oracle::hermite_fn(3, t), 0.0}; }, 20.0, 0.001);
  CHECK(std::abs(dense - 1.0) <= 1e-6);  // oracle self-check

  const Grid1D other(10.0, 512);
  CHECK_THROWS_WITH_AS(inner_product(h0, Signal::zero(other)), "grid mismatch", Error);
}

TEST_CASE("parseval and conjugate symmetry for band-limited signals") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const Signal f = random_bandlimited(kGrid, 16, seed);
    const Signal g = random_bandlimited(kGrid, 16, seed + 100);
    const cplx lhs = inner_product(f, g);
    const cplx rhs = inner_product(fourier_transform(f), fourier_transform(g));
    CHECK(std::abs(lhs - rhs) <= 1e-8 * f.norm() * g.norm());
    CHECK(std::abs(lhs - std::conj(inner_product(g, f))) <= 1e-14);
  }
}

TEST_CASE("position and momentum operators") {
  const Signal h0 = from_closed_form(kGrid, 0);
  const Signal h1 = from_closed_form(kGrid, 1);

  // t h_0 = h_1 / sqrt(2)
  CHECK(max_abs_diff(apply_position(h0), cplx{1.0 / std::numbers::sqrt2, 0.0} * h1) <= 1e-8);

  // D h_0 = i t h_0
  CHECK(max_abs_diff(apply_momentum(h0), cplx{0.0, 1.0} * apply_position(h0)) <= 1e-8);

  CHECK(apply_position(Signal::zero(kGrid)).norm() == 0.0);

  // spot-check D f = -i f' against finite differences, away from the boundary
  const Signal f = random_bandlimited(kGrid, 12, 9);
  const Signal df = apply_momentum(f);
  const CoeffVector a = analyze(f, 12);
  auto f_closed = [&](double t) {
    cplx acc = 0.0;
    for (int k = 0; k < 12; ++k) acc += a[static_cast<size_t>(k)] * oracle::hermite_fn(k, t);
    return acc;
  };
  for (int i : {200, 256, 300}) {
    const double t = kGrid.node(i);
    const cplx want = cplx{0.0, -1.0} * cplx{oracle::fd_derivative([&](double s) { return f_closed(s).real(); }, t),
                                             oracle::fd_derivative([&](double s) { return f_closed(s).imag(); }, t)};
    CHECK(std::abs(df[i] - want) <= 1e-6);
  }
}

TEST_CASE("canonical commutator bracket") {
  for (std::uint64_t seed : {7ull, 8ull}) {
    const Signal f = random_bandlimited(kGrid, 16, seed);
    const cplx b = inner_product(apply_momentum(f), apply_position(f));
    const cplx comm = b - std::conj(b);
    CHECK(std::abs(comm - cplx{0.0, 1.0} * f.squared_norm()) <= 1e-7);
  }
}

TEST_CASE("out-of-band energy fraction") {
  const Signal h0 = from_closed_form(kGrid, 0);
  CHECK(out_of_band_fraction(h0) <= 1e-12);
  std::vector<cplx> edge(static_cast<size_t>(kGrid.size()));
  edge[1] = 1.0;
  CHECK(out_of_band_fraction(Signal(kGrid, edge)) == doctest::Approx(1.0));
}
