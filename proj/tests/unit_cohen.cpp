#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohen.hpp"
#include "grid.hpp"
#include "harness.hpp"
#include "hermite.hpp"
#include "wigner.hpp"

using namespace wigmd;

namespace {
const Grid1D kGrid(12.0, 256);
}

TEST_CASE("kernel parser") {
  const KernelPoly p = KernelPoly::parse("0.5*xi*eta + eta^2");
  CHECK(p.eval(2.0, 3.0) == doctest::Approx(0.5 * 6.0 + 9.0));
  CHECK(p.total_degree() == 2);

  CHECK(KernelPoly::parse("0").is_zero());
  CHECK(KernelPoly::parse("xi - xi").is_zero());
  CHECK_THROWS_WITH_AS(KernelPoly::parse("i*xi"), "kernel not real", Error);
  CHECK_THROWS_AS(KernelPoly::parse("xi^5"), Error);      // degree cap
  CHECK_THROWS_AS(KernelPoly::parse("zeta"), Error);

  const KernelPoly d = p.d_xi();
  CHECK(d.eval(7.0, 3.0) == doctest::Approx(1.5));  // d/dxi (xi eta / 2) = eta/2
}

TEST_CASE("derived operators for the product kernel") {
  // P = xi*eta/2 gives P1 = D2/2, P2 = D1/2 and collapses the modified
  // oscillator to M1^2 + (D1 - M2)^2
  const DerivedOps ops = derive_ops(KernelPoly::parse("0.5*xi*eta"));
  const PolyOp expect_p1 = cplx{0.5, 0.0} * PolyOp::generator(Gen::D2);
  const PolyOp expect_p2 = cplx{0.5, 0.0} * PolyOp::generator(Gen::D1);
  CHECK((ops.p1 - expect_p1).empty());
  CHECK((ops.p2 - expect_p2).empty());
  const PolyOp expect_lt = PolyOp::parse("M1^2 + (D1 - M2)^2");
  CHECK((ops.ltilde - expect_lt).empty());

  // P = 0 reproduces the plain oscillator
  const DerivedOps zero_ops = derive_ops(KernelPoly::zero());
  CHECK(zero_ops.p1.empty());
  CHECK((zero_ops.ltilde - lhat_op()).empty());
}

TEST_CASE("zero kernel acts as the identity") {
  const Signal h0 = hermite_function(0, kGrid);
  const Signal h1 = hermite_function(1, kGrid);
  const Field2D w = cross_wigner(h0, h1);
  CHECK(max_abs_diff(cohen_transform(h0, h1, KernelPoly::zero()), w) <= 1e-12);
}

TEST_CASE("cohen transforms preserve moyal products") {
  const auto block = hermite_block(kGrid, 5);
  for (const char* expr : {"0.5*xi*eta", "xi^2", "xi + eta^3"}) {
    const KernelPoly kernel = KernelPoly::parse(expr);

    const Field2D q00 = cohen_transform(block[0], block[0], kernel);
    CHECK(q00.squared_norm() == doctest::Approx(1.0).epsilon(1e-7));

    // orthonormality of the transformed family
    double worst = 0.0;
    std::vector<Field2D> qs;
    for (int j = 0; j <= 4; ++j)
      for (int k = 0; k <= 4; ++k) qs.push_back(cohen_transform(block[static_cast<size_t>(j)], block[static_cast<size_t>(k)], kernel));
    for (size_t a = 0; a < qs.size(); ++a)
      for (size_t b = 0; b < qs.size(); ++b) {
        const cplx got = moyal_product(qs[a], qs[b]);
        worst = std::max(worst, std::abs(got - (a == b ? cplx{1.0, 0.0} : cplx{})));
      }
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("adequate grids follow the kernel group delay") {
  const Grid1D base(12.0, 512);
  CHECK(cohen_adequate_grid(KernelPoly::zero(), base) == base);

  const Grid1D shear = cohen_adequate_grid(KernelPoly::parse("0.5*xi*eta"), base);
  CHECK(shear.size() == 512);  // mild delay, default plane is fine

  const Grid1D fresnel = cohen_adequate_grid(KernelPoly::parse("xi^2"), base);
  CHECK(fresnel.half_width() >= 22.0);  // delay 2*xi pushes mass along x

  const Grid1D airy = cohen_adequate_grid(KernelPoly::parse("xi + eta^3"), base);
  CHECK(airy.size() == 4096);  // cubic delay needs a wide frequency window
  CHECK(airy.half_width() <= 10.0);
}

TEST_CASE("derived operator verified by the intertwining residual") {
  // no closed form asserted for P = xi^2; the identity itself is the oracle
  const KernelPoly kernel = KernelPoly::parse("xi^2");
  const Grid1D grid = cohen_adequate_grid(kernel, kGrid);
  const auto block = hermite_block(grid, 2);
  const Field2D u01 = outer_product(block[0], block[1]);
  const auto [res_i, res_ii] = cohen_intertwine_check(PolyOp::parse("M1"), kernel, u01);
  CHECK(res_i <= 1e-6);
  CHECK(res_ii <= 1e-6);
}

TEST_CASE("kernel intertwining identities across kernels and words") {
  // the unit-coefficient dispersive kernels run in the acceptance suite on
  // their adequate grids; here a mild cubic exercises the same code paths
  for (const char* kexpr : {"0.5*xi*eta", "0.05*eta^3 + 0.1*xi"}) {
    const KernelPoly kernel = KernelPoly::parse(kexpr);
    const Grid1D grid = cohen_adequate_grid(kernel, kGrid);
    const auto block = hermite_block(grid, 3);
    const Field2D u00 = outer_product(block[0], block[0]);
    const Field2D u12 = outer_product(block[1], block[2]);
    for (const char* bexpr : {"M1", "D2", "M1*D1", "D2*M2"}) {
      const PolyOp b = PolyOp::parse(bexpr);
      for (const Field2D* u : {&u00, &u12}) {
        const auto [res_i, res_ii] = cohen_intertwine_check(b, kernel, *u);
        CHECK(res_i <= 1e-6);
        CHECK(res_ii <= 1e-6);
      }
    }
    // identity word: both sides are Q[w] itself
    const auto [zi, zii] = cohen_intertwine_check(PolyOp::identity(), kernel, u00);
    CHECK(zi <= 1e-12);
    CHECK(zii <= 1e-12);
  }
}

TEST_CASE("modified oscillator sums transport the hermite equality") {
  for (const char* kexpr : {"0", "0.5*xi*eta", "0.05*eta^3 + 0.1*xi"}) {
    const KernelPoly kernel = KernelPoly::parse(kexpr);
    const Grid1D grid = cohen_adequate_grid(kernel, kGrid);
    const auto block = hermite_block(grid, 4);
    const DerivedOps ops = derive_ops(kernel);
    double sum = 0.0;
    for (int k = 0; k <= 2; ++k) {
      const Field2D q = cohen_transform(block[0], block[static_cast<size_t>(k)], kernel);
      const double term = ltilde_form_grid(q, kernel);
      // the factored evaluation matches the generic quadratic form
      CHECK(std::abs(term - quadratic_form(ops.ltilde, q).real()) <= 1e-8 * std::max(1.0, term));
      sum += term;
    }
    CHECK(sum == doctest::Approx(9.0).epsilon(1e-6));
  }

  // example kernel: quadratic form on the ground state is 1
  const KernelPoly kernel = KernelPoly::parse("0.5*xi*eta");
  const Signal h0 = hermite_function(0, kGrid);
  const Field2D q0 = cohen_transform(h0, h0, kernel);
  CHECK(quadratic_form(derive_ops(kernel).ltilde, q0).real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("star operator bound against the half square") {
  const auto block = hermite_block(kGrid, 3);
  for (const char* kexpr : {"0", "0.5*xi*eta"}) {
    const KernelPoly kernel = KernelPoly::parse(kexpr);
    const DerivedOps ops = derive_ops(kernel);
    double sum = 0.0;
    for (int k = 0; k <= 2; ++k) {
      const Field2D q = cohen_transform(block[static_cast<size_t>(k)], block[static_cast<size_t>(k)], kernel);
      sum += quadratic_form(ops.lstar, q).real();
    }
    CHECK(sum == doctest::Approx(4.5).epsilon(1e-6));  // (n+1)^2/2 at n=2
  }
}

TEST_CASE("family sum reports") {
  const OrthonormalFamily hermites = hermite_family(16, 4);
  const KernelPoly kernel = KernelPoly::parse("0.5*xi*eta");

  const CohenSumReport mod = cohen_md_sum(hermites, hermites, kernel, 2, CohenBound::modified, kGrid);
  CHECK(mod.sum == doctest::Approx(9.0).epsilon(1e-5));
  CHECK(mod.terms.size() == 3);

  const CohenSumReport star0 = cohen_md_sum(hermites, hermites, kernel, 0, CohenBound::star, kGrid);
  CHECK(star0.sum == doctest::Approx(0.5).epsilon(1e-6));  // ground state alone

  const OrthonormalFamily random_fam = random_orthonormal_family(16, 3, 2024);
  const CohenSumReport rnd = cohen_md_sum(random_fam, random_fam, kernel, 2, CohenBound::modified, kGrid);
  CHECK(rnd.margin >= -1e-6);

  CHECK_THROWS_AS(cohen_md_sum(hermites, hermites, kernel, 4, CohenBound::modified, kGrid), Error);
}

TEST_CASE("bound margins over seeded random families") {
  const int K = 32;
  const Grid1D grid(12.0, 256);
  for (const char* kexpr : {"0", "0.5*xi*eta", "xi^2", "xi + eta^3"}) {
    const KernelPoly kernel = KernelPoly::parse(kexpr);
    double min_margin = 1e300;
    std::vector<double> sums(50);
    parallel_for(50, [&](int s) {
      const OrthonormalFamily fam = random_orthonormal_family(K, 3, 4000 + static_cast<std::uint64_t>(s));
      const Signal f = synthesize(fam.vectors[0], grid);
      double sum = 0.0;
      for (int k = 0; k <= 2; ++k)
        sum += ltilde_form_grid(cohen_transform(f, synthesize(fam.vectors[static_cast<size_t>(k)], grid), kernel),
                                kernel);
      sums[static_cast<size_t>(s)] = sum;
    });
    for (double s : sums) min_margin = std::min(min_margin, s - 9.0);
    CHECK(min_margin >= -1e-6);
  }
}
