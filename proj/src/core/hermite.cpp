#include "hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "rng.hpp"

namespace wigmd {

namespace {

void check_degree(const Grid1D& grid, int k) {
  if (k < 0) fail(Errc::invalid_argument, "Hermite degree must be nonnegative");
  if (!resolves_degree(grid, k)) fail(Errc::unresolved_degree, "unresolved degree");
}

}  // namespace

bool resolves_degree(const Grid1D& grid, int k) {
  const double reach = std::sqrt(2.0 * k + 1.0);
  return grid.half_width() >= reach + 4.0 && grid.spacing() <= std::numbers::pi / (std::numbers::sqrt2 * reach);
}

std::vector<Signal> hermite_block(const Grid1D& grid, int count) {
  if (count < 1) fail(Errc::invalid_argument, "need at least one Hermite function");
  check_degree(grid, count - 1);

  const int n = grid.size();
  std::vector<std::vector<cplx>> rows(static_cast<size_t>(count), std::vector<cplx>(static_cast<size_t>(n)));
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i);
    rows[0][static_cast<size_t>(i)] = c0 * std::exp(-0.5 * x * x);
  }
  if (count > 1)
    for (int i = 0; i < n; ++i)
      rows[1][static_cast<size_t>(i)] = std::numbers::sqrt2 * grid.node(i) * rows[0][static_cast<size_t>(i)];
  for (int k = 2; k < count; ++k) {
    const double a = std::sqrt(2.0 / k);
    const double b = std::sqrt((k - 1.0) / k);
    for (int i = 0; i < n; ++i) {
      const double x = grid.node(i);
      rows[static_cast<size_t>(k)][static_cast<size_t>(i)] =
          a * x * rows[static_cast<size_t>(k - 1)][static_cast<size_t>(i)] -
          b * rows[static_cast<size_t>(k - 2)][static_cast<size_t>(i)];
    }
  }

  std::vector<Signal> out;
  out.reserve(static_cast<size_t>(count));
  for (auto& row : rows) out.emplace_back(grid, std::move(row));
  return out;
}

Signal hermite_function(int k, const Grid1D& grid) {
  auto block = hermite_block(grid, k + 1);
  return std::move(block.back());
}

CoeffVector analyze(const Signal& f, int K) {
  if (K < 1) fail(Errc::invalid_argument, "truncation must be positive");
  check_degree(f.grid(), K - 1);
  const auto basis = hermite_block(f.grid(), K);
  CoeffVector a(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) a[static_cast<size_t>(k)] = inner_product(f, basis[static_cast<size_t>(k)]);
  return a;
}

Signal synthesize(const CoeffVector& a, const Grid1D& grid) {
  const int K = static_cast<int>(a.size());
  if (K < 1) fail(Errc::invalid_argument, "empty coefficient vector");
  check_degree(grid, K - 1);
  const auto basis = hermite_block(grid, K);
  std::vector<cplx> out(static_cast<size_t>(grid.size()));
  for (int k = 0; k < K; ++k) {
    const cplx c = a[static_cast<size_t>(k)];
    if (c == cplx{}) continue;
    const auto s = basis[static_cast<size_t>(k)].samples();
    for (int i = 0; i < grid.size(); ++i) out[static_cast<size_t>(i)] += c * s[static_cast<size_t>(i)];
  }
  return Signal(grid, std::move(out));
}

double l2_norm(const CoeffVector& a) {
  double acc = 0.0;
  for (const cplx& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

cplx coeff_dot(const CoeffVector& a, const CoeffVector& b) {
  if (a.size() != b.size()) fail(Errc::invalid_argument, "coefficient length mismatch");
  cplx acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  return acc;
}

OrthonormalFamily hermite_family(int K, int count) {
  return phased_hermite_family(K, count, std::vector<cplx>(static_cast<size_t>(count), cplx{1.0, 0.0}));
}

OrthonormalFamily phased_hermite_family(int K, int count, const std::vector<cplx>& phases) {
  if (count > K) fail(Errc::invalid_argument, "family larger than truncation");
  if (static_cast<int>(phases.size()) != count) fail(Errc::invalid_argument, "need one phase per member");
  OrthonormalFamily family;
  family.truncation = K;
  for (int k = 0; k < count; ++k) {
    CoeffVector v(static_cast<size_t>(K));
    v[static_cast<size_t>(k)] = phases[static_cast<size_t>(k)];
    family.vectors.push_back(std::move(v));
  }
  return family;
}

OrthonormalFamily random_orthonormal_family(int K, int count, std::uint64_t seed) {
  if (count > K) fail(Errc::invalid_argument, "family larger than truncation");
  if (count < 1) fail(Errc::invalid_argument, "family must be nonempty");
  Rng rng(seed);
  Eigen::MatrixXcd g(K, count);
  for (int j = 0; j < count; ++j)
    for (int i = 0; i < K; ++i) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(K, count);

  OrthonormalFamily family;
  family.truncation = K;
  for (int j = 0; j < count; ++j) {
    CoeffVector v(static_cast<size_t>(K));
    for (int i = 0; i < K; ++i) v[static_cast<size_t>(i)] = q(i, j);
    family.vectors.push_back(std::move(v));
  }
  return family;
}

CoeffVector random_unit_vector(int K, std::uint64_t seed) {
  Rng rng(seed);
  CoeffVector v(static_cast<size_t>(K));
  for (auto& e : v) e = rng.complex_gaussian();
  const double n = l2_norm(v);
  for (auto& e : v) e /= n;
  return v;
}

double gram_deviation(const OrthonormalFamily& family) {
  double worst = 0.0;
  for (int i = 0; i < family.count(); ++i)
    for (int j = 0; j <= i; ++j) {
      const cplx g = coeff_dot(family.vectors[static_cast<size_t>(i)], family.vectors[static_cast<size_t>(j)]);
      worst = std::max(worst, std::abs(g - (i == j ? cplx{1.0, 0.0} : cplx{})));
    }
  return worst;
}

}  // namespace wigmd
