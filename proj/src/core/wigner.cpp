#include "wigner.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace wigmd {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005;

void check_same_grid(const Field2D& a, const Field2D& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
}

// Shared kernel of cross_wigner and wig_transform. u_at(a, b) samples the
// two-variable function at tensor indices (a, b); out-of-grid pairs are zero.
template <class U>
Field2D wig_impl(const Grid1D& grid, U&& u_at) {
  const int n = grid.size();
  Field2D out(Grid2D::wigner(grid));
  const double scale = 2.0 * grid.spacing() / kSqrt2Pi;
  std::vector<cplx> line(static_cast<size_t>(n));
  for (int ix = 0; ix < n; ++ix) {
    std::fill(line.begin(), line.end(), cplx{});
    const int reach = std::min(ix, n - 1 - ix);
    for (int q = -reach; q <= reach; ++q) {
      // e^{-2 i q Delta xi_m} = (-1)^q e^{-2 pi i q m / N} on the xi lattice
      const cplx v = u_at(ix + q, ix - q);
      line[static_cast<size_t>((q + n) % n)] = (q & 1) ? -v : v;
    }
    fft::dft(line.data(), n, -1);
    for (int m = 0; m < n; ++m) out.at(ix, m) = scale * line[static_cast<size_t>(m)];
  }
  return out;
}

}  // namespace

Grid1D wigner_xi_axis(const Grid1D& signal_grid) {
  return Grid1D(0.5 * std::numbers::pi / signal_grid.spacing(), signal_grid.size());
}

Field2D::Field2D(Grid2D grid)
    : grid_(grid), samples_(static_cast<size_t>(grid.x.size()) * static_cast<size_t>(grid.y.size())) {}

Field2D::Field2D(Grid2D grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != static_cast<size_t>(grid_.x.size()) * static_cast<size_t>(grid_.y.size()))
    fail(Errc::invalid_argument, "sample count does not match grid");
}

double Field2D::squared_norm() const {
  double acc = 0.0;
  for (const cplx& v : samples_) acc += std::norm(v);
  return grid_.cell_area() * acc;
}

double Field2D::norm() const { return std::sqrt(squared_norm()); }

Field2D operator+(const Field2D& a, const Field2D& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  Field2D out = a;
  for (size_t i = 0; i < out.count(); ++i) out.data()[i] += b.data()[i];
  return out;
}

Field2D operator-(const Field2D& a, const Field2D& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  Field2D out = a;
  for (size_t i = 0; i < out.count(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

Field2D operator*(cplx scale, const Field2D& f) {
  Field2D out = f;
  for (size_t i = 0; i < out.count(); ++i) out.data()[i] *= scale;
  return out;
}

double max_abs_diff(const Field2D& a, const Field2D& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.count(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

double max_abs_imag(const Field2D& f) {
  double worst = 0.0;
  for (size_t i = 0; i < f.count(); ++i) worst = std::max(worst, std::abs(f.data()[i].imag()));
  return worst;
}

Field2D outer_product(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  Field2D out(Grid2D::tensor(f.grid()));
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < f.size(); ++b) out.at(a, b) = f[a] * std::conj(g[b]);
  return out;
}

Field2D cross_wigner(const Signal& f, const Signal& g) {
  if (!(f.grid() == g.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  const auto fs = f.samples();
  const auto gs = g.samples();
  return wig_impl(f.grid(), [&](int a, int b) { return fs[static_cast<size_t>(a)] * std::conj(gs[static_cast<size_t>(b)]); });
}

Field2D wig_transform(const Field2D& u) {
  if (!(u.grid().x == u.grid().y)) fail(Errc::grid_mismatch, "wig_transform expects a tensor-grid field");
  return wig_impl(u.grid().x, [&](int a, int b) { return u.at(a, b); });
}

Field2D wig_inverse(const Field2D& F) {
  const Grid1D& g = F.grid().x;
  if (!(F.grid() == Grid2D::wigner(g))) fail(Errc::grid_mismatch, "wig_inverse expects a Wigner-grid field");
  const int n = g.size();
  const double scale = kSqrt2Pi / (2.0 * g.spacing());

  // Parity-matched sublattice: exact inversion of the per-row transform.
  Field2D u(Grid2D::tensor(g));
  std::vector<cplx> line(static_cast<size_t>(n));
  for (int ix = 0; ix < n; ++ix) {
    for (int m = 0; m < n; ++m) line[static_cast<size_t>(m)] = F.at(ix, m);
    fft::dft(line.data(), n, +1);
    const int reach = std::min(ix, n - 1 - ix);
    for (int q = -reach; q <= reach; ++q) {
      const cplx z = line[static_cast<size_t>((q + n) % n)] / static_cast<double>(n);
      u.at(ix + q, ix - q) = ((q & 1) ? -scale : scale) * z;
    }
  }

  // Fill the complementary sublattice by band-limited completion: the even
  // sublattice's spectrum is (U + alias)/2 with the alias shifted by (N/2, N/2),
  // so masking to the dual diamond |p|+|q| <= N/2 recovers U.
  std::vector<cplx> spec(u.data(), u.data() + u.count());
  fft::dft_axis(spec.data(), n, n, 1, -1);
  fft::dft_axis(spec.data(), n, n, 0, -1);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n; ++i) {
    const int p = (i < n / 2) ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int q = (j < n / 2) ? j : j - n;
      const int taxi = std::abs(p) + std::abs(q);
      double w = 2.0;
      if (taxi > n / 2)
        w = 0.0;
      else if (taxi == n / 2)
        w = 1.0;
      spec[static_cast<size_t>(i) * n + j] *= w * inv_n2;
    }
  }
  fft::dft_axis(spec.data(), n, n, 0, +1);
  fft::dft_axis(spec.data(), n, n, 1, +1);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a + b) & 1) u.at(a, b) = spec[static_cast<size_t>(a) * n + b];
  return u;
}

cplx moyal_product(const Field2D& F, const Field2D& G) {
  check_same_grid(F, G);
  cplx acc = 0.0;
  for (size_t i = 0; i < F.count(); ++i) acc += F.data()[i] * std::conj(G.data()[i]);
  return F.grid().cell_area() * acc;
}

double fourier_rotation_residual(const Signal& f, const Signal& g) {
  const int n = f.grid().size();
  const Field2D w = cross_wigner(f, g);
  const Field2D w_hat = cross_wigner(fourier_transform(f), fourier_transform(g));

  // Shared lattice: the (x, xi) points of the transformed plane whose rotation
  // (-xi, x) lands on the original plane. With x = (ix - N/2) * 2*pi/(N*Delta)
  // and xi = (m - N/2) * Delta/2, that needs m - N/2 even and N/4 <= ix < 3N/4.
  double worst = 0.0;
  for (int ix = n / 4; ix < 3 * n / 4; ++ix) {
    const int iy_rot = 2 * ix - n / 2;  // index of x on the original xi axis
    for (int m = 0; m < n; m += 2) {
      const int s = (m - n / 2) / 2;
      const int ix_rot = n / 2 - s;  // index of -xi on the original x axis
      if (ix_rot < 0 || ix_rot >= n) continue;
      worst = std::max(worst, std::abs(w_hat.at(ix, m) - w.at(ix_rot, iy_rot)));
    }
  }
  return worst;
}

}  // namespace wigmd
