#include "grid.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace wigmd {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_same_grid(const Signal& a, const Signal& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
}

}  // namespace

Grid1D::Grid1D(double half_width, int size) : half_width_(half_width), size_(size) {
  if (!(half_width > 0.0)) fail(Errc::invalid_argument, "grid half-width must be positive");
  if (size < 8 || !power_of_two(size)) fail(Errc::invalid_argument, "grid size must be a power of two, at least 8");
}

Grid1D Grid1D::dual() const { return Grid1D(std::numbers::pi / spacing(), size_); }

Signal::Signal(Grid1D grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    fail(Errc::invalid_argument, "sample count does not match grid size");
}

Signal Signal::zero(const Grid1D& grid) {
  return Signal(grid, std::vector<cplx>(static_cast<size_t>(grid.size())));
}

double Signal::squared_norm() const {
  double acc = 0.0;
  for (const cplx& v : samples_) acc += std::norm(v);
  return grid_.spacing() * acc;
}

double Signal::norm() const { return std::sqrt(squared_norm()); }

Signal operator+(const Signal& a, const Signal& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  std::vector<cplx> out(a.samples().begin(), a.samples().end());
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] += b[i];
  return Signal(a.grid(), std::move(out));
}

Signal operator-(const Signal& a, const Signal& b) {
  if (!(a.grid() == b.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  std::vector<cplx> out(a.samples().begin(), a.samples().end());
  for (int i = 0; i < a.size(); ++i) out[static_cast<size_t>(i)] -= b[i];
  return Signal(a.grid(), std::move(out));
}

Signal operator*(cplx scale, const Signal& f) {
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  for (cplx& v : out) v *= scale;
  return Signal(f.grid(), std::move(out));
}

Signal fourier_transform(const Signal& f) {
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  fft::centered_dft(out.data(), f.size(), -1, f.grid().spacing() / kSqrt2Pi);
  return Signal(f.grid().dual(), std::move(out));
}

Signal inverse_fourier_transform(const Signal& f) {
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  fft::centered_dft(out.data(), f.size(), +1, f.grid().spacing() / kSqrt2Pi);
  return Signal(f.grid().dual(), std::move(out));
}

cplx inner_product(const Signal& f, const Signal& g) {
  check_same_grid(f, g);
  cplx acc = 0.0;
  for (int i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return f.grid().spacing() * acc;
}

Signal apply_position(const Signal& f) {
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  for (int i = 0; i < f.size(); ++i) out[static_cast<size_t>(i)] *= f.grid().node(i);
  return Signal(f.grid(), std::move(out));
}

Signal apply_momentum(const Signal& f) {
  const Grid1D dual = f.grid().dual();
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  // D = F^{-1} k F; the scale factors of the two passes cancel to 1/N.
  fft::centered_dft(out.data(), f.size(), -1, 1.0);
  for (int m = 0; m < f.size(); ++m) out[static_cast<size_t>(m)] *= dual.node(m);
  fft::centered_dft(out.data(), f.size(), +1, 1.0 / f.size());
  return Signal(f.grid(), std::move(out));
}

double max_abs_diff(const Signal& a, const Signal& b) {
  check_same_grid(a, b);
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double out_of_band_fraction(const Signal& f) {
  const double cutoff = 0.9 * f.grid().half_width();
  double outer = 0.0, total = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double e = std::norm(f[i]);
    total += e;
    if (std::abs(f.grid().node(i)) >= cutoff) outer += e;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace wigmd
