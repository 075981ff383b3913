#pragma once

#include <vector>

#include "grid.hpp"

namespace wigmd {

// Frequency axis of the discrete Wigner plane: spacing pi/(N*Delta) (half the
// signal dual spacing, because the Wigner t-lattice has step 2*Delta), N nodes
// centered at zero.
Grid1D wigner_xi_axis(const Grid1D& signal_grid);

struct Grid2D {
  Grid1D x;
  Grid1D y;

  static Grid2D wigner(const Grid1D& signal_grid) { return {signal_grid, wigner_xi_axis(signal_grid)}; }
  static Grid2D tensor(const Grid1D& signal_grid) { return {signal_grid, signal_grid}; }

  double cell_area() const { return x.spacing() * y.spacing(); }
  friend bool operator==(const Grid2D& a, const Grid2D& b) { return a.x == b.x && a.y == b.y; }
};

// Complex samples on a Grid2D, row-major with the x index first.
class Field2D {
public:
  explicit Field2D(Grid2D grid);
  Field2D(Grid2D grid, std::vector<cplx> samples);

  const Grid2D& grid() const { return grid_; }
  int size_x() const { return grid_.x.size(); }
  int size_y() const { return grid_.y.size(); }

  cplx at(int ix, int iy) const { return samples_[static_cast<size_t>(ix) * size_y() + iy]; }
  cplx& at(int ix, int iy) { return samples_[static_cast<size_t>(ix) * size_y() + iy]; }
  const cplx* data() const { return samples_.data(); }
  cplx* data() { return samples_.data(); }
  size_t count() const { return samples_.size(); }

  double squared_norm() const;  // cell_area * sum |samples|^2
  double norm() const;

private:
  Grid2D grid_;
  std::vector<cplx> samples_;
};

Field2D operator+(const Field2D& a, const Field2D& b);
Field2D operator-(const Field2D& a, const Field2D& b);
Field2D operator*(cplx scale, const Field2D& f);

double max_abs_diff(const Field2D& a, const Field2D& b);
double max_abs_imag(const Field2D& f);

// f (x) conj(g) on the tensor grid.
Field2D outer_product(const Signal& f, const Signal& g);

// W(f,g)(x_n, xi_m) = (2*Delta/sqrt(2*pi)) * sum_q f(x_n+q*Delta) conj(g(x_n-q*Delta)) e^{-2i q Delta xi_m}
// with zero extension outside the grid; the t-lattice t = 2*q*Delta keeps both
// arguments on-grid without interpolation.
Field2D cross_wigner(const Signal& f, const Signal& g);

// Wig[u] = F_2 tau_s u for u sampled on the tensor grid; cross_wigner(f,g) is
// bit-identical to wig_transform(outer_product(f,g)).
Field2D wig_transform(const Field2D& u);

// Inverse of wig_transform. The parity-matched sublattice ((x+t)/2 on-grid) is
// reconstructed exactly; the complementary sublattice is filled by band-limited
// completion (even-sublattice samples determine everything inside the dual
// diamond |w1|+|w2| < pi/Delta). Round-trip accuracy, not bit-exact inversion,
// is the contract.
Field2D wig_inverse(const Field2D& F);

// cell_area * sum F conj(G); for Wigner pairs this is Moyal's formula.
cplx moyal_product(const Field2D& F, const Field2D& G);

// max |W(f_hat,g_hat)(x,xi) - W(f,g)(-xi,x)| over the lattice points shared by
// both Wigner planes (the 90-degree rotation is exact on indices there).
double fourier_rotation_residual(const Signal& f, const Signal& g);

}  // namespace wigmd
