#pragma once

#include <complex>
#include <span>
#include <vector>

#include "errors.hpp"

namespace wigmd {

using cplx = std::complex<double>;

// Uniform symmetric lattice x_n = -L + n*Delta, n = 0..N-1, Delta = 2L/N.
// N must be a power of two, at least 8, so the dual grid (spacing 2*pi/(N*Delta),
// covering [-pi/Delta, pi/Delta)) shares the same centered-index layout.
class Grid1D {
public:
  Grid1D(double half_width, int size);

  double half_width() const { return half_width_; }
  int size() const { return size_; }
  double spacing() const { return 2.0 * half_width_ / size_; }
  double node(int i) const { return (i - size_ / 2) * spacing(); }
  Grid1D dual() const;

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.half_width_ == b.half_width_ && a.size_ == b.size_;
  }

private:
  double half_width_;
  int size_;
};

// Complex samples of a function on a Grid1D. Immutable after construction.
class Signal {
public:
  Signal(Grid1D grid, std::vector<cplx> samples);
  static Signal zero(const Grid1D& grid);

  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  cplx operator[](int i) const { return samples_[static_cast<size_t>(i)]; }
  int size() const { return grid_.size(); }

  double squared_norm() const;  // Delta * sum |samples|^2
  double norm() const;

private:
  Grid1D grid_;
  std::vector<cplx> samples_;
};

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(cplx scale, const Signal& f);

// f_hat(k_m) = (Delta/sqrt(2*pi)) sum_n f(x_n) e^{-i x_n k_m}, sampled on grid().dual().
// Unitary: the discrete Parseval identity holds exactly up to rounding.
Signal fourier_transform(const Signal& f);
Signal inverse_fourier_transform(const Signal& f);

// Delta * sum f * conj(g); conjugate-linear in the second argument.
cplx inner_product(const Signal& f, const Signal& g);

Signal apply_position(const Signal& f);  // multiply by x_n
Signal apply_momentum(const Signal& f);  // D f = -i f', Fourier multiplier k on the dual grid

double max_abs_diff(const Signal& a, const Signal& b);

// Relative energy in |x| >= 0.9 L; used for out-of-band quality warnings.
double out_of_band_fraction(const Signal& f);

}  // namespace wigmd
