#pragma once

#include <complex>

namespace wigmd::fft {

using cplx = std::complex<double>;

// In-place unscaled complex DFT of length n: out_m = sum_n in_n e^{sign*2*pi*i*n*m/n}.
// sign = -1 is the forward direction. n must be a power of two.
void dft(cplx* data, int n, int sign);

// Transform of an n0 x n1 row-major array along one axis, every line independently.
void dft_axis(cplx* data, int n0, int n1, int axis, int sign);

// Phase-corrected transform matching a symmetric grid with N multiple of 4:
//   out_m = scale * sum_n in_n e^{sign * i * x_n * k_m},
// where x_n = (n - N/2) h and k_m = (m - N/2) * 2*pi/(N h). The grid symmetry
// reduces to a plain DFT conjugated by (-1)^n pre/post phases.
void centered_dft(cplx* data, int n, int sign, double scale);

// Same, along one axis of an n0 x n1 row-major array.
void centered_dft_axis(cplx* data, int n0, int n1, int axis, int sign, double scale);

}  // namespace wigmd::fft
