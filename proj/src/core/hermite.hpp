#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"

namespace wigmd {

// A grid resolves Hermite degree k when L >= sqrt(2k+1)+4 and
// Delta <= pi/sqrt(2(2k+1)); outside that range the tails are clipped.
bool resolves_degree(const Grid1D& grid, int k);

// h_0..h_{count-1} by the normalized three-term recurrence
//   h_0 = pi^{-1/4} e^{-x^2/2},  h_1 = sqrt(2) x h_0,
//   h_k = sqrt(2/k) x h_{k-1} - sqrt((k-1)/k) h_{k-2}.
std::vector<Signal> hermite_block(const Grid1D& grid, int count);
Signal hermite_function(int k, const Grid1D& grid);

// Hermite coefficients a_k = <f, h_k>, k = 0..K-1.
using CoeffVector = std::vector<cplx>;

CoeffVector analyze(const Signal& f, int K);
Signal synthesize(const CoeffVector& a, const Grid1D& grid);

double l2_norm(const CoeffVector& a);
cplx coeff_dot(const CoeffVector& a, const CoeffVector& b);  // sum a conj(b)

struct OrthonormalFamily {
  int truncation = 0;                // K
  std::vector<CoeffVector> vectors;  // each of length K, pairwise orthonormal

  int count() const { return static_cast<int>(vectors.size()); }
};

OrthonormalFamily hermite_family(int K, int count);
// phases[k] multiplies h_k; used for equality-case tests
OrthonormalFamily phased_hermite_family(int K, int count, const std::vector<cplx>& phases);

// Columns of the Q factor of a seeded complex Gaussian K x count matrix.
OrthonormalFamily random_orthonormal_family(int K, int count, std::uint64_t seed);
CoeffVector random_unit_vector(int K, std::uint64_t seed);

double gram_deviation(const OrthonormalFamily& family);  // max |<v_i,v_j> - delta_ij|

}  // namespace wigmd
