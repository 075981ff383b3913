#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "hermite.hpp"

namespace wigmd {

// K x K complex matrix V in Hermite coordinates with columns u_k = sum_j V_jk h_j,
// i.e. the truncated matrix of U^{-1} where U(u_k) = h_k. Operator norms come
// from the extreme singular values and are truncated estimates: the report layer
// flags them when they have not converged in K.
class OperatorMatrix {
public:
  OperatorMatrix(int truncation, std::vector<cplx> row_major);

  static OperatorMatrix identity(int truncation);
  // cycles the given values down the diagonal
  static OperatorMatrix diagonal(int truncation, std::span<const double> cycle);
  // V = Q1 diag(sigma) Q2* with log-spaced sigma, condition number exactly `cond`
  static OperatorMatrix random_conditioned(int truncation, double cond, std::uint64_t seed);
  // "identity" | "diag:v1,v2,..." | "random:cond=<c>,seed=<s>"
  static OperatorMatrix from_generator(int truncation, std::string_view spec);
  // row-major re,im pairs, one matrix row per CSV line
  static OperatorMatrix from_csv_text(const std::string& text);

  int truncation() const { return truncation_; }
  cplx at(int j, int k) const { return data_[static_cast<size_t>(j) * truncation_ + k]; }
  CoeffVector column(int k) const;
  const std::vector<cplx>& data() const { return data_; }

  double norm_u_inverse() const { return sigma_max_; }       // ||U^{-1}||
  double norm_u() const { return 1.0 / sigma_min_; }         // ||U||
  double sigma_min() const { return sigma_min_; }
  bool is_singular() const;

  // true when the norm estimates move by less than 1% between the K/2 and K
  // leading principal truncations
  bool norm_estimates_converged() const;

private:
  int truncation_;
  std::vector<cplx> data_;
  double sigma_max_ = 0.0;
  double sigma_min_ = 0.0;
};

// Columns of V as coefficient vectors; rejects singular matrices.
std::vector<CoeffVector> riesz_family(const OperatorMatrix& v);

// floor with a relative 1e-9 snap-to-integer guard, so exactly-integral
// arguments are not dropped by one ulp of rounding.
double integer_part(double x);

struct RieszBoundReport {
  int n = 0;
  double lhs = 0.0;     // spectral sum of <L̂ W(u_i, v_k), W(u_i, v_k)>, k <= n
  double rhs = 0.0;     // (||U2^-1||^2 / ||U1||^2) * floor((n+1)/(||U2^-1||^2 ||U2||^2))^2
  long long m = -1;     // floor index entering rhs, minus one
  double margin = 0.0;  // lhs - rhs
  bool norms_converged = true;
};

RieszBoundReport riesz_bound(const OperatorMatrix& v_u, const OperatorMatrix& v_v, int n, int i = 0);

// Mean-dispersion bound for a Riesz family: lhs sums the four-moment quantity
// of each u_k (spectral evaluation divided by ||u_k||^4), rhs is the Riesz
// floor bound with U1 = U2 = U.
RieszBoundReport riesz_md_bound(const OperatorMatrix& v, int n);

}  // namespace wigmd
