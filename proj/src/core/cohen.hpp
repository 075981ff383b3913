#pragma once

#include <map>
#include <string_view>
#include <utility>

#include "ops.hpp"

namespace wigmd {

// Real polynomial P(xi, eta) on the dual of the Wigner plane; the Cohen kernel
// is sigma = F^{-1}(e^{-iP}), so the representation acts as the unimodular
// Fourier multiplier e^{-iP}. Total degree is capped (default 4): higher-degree
// phases oscillate beyond what the dual grid can carry.
class KernelPoly {
public:
  static constexpr int kMaxDegree = 4;

  // Text syntax: e.g. "0.5*xi*eta + eta^2". Complex coefficients are rejected.
  static KernelPoly parse(std::string_view expr);
  static KernelPoly zero() { return KernelPoly{}; }

  void add_term(int deg_xi, int deg_eta, double coeff);
  double eval(double xi, double eta) const;
  KernelPoly d_xi() const;
  KernelPoly d_eta() const;
  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<int, int>, double>& terms() const { return terms_; }

private:
  std::map<std::pair<int, int>, double> terms_;
};

// P evaluated at commuting operator arguments: sum c * X^i * Y^j.
PolyOp kernel_at_ops(const KernelPoly& poly, const PolyOp& x_arg, const PolyOp& y_arg);

// P1 = (i D1 P)(D1, D2), P2 = (i D2 P)(D1, D2), and the two derived operators
//   ltilde = (M1 + D2/2 - P1)^2 + (D1/2 - M2 + P2)^2   (bound (n+1)^2)
//   lstar  = (M1 - P1)^2 + (M2 - P2)^2                 (bound (n+1)^2 / 2)
struct DerivedOps {
  PolyOp p1;
  PolyOp p2;
  PolyOp ltilde;
  PolyOp lstar;
};

DerivedOps derive_ops(const KernelPoly& poly);

// Q[w] for a Wigner-plane field: F^{-1}(e^{-iP} F w). Exactly unimodular, so
// every Moyal product is preserved; P = 0 is the identity.
Field2D cohen_apply(const Field2D& wigner_field, const KernelPoly& poly);

// Q(f,g) = cohen_apply(W(f,g)).
Field2D cohen_transform(const Signal& f, const Signal& g, const KernelPoly& poly);

// Residuals of the two kernel intertwining identities for B acting on a
// tensor-grid field w:
//   (i)  Q[B w] = B(M1-D2/2-P1, M1+D2/2-P1, D1/2+M2-P2, D1/2-M2+P2) Q[w]
//   (ii) B Q[w] = Q[B((M1+M2)/2+P1*, (D1-D2)/2+P2*, D1+D2, M2-M1) w]
// with P1* = (i D1 P)(D1+D2, M2-M1) and P2* likewise (the arguments commute).
std::pair<double, double> cohen_intertwine_check(const PolyOp& b, const KernelPoly& poly, const Field2D& w);

// <ltilde Q, Q> evaluated on the grid as ||A1 Q||^2 + ||A2 Q||^2 (both factors
// self-adjoint); matches quadratic_form(derive_ops(P).ltilde, Q) up to rounding.
double ltilde_form_grid(const Field2D& q, const KernelPoly& poly);

struct CohenSumReport {
  int n = 0;
  std::vector<double> terms;
  double sum = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

enum class CohenBound {
  modified,  // sum <ltilde Q(f_0, g_k), Q(f_0, g_k)> against (n+1)^2
  star,      // sum <lstar Q(g_k, g_k), Q(g_k, g_k)> against (n+1)^2 / 2
};

// Partial sums of the modified-oscillator quadratic forms over a family,
// evaluated on the grid.
CohenSumReport cohen_md_sum(const OrthonormalFamily& family_f, const OrthonormalFamily& family_g,
                            const KernelPoly& poly, int n, CohenBound variant, const Grid1D& grid);

// Smallest grid on which the kernel's checks resolve. The multiplier e^{-iP}
// transports phase-space mass by the group delay (dP/dxi along x, dP/deta
// along the frequency axis), so the windows must exceed the content reach plus
// the delay over the occupied dual box; otherwise mass wraps around the torus
// and position operators see it at the wrong coordinates. Returns the base
// grid whenever it already suffices.
Grid1D cohen_adequate_grid(const KernelPoly& poly, const Grid1D& base, int content_degree = 8);

}  // namespace wigmd
