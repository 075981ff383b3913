#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hermite.hpp"
#include "wigner.hpp"

namespace wigmd {

// Generators of the polynomial operator algebra on the phase plane:
// M1 = multiply by x, M2 = multiply by xi, D1/D2 = -i d/dx, -i d/dxi.
enum class Gen : std::uint8_t { M1, M2, D1, D2 };

// One word with a coefficient; the word acts right-to-left (composition order),
// so {M1, D1} is M1∘D1 and differs from {D1, M1}.
struct Monomial {
  cplx coeff;
  std::vector<Gen> word;
};

class PolyOp {
public:
  PolyOp() = default;  // the zero operator
  static PolyOp identity();
  static PolyOp constant(cplx c);
  static PolyOp generator(Gen g);

  // Text syntax: e.g. "(M1 + 0.5*D2)^2 + (0.5*D1 - M2)^2", with non-commutative
  // expansion of products and integer powers.
  static PolyOp parse(std::string_view expr);

  PolyOp& operator+=(const PolyOp& o);
  PolyOp& operator-=(const PolyOp& o);
  PolyOp pow(int e) const;

  // Replaces each generator by the given operator and expands.
  PolyOp substituted(const PolyOp& m1, const PolyOp& m2, const PolyOp& d1, const PolyOp& d2) const;

  const std::vector<Monomial>& monomials() const { return monos_; }
  bool empty() const { return monos_.empty(); }
  int max_word_length() const;
  std::string to_string() const;

  friend PolyOp operator+(PolyOp a, const PolyOp& b);
  friend PolyOp operator-(PolyOp a, const PolyOp& b);
  friend PolyOp operator*(const PolyOp& a, const PolyOp& b);  // composition
  friend PolyOp operator*(cplx scale, PolyOp a);

private:
  void simplify();
  std::vector<Monomial> monos_;
};

// (M1 + D2/2)^2 + (D1/2 - M2)^2, expanded.
const PolyOp& lhat_op();
// Signal-side harmonic oscillator (M^2 + D^2) g.
Signal harmonic_oscillator(const Signal& g);

// Applies generators right-to-left; derivatives are Fourier multipliers on the
// dual grid of each axis, consecutive derivatives share one transform pass.
Field2D apply_op(const PolyOp& op, const Field2D& field);

// <op F, F> = moyal_product(apply_op(op, F), F).
cplx quadratic_form(const PolyOp& op, const Field2D& field);

// Grid evaluation of <L̂F, F> as ||(M1+D2/2)F||^2 + ||(D1/2-M2)F||^2; both
// factors are self-adjoint, so this matches quadratic_form(lhat_op(), F) up to
// rounding at a fraction of the transforms. Used by the harness sweeps.
double lhat_form_grid(const Field2D& field);

// Coefficients of a phase-space field in the Hermite-Wigner basis W(h_j, h_k).
struct CoeffMatrix {
  int rows = 0;  // j range
  int cols = 0;  // k range
  std::vector<cplx> c;

  cplx at(int j, int k) const { return c[static_cast<size_t>(j) * cols + k]; }
  cplx& at(int j, int k) { return c[static_cast<size_t>(j) * cols + k]; }
};

CoeffMatrix wigner_coefficients(const Field2D& F, int J, int K);
Field2D field_from_coefficients(const CoeffMatrix& c, const Grid1D& signal_grid);

// Spectral quadratic form of L̂: sum |c_jk|^2 (2k+1). Exact in coefficient
// arithmetic; at finite truncation the value is a certified lower estimate
// (a finite truncation can never witness divergence).
double spectral_lhat_form(const CoeffMatrix& c);
// Same for F = W(f, g) via the factorization c_jk = <f,h_j> conj(<g,h_k>).
double spectral_lhat_form(const CoeffVector& f, const CoeffVector& g);

// Residuals of the two intertwining identities between operators on the Wigner
// side and on the tensor side, for u on the tensor grid:
//   left:  || P(M1,M2,D1,D2) Wig[u] - Wig[P((M1+M2)/2, (D1-D2)/2, D1+D2, M2-M1) u] ||
//   right: || Wig[P(M1,M2,D1,D2) u] - P(M1-D2/2, M1+D2/2, D1/2+M2, D1/2-M2) Wig[u] ||
double intertwine_left_residual(const PolyOp& op, const Field2D& u);
double intertwine_right_residual(const PolyOp& op, const Field2D& u);

// || L̂ W(f,g) - W(f, (M^2+D^2) g) ||_2
double lhat_wigner_identity_residual(const Signal& f, const Signal& g);

struct IdentityCheck {
  std::string name;
  cplx lhs;
  cplx rhs;
  double residual;
};

// The 14 bracket identities relating <op W(f), W(f)> (and the two signal-side
// brackets) to means and variances, for unit-norm f.
std::vector<IdentityCheck> bracket_identity_report(const Signal& f);

// <W_F phi, psi> = (1/sqrt(2*pi)) * cellarea * sum F * W(phi, psi)
// (no conjugation on W, matching the defining display).
cplx weyl_matrix_element(const Field2D& F, const Signal& phi, const Signal& psi);

}  // namespace wigmd
