#include "ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "expr_parser.hpp"
#include "fft.hpp"
#include "moments.hpp"

namespace wigmd {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005;

bool is_derivative(Gen g) { return g == Gen::D1 || g == Gen::D2; }

struct OpAlgebra {
  using Value = PolyOp;
  static Value number(double x) { return PolyOp::constant(x); }
  static Value imag() { return PolyOp::constant(cplx{0.0, 1.0}); }
  static Value symbol(std::string_view name) {
    if (name == "M1" || name == "m1") return PolyOp::generator(Gen::M1);
    if (name == "M2" || name == "m2") return PolyOp::generator(Gen::M2);
    if (name == "D1" || name == "d1") return PolyOp::generator(Gen::D1);
    if (name == "D2" || name == "d2") return PolyOp::generator(Gen::D2);
    fail(Errc::parse_error, "unknown operator symbol: " + std::string(name));
  }
  static Value add(Value a, const Value& b) { return a + b; }
  static Value sub(Value a, const Value& b) { return a - b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value neg(Value a) { return cplx{-1.0, 0.0} * a; }
  static Value pow(Value a, int e) { return a.pow(e); }
};

}  // namespace

PolyOp PolyOp::identity() { return constant(cplx{1.0, 0.0}); }

PolyOp PolyOp::constant(cplx c) {
  PolyOp op;
  if (c != cplx{}) op.monos_.push_back({c, {}});
  return op;
}

PolyOp PolyOp::generator(Gen g) {
  PolyOp op;
  op.monos_.push_back({cplx{1.0, 0.0}, {g}});
  return op;
}

PolyOp PolyOp::parse(std::string_view expr) { return detail::ExprParser<OpAlgebra>(expr).parse(); }

void PolyOp::simplify() {
  std::map<std::vector<Gen>, cplx> acc;
  for (const Monomial& m : monos_) acc[m.word] += m.coeff;
  monos_.clear();
  for (auto& [word, coeff] : acc)
    if (coeff != cplx{}) monos_.push_back({coeff, word});
}

PolyOp& PolyOp::operator+=(const PolyOp& o) {
  monos_.insert(monos_.end(), o.monos_.begin(), o.monos_.end());
  simplify();
  return *this;
}

PolyOp& PolyOp::operator-=(const PolyOp& o) {
  for (const Monomial& m : o.monos_) monos_.push_back({-m.coeff, m.word});
  simplify();
  return *this;
}

PolyOp operator+(PolyOp a, const PolyOp& b) { return a += b; }
PolyOp operator-(PolyOp a, const PolyOp& b) { return a -= b; }

PolyOp operator*(const PolyOp& a, const PolyOp& b) {
  PolyOp out;
  for (const Monomial& ma : a.monos_)
    for (const Monomial& mb : b.monos_) {
      Monomial m;
      m.coeff = ma.coeff * mb.coeff;
      m.word = ma.word;
      m.word.insert(m.word.end(), mb.word.begin(), mb.word.end());
      out.monos_.push_back(std::move(m));
    }
  out.simplify();
  return out;
}

PolyOp operator*(cplx scale, PolyOp a) {
  for (Monomial& m : a.monos_) m.coeff *= scale;
  a.simplify();
  return a;
}

PolyOp PolyOp::pow(int e) const {
  if (e < 0) fail(Errc::invalid_argument, "negative operator power");
  PolyOp out = identity();
  for (int i = 0; i < e; ++i) out = out * (*this);
  return out;
}

PolyOp PolyOp::substituted(const PolyOp& m1, const PolyOp& m2, const PolyOp& d1, const PolyOp& d2) const {
  auto image = [&](Gen g) -> const PolyOp& {
    switch (g) {
      case Gen::M1: return m1;
      case Gen::M2: return m2;
      case Gen::D1: return d1;
      default: return d2;
    }
  };
  PolyOp out;
  for (const Monomial& m : monos_) {
    PolyOp term = PolyOp::constant(m.coeff);
    for (Gen g : m.word) term = term * image(g);
    out += term;
  }
  return out;
}

int PolyOp::max_word_length() const {
  size_t worst = 0;
  for (const Monomial& m : monos_) worst = std::max(worst, m.word.size());
  return static_cast<int>(worst);
}

std::string PolyOp::to_string() const {
  if (monos_.empty()) return "0";
  std::string out;
  for (const Monomial& m : monos_) {
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(m.coeff.real()) + (m.coeff.imag() < 0 ? "" : "+") +
           std::to_string(m.coeff.imag()) + "i)";
    for (Gen g : m.word) {
      switch (g) {
        case Gen::M1: out += "*M1"; break;
        case Gen::M2: out += "*M2"; break;
        case Gen::D1: out += "*D1"; break;
        case Gen::D2: out += "*D2"; break;
      }
    }
  }
  return out;
}

const PolyOp& lhat_op() {
  static const PolyOp op = [] {
    const PolyOp m1 = PolyOp::generator(Gen::M1);
    const PolyOp m2 = PolyOp::generator(Gen::M2);
    const PolyOp d1 = PolyOp::generator(Gen::D1);
    const PolyOp d2 = PolyOp::generator(Gen::D2);
    return (m1 + cplx{0.5, 0.0} * d2).pow(2) + (cplx{0.5, 0.0} * d1 - m2).pow(2);
  }();
  return op;
}

Signal harmonic_oscillator(const Signal& g) {
  return apply_position(apply_position(g)) + apply_momentum(apply_momentum(g));
}

namespace {

// Applies one word right-to-left. Maximal runs of derivative generators share a
// single round trip through the dual grid of the axes involved.
Field2D apply_word(const std::vector<Gen>& word, const Field2D& field) {
  Field2D cur = field;
  const int n0 = cur.size_x();
  const int n1 = cur.size_y();
  const Grid1D dual0 = cur.grid().x.dual();
  const Grid1D dual1 = cur.grid().y.dual();

  int i = static_cast<int>(word.size()) - 1;
  while (i >= 0) {
    if (!is_derivative(word[static_cast<size_t>(i)])) {
      const bool first_axis = word[static_cast<size_t>(i)] == Gen::M1;
      for (int a = 0; a < n0; ++a) {
        const double xv = cur.grid().x.node(a);
        for (int b = 0; b < n1; ++b) cur.at(a, b) *= first_axis ? xv : cur.grid().y.node(b);
      }
      --i;
      continue;
    }
    int p1 = 0, p2 = 0;
    while (i >= 0 && is_derivative(word[static_cast<size_t>(i)])) {
      if (word[static_cast<size_t>(i)] == Gen::D1)
        ++p1;
      else
        ++p2;
      --i;
    }
    if (p1 > 0) fft::centered_dft_axis(cur.data(), n0, n1, 0, -1, 1.0);
    if (p2 > 0) fft::centered_dft_axis(cur.data(), n0, n1, 1, -1, 1.0);
    for (int a = 0; a < n0; ++a) {
      const double k1 = p1 > 0 ? std::pow(dual0.node(a), p1) : 1.0;
      for (int b = 0; b < n1; ++b) {
        const double k2 = p2 > 0 ? std::pow(dual1.node(b), p2) : 1.0;
        cur.at(a, b) *= k1 * k2;
      }
    }
    if (p2 > 0) fft::centered_dft_axis(cur.data(), n0, n1, 1, +1, 1.0 / n1);
    if (p1 > 0) fft::centered_dft_axis(cur.data(), n0, n1, 0, +1, 1.0 / n0);
  }
  return cur;
}

}  // namespace

Field2D apply_op(const PolyOp& op, const Field2D& field) {
  Field2D out(field.grid());
  for (const Monomial& m : op.monomials()) {
    const Field2D term = apply_word(m.word, field);
    for (size_t i = 0; i < out.count(); ++i) out.data()[i] += m.coeff * term.data()[i];
  }
  return out;
}

cplx quadratic_form(const PolyOp& op, const Field2D& field) {
  return moyal_product(apply_op(op, field), field);
}

double lhat_form_grid(const Field2D& field) {
  const int n0 = field.size_x();
  const int n1 = field.size_y();
  const Grid1D dual0 = field.grid().x.dual();
  const Grid1D dual1 = field.grid().y.dual();

  // (M1 + D2/2) F
  Field2D a1 = field;
  fft::centered_dft_axis(a1.data(), n0, n1, 1, -1, 1.0);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) a1.at(a, b) *= 0.5 * dual1.node(b);
  fft::centered_dft_axis(a1.data(), n0, n1, 1, +1, 1.0 / n1);
  for (int a = 0; a < n0; ++a) {
    const double xv = field.grid().x.node(a);
    for (int b = 0; b < n1; ++b) a1.at(a, b) += xv * field.at(a, b);
  }

  // (D1/2 - M2) F
  Field2D a2 = field;
  fft::centered_dft_axis(a2.data(), n0, n1, 0, -1, 1.0);
  for (int a = 0; a < n0; ++a) {
    const double kv = 0.5 * dual0.node(a);
    for (int b = 0; b < n1; ++b) a2.at(a, b) *= kv;
  }
  fft::centered_dft_axis(a2.data(), n0, n1, 0, +1, 1.0 / n0);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) a2.at(a, b) -= field.grid().y.node(b) * field.at(a, b);

  return a1.squared_norm() + a2.squared_norm();
}

CoeffMatrix wigner_coefficients(const Field2D& F, int J, int K) {
  const auto basis = hermite_block(F.grid().x, std::max(J, K));
  CoeffMatrix out;
  out.rows = J;
  out.cols = K;
  out.c.resize(static_cast<size_t>(J) * K);
  for (int j = 0; j < J; ++j)
    for (int k = 0; k < K; ++k)
      out.at(j, k) = moyal_product(F, cross_wigner(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(k)]));
  return out;
}

Field2D field_from_coefficients(const CoeffMatrix& c, const Grid1D& signal_grid) {
  const auto basis = hermite_block(signal_grid, std::max(c.rows, c.cols));
  Field2D out(Grid2D::wigner(signal_grid));
  for (int j = 0; j < c.rows; ++j)
    for (int k = 0; k < c.cols; ++k) {
      const cplx coeff = c.at(j, k);
      if (coeff == cplx{}) continue;
      const Field2D basis_field =
          cross_wigner(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(k)]);
      for (size_t i = 0; i < out.count(); ++i) out.data()[i] += coeff * basis_field.data()[i];
    }
  return out;
}

double spectral_lhat_form(const CoeffMatrix& c) {
  double acc = 0.0;
  for (int j = 0; j < c.rows; ++j)
    for (int k = 0; k < c.cols; ++k) acc += std::norm(c.at(j, k)) * (2.0 * k + 1.0);
  return acc;
}

double spectral_lhat_form(const CoeffVector& f, const CoeffVector& g) {
  double f2 = 0.0;
  for (const cplx& v : f) f2 += std::norm(v);
  double acc = 0.0;
  for (size_t k = 0; k < g.size(); ++k) acc += std::norm(g[k]) * (2.0 * static_cast<double>(k) + 1.0);
  return f2 * acc;
}

double intertwine_left_residual(const PolyOp& op, const Field2D& u) {
  const PolyOp m1 = PolyOp::generator(Gen::M1);
  const PolyOp m2 = PolyOp::generator(Gen::M2);
  const PolyOp d1 = PolyOp::generator(Gen::D1);
  const PolyOp d2 = PolyOp::generator(Gen::D2);
  const PolyOp sub = op.substituted(cplx{0.5, 0.0} * (m1 + m2), cplx{0.5, 0.0} * (d1 - d2), d1 + d2, m2 - m1);
  const Field2D lhs = apply_op(op, wig_transform(u));
  const Field2D rhs = wig_transform(apply_op(sub, u));
  return (lhs - rhs).norm();
}

double intertwine_right_residual(const PolyOp& op, const Field2D& u) {
  const PolyOp m1 = PolyOp::generator(Gen::M1);
  const PolyOp m2 = PolyOp::generator(Gen::M2);
  const PolyOp d1 = PolyOp::generator(Gen::D1);
  const PolyOp d2 = PolyOp::generator(Gen::D2);
  const PolyOp sub = op.substituted(m1 - cplx{0.5, 0.0} * d2, m1 + cplx{0.5, 0.0} * d2,
                                    cplx{0.5, 0.0} * d1 + m2, cplx{0.5, 0.0} * d1 - m2);
  const Field2D lhs = wig_transform(apply_op(op, u));
  const Field2D rhs = apply_op(sub, wig_transform(u));
  return (lhs - rhs).norm();
}

double lhat_wigner_identity_residual(const Signal& f, const Signal& g) {
  const Field2D lhs = apply_op(lhat_op(), cross_wigner(f, g));
  const Field2D rhs = cross_wigner(f, harmonic_oscillator(g));
  return (lhs - rhs).norm();
}

std::vector<IdentityCheck> bracket_identity_report(const Signal& f) {
  if (std::abs(f.norm() - 1.0) > 1e-8) fail(Errc::not_normalized, "not normalized");
  const MomentReport m = moments(f);
  const Field2D w = cross_wigner(f, f);
  const cplx half_i{0.0, 0.5};

  auto op = [](std::string_view s) { return PolyOp::parse(s); };
  std::vector<IdentityCheck> out;
  auto push = [&](std::string name, cplx lhs, cplx rhs) {
    out.push_back({std::move(name), lhs, rhs, std::abs(lhs - rhs)});
  };

  push("a: <M^2 f, f>", inner_product(apply_position(apply_position(f)), f), m.mu * m.mu + m.var);
  push("b: <D^2 f, f>", inner_product(apply_momentum(apply_momentum(f)), f), m.mu_hat * m.mu_hat + m.var_hat);
  push("c: <M1 W, W>", quadratic_form(op("M1"), w), m.mu);
  push("d: <M2 W, W>", quadratic_form(op("M2"), w), m.mu_hat);
  push("e: <D1 W, W>", quadratic_form(op("D1"), w), 0.0);
  push("f: <D2 W, W>", quadratic_form(op("D2"), w), 0.0);
  push("g: <D1^2 W, W>", quadratic_form(op("D1^2"), w), 2.0 * m.var_hat);
  push("h: <D2^2 W, W>", quadratic_form(op("D2^2"), w), 2.0 * m.var);
  push("i1: <M1 D1 W, W>", quadratic_form(op("M1*D1"), w), half_i);
  push("i2: <D1 M1 W, W>", quadratic_form(op("D1*M1"), w), -half_i);
  push("j1: <M2 D2 W, W>", quadratic_form(op("M2*D2"), w), half_i);
  push("j2: <D2 M2 W, W>", quadratic_form(op("D2*M2"), w), -half_i);
  push("k: <M1^2 W, W>", quadratic_form(op("M1^2"), w), m.mu * m.mu + 0.5 * m.var);
  push("l: <M2^2 W, W>", quadratic_form(op("M2^2"), w), m.mu_hat * m.mu_hat + 0.5 * m.var_hat);
  return out;
}

cplx weyl_matrix_element(const Field2D& F, const Signal& phi, const Signal& psi) {
  const Field2D w = cross_wigner(phi, psi);
  if (!(w.grid() == F.grid())) fail(Errc::grid_mismatch, "grid mismatch");
  cplx acc = 0.0;
  for (size_t i = 0; i < F.count(); ++i) acc += F.data()[i] * w.data()[i];
  return F.grid().cell_area() * acc / kSqrt2Pi;
}

}  // namespace wigmd
