#include "cohen.hpp"

#include <cmath>
#include <numbers>

#include "expr_parser.hpp"
#include "fft.hpp"

namespace wigmd {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005;

struct KernelAlgebra {
  using Value = KernelPoly;
  static Value number(double x) {
    Value v;
    v.add_term(0, 0, x);
    return v;
  }
  static Value imag() { fail(Errc::kernel_not_real, "kernel not real"); }
  static Value symbol(std::string_view name) {
    Value v;
    if (name == "xi")
      v.add_term(1, 0, 1.0);
    else if (name == "eta")
      v.add_term(0, 1, 1.0);
    else
      fail(Errc::parse_error, "unknown kernel symbol: " + std::string(name));
    return v;
  }
  static Value add(Value a, const Value& b) {
    for (const auto& [key, c] : b.terms()) a.add_term(key.first, key.second, c);
    return a;
  }
  static Value sub(Value a, const Value& b) {
    for (const auto& [key, c] : b.terms()) a.add_term(key.first, key.second, -c);
    return a;
  }
  static Value mul(const Value& a, const Value& b) {
    Value out;
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }
  static Value neg(Value a) {
    Value out;
    for (const auto& [key, c] : a.terms()) out.add_term(key.first, key.second, -c);
    return out;
  }
  static Value pow(Value a, int e) {
    Value out = number(1.0);
    for (int i = 0; i < e; ++i) out = mul(out, a);
    return out;
  }
};

// e^{-iP} sampled on the dual lattice of the field's grid.
std::vector<cplx> phase_multiplier(const Field2D& field, const KernelPoly& poly) {
  const Grid1D dual0 = field.grid().x.dual();
  const Grid1D dual1 = field.grid().y.dual();
  const int n0 = field.size_x(), n1 = field.size_y();
  std::vector<cplx> mult(static_cast<size_t>(n0) * n1);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      const double p = poly.eval(dual0.node(a), dual1.node(b));
      mult[static_cast<size_t>(a) * n1 + b] = cplx{std::cos(p), -std::sin(p)};
    }
  return mult;
}

void forward_2d(Field2D& f) {
  fft::centered_dft_axis(f.data(), f.size_x(), f.size_y(), 0, -1, f.grid().x.spacing() / kSqrt2Pi);
  fft::centered_dft_axis(f.data(), f.size_x(), f.size_y(), 1, -1, f.grid().y.spacing() / kSqrt2Pi);
}

void inverse_2d(Field2D& f) {
  fft::centered_dft_axis(f.data(), f.size_x(), f.size_y(), 0, +1, f.grid().x.dual().spacing() / kSqrt2Pi);
  fft::centered_dft_axis(f.data(), f.size_x(), f.size_y(), 1, +1, f.grid().y.dual().spacing() / kSqrt2Pi);
}

}  // namespace

KernelPoly KernelPoly::parse(std::string_view expr) {
  KernelPoly p = detail::ExprParser<KernelAlgebra>(expr).parse();
  if (p.total_degree() > kMaxDegree) fail(Errc::out_of_range, "kernel degree exceeds cap");
  return p;
}

void KernelPoly::add_term(int deg_xi, int deg_eta, double coeff) {
  if (deg_xi < 0 || deg_eta < 0) fail(Errc::invalid_argument, "negative kernel exponent");
  if (deg_xi + deg_eta > kMaxDegree) fail(Errc::out_of_range, "kernel degree exceeds cap");
  auto& slot = terms_[{deg_xi, deg_eta}];
  slot += coeff;
  if (slot == 0.0) terms_.erase({deg_xi, deg_eta});
}

double KernelPoly::eval(double xi, double eta) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) acc += c * std::pow(xi, key.first) * std::pow(eta, key.second);
  return acc;
}

KernelPoly KernelPoly::d_xi() const {
  KernelPoly out;
  for (const auto& [key, c] : terms_)
    if (key.first > 0) out.add_term(key.first - 1, key.second, c * key.first);
  return out;
}

KernelPoly KernelPoly::d_eta() const {
  KernelPoly out;
  for (const auto& [key, c] : terms_)
    if (key.second > 0) out.add_term(key.first, key.second - 1, c * key.second);
  return out;
}

int KernelPoly::total_degree() const {
  int deg = 0;
  for (const auto& [key, c] : terms_) deg = std::max(deg, key.first + key.second);
  return deg;
}

PolyOp kernel_at_ops(const KernelPoly& poly, const PolyOp& x_arg, const PolyOp& y_arg) {
  PolyOp out;
  for (const auto& [key, c] : poly.terms())
    out += cplx{c, 0.0} * (x_arg.pow(key.first) * y_arg.pow(key.second));
  return out;
}

DerivedOps derive_ops(const KernelPoly& poly) {
  if (poly.total_degree() > KernelPoly::kMaxDegree) fail(Errc::out_of_range, "kernel degree exceeds cap");
  const PolyOp m1 = PolyOp::generator(Gen::M1);
  const PolyOp m2 = PolyOp::generator(Gen::M2);
  const PolyOp d1 = PolyOp::generator(Gen::D1);
  const PolyOp d2 = PolyOp::generator(Gen::D2);
  const cplx half{0.5, 0.0};

  DerivedOps out;
  // (i D1 P)(D1, D2) is the formal xi-derivative with D's substituted
  out.p1 = kernel_at_ops(poly.d_xi(), d1, d2);
  out.p2 = kernel_at_ops(poly.d_eta(), d1, d2);
  out.ltilde = (m1 + half * d2 - out.p1).pow(2) + (half * d1 - m2 + out.p2).pow(2);
  out.lstar = (m1 - out.p1).pow(2) + (m2 - out.p2).pow(2);
  return out;
}

Field2D cohen_apply(const Field2D& wigner_field, const KernelPoly& poly) {
  if (poly.is_zero()) return wigner_field;  // multiplier identically 1
  Field2D out = wigner_field;
  forward_2d(out);
  const auto mult = phase_multiplier(wigner_field, poly);
  for (size_t i = 0; i < out.count(); ++i) out.data()[i] *= mult[i];
  inverse_2d(out);
  return out;
}

Field2D cohen_transform(const Signal& f, const Signal& g, const KernelPoly& poly) {
  return cohen_apply(cross_wigner(f, g), poly);
}

std::pair<double, double> cohen_intertwine_check(const PolyOp& b, const KernelPoly& poly, const Field2D& w) {
  const PolyOp m1 = PolyOp::generator(Gen::M1);
  const PolyOp m2 = PolyOp::generator(Gen::M2);
  const PolyOp d1 = PolyOp::generator(Gen::D1);
  const PolyOp d2 = PolyOp::generator(Gen::D2);
  const cplx half{0.5, 0.0};
  const DerivedOps ops = derive_ops(poly);

  const Field2D q_w = cohen_apply(wig_transform(w), poly);

  // (i)
  const Field2D lhs_i = cohen_apply(wig_transform(apply_op(b, w)), poly);
  const PolyOp sub_i = b.substituted(m1 - half * d2 - ops.p1, m1 + half * d2 - ops.p1,
                                     half * d1 + m2 - ops.p2, half * d1 - m2 + ops.p2);
  const double res_i = (lhs_i - apply_op(sub_i, q_w)).norm();

  // (ii); the starred arguments D1+D2 and M2-M1 commute, so the substitution
  // order inside kernel_at_ops is immaterial
  const PolyOp p1_star = kernel_at_ops(poly.d_xi(), d1 + d2, m2 - m1);
  const PolyOp p2_star = kernel_at_ops(poly.d_eta(), d1 + d2, m2 - m1);
  const PolyOp sub_ii = b.substituted(half * (m1 + m2) + p1_star, half * (d1 - d2) + p2_star, d1 + d2, m2 - m1);
  const Field2D lhs_ii = apply_op(b, q_w);
  const double res_ii = (lhs_ii - cohen_apply(wig_transform(apply_op(sub_ii, w)), poly)).norm();

  return {res_i, res_ii};
}

CohenSumReport cohen_md_sum(const OrthonormalFamily& family_f, const OrthonormalFamily& family_g,
                            const KernelPoly& poly, int n, CohenBound variant, const Grid1D& grid) {
  if (n < 0 || n >= family_g.count()) fail(Errc::out_of_range, "n exceeds family size");
  if (family_f.count() < 1) fail(Errc::invalid_argument, "empty family");

  CohenSumReport r;
  r.n = n;
  const DerivedOps ops = derive_ops(poly);
  const Signal f0 = synthesize(family_f.vectors[0], grid);
  for (int k = 0; k <= n; ++k) {
    const Signal g = synthesize(family_g.vectors[static_cast<size_t>(k)], grid);
    const double term = (variant == CohenBound::modified)
                            ? ltilde_form_grid(cohen_transform(f0, g, poly), poly)
                            : quadratic_form(ops.lstar, cohen_transform(g, g, poly)).real();
    r.terms.push_back(term);
    r.sum += term;
  }
  r.bound = (n + 1.0) * (n + 1.0);
  if (variant == CohenBound::star) r.bound *= 0.5;
  r.margin = r.sum - r.bound;
  return r;
}

namespace {

// max |poly| over the dual box |xi|,|eta| <= reach, bounded via absolute coefficients
double box_bound(const KernelPoly& poly, double reach) {
  double acc = 0.0;
  for (const auto& [key, c] : poly.terms()) acc += std::abs(c) * std::pow(reach, key.first + key.second);
  return acc;
}

}  // namespace

Grid1D cohen_adequate_grid(const KernelPoly& poly, const Grid1D& base, int content_degree) {
  // dual content of Hermite-Wigner fields reaches ~sqrt(2k+1) with Gaussian
  // tails; 10.8 carries the tails down to the 1e-7 level for k <= 8
  constexpr double kDualReach = 10.8;
  constexpr double kSpatialContent = 7.0;
  const double delay_x = box_bound(poly.d_xi(), kDualReach);
  const double delay_w = box_bound(poly.d_eta(), kDualReach);

  const double resolve_floor = std::sqrt(2.0 * content_degree + 1.0) + 4.2;
  const double natural_l = std::max(base.half_width(), kSpatialContent + delay_x);
  const double w_need = std::max(14.0, kSpatialContent + delay_w);

  const double w_have = 0.25 * std::numbers::pi * base.size() / natural_l;
  if (w_have >= w_need && natural_l == base.half_width()) return base;

  // keep L as small as the content allows when the frequency window drives N
  const double l_pick = std::ceil(std::max(kSpatialContent + delay_x, resolve_floor));
  const double l_final = (w_need > 0.25 * std::numbers::pi * base.size() / l_pick &&
                          l_pick < natural_l)
                             ? l_pick
                             : std::ceil(natural_l);
  // 4096 caps a field at 268 MB; a kernel that wants more gets the largest
  // affordable grid and visibly larger residuals
  int n = base.size();
  while (0.25 * std::numbers::pi * n / l_final < w_need && n < 4096) n *= 2;
  return Grid1D(l_final, n);
}

double ltilde_form_grid(const Field2D& q, const KernelPoly& poly) {
  const int n0 = q.size_x(), n1 = q.size_y();
  const Grid1D dual0 = q.grid().x.dual();
  const Grid1D dual1 = q.grid().y.dual();
  const KernelPoly dxi = poly.d_xi();
  const KernelPoly deta = poly.d_eta();

  Field2D spec = q;
  forward_2d(spec);

  // A1 = M1 + D2/2 - P1: multiplier eta/2 - dP/dxi, position +x
  Field2D a1 = spec;
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b)
      a1.at(a, b) *= 0.5 * dual1.node(b) - dxi.eval(dual0.node(a), dual1.node(b));
  inverse_2d(a1);
  for (int a = 0; a < n0; ++a) {
    const double xv = q.grid().x.node(a);
    for (int b = 0; b < n1; ++b) a1.at(a, b) += xv * q.at(a, b);
  }

  // A2 = D1/2 - M2 + P2: multiplier kappa/2 + dP/deta, position -xi
  Field2D a2 = spec;
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b)
      a2.at(a, b) *= 0.5 * dual0.node(a) + deta.eval(dual0.node(a), dual1.node(b));
  inverse_2d(a2);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) a2.at(a, b) -= q.grid().y.node(b) * q.at(a, b);

  return a1.squared_norm() + a2.squared_norm();
}

}  // namespace wigmd
