#include "moments.hpp"

#include <cmath>
#include <tuple>
#include <vector>

namespace wigmd {

namespace {

// mean and centered second moment of |s|^2 on its grid, normalized to unit mass
std::pair<double, double> density_moments(const Signal& s) {
  double mass = 0.0, first = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const double w = std::norm(s[i]);
    mass += w;
    first += s.grid().node(i) * w;
  }
  const double mu = first / mass;
  double second = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    const double d = s.grid().node(i) - mu;
    second += d * d * std::norm(s[i]);
  }
  return {mu, second / mass};
}

}  // namespace

MomentReport moments(const Signal& f) {
  if (f.squared_norm() <= 0.0) fail(Errc::zero_signal, "zero signal");
  MomentReport r;
  std::tie(r.mu, r.var) = density_moments(f);
  std::tie(r.mu_hat, r.var_hat) = density_moments(fourier_transform(f));
  return r;
}

CovarianceReport covariance(const Field2D& F) {
  const double total = F.squared_norm();
  if (total <= 0.0) fail(Errc::zero_signal, "zero field");
  const int n0 = F.size_x();
  const int n1 = F.size_y();
  const double dx = F.grid().x.spacing();
  const double dy = F.grid().y.spacing();

  // marginals: straight sums times the cell side, then normalized by the mass
  std::vector<double> rho_x(static_cast<size_t>(n0)), rho_y(static_cast<size_t>(n1));
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      const double w = std::norm(F.at(a, b));
      rho_x[static_cast<size_t>(a)] += w * dy;
      rho_y[static_cast<size_t>(b)] += w * dx;
    }
  const double cell = F.grid().cell_area();
  const double mass = total / cell;  // plain sample sum of |F|^2

  CovarianceReport r;
  for (int a = 0; a < n0; ++a) r.mean_x += F.grid().x.node(a) * rho_x[static_cast<size_t>(a)];
  for (int b = 0; b < n1; ++b) r.mean_y += F.grid().y.node(b) * rho_y[static_cast<size_t>(b)];
  r.mean_x *= dx / total;
  r.mean_y *= dy / total;

  for (int a = 0; a < n0; ++a) {
    const double ex = F.grid().x.node(a) - r.mean_x;
    for (int b = 0; b < n1; ++b) {
      const double ey = F.grid().y.node(b) - r.mean_y;
      const double w = std::norm(F.at(a, b)) / mass;
      r.cxx += ex * ex * w;
      r.cxy += ex * ey * w;
      r.cyy += ey * ey * w;
      r.energy_moment += (F.grid().x.node(a) * F.grid().x.node(a) +
                          F.grid().y.node(b) * F.grid().y.node(b)) *
                         w;
    }
  }
  return r;
}

EnergyMomentIdentity energy_moment_identity(const Signal& f) {
  const MomentReport m = moments(f);
  const Signal unit = cplx{1.0 / f.norm(), 0.0} * f;
  const CovarianceReport c = covariance(cross_wigner(unit, unit));

  EnergyMomentIdentity r{};
  r.energy_moment = c.energy_moment;
  r.moment_sum = m.mu * m.mu + 0.5 * m.var + m.mu_hat * m.mu_hat + 0.5 * m.var_hat;
  r.residual = std::abs(r.energy_moment - r.moment_sum);
  r.gap = r.energy_moment - 0.5 * m.md_sum();
  return r;
}

}  // namespace wigmd
