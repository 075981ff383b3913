#pragma once

#include "grid.hpp"
#include "wigner.hpp"

namespace wigmd {

// Mean and variance of |f|^2 / ||f||^2 and of the Fourier side.
struct MomentReport {
  double mu = 0.0;
  double mu_hat = 0.0;
  double var = 0.0;      // Delta^2(f)
  double var_hat = 0.0;  // Delta^2(f_hat)

  double md_sum() const { return mu * mu + mu_hat * mu_hat + var + var_hat; }
};

MomentReport moments(const Signal& f);

// Marginal means, covariance matrix and trace of rho = |F|^2 / ||F||^2.
struct CovarianceReport {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double cxx = 0.0;
  double cxy = 0.0;
  double cyy = 0.0;
  double energy_moment = 0.0;  // integral of (x^2 + xi^2) rho

  double trace() const { return cxx + cyy; }
};

CovarianceReport covariance(const Field2D& F);

struct EnergyMomentIdentity {
  double energy_moment;  // integral (x^2+xi^2)|W(f)|^2
  double moment_sum;     // mu^2 + var/2 + mu_hat^2 + var_hat/2
  double residual;       // |energy_moment - moment_sum|
  double gap;            // energy_moment - md_sum/2; zero iff both means vanish
};

EnergyMomentIdentity energy_moment_identity(const Signal& f);

}  // namespace wigmd
