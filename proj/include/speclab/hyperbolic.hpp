#pragma once

// Radial spectral calculus on 3-dimensional hyperbolic space and the local
// smoothing functionals built on it. The radial transform pair is a 1-D
// quadrature against the closed-form spherical function sin(lambda r) /
// (lambda sinh r), with composite Gauss-Legendre panels sized so each panel
// sees at most ~3 radians of the fastest oscillation.

#include <vector>

#include "speclab/common.hpp"

namespace speclab::hyperbolic {

// Radial function on [0, R_max]; weights carry the volume factor
// 4 pi sinh^2(r) dr.
struct RadialProfile {
  std::vector<double> r;
  std::vector<double> w;
  std::vector<cplx> values;

  void validate() const;
  double r_max() const { return r.empty() ? 0.0 : r.back(); }
};

// Radial transform on (0, Lambda_max]; weights carry the Plancherel factor
// lambda^2 / (2 pi^2) dlambda.
struct RadialSpectrum {
  std::vector<double> lam;
  std::vector<double> w;
  std::vector<cplx> values;

  void validate() const;
  double lam_max() const { return lam.empty() ? 0.0 : lam.back(); }
};

// Panelled quadrature grids; max_freq / r_max bound the oscillation the grid
// must resolve (values start out zero).
RadialProfile radial_profile_grid(double r_max, double max_freq);
RadialSpectrum radial_spectrum_grid(double lam_max, double r_max);

// sin(lambda r) / (lambda sinh r); equals 1 at r = 0.
double spherical_function(double lam, double r);

// fhat(lambda) = int f(r) phi_lambda(r) 4 pi sinh^2 r dr on the target's
// lambda grid. The profile grid must resolve oscillation at the target's top
// frequency (max node gap times lam_max <= 1).
RadialSpectrum helgason_forward(const RadialProfile& f, RadialSpectrum target);

// f(r) = int fhat(lambda) phi_lambda(r) lambda^2/(2 pi^2) dlambda, same
// resolution condition with the roles of r and lambda swapped.
RadialProfile helgason_inverse(const RadialSpectrum& spectrum, RadialProfile target);

// Multiply by exp(i t (1 + lambda^2)); -Laplace has radial spectrum
// 1 + lambda^2.
RadialSpectrum propagate_radial(const RadialSpectrum& spectrum, double t);

// (int (2 + lambda^2)^s |fhat|^2 lambda^2/(2 pi^2) dlambda)^{1/2}.
double sobolev_norm_h3(const RadialSpectrum& spectrum, double s);

// Unit-Plancherel-norm Gaussian bump exp(-(lambda-lam0)^2 / (2 width^2)) on a
// fresh spectral grid resolving oscillation out to r_max.
RadialSpectrum gaussian_bump_spectrum(double lam0, double width, double lam_max,
                                      double r_max);

// Smoothing quotient over [0,1] x B_R: s = -1/2 measures ||u|| against
// H^{-1/2}, s = 3/2 measures ||Laplace u|| (multiplier 1 + lambda^2) against
// H^{3/2}. Time and ball integrals of |u|^2 are both closed-form in the pair
// phases, and the spectral sum runs on a dedicated window grid over the
// active band sized by the kernel's rate 2 lambda + R.
// lam_max = 0 infers the band the profile's grid can support.
double smoothing_ratio(const RadialProfile& f, double R, double s, double lam_max = 0.0);

std::string radial_profile_csv(const RadialProfile& f);
std::string radial_spectrum_csv(const RadialSpectrum& s);

}  // namespace speclab::hyperbolic
