#pragma once
// Certified enclosures of T*f(x) = sup_{0<t<=1} |e^{it Delta}f(x)| and the
// inequality cascades built on them.
//
// Certification: recentring the active eigenvalues at an amplitude-weighted
// mean w0 leaves |u(t,x)| = |v_x(t)| with v_x(t) = sum_g A_g(x) e^{it w'_g},
// |v_x''| <= L2(x) = sum_g w'_g^2 |A_g(x)|. Between two nodes a distance d
// apart the chord bound |v(t)| <= max(|v(l)|,|v(r)|) + (d^2/8) L2(x) holds,
// so one uniform sweep with (d^2/8) L2 <= tol certifies every point at once:
// hi = lo + (d^2/8) L2 with lo the max sampled modulus. Torus profiles bound
// L2(x) through difference-spectrum transforms rather than per-point sums.

#include <array>
#include <string>
#include <vector>

#include "speclab/evolve.hpp"
#include "speclab/fields.hpp"

namespace speclab::maximal {

using fields::SpectralField;
using spectra::QuadratureGrid;

struct MaximalProfile {
  QuadratureGrid grid;
  std::vector<double> lo, hi;  // per grid point, hi - lo <= tol
  double tol = 0.0;
};

Enclosure certified_sup(const SpectralField& f, const std::array<double, 3>& x, double tol);

MaximalProfile maximal_profile(const SpectralField& f, const QuadratureGrid& sgrid, double tol);

// Quadrature p-norm of the [lo, hi] bands as an interval.
Enclosure maximal_lp_norm(const MaximalProfile& profile, double p);

// |g(a)| + mu^{1/q-1} ||g'||_{L^q[a,b]} + mu^{1/q} ||g||_{L^q[a,b]} with the
// sampled path g, dg on the trapezoid grid; unit front constant.
double sup_control_rhs(const std::vector<cplx>& g, const std::vector<cplx>& dg,
                       const evolve::TimeGrid& tg, double mu, double q);

// (sum_{k>=0} (1 + k(k+1))^{-alpha})^{1/2} enclosed to relative width 1e-10
// by partial summation plus an integral-test tail; needs alpha > 1/2.
Enclosure level_sum_constant(double alpha);

struct CascadeStep {
  std::string step;
  double lhs = 0.0, rhs = 0.0, margin = 0.0;  // margin at the tightest point
};

struct CascadeReport {
  std::array<CascadeStep, 3> steps;
  double alpha = 0.0;
  Enclosure calpha;
  Enclosure tstar_l2;    // quadrature L2 enclosure of the maximal profile
  double sobolev = 0.0;  // H^alpha norm of the input
  double tol = 0.0;      // profile tolerance used by step 1
};

// Three-step domination chain on the 2-sphere:
//   (1) T*f(x) <= sum_k |P_k f(x)| pointwise,
//   (2) ||sum_k |P_k f|||_{L2} <= sum_k ||P_k f||_{L2},
//   (3) sum_k ||P_k f||_{L2} <= C_alpha ||f||_{H^alpha},
// step 3 checked against the lower end of the constant's enclosure.
CascadeReport sphere_levelwise_cascade(const SpectralField& f, double alpha);

struct BlockRatioReport {
  double h = 0.0, q = 0.0, beta = 0.0;
  Enclosure lhs;     // maximal q-norm of the scale-h block
  double rhs = 0.0;  // h^{-2/q-beta} ||block||_2 + ||block||_q
  Enclosure ratio;
};

// Frequency-localized maximal ratio: T* of the h-block against the scale
// bound. The profile runs on a lattice capped at 128 nodes per axis (the
// maximal norm is a grid quadrature by definition); companion Lebesgue
// norms use pair-exact grids.
BlockRatioReport block_maximal_ratio_check(const SpectralField& f, double h, double q,
                                           double beta);

std::string profile_csv(const MaximalProfile& p);
std::string cascade_csv(const CascadeReport& r);

}  // namespace speclab::maximal
