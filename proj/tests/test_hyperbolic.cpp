#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "speclab/hyperbolic.hpp"

using namespace speclab;
using namespace speclab::hyperbolic;

namespace {

double simpson_weight(std::size_t i, std::size_t n, double step) {
  // n odd node count, composite Simpson
  if (i == 0 || i + 1 == n) return step / 3.0;
  return (i % 2 == 1) ? 4.0 * step / 3.0 : 2.0 * step / 3.0;
}

// Direct time-quadrature oracle for the smoothing quotient: synthesize
// u(t, r) from the forward transform and Simpson-integrate |u|^2 over
// [0,1] x B_R against the volume factor.
double brute_smoothing_ratio(const RadialProfile& f, double R, double s, double lam_max,
                             std::size_t n_t, std::size_t n_r) {
  RadialSpectrum fh = helgason_forward(f, radial_spectrum_grid(lam_max, f.r_max()));
  double denom = sobolev_norm_h3(fh, s);
  double peak = 0.0;
  for (const auto& v : fh.values) peak = std::max(peak, std::abs(v));
  std::vector<std::size_t> act;
  for (std::size_t i = 0; i < fh.lam.size(); ++i)
    if (std::abs(fh.values[i]) > 1e-9 * peak) act.push_back(i);

  std::vector<cplx> a(act.size());
  std::vector<double> eig(act.size());
  for (std::size_t k = 0; k < act.size(); ++k) {
    std::size_t i = act[k];
    double mult = s == 1.5 ? 1.0 + sq(fh.lam[i]) : 1.0;
    a[k] = fh.values[i] * fh.w[i] * mult;
    eig[k] = 1.0 + sq(fh.lam[i]);
  }

  const std::size_t m = act.size();
  double dr = R / static_cast<double>(n_r - 1);
  double dt = 1.0 / static_cast<double>(n_t - 1);
  std::vector<cplx> coef(n_t * m);
  for (std::size_t it = 0; it < n_t; ++it) {
    double t = it * dt;
    for (std::size_t k = 0; k < m; ++k) coef[it * m + k] = a[k] * std::polar(1.0, t * eig[k]);
  }
  std::vector<double> phi(m);
  double total = 0.0;
  for (std::size_t j = 0; j < n_r; ++j) {
    double r = j * dr;
    for (std::size_t k = 0; k < m; ++k)
      phi[k] = r == 0.0 ? 1.0 : spherical_function(fh.lam[act[k]], r);
    double tint = 0.0;
    for (std::size_t it = 0; it < n_t; ++it) {
      const cplx* c = coef.data() + it * m;
      cplx u{0.0, 0.0};
      for (std::size_t k = 0; k < m; ++k) u += c[k] * phi[k];
      tint += simpson_weight(it, n_t, dt) * std::norm(u);
    }
    total += simpson_weight(j, n_r, dr) * 4.0 * pi * sq(std::sinh(r)) * tint;
  }
  return std::sqrt(std::max(0.0, total)) / denom;
}

}  // namespace

TEST_SUITE("hyperbolic") {
  TEST_CASE("spherical function: normalization, bound, zeros") {
    CHECK(spherical_function(3.0, 0.0) == 1.0);
    CHECK(spherical_function(0.5, 0.0) == 1.0);
    for (double lam : {0.3, 1.0, 5.0, 40.0})
      for (double r = 0.001; r < 8.0; r += 0.37) CHECK(std::abs(spherical_function(lam, r)) <= 1.0);
    // zeros of sin(5 r) at j pi / 5: nine crossings below 6
    auto phi5 = [](double r) { return spherical_function(5.0, r); };
    CHECK(oracles::sign_changes(phi5, 0.01, 6.0, 200000) == 9);
    auto phi2 = [](double r) { return spherical_function(2.0, r); };
    CHECK(oracles::sign_changes(phi2, 0.01, 6.0, 200000) == 3);
    // series and direct branches agree across the switch at r = 1e-6
    for (double lam : {0.7, 4.0, 9.0}) {
      double a = spherical_function(lam, 1e-6 * (1 - 1e-9));
      double b = spherical_function(lam, 1e-6 * (1 + 1e-9));
      CHECK(std::abs(a - b) <= 1e-13);
    }
    CHECK_THROWS_AS(spherical_function(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(spherical_function(-2.0, 1.0), domain_error);
    CHECK_THROWS_AS(spherical_function(1.0, -0.1), domain_error);
  }

  TEST_CASE("grid weights integrate the volume and Plancherel factors") {
    double R = 2.0;
    RadialProfile f = radial_profile_grid(R, 8.0);
    KahanSum sw;
    for (double w : f.w) sw.add(w);
    double want = pi * (std::sinh(2.0 * R) - 2.0 * R);
    CHECK(std::abs(sw.value() - want) <= 1e-12 * want);
    CHECK(f.r.front() > 0.0);
    CHECK(f.r.back() < R);
    CHECK(f.r_max() == f.r.back());

    double L = 7.0;
    RadialSpectrum spec = radial_spectrum_grid(L, 3.0);
    KahanSum sv;
    for (double w : spec.w) sv.add(w);
    double wantv = L * L * L / (6.0 * sq(pi));
    CHECK(std::abs(sv.value() - wantv) <= 1e-13 * wantv);

    CHECK_THROWS_AS(radial_profile_grid(0.0, 4.0), config_error);
    CHECK_THROWS_AS(radial_spectrum_grid(-1.0, 4.0), config_error);
  }

  TEST_CASE("profile and spectrum validation") {
    RadialProfile f = radial_profile_grid(1.0, 4.0);
    f.validate();
    RadialProfile bad = f;
    bad.values.pop_back();
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = f;
    bad.w[3] = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = f;
    bad.r[2] = bad.r[1];
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = f;
    bad.values[0] = {std::nan(""), 0.0};
    CHECK_THROWS_AS(bad.validate(), config_error);
    RadialProfile tiny;
    tiny.r = {0.5};
    tiny.w = {1.0};
    tiny.values = {{0.0, 0.0}};
    CHECK_THROWS_AS(tiny.validate(), config_error);
  }

  TEST_CASE("transform round trip and Plancherel") {
    double lam0 = 6.0, width = 1.0, lam_max = 18.0, r_max = 6.0;
    RadialSpectrum bump = gaussian_bump_spectrum(lam0, width, lam_max, r_max);
    CHECK(std::abs(sobolev_norm_h3(bump, 0.0) - 1.0) <= 1e-12);

    RadialProfile f = helgason_inverse(bump, radial_profile_grid(r_max, lam_max));
    KahanSum pn;
    for (std::size_t i = 0; i < f.r.size(); ++i) pn.add(f.w[i] * std::norm(f.values[i]));
    CHECK(std::abs(std::sqrt(pn.value()) - 1.0) <= 1e-6);

    RadialSpectrum back = helgason_forward(f, radial_spectrum_grid(lam_max, r_max));
    REQUIRE(back.lam.size() == bump.lam.size());
    KahanSum diff2;
    for (std::size_t i = 0; i < back.lam.size(); ++i)
      diff2.add(back.w[i] * std::norm(back.values[i] - bump.values[i]));
    CHECK(std::sqrt(diff2.value()) <= 1e-6);
  }

  TEST_CASE("transforms reject under-resolved grids") {
    RadialProfile coarse = radial_profile_grid(5.0, 2.0);
    CHECK_THROWS_AS(helgason_forward(coarse, radial_spectrum_grid(12.0, 5.0)), config_error);
    RadialSpectrum cs = radial_spectrum_grid(4.0, 2.0);
    CHECK_THROWS_AS(helgason_inverse(cs, radial_profile_grid(20.0, 1.0)), config_error);
  }

  TEST_CASE("radial propagator is unitary and additive") {
    RadialSpectrum s = gaussian_bump_spectrum(4.0, 1.0, 12.0, 4.0);
    RadialSpectrum s0 = propagate_radial(s, 0.0);
    for (std::size_t i = 0; i < s.lam.size(); ++i) CHECK(s0.values[i] == s.values[i]);
    RadialSpectrum a = propagate_radial(propagate_radial(s, 0.3), 0.45);
    RadialSpectrum b = propagate_radial(s, 0.75);
    double m = 0.0;
    for (std::size_t i = 0; i < s.lam.size(); ++i) {
      CHECK(std::abs(std::abs(a.values[i]) - std::abs(s.values[i])) <= 1e-15);
      m = std::max(m, std::abs(a.values[i] - b.values[i]));
    }
    CHECK(m <= 1e-12);
  }

  TEST_CASE("sobolev weights order correctly") {
    RadialSpectrum s = gaussian_bump_spectrum(5.0, 0.8, 12.0, 4.0);
    double n0 = sobolev_norm_h3(s, 0.0);
    double nm = sobolev_norm_h3(s, -0.5);
    double np = sobolev_norm_h3(s, 1.5);
    CHECK(nm < n0);
    CHECK(n0 < np);
    // carrier near lam0: weights should be close to (2 + lam0^2)^s
    CHECK(nm == doctest::Approx(std::pow(2.0 + 25.0, -0.25)).epsilon(0.2));
  }

  TEST_CASE("gaussian bump input guards") {
    CHECK_THROWS_AS(gaussian_bump_spectrum(4.0, 0.0, 12.0, 4.0), config_error);
    CHECK_THROWS_AS(gaussian_bump_spectrum(1000.0, 0.001, 5.0, 4.0), config_error);
  }

  TEST_CASE("smoothing quotient matches the dense time oracle") {
    double lam0 = 4.0, width = 0.5, lam_max = 10.0, r_max = 5.0;
    RadialSpectrum bump = gaussian_bump_spectrum(lam0, width, lam_max, r_max);
    RadialProfile f = helgason_inverse(bump, radial_profile_grid(r_max, lam_max));
    double R = 1.5;
    for (double s : {-0.5, 1.5}) {
      double got = smoothing_ratio(f, R, s, lam_max);
      double want = brute_smoothing_ratio(f, R, s, lam_max, 2001, 601);
      CHECK(got == doctest::Approx(want).epsilon(1e-6));
      CHECK(got == smoothing_ratio(f, R, s, lam_max));
    }
  }

  TEST_CASE("smoothing quotient input guards") {
    RadialSpectrum bump = gaussian_bump_spectrum(4.0, 1.0, 10.0, 3.0);
    RadialProfile f = helgason_inverse(bump, radial_profile_grid(3.0, 10.0));
    CHECK_THROWS_AS(smoothing_ratio(f, 5.0, -0.5, 10.0), config_error);
    CHECK_THROWS_AS(smoothing_ratio(f, 0.0, -0.5, 10.0), config_error);
    CHECK_THROWS_AS(smoothing_ratio(f, 1.0, 0.7, 10.0), config_error);
    RadialProfile z = radial_profile_grid(3.0, 10.0);
    CHECK_THROWS_AS(smoothing_ratio(z, 1.0, -0.5, 10.0), domain_error);
  }

  TEST_CASE("csv emitters") {
    RadialSpectrum s = gaussian_bump_spectrum(3.0, 1.0, 8.0, 3.0);
    std::string c = radial_spectrum_csv(s);
    CHECK(c == radial_spectrum_csv(s));
    CHECK(c.find("coordinate") != std::string::npos);
    RadialProfile f = helgason_inverse(s, radial_profile_grid(3.0, 8.0));
    CHECK(radial_profile_csv(f).find("weight") != std::string::npos);
  }
}
