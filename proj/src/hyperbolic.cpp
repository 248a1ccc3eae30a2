#include "speclab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "speclab/csvio.hpp"
#include "speclab/parallel.hpp"
#include "speclab/spectra.hpp"

namespace speclab::hyperbolic {

namespace {

constexpr int kNodesPerPanel = 10;
constexpr double kMaxPanelPhase = 3.0;

void check_grid(const std::vector<double>& g, const char* what, bool from_zero) {
  if (g.size() < 2) throw config_error(std::string(what) + ": at least two nodes required");
  double prev = from_zero ? 0.0 : -1.0;
  for (double v : g) {
    if (!(v > prev) || !std::isfinite(v))
      throw config_error(std::string(what) + ": grid must be strictly increasing and positive");
    prev = v;
  }
}

// Composite GL panels on [0, len] with enough panels to keep
// max_freq * panel_width below kMaxPanelPhase.
void panel_rule(double len, double max_freq, std::vector<double>& nodes,
                std::vector<double>& weights) {
  int panels = std::max(8, static_cast<int>(std::ceil(len * std::max(max_freq, 1.0) /
                                                      kMaxPanelPhase)));
  std::vector<double> xs, ws;
  spectra::gauss_legendre_rule(kNodesPerPanel, xs, ws);
  double h = len / panels;
  nodes.clear();
  weights.clear();
  nodes.reserve(static_cast<std::size_t>(panels) * kNodesPerPanel);
  weights.reserve(static_cast<std::size_t>(panels) * kNodesPerPanel);
  for (int p = 0; p < panels; ++p) {
    double a = p * h;
    for (int i = 0; i < kNodesPerPanel; ++i) {
      nodes.push_back(a + 0.5 * h * (xs[i] + 1.0));
      weights.push_back(0.5 * h * ws[i]);
    }
  }
}

double max_gap(const std::vector<double>& g) {
  double m = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) m = std::max(m, g[i] - g[i - 1]);
  return m;
}

}  // namespace

void RadialProfile::validate() const {
  check_grid(r, "radial profile", true);
  if (w.size() != r.size() || values.size() != r.size())
    throw config_error("radial profile: grid, weight, value lengths differ");
  for (double x : w)
    if (!(x > 0.0)) throw config_error("radial profile: weights must be positive");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw config_error("radial profile: values must be finite");
}

void RadialSpectrum::validate() const {
  check_grid(lam, "radial spectrum", true);
  if (w.size() != lam.size() || values.size() != lam.size())
    throw config_error("radial spectrum: grid, weight, value lengths differ");
  for (double x : w)
    if (!(x > 0.0)) throw config_error("radial spectrum: weights must be positive");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw config_error("radial spectrum: values must be finite");
}

RadialProfile radial_profile_grid(double r_max, double max_freq) {
  if (!(r_max > 0.0)) throw config_error("radial_profile_grid: r_max must be positive");
  RadialProfile f;
  panel_rule(r_max, max_freq, f.r, f.w);
  for (std::size_t i = 0; i < f.r.size(); ++i) f.w[i] *= 4.0 * pi * sq(std::sinh(f.r[i]));
  f.values.assign(f.r.size(), cplx{0.0, 0.0});
  return f;
}

RadialSpectrum radial_spectrum_grid(double lam_max, double r_max) {
  if (!(lam_max > 0.0)) throw config_error("radial_spectrum_grid: lam_max must be positive");
  RadialSpectrum s;
  panel_rule(lam_max, r_max, s.lam, s.w);
  for (std::size_t i = 0; i < s.lam.size(); ++i) s.w[i] *= sq(s.lam[i]) / (2.0 * sq(pi));
  s.values.assign(s.lam.size(), cplx{0.0, 0.0});
  return s;
}

double spherical_function(double lam, double r) {
  if (!(lam > 0.0) || !(r >= 0.0))
    throw domain_error("spherical_function: lam > 0 and r >= 0 required");
  if (r < 1e-6) return 1.0 - (sq(lam) + 1.0) * sq(r) / 6.0;
  return std::sin(lam * r) / (lam * std::sinh(r));
}

RadialSpectrum helgason_forward(const RadialProfile& f, RadialSpectrum target) {
  f.validate();
  check_grid(target.lam, "radial spectrum", true);
  if (max_gap(f.r) * target.lam_max() > 1.0 + 1e-9)
    throw config_error("helgason_forward: radial grid under-resolves the spectral band");
  target.values.assign(target.lam.size(), cplx{0.0, 0.0});
  std::vector<double> pre(f.r.size());
  for (std::size_t j = 0; j < f.r.size(); ++j) pre[j] = f.w[j] / std::sinh(f.r[j]);
  parallel_chunks(target.lam.size(), 64, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double li = target.lam[i];
      KahanSum re, im;
      for (std::size_t j = 0; j < f.r.size(); ++j) {
        double phi = std::sin(li * f.r[j]) * pre[j];
        re.add(phi * f.values[j].real());
        im.add(phi * f.values[j].imag());
      }
      target.values[i] = {re.value() / li, im.value() / li};
    }
  });
  return target;
}

RadialProfile helgason_inverse(const RadialSpectrum& spectrum, RadialProfile target) {
  spectrum.validate();
  check_grid(target.r, "radial profile", true);
  if (max_gap(spectrum.lam) * target.r_max() > 1.0 + 1e-9)
    throw config_error("helgason_inverse: spectral grid under-resolves the radial range");
  target.values.assign(target.r.size(), cplx{0.0, 0.0});
  std::vector<double> pre(spectrum.lam.size());
  for (std::size_t i = 0; i < spectrum.lam.size(); ++i)
    pre[i] = spectrum.w[i] / spectrum.lam[i];
  parallel_chunks(target.r.size(), 64, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      double rj = target.r[j];
      double ish = 1.0 / std::sinh(rj);
      KahanSum re, im;
      for (std::size_t i = 0; i < spectrum.lam.size(); ++i) {
        double phi = std::sin(spectrum.lam[i] * rj) * pre[i];
        re.add(phi * spectrum.values[i].real());
        im.add(phi * spectrum.values[i].imag());
      }
      target.values[j] = {re.value() * ish, im.value() * ish};
    }
  });
  return target;
}

RadialSpectrum propagate_radial(const RadialSpectrum& spectrum, double t) {
  RadialSpectrum out = spectrum;
  for (std::size_t i = 0; i < out.lam.size(); ++i)
    out.values[i] *= std::polar(1.0, t * (1.0 + sq(out.lam[i])));
  return out;
}

double sobolev_norm_h3(const RadialSpectrum& spectrum, double s) {
  KahanSum acc;
  for (std::size_t i = 0; i < spectrum.lam.size(); ++i)
    acc.add(spectrum.w[i] * std::pow(2.0 + sq(spectrum.lam[i]), s) *
            std::norm(spectrum.values[i]));
  return std::sqrt(acc.value());
}

RadialSpectrum gaussian_bump_spectrum(double lam0, double width, double lam_max,
                                      double r_max) {
  if (!(width > 0.0)) throw config_error("gaussian_bump_spectrum: width must be positive");
  RadialSpectrum s = radial_spectrum_grid(lam_max, r_max);
  for (std::size_t i = 0; i < s.lam.size(); ++i)
    s.values[i] = cplx{std::exp(-sq(s.lam[i] - lam0) / (2.0 * sq(width))), 0.0};
  double nrm = sobolev_norm_h3(s, 0.0);
  if (!(nrm > 0.0)) throw config_error("gaussian_bump_spectrum: bump underflows the band");
  for (auto& v : s.values) v /= nrm;
  return s;
}

namespace {

// GL window panels on [lo, hi] carrying the Plancherel weight, sized by the
// phase rate the smoothing pair kernel carries.
RadialSpectrum window_spectrum_grid(double lo, double hi, double rate) {
  RadialSpectrum s;
  std::vector<double> xs, ws;
  spectra::gauss_legendre_rule(kNodesPerPanel, xs, ws);
  int panels = std::max(8, static_cast<int>(std::ceil((hi - lo) * std::max(rate, 1.0) /
                                                      kMaxPanelPhase)));
  double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * h;
    for (int i = 0; i < kNodesPerPanel; ++i) {
      double lam = a + 0.5 * h * (xs[i] + 1.0);
      s.lam.push_back(lam);
      s.w.push_back(0.5 * h * ws[i] * sq(lam) / (2.0 * sq(pi)));
    }
  }
  s.values.assign(s.lam.size(), cplx{0.0, 0.0});
  return s;
}

}  // namespace

double smoothing_ratio(const RadialProfile& f, double R, double s, double lam_max) {
  f.validate();
  if (!(R > 0.0) || R > f.r_max() + 1e-12)
    throw config_error("smoothing_ratio: ball radius outside the profile range");
  if (s != -0.5 && s != 1.5)
    throw config_error("smoothing_ratio: s selects -1/2 or 3/2");
  if (lam_max == 0.0) lam_max = 1.0 / max_gap(f.r);
  if (!(lam_max > 0.0)) throw config_error("smoothing_ratio: empty spectral band");

  RadialSpectrum fh0 = helgason_forward(f, radial_spectrum_grid(lam_max, f.r_max()));
  double denom = sobolev_norm_h3(fh0, s);
  if (!(denom > 0.0)) throw domain_error("smoothing_ratio: zero data");

  // Band carrying the data, padded past the amplitude floor. Transform noise
  // sits well below the floor; pruning keeps the pair sum small without
  // moving the quotient at the reported precision.
  double peak = 0.0;
  for (const auto& v : fh0.values) peak = std::max(peak, std::abs(v));
  double band_lo = lam_max, band_hi = 0.0;
  for (std::size_t i = 0; i < fh0.lam.size(); ++i)
    if (std::abs(fh0.values[i]) > 1e-9 * peak) {
      band_lo = std::min(band_lo, fh0.lam[i]);
      band_hi = std::max(band_hi, fh0.lam[i]);
    }
  double pad = 4.0 * max_gap(fh0.lam);
  band_lo = std::max(0.0, band_lo - pad);
  band_hi = std::min(lam_max, band_hi + pad);

  // The pair kernel below oscillates at rate 2 lambda + R per unit lambda
  // (the time-window phase lambda^2 plus the ball phase), so the window grid
  // is sized by that rate: coarser grids let the discrete evolution alias
  // back into the ball before t = 1.
  RadialSpectrum fh =
      helgason_forward(f, window_spectrum_grid(band_lo, band_hi, 2.0 * band_hi + R + 1.0));

  double peak_w = 0.0;
  for (const auto& v : fh.values) peak_w = std::max(peak_w, std::abs(v));
  std::vector<double> lam, are, aim, sR, cR, pre, pim;
  for (std::size_t i = 0; i < fh.lam.size(); ++i) {
    if (!(std::abs(fh.values[i]) > 1e-9 * peak_w)) continue;
    double l = fh.lam[i];
    double mult = s == 1.5 ? 1.0 + sq(l) : 1.0;
    lam.push_back(l);
    are.push_back(fh.values[i].real() * fh.w[i] * mult);
    aim.push_back(fh.values[i].imag() * fh.w[i] * mult);
    sR.push_back(std::sin(l * R));
    cR.push_back(std::cos(l * R));
    pre.push_back(std::cos(sq(l)));
    pim.push_back(std::sin(sq(l)));
  }
  const std::size_t m = lam.size();
  if (m == 0) return 0.0;

  // int_0^1 int_{B_R} |u|^2: both integrals in closed form. The volume factor
  // sinh^2 cancels against the spherical functions, leaving
  //   B(j,k) = 2 pi [sin(dl R)/dl - sin(sl R)/sl] / (lam_j lam_k),
  //   E(j,k) = (e^{i d} - 1)/(i d),  d = lam_j^2 - lam_k^2,
  // and the sum over pairs of a_j conj(a_k) B E, which is real by symmetry.
  KahanSum total;
  for (std::size_t j = 0; j < m; ++j) {
    double diag = 2.0 * pi * (R - sR[j] * cR[j] / lam[j]) / sq(lam[j]);
    total.add((sq(are[j]) + sq(aim[j])) * diag);
    double row = 0.0;
    for (std::size_t k = j + 1; k < m; ++k) {
      double dl = lam[j] - lam[k], sl = lam[j] + lam[k];
      double sin_dl = sR[j] * cR[k] - cR[j] * sR[k];
      double sin_sl = sR[j] * cR[k] + cR[j] * sR[k];
      double sd = std::abs(dl) < 1e-6 ? R * (1.0 - sq(dl * R) / 6.0) : sin_dl / dl;
      double B = 2.0 * pi * (sd - sin_sl / sl) / (lam[j] * lam[k]);
      double d = dl * sl;  // lam_j^2 - lam_k^2
      double Ere, Eim;
      if (std::abs(d) < 1e-6) {
        Ere = 1.0 - sq(d) / 6.0;
        Eim = 0.5 * d - d * sq(d) / 24.0;
      } else {
        double ore = pre[j] * pre[k] + pim[j] * pim[k];  // cos(d)
        double oim = pim[j] * pre[k] - pre[j] * pim[k];  // sin(d)
        Ere = oim / d;
        Eim = (1.0 - ore) / d;
      }
      double zre = are[j] * are[k] + aim[j] * aim[k];
      double zim = aim[j] * are[k] - are[j] * aim[k];
      row += B * (zre * Ere - zim * Eim);
    }
    total.add(2.0 * row);
  }
  return std::sqrt(std::max(0.0, total.value())) / denom;
}

std::string radial_profile_csv(const RadialProfile& f) {
  CsvWriter w;
  w.row({"coordinate", "re", "im", "weight"});
  for (std::size_t i = 0; i < f.r.size(); ++i)
    w.row({fmt_g(f.r[i], 17), fmt_g(f.values[i].real(), 17), fmt_g(f.values[i].imag(), 17),
           fmt_g(f.w[i], 17)});
  return w.str();
}

std::string radial_spectrum_csv(const RadialSpectrum& s) {
  CsvWriter w;
  w.row({"coordinate", "re", "im", "weight"});
  for (std::size_t i = 0; i < s.lam.size(); ++i)
    w.row({fmt_g(s.lam[i], 17), fmt_g(s.values[i].real(), 17), fmt_g(s.values[i].imag(), 17),
           fmt_g(s.w[i], 17)});
  return w.str();
}

}  // namespace speclab::hyperbolic
