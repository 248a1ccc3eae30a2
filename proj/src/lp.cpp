#include "speclab/lp.hpp"

#include <cmath>

namespace speclab::lp {

namespace {
double sigma(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double eta(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 4.0) return 0.0;
  double u1 = (s - 1.0) / 3.0;
  double u2 = 1.0 - u1;
  double s1 = sigma(u1), s2 = sigma(u2);
  return s2 / (s1 + s2);
}

double psi(double s) { return eta(s) - eta(4.0 * s); }

fields::SpectralField apply_block(const fields::SpectralField& f, int k) {
  f.validate();
  if (k < 0) throw config_error("apply_block: negative block index");
  fields::SpectralField g = f;
  double scale = std::pow(0.25, k);
  for (std::size_t j = 0; j < g.size(); ++j) {
    double s = g.table->eig(j);
    g.c[j] *= (k == 0) ? eta(s) : psi(scale * s);
  }
  return g;
}

fields::SpectralField block_for_h(const fields::SpectralField& f, double h) {
  int k = dyadic_k_for_h(h);
  if (k < 1) throw config_error("block_for_h: h must be 2^-k with k >= 1");
  return apply_block(f, k);
}

int blocks_needed(double s_max) {
  int K = 0;
  double cap = 1.0;
  while (cap < s_max) {
    cap *= 4.0;
    ++K;
  }
  return K;
}

}  // namespace speclab::lp
