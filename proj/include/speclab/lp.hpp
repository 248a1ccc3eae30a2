#pragma once
// Smooth dyadic partition of unity in the spectral variable s = lambda^2:
//   eta(s) + sum_{k>=1} psi(4^{-k} s) = 1 on [0, 4^K] once K blocks are kept,
// with psi(s) = eta(s) - eta(4s) supported in [1/4, 4].

#include "speclab/fields.hpp"

namespace speclab::lp {

// 1 on (-inf,1], 0 on [4,inf), exp(-1/u) blend in between; eta(2.5) = 1/2.
double eta(double s);
double psi(double s);

// k = 0 applies the low multiplier eta(lambda^2); k >= 1 applies
// psi(4^{-k} lambda^2), which keeps only 4^{k-1} <= lambda^2 <= 4^{k+1}.
fields::SpectralField apply_block(const fields::SpectralField& f, int k);

// h = 2^{-k}, k >= 1; anything else is rejected.
fields::SpectralField block_for_h(const fields::SpectralField& f, double h);

// Smallest K with s_max <= 4^K, so K blocks reconstruct below s_max.
int blocks_needed(double s_max);

}  // namespace speclab::lp
