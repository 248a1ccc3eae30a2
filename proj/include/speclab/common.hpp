#pragma once
// Shared primitives: error taxonomy, enclosures, compensated sums, misc.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace speclab {

using cplx = std::complex<double>;
inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double pi = 3.141592653589793238462643383280;

// Invalid mathematical input (out-of-chart point, nonpositive tolerance, ...).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid configuration: bad grids, unknown config keys,
// non-dyadic scales, under-resolved quadratures.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified interval [lo, hi] containing a real quantity.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// Raised when an iteration/size cap is hit; carries the best enclosure
// obtained so far so callers can degrade gracefully.
class resource_limit_error : public std::runtime_error {
public:
  resource_limit_error(const std::string& what, Enclosure best)
      : std::runtime_error(what), best_enclosure(best) {}
  explicit resource_limit_error(const std::string& what)
      : std::runtime_error(what), best_enclosure{0.0, 0.0} {}
  Enclosure best_enclosure;
};

// Kahan compensated accumulator. Long spectral sums (up to ~1e9 terms) must
// not drift past 1e-12; naive summation would.
class KahanSum {
public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double sq(double x) { return x * x; }

// Smallest 5-smooth integer >= n; FFT sizes are chosen from this set.
inline int next_fast_size(int n) {
  if (n <= 1) return 1;
  for (int c = n;; ++c) {
    int r = c;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return c;
  }
}

// h = 2^-k for integer k >= 1, recovered exactly or rejected.
inline int dyadic_k_for_h(double h) {
  if (!(h > 0.0) || !(h <= 0.5)) throw config_error("scale h must lie in (0, 1/2]");
  int e = 0;
  double m = std::frexp(h, &e);  // h = m * 2^e, m in [0.5, 1)
  if (m != 0.5) throw config_error("scale h must be an exact dyadic 2^-k");
  return 1 - e;
}

}  // namespace speclab
