#pragma once

#include "pssmp/path.hpp"

namespace pssmp {

// X_t = x0 exp(xi_{tau(t x0^{-alpha})}), tau inverting the exponential clock
// A(s) = Int_0^s exp(alpha xi_u) du. Values interpolate linearly in log-space;
// A integrates that interpolant exactly cell by cell (the logarithmic-mean
// rule, which matches the trapezoid to third order on small increments), so
// the clock and the values form an exact pair and jump times survive the
// round trip. The left value is carried across the final partial step when
// the input dies. Output grid step defaults to xi.dt.
SamplePath lamperti_forward(const SamplePath& xi, double x0, double alpha);
SamplePath lamperti_forward(const SamplePath& xi, double x0, double alpha, double out_dt);

// xi_s = log(X_{sigma^{-1}(s)} / X_0) with the discrete clock
// sigma_j = sum_{i<j} dt / X_i^alpha (left rule), so a path absorbed at grid
// index j yields a Lévy path with lifetime sum_{i<j} dt / X_i^alpha.
SamplePath lamperti_inverse(const SamplePath& x, double alpha);
SamplePath lamperti_inverse(const SamplePath& x, double alpha, double out_dt);

// trapezoid estimate of Int_0^{zeta ^ horizon} exp(alpha xi_s) ds
double exp_functional(const SamplePath& xi, double alpha);

// the discrete clocks themselves (source grid times -> accumulated clock)
ClockMap exp_clock(const SamplePath& xi, double alpha);
ClockMap inverse_clock(const SamplePath& x, double alpha);

}  // namespace pssmp
