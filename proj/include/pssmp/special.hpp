#pragma once

namespace pssmp {

// log Γ(x) for x > 0, ~1e-14 relative
double log_gamma(double x);

double gamma_fn(double x);

// Γ(-x) for x in (0,2)\{1}, via the reflection formula through log_gamma
double gamma_neg(double x);

// regularized incomplete beta I_x(a,b)
double inc_beta(double a, double b, double x);

// regularized lower incomplete gamma P(a,x)
double inc_gamma(double a, double x);

}  // namespace pssmp
