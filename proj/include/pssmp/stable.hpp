#pragma once

#include <complex>

#include "pssmp/rng.hpp"

namespace pssmp {

// Stable law in the Lévy-measure parameterization: density
//   nu(y) = c_plus * y^{-alpha-1} on y > 0,  c_minus * |y|^{-alpha-1} on y < 0,
// drift a = (c_plus - c_minus)/(1 - alpha) relative to the compensator
// y 1_{|y|<1} (a = 0 for alpha = 1, which is restricted to the symmetric
// Cauchy case). Subordinator configurations are rejected.
struct StableParams {
    double alpha = 1.5;
    double c_plus = 1.0;
    double c_minus = 1.0;

    void validate() const;  // throws std::invalid_argument naming the violated rule
};

struct StableDerived {
    double a;          // generator drift
    double beta;       // skewness (c+ - c-)/(c+ + c-)
    double c;          // scale of the characteristic exponent, > 0
    double rho;        // positivity parameter P_0(X_1 < 0)
    double alpha_rho;  // alpha * rho, in (0,1], = 1 iff c_minus = 0
    double k;          // killing constant of the Lamperti Lévy process
};

StableDerived derive_params(const StableParams& p);

// characteristic exponent: E_0 exp(i lambda X_t) = exp(t psi(lambda))
std::complex<double> psi(const StableParams& p, double lambda);

// Chambers–Mallows–Stuck sampler calibrated so that the increment over dt has
// characteristic function exp(dt * psi(lambda)).
class StableSampler {
public:
    explicit StableSampler(const StableParams& p);

    double increment(double dt, RngStream& rng) const;

private:
    double alpha_;
    double shift_;       // B in the CMS formula
    double unit_scale_;  // S * c^{1/alpha}
    double inv_alpha_;
    double am1_over_a_;  // (1-alpha)/alpha
    double cauchy_scale_;
    bool cauchy_;
    double draw_standard(RngStream& rng) const;
};

double sample_increment(const StableParams& p, double dt, RngStream& rng);

// strictly positive stable variable of index gamma in (0,1) (standard S1
// parameterization with beta = 1, unit scale); used for subordinator grids
double positive_stable_draw(double gamma, RngStream& rng);

}  // namespace pssmp
