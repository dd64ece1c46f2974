#pragma once

#include <complex>
#include <string>

#include "pssmp/quadrature.hpp"
#include "pssmp/stable.hpp"

namespace pssmp {

// The three Lamperti-underlying Lévy processes: xi of the killed stable
// process, xi-up of the process conditioned to stay positive, xi-down of the
// process conditioned to hit 0 continuously. With alpha*rho = 1 the HIT_ZERO
// conditioning is degenerate and coincides with KILLED.
enum class Variant { KILLED, STAY_POSITIVE, HIT_ZERO };

const char* variant_name(Variant v);

// pi_v(y) = exp(tilt_v * y) * nu(e^y - 1), tilt = 1, alpha*rho + 1, alpha*rho
struct JumpDensity {
    Variant variant;
    StableParams params;
    double tilt;

    double operator()(double y) const;

    // pi_v(y) ~ c_plus * exp(-up_rate * y) as y -> +inf
    double up_rate() const { return params.alpha + 1.0 - tilt; }
    // pi_v(y) ~ c_minus * exp(-down_rate * |y|) as y -> -inf
    double down_rate() const { return tilt; }
};

// (drift, jump density, killing rate) relative to the fixed compensator
// l(y) = (e^y - 1) 1_{|e^y - 1| < 1}
struct LevyTriplet {
    double drift;
    JumpDensity density;
    double killing_rate;
};

struct DriftConstants {
    double a1, a2, a3, a4;
};

double jump_density(Variant v, const StableParams& p, double y);

// the four drift integrals of the conditioned generators
DriftConstants drift_constants(const StableParams& p, const QuadratureSpec& q);

LevyTriplet triplet(Variant v, const StableParams& p, const QuadratureSpec& q);

// Phi_v(lambda) = i*drift*lambda
//   + Int (e^{i lambda y} - 1 - i lambda (e^y-1) 1_{|e^y-1|<1}) pi_v(y) dy  - k_v
std::complex<double> char_exponent(Variant v, const StableParams& p, double lambda,
                                   const QuadratureSpec& q);

// same integral at a complex frequency; exposed for the exponential-tilt
// cross-checks (Phi(-i alpha rho) = 0 etc.)
std::complex<double> char_exponent_at(const LevyTriplet& t, std::complex<double> lambda,
                                      const QuadratureSpec& q);

// mean of the unkilled version of the variant's Lévy process
double mean_xi_tilde(Variant v, const StableParams& p, const QuadratureSpec& q);

struct ConsistencyReport {
    StableParams params;
    StableDerived derived;
    DriftConstants constants;
    double resid_up;      // |k - (a*alpha*rho + a2)|
    double resid_down;    // |k - (a*(alpha*rho - 1) + a4)|
    double resid_drift;   // |a4 - a2 - a|
    bool pass_up, pass_down, pass_drift;

    bool all_pass() const { return pass_up && pass_down && pass_drift; }
};

// residual tolerance: 1e-6 * max(1, |reference|) unless the quadrature spec
// asks for tighter
ConsistencyReport consistency_report(const StableParams& p, const QuadratureSpec& q);

std::string triplet_json(Variant v, const StableParams& p, const QuadratureSpec& q);

}  // namespace pssmp
