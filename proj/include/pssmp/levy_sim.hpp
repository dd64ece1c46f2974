#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pssmp/characteristics.hpp"
#include "pssmp/path.hpp"
#include "pssmp/rng.hpp"

namespace pssmp {

// Jump-truncation scheme: jumps with |y| >= epsilon are compound Poisson,
// smaller ones are replaced by a moment-matched Gaussian (variance
// sigma^2(eps), mean -sigma^2(eps)/2 per unit time, the latter because the
// compensator is l(y) = e^y - 1 rather than y) or dropped.
struct SimScheme {
    double epsilon = 1e-3;
    bool gaussian_compensation = true;
    double dt = 1e-3;
    double horizon = 1.0;

    void validate() const;
};

// density descriptor for the jump machinery; production variants adapt from
// JumpDensity, tests may hand-build toy measures
struct SimDensity {
    std::function<double(double)> pdf;
    double up_rate = 0.0;    // exponential tail rate on y > 0; 0 = compact support
    double down_rate = 0.0;  // same on y < 0
    double support_hi = std::numeric_limits<double>::infinity();
    double support_lo = -std::numeric_limits<double>::infinity();
    double origin_pole = 0.0;  // pdf ~ C |y|^{-origin_pole-1} near 0 when > 0
};

class LevySimulator {
public:
    LevySimulator(const LevyTriplet& t, const SimScheme& s, const QuadratureSpec& q = {});
    LevySimulator(double drift, const SimDensity& d, double killing_rate, const SimScheme& s,
                  const QuadratureSpec& q = {});

    SamplePath sample_path(RngStream& rng) const;

    // one jump-diffusion increment over dt (no killing applied)
    double increment(double dt, RngStream& rng) const;

    struct Endpoint {
        double value;
        bool alive;
    };
    // state at time t only; killed paths return alive = false with value 0
    Endpoint sample_endpoint(double t, RngStream& rng) const;

    // overall minimum of the event-driven scheme with exact Brownian segment
    // minima; stops at killing, when the path climbs stop_depth above its
    // running minimum, or at t_cap
    double sample_overall_min(RngStream& rng, double stop_depth, double t_cap) const;

    double sample_jump(RngStream& rng) const;

    double lambda_total() const { return lam_plus_ + lam_minus_; }
    double lambda_plus() const { return lam_plus_; }
    double lambda_minus() const { return lam_minus_; }
    double compensator_integral() const { return comp_; }
    double sigma2() const { return sigma2_; }
    double effective_drift() const { return b_eff_; }
    double killing_rate() const { return kill_; }

private:
    struct SideTable {
        double lambda = 0.0;
        std::vector<double> yw;  // quantiles on the uniform w-grid, w = -log(1-v)
        double dw = 0.0;
        double wmax = 0.0;
        std::vector<double> yv;  // direct v-grid for the bulk
        double v_cut = 1.0;
        double vstep_inv = 0.0;
        double hi = 0.0;
        double tail_rate = 0.0;

        double sample(double v) const;
        double quantile_w(double w) const;
    };

    static SideTable build_side(const std::function<double(double)>& pdf, double lo, double hi_cap,
                                double rate);

    void init(double drift, const SimDensity& d, double k, const SimScheme& s,
              const QuadratureSpec& q);

    SimScheme scheme_;
    double kill_ = 0.0;
    double b_eff_ = 0.0;
    double comp_ = 0.0;
    double sigma2_ = 0.0;
    double sigma_ = 0.0;
    double lam_plus_ = 0.0;
    double lam_minus_ = 0.0;
    double p_plus_ = 1.0;
    SideTable up_, down_;
};

SamplePath sample_levy_path(const LevyTriplet& t, const SimScheme& s, RngStream& rng);

// minimum over the living values (the time-0 value 0 included)
double running_min(const SamplePath& xi);

// Poisson draw; inversion below mean 12, PTRD above
long poisson_draw(double mean, RngStream& rng);

}  // namespace pssmp
