#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pssmp/characteristics.hpp"
#include "pssmp/levy_sim.hpp"
#include "pssmp/path.hpp"
#include "pssmp/rng.hpp"
#include "pssmp/stable.hpp"

namespace pssmp {

struct McConfig {
    long n_paths = 1000;
    double dt = 1e-3;
    double horizon = 1.0;
    double x0 = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct KilledPathResult {
    SamplePath path;                 // pssMp path, absorbed at the first grid value <= 0
    std::optional<double> hit_time;  // grid estimate of T
    double pre_hit_value;            // X_{T-} estimate (last positive value); 0 if never hit
};

KilledPathResult killed_stable_path(const StableParams& p, const McConfig& mc, RngStream& rng);

// Conditioned processes are simulated through the forward Lamperti transform
// of their triplet Lévy paths, not by h-transform weighting of killed paths.
class ConditionedSimulator {
public:
    ConditionedSimulator(Variant v, const StableParams& p, const McConfig& mc,
                         const QuadratureSpec& q, const SimScheme& scheme = default_scheme());

    SamplePath sample(RngStream& rng) const;

    const LevyTriplet& levy_triplet() const { return triplet_; }
    double xi_mean() const { return xi_mean_; }

    static SimScheme default_scheme();

private:
    Variant variant_;
    double alpha_;
    double x0_;
    double horizon_;
    double out_dt_;
    LevyTriplet triplet_;
    LevySimulator sim_;
    double dt_xi_;
    double xi_mean_;
};

SamplePath conditioned_path(Variant v, const StableParams& p, const McConfig& mc,
                            const QuadratureSpec& q, RngStream& rng);

// undershoot of a stable subordinator of index alpharho at the given level:
// level - H_{nu(level)-} on a grid of step dt; extends the horizon until the
// crossing happens (step cap guards infinite loops)
double subordinator_undershoot(double alpharho, double level, double dt, RngStream& rng);

struct TailRow {
    double t;
    double est_t;    // (1/t) P(T <= t), grid rule
    double se_t;
    double est_neg;  // (1/t) P(X_t <= 0)
    double se_neg;
    long n;
};

std::vector<TailRow> first_passage_stats(const StableParams& p, double x0,
                                         const std::vector<double>& t_grid, long n,
                                         std::uint64_t seed, int steps_per_t = 400);

// Minimum (relative to x0) of the killed stable path. Stepping is
// self-similar, dt_local = base_dt (X/x0)^alpha, with an extra refinement
// factor while X sits within a factor 2 of the running minimum; this keeps the
// grid bias of the minimum proportional to the level it is attained at.
struct KilledMinResult {
    double min_rel;
    bool absorbed;
};
KilledMinResult killed_min_sample(const StableParams& p, double base_dt, RngStream& rng,
                                  double refine = 0.125, double t_cap = 1e5);

// exp(min xi) where xi is assembled by applying the inverse Lamperti transform
// to chained uniform-grid segments of a killed stable path (each segment
// rescaled to its starting level); the independent construction of the same
// law used by the cross-checks
double killed_min_via_inverse_lamperti(const StableParams& p, double base_dt, double seg_horizon,
                                       RngStream& rng, double t_cap = 1e5);

}  // namespace pssmp
