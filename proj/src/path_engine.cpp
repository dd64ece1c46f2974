#include "pssmp/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pssmp/lamperti.hpp"
#include "pssmp/parallel.hpp"

namespace pssmp {

void McConfig::validate() const {
    if (n_paths < 1) throw std::invalid_argument("McConfig: n_paths must be >= 1");
    if (!(dt > 0.0) || !(horizon > 0.0) || !(x0 > 0.0))
        throw std::invalid_argument("McConfig: dt, horizon, x0 must be > 0");
}

KilledPathResult killed_stable_path(const StableParams& p, const McConfig& mc, RngStream& rng) {
    mc.validate();
    const StableSampler sampler(p);
    KilledPathResult res;
    res.path.kind = PathKind::PSSMP;
    res.path.dt = mc.dt;
    const std::size_t n =
        static_cast<std::size_t>(std::floor(mc.horizon / mc.dt + 1e-9)) + 1;
    res.path.values.assign(std::max<std::size_t>(n, 2), SamplePath::cemetery(PathKind::PSSMP));
    res.pre_hit_value = 0.0;

    double x = mc.x0;
    res.path.values[0] = x;
    for (std::size_t i = 1; i < n; ++i) {
        const double prev = x;
        x += sampler.increment(mc.dt, rng);
        if (x <= 0.0) {
            res.path.lifetime_index = i;
            res.hit_time = i * mc.dt;
            res.pre_hit_value = prev;
            return res;
        }
        res.path.values[i] = x;
    }
    return res;
}

// ---------------------------------------------------------------------------
// conditioned processes
// ---------------------------------------------------------------------------

SimScheme ConditionedSimulator::default_scheme() {
    SimScheme s;
    s.epsilon = 1e-3;
    s.gaussian_compensation = true;
    return s;
}

ConditionedSimulator::ConditionedSimulator(Variant v, const StableParams& p, const McConfig& mc,
                                           const QuadratureSpec& q, const SimScheme& scheme)
    : variant_(v),
      alpha_(p.alpha),
      x0_(mc.x0),
      horizon_(mc.horizon),
      out_dt_(mc.dt),
      triplet_(triplet(v, p, q)),
      sim_(triplet_,
           [&] {
               SimScheme s = scheme;
               s.horizon = mc.horizon;
               s.dt = mc.dt;
               return s;
           }(),
           q),
      xi_mean_(mean_xi_tilde(v, p, q)) {
    if (v == Variant::KILLED)
        throw std::invalid_argument("ConditionedSimulator: variant must be STAY_POSITIVE or HIT_ZERO");
    mc.validate();
    const double lam = sim_.lambda_total();
    dt_xi_ = std::min(mc.dt, lam > 0.0 ? 8.0 / lam : mc.dt);
}

SamplePath ConditionedSimulator::sample(RngStream& rng) const {
    // 5% margin: the running trapezoid slightly overestimates the clock the
    // forward transform integrates, and the output must still cover horizon_
    const double target_u = 1.05 * horizon_ * std::pow(x0_, -alpha_) + out_dt_;
    SamplePath xi;
    xi.kind = PathKind::LEVY;
    xi.dt = dt_xi_;
    xi.values.reserve(4096);
    xi.values.push_back(0.0);

    double x = 0.0;
    double acc = 0.0;
    double e_prev = 1.0;
    // for HIT_ZERO the exponential functional converges; stop when the
    // remaining mass estimate is negligible against what is accumulated
    const double down_rate = variant_ == Variant::HIT_ZERO ? -alpha_ * xi_mean_ : 1.0;
    const std::size_t cap = 50'000'000;
    while (acc < target_u) {
        x += sim_.increment(dt_xi_, rng);
        xi.values.push_back(x);
        const double e_cur = std::exp(alpha_ * x);
        acc += 0.5 * dt_xi_ * (e_prev + e_cur);
        e_prev = e_cur;
        if (variant_ == Variant::HIT_ZERO && down_rate > 0.0) {
            if (e_cur < 1e-9 * down_rate * std::max(acc, 1e-300)) break;
        }
        if (xi.values.size() >= cap)
            throw std::runtime_error("conditioned_path: xi simulation exceeded the step cap");
    }
    if (xi.values.size() < 2) xi.values.push_back(x);

    if (variant_ == Variant::HIT_ZERO && acc < target_u) {
        // xi has drifted off to -inf for good; the pssMp is absorbed at
        // x0^alpha * A(inf), which the accumulated clock now approximates
        xi.lifetime_index = xi.values.size();
        xi.values.push_back(SamplePath::cemetery(PathKind::LEVY));
    }

    SamplePath out = lamperti_forward(xi, x0_, alpha_, out_dt_);
    // trim to the requested horizon
    const std::size_t want =
        static_cast<std::size_t>(std::floor(horizon_ / out_dt_ + 1e-9)) + 1;
    if (out.values.size() > std::max<std::size_t>(want, 2))
        out.values.resize(std::max<std::size_t>(want, 2));
    if (out.lifetime_index && *out.lifetime_index >= out.values.size())
        out.lifetime_index.reset();
    return out;
}

SamplePath conditioned_path(Variant v, const StableParams& p, const McConfig& mc,
                            const QuadratureSpec& q, RngStream& rng) {
    return ConditionedSimulator(v, p, mc, q).sample(rng);
}

// ---------------------------------------------------------------------------
// subordinator undershoot
// ---------------------------------------------------------------------------

double subordinator_undershoot(double alpharho, double level, double dt, RngStream& rng) {
    if (!(alpharho > 0.0 && alpharho < 1.0))
        throw std::invalid_argument("subordinator_undershoot: index must lie in (0,1)");
    if (!(level > 0.0)) throw std::invalid_argument("subordinator_undershoot: level must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("subordinator_undershoot: dt must be > 0");
    const double step_scale = std::pow(dt, 1.0 / alpharho);
    double h = 0.0;
    const std::size_t cap = 200'000'000;
    for (std::size_t i = 0; i < cap; ++i) {
        const double next = h + step_scale * positive_stable_draw(alpharho, rng);
        if (next > level) return level - h;
        h = next;
    }
    throw std::runtime_error("subordinator_undershoot: horizon cap exhausted before crossing");
}

// ---------------------------------------------------------------------------
// small-time first passage table
// ---------------------------------------------------------------------------

std::vector<TailRow> first_passage_stats(const StableParams& p, double x0,
                                         const std::vector<double>& t_grid, long n,
                                         std::uint64_t seed, int steps_per_t) {
    if (!(x0 > 0.0)) throw std::invalid_argument("first_passage_stats: x0 must be > 0");
    if (n < 1 || steps_per_t < 1) throw std::invalid_argument("first_passage_stats: bad sizes");
    const StableSampler sampler(p);
    std::vector<TailRow> rows;
    rows.reserve(t_grid.size());

    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        const double t = t_grid[ti];
        if (!(t > 0.0)) throw std::invalid_argument("first_passage_stats: t values must be > 0");
        const double dt = t / steps_per_t;
        const std::size_t chunk = 4096;
        const std::size_t nchunks = (static_cast<std::size_t>(n) + chunk - 1) / chunk;
        std::vector<long> hit_counts(nchunks, 0), neg_counts(nchunks, 0);

        parallel_for(nchunks, [&](std::size_t c) {
            const std::size_t lo = c * chunk;
            const std::size_t hi = std::min(lo + chunk, static_cast<std::size_t>(n));
            long hits = 0, negs = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                RngStream rng(seed, (ti << 40) ^ i);
                double x = x0;
                bool hit = false;
                for (int s = 0; s < steps_per_t; ++s) {
                    x += sampler.increment(dt, rng);
                    if (x <= 0.0) hit = true;
                }
                if (hit) ++hits;
                if (x <= 0.0) ++negs;
            }
            hit_counts[c] = hits;
            neg_counts[c] = negs;
        }, 1);

        long hits = 0, negs = 0;
        for (std::size_t c = 0; c < nchunks; ++c) {
            hits += hit_counts[c];
            negs += neg_counts[c];
        }
        const double ph = static_cast<double>(hits) / n;
        const double pn = static_cast<double>(negs) / n;
        TailRow row;
        row.t = t;
        row.est_t = ph / t;
        row.se_t = std::sqrt(ph * (1.0 - ph) / n) / t;
        row.est_neg = pn / t;
        row.se_neg = std::sqrt(pn * (1.0 - pn) / n) / t;
        row.n = n;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// minimum of the killed path, two constructions
// ---------------------------------------------------------------------------

KilledMinResult killed_min_sample(const StableParams& p, double base_dt, RngStream& rng,
                                  double refine, double t_cap) {
    if (!(base_dt > 0.0)) throw std::invalid_argument("killed_min_sample: base_dt must be > 0");
    const StableSampler sampler(p);
    const double alpha = p.alpha;
    double x = 1.0, m = 1.0, t = 0.0;
    const std::size_t cap_steps = 100'000'000;
    for (std::size_t i = 0; i < cap_steps; ++i) {
        double dt_local = base_dt * std::pow(x, alpha);
        if (x < 2.0 * m) dt_local *= refine;
        x += sampler.increment(dt_local, rng);
        if (x <= 0.0) return {m, true};
        if (x < m) m = x;
        t += dt_local;
        if (t >= t_cap) return {m, false};
    }
    return {m, false};
}

double killed_min_via_inverse_lamperti(const StableParams& p, double base_dt, double seg_horizon,
                                       RngStream& rng, double t_cap) {
    const StableSampler sampler(p);
    const double alpha = p.alpha;
    double x_start = 1.0;
    double log_min = 0.0;
    double t_total = 0.0;
    const std::size_t cap_segments = 100'000;

    for (std::size_t seg = 0; seg < cap_segments; ++seg) {
        // one uniform-grid segment at the scale of its starting level; it ends
        // when the path leaves [x_start/2, 2 x_start], is absorbed, or the
        // segment horizon runs out
        const double dt_seg = base_dt * std::pow(x_start, alpha);
        const double horizon_seg = seg_horizon * std::pow(x_start, alpha);
        const std::size_t max_steps =
            static_cast<std::size_t>(std::floor(horizon_seg / dt_seg + 1e-9));

        SamplePath xpath;
        xpath.kind = PathKind::PSSMP;
        xpath.dt = dt_seg;
        xpath.values.reserve(max_steps + 2);
        xpath.values.push_back(x_start);
        double x = x_start;
        bool absorbed = false;
        for (std::size_t i = 0; i < max_steps; ++i) {
            x += sampler.increment(dt_seg, rng);
            if (x <= 0.0) {
                xpath.lifetime_index = xpath.values.size();
                xpath.values.push_back(SamplePath::cemetery(PathKind::PSSMP));
                absorbed = true;
                break;
            }
            xpath.values.push_back(x);
            if (x < 0.5 * x_start || x > 2.0 * x_start) break;
        }
        if (xpath.values.size() < 2) xpath.values.push_back(x);

        const SamplePath xi = lamperti_inverse(xpath, alpha, base_dt);
        const std::size_t live = xi.living_count();
        double seg_min = 0.0;
        for (std::size_t i = 0; i < live; ++i) seg_min = std::min(seg_min, xi.values[i]);
        log_min = std::min(log_min, std::log(x_start) + seg_min);

        if (absorbed) break;
        t_total += (xpath.values.size() - 1) * dt_seg;
        if (t_total >= t_cap) break;
        x_start = xpath.values.back();
    }
    return std::exp(log_min);
}

}  // namespace pssmp
