#include "pssmp/lamperti.hpp"

#include <cmath>
#include <stdexcept>

namespace pssmp {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("lamperti: alpha must lie in (0,2)");
}

// piecewise-linear inverse of a strictly increasing knot sequence; returns the
// fractional knot position of target, assuming clock.front() <= target <= clock.back()
double locate(const std::vector<double>& clock, double target, std::size_t& hint) {
    while (hint + 2 < clock.size() && clock[hint + 1] <= target) ++hint;
    const double lo = clock[hint], hi = clock[hint + 1];
    const double frac = hi > lo ? (target - lo) / (hi - lo) : 0.0;
    return static_cast<double>(hint) + std::min(std::max(frac, 0.0), 1.0);
}

}  // namespace

namespace {

// ∫ exp(alpha * linear) over one cell: the exact integral of the log-linear
// interpolant, so that the forward clock and the interpolated values form an
// exact Lamperti pair. Falls back to the flat-cell limit when the increment
// vanishes; agrees with the trapezoid rule to O(increment^3) on smooth cells.
double exp_cell_integral(double dt, double alpha, double xi0, double xi1) {
    const double d = alpha * (xi1 - xi0);
    if (std::fabs(d) < 1e-8)
        return dt * std::exp(alpha * xi0) * (1.0 + 0.5 * d + d * d / 6.0);
    return dt * (std::exp(alpha * xi1) - std::exp(alpha * xi0)) / d;
}

}  // namespace

ClockMap exp_clock(const SamplePath& xi, double alpha) {
    if (xi.kind != PathKind::LEVY)
        throw std::invalid_argument("exp_clock: input must be a Lévy path");
    xi.validate();
    check_alpha(alpha);
    const std::size_t live = xi.living_count();
    if (live < 1) throw std::invalid_argument("exp_clock: path dead from the start");

    ClockMap m;
    const bool died = xi.lifetime_index && *xi.lifetime_index <= xi.values.size();
    const std::size_t knots = died ? live + 1 : live;
    m.source_times.resize(knots);
    m.target_times.resize(knots);
    double acc = 0.0;
    m.source_times[0] = 0.0;
    m.target_times[0] = 0.0;
    for (std::size_t j = 1; j < live; ++j) {
        acc += exp_cell_integral(xi.dt, alpha, xi.values[j - 1], xi.values[j]);
        m.source_times[j] = j * xi.dt;
        m.target_times[j] = acc;
    }
    if (died) {
        // left value across the final partial step up to the death time
        acc += xi.dt * std::exp(alpha * xi.values[live - 1]);
        m.source_times[live] = live * xi.dt;
        m.target_times[live] = acc;
    }
    return m;
}

ClockMap inverse_clock(const SamplePath& x, double alpha) {
    if (x.kind != PathKind::PSSMP)
        throw std::invalid_argument("inverse_clock: input must be a pssMp path");
    x.validate();
    check_alpha(alpha);
    const std::size_t live = x.living_count();
    if (live < 1) throw std::invalid_argument("inverse_clock: path dead from the start");

    ClockMap m;
    const bool died = x.lifetime_index && *x.lifetime_index <= x.values.size();
    const std::size_t knots = died ? live + 1 : live;
    m.source_times.resize(knots);
    m.target_times.resize(knots);
    double acc = 0.0;
    m.source_times[0] = 0.0;
    m.target_times[0] = 0.0;
    for (std::size_t j = 1; j < knots; ++j) {
        acc += x.dt * std::pow(x.values[j - 1], -alpha);
        m.source_times[j] = j * x.dt;
        m.target_times[j] = acc;
    }
    return m;
}

SamplePath lamperti_forward(const SamplePath& xi, double x0, double alpha) {
    return lamperti_forward(xi, x0, alpha, xi.dt);
}

SamplePath lamperti_forward(const SamplePath& xi, double x0, double alpha, double out_dt) {
    if (!(x0 > 0.0)) throw std::invalid_argument("lamperti_forward: x0 must be > 0");
    if (!(out_dt > 0.0)) throw std::invalid_argument("lamperti_forward: out_dt must be > 0");
    const ClockMap clock = exp_clock(xi, alpha);  // validates
    const std::size_t live = xi.living_count();
    const bool died = xi.lifetime_index && *xi.lifetime_index <= xi.values.size();

    const double xa = std::pow(x0, alpha);
    const double total = clock.target_times.back() * xa;  // X-time at the end of input

    SamplePath out;
    out.kind = PathKind::PSSMP;
    out.dt = out_dt;

    // number of living output points: strictly before the death time when the
    // input dies, up to the covered horizon otherwise
    std::size_t n_live;
    if (died) {
        n_live = static_cast<std::size_t>(std::ceil(total / out_dt - 1e-12));
        out.lifetime_index = n_live;
    } else {
        n_live = static_cast<std::size_t>(std::floor(total / out_dt + 1e-12)) + 1;
    }
    if (n_live < 1) n_live = 1;

    const std::size_t n_total = std::max<std::size_t>(n_live + (died ? 1 : 0), 2);
    out.values.assign(n_total, SamplePath::cemetery(PathKind::PSSMP));
    if (!died && n_total > n_live) out.lifetime_index = n_live;  // grid padding only
    std::size_t hint = 0;
    for (std::size_t i = 0; i < n_live; ++i) {
        const double u = std::min(i * out_dt / xa, clock.target_times.back());
        const double pos = locate(clock.target_times, u, hint);
        const std::size_t j = static_cast<std::size_t>(pos);
        double xi_val;
        if (j + 1 < live) {
            // invert the clock of the log-linear cell in closed form:
            // exp(alpha xi(s)) is linear in A along the cell
            const double dxi = xi.values[j + 1] - xi.values[j];
            if (std::fabs(alpha * dxi) < 1e-8) {
                const double frac = pos - static_cast<double>(j);
                xi_val = xi.values[j] + frac * dxi;
            } else {
                const double e = std::exp(alpha * xi.values[j]) +
                                 (u - clock.target_times[j]) * alpha * dxi / xi.dt;
                xi_val = std::log(e) / alpha;
            }
        } else {
            xi_val = xi.values[live - 1];  // left value across the death step
        }
        out.values[i] = x0 * std::exp(xi_val);
    }
    return out;
}

SamplePath lamperti_inverse(const SamplePath& x, double alpha) {
    return lamperti_inverse(x, alpha, x.dt);
}

SamplePath lamperti_inverse(const SamplePath& x, double alpha, double out_dt) {
    if (!(out_dt > 0.0)) throw std::invalid_argument("lamperti_inverse: out_dt must be > 0");
    const ClockMap clock = inverse_clock(x, alpha);  // validates positivity
    const std::size_t live = x.living_count();
    const bool died = x.lifetime_index && *x.lifetime_index <= x.values.size();
    const double x0 = x.values[0];
    const double total = clock.target_times.back();  // xi lifetime when x died

    SamplePath out;
    out.kind = PathKind::LEVY;
    out.dt = out_dt;

    std::size_t n_live;
    if (died) {
        n_live = static_cast<std::size_t>(std::ceil(total / out_dt - 1e-12));
        out.lifetime_index = n_live;
    } else {
        n_live = static_cast<std::size_t>(std::floor(total / out_dt + 1e-12)) + 1;
    }
    if (n_live < 1) n_live = 1;

    const std::size_t n_total = std::max<std::size_t>(n_live + (died ? 1 : 0), 2);
    out.values.assign(n_total, SamplePath::cemetery(PathKind::LEVY));
    if (!died && n_total > n_live) out.lifetime_index = n_live;
    std::size_t hint = 0;
    for (std::size_t i = 0; i < n_live; ++i) {
        const double s = std::min(i * out_dt, total);
        const double pos = locate(clock.target_times, s, hint);
        const std::size_t j = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(j);
        double lx;
        if (j + 1 < live) {
            lx = std::log(x.values[j]) + frac * (std::log(x.values[j + 1]) - std::log(x.values[j]));
        } else {
            lx = std::log(x.values[live - 1]);
        }
        out.values[i] = lx - std::log(x0);
    }
    return out;
}

double exp_functional(const SamplePath& xi, double alpha) {
    if (xi.kind != PathKind::LEVY)
        throw std::invalid_argument("exp_functional: input must be a Lévy path");
    xi.validate();
    check_alpha(alpha);
    const std::size_t live = xi.living_count();
    if (live < 1) throw std::invalid_argument("exp_functional: path dead from the start");
    // trapezoid between living knots, left value across the death step
    double acc = 0.0;
    double prev = std::exp(alpha * xi.values[0]);
    for (std::size_t j = 1; j < live; ++j) {
        const double cur = std::exp(alpha * xi.values[j]);
        acc += 0.5 * xi.dt * (prev + cur);
        prev = cur;
    }
    if (xi.lifetime_index && *xi.lifetime_index <= xi.values.size()) acc += xi.dt * prev;
    return acc;
}

}  // namespace pssmp
