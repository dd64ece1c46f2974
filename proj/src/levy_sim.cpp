#include "pssmp/levy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pssmp/special.hpp"

namespace pssmp {

void SimScheme::validate() const {
    if (!(epsilon > 0.0) || !(epsilon <= 0.5))
        throw std::invalid_argument("SimScheme: epsilon must lie in (0, 0.5]");
    if (!(dt > 0.0)) throw std::invalid_argument("SimScheme: dt must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("SimScheme: horizon must be > 0");
}

long poisson_draw(double mean, RngStream& rng) {
    if (mean <= 0.0) return 0;
    if (mean < 12.0) {
        const double limit = std::exp(-mean);
        long k = -1;
        double prod = 1.0;
        do {
            ++k;
            prod *= rng.uniform();
        } while (prod > limit);
        return k;
    }
    // PTRD (Hörmann 1993)
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double lmu = std::log(mean);
    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        if (lhs <= kf * lmu - mean - log_gamma(kf + 1.0)) return static_cast<long>(kf);
    }
}

// ---------------------------------------------------------------------------
// quantile tables
// ---------------------------------------------------------------------------

double LevySimulator::SideTable::quantile_w(double w) const {
    if (w >= wmax) {
        return tail_rate > 0.0 ? hi + (w - wmax) / tail_rate : hi;
    }
    const double pos = w / dw;
    const std::size_t j = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(j);
    return yw[j] + frac * (yw[j + 1] - yw[j]);
}

double LevySimulator::SideTable::sample(double v) const {
    if (v < v_cut) {
        const double pos = v * vstep_inv;
        const std::size_t j = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(j);
        return yv[j] + frac * (yv[j + 1] - yv[j]);
    }
    return quantile_w(-std::log1p(-v));
}

LevySimulator::SideTable LevySimulator::build_side(const std::function<double(double)>& pdf,
                                                   double lo, double hi_cap, double rate) {
    SideTable t;
    // mesh: geometric through the power-law region, then linear into the tail
    const double mid = std::min(hi_cap, std::max(4.0 * lo, 2.0));
    double hi = hi_cap;
    if (rate > 0.0) hi = std::min(hi_cap, mid + 70.0 / rate);
    std::vector<double> mesh;
    const int n_geo = 4000, n_lin = 3000;
    mesh.reserve(n_geo + n_lin + 2);
    const double ratio = std::log(mid / lo) / n_geo;
    for (int i = 0; i <= n_geo; ++i) mesh.push_back(lo * std::exp(i * ratio));
    if (hi > mid) {
        const double step = (hi - mid) / n_lin;
        for (int i = 1; i <= n_lin; ++i) mesh.push_back(mid + i * step);
    }

    // per-cell masses by a single Kronrod pass (the integrand is smooth)
    const std::size_t ncell = mesh.size() - 1;
    std::vector<double> mass(ncell);
    for (std::size_t i = 0; i < ncell; ++i) {
        const double a = mesh[i], b = mesh[i + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double acc = detail::kKronrodW[7] * pdf(c);
        for (int j = 0; j < 7; ++j) {
            const double dx = h * detail::kKronrodX[j];
            acc += detail::kKronrodW[j] * (pdf(c - dx) + pdf(c + dx));
        }
        mass[i] = acc * h;
    }

    // tail accumulation from the top
    std::vector<double> tail(ncell + 1, 0.0);
    for (std::size_t i = ncell; i-- > 0;) tail[i] = tail[i + 1] + mass[i];
    t.lambda = tail[0];
    if (!(t.lambda > 0.0)) return t;  // empty side

    // knots (w_i, y_i), truncated where the tail drops below 1e-12 of the mass
    std::vector<double> wk, yk;
    wk.reserve(ncell + 1);
    yk.reserve(ncell + 1);
    wk.push_back(0.0);
    yk.push_back(mesh[0]);
    const double floor_tail = 1e-12 * t.lambda;
    double w_last = 0.0;
    for (std::size_t i = 1; i <= ncell; ++i) {
        if (tail[i] <= floor_tail) break;
        const double w = -std::log(tail[i] / t.lambda);
        if (w <= w_last) continue;  // zero-mass cell
        wk.push_back(w);
        yk.push_back(mesh[i]);
        w_last = w;
    }
    t.hi = yk.back();
    t.wmax = w_last;
    t.tail_rate = rate;

    // resample onto the uniform w grid
    const int J = 8192;
    t.yw.resize(J + 1);
    t.dw = t.wmax / J;
    std::size_t k = 0;
    for (int j = 0; j <= J; ++j) {
        const double w = j * t.dw;
        while (k + 2 < wk.size() && wk[k + 1] <= w) ++k;
        const double span = wk[k + 1] - wk[k];
        const double frac = span > 0.0 ? (w - wk[k]) / span : 0.0;
        t.yw[j] = yk[k] + frac * (yk[k + 1] - yk[k]);
    }

    // direct v-grid for the bulk
    const int V = 65536;
    t.v_cut = 1.0 - 1.0 / 1024.0;
    t.vstep_inv = V / t.v_cut;
    t.yv.resize(V + 2);
    for (int j = 0; j <= V + 1; ++j) {
        const double v = std::min(j / t.vstep_inv, t.v_cut);
        t.yv[j] = t.quantile_w(-std::log1p(-v));
    }
    return t;
}

// ---------------------------------------------------------------------------
// simulator
// ---------------------------------------------------------------------------

namespace {

SimDensity adapt_density(const JumpDensity& pi) {
    SimDensity d;
    d.pdf = [pi](double y) { return pi(y); };
    d.up_rate = pi.up_rate();
    d.down_rate = pi.down_rate();
    d.origin_pole = pi.params.alpha;
    if (pi.params.c_plus == 0.0) d.support_hi = 0.0;
    if (pi.params.c_minus == 0.0) d.support_lo = 0.0;
    return d;
}

}  // namespace

LevySimulator::LevySimulator(const LevyTriplet& t, const SimScheme& s, const QuadratureSpec& q) {
    init(t.drift, adapt_density(t.density), t.killing_rate, s, q);
}

LevySimulator::LevySimulator(double drift, const SimDensity& d, double killing_rate,
                             const SimScheme& s, const QuadratureSpec& q) {
    init(drift, d, killing_rate, s, q);
}

void LevySimulator::init(double drift, const SimDensity& d, double k, const SimScheme& s,
                         const QuadratureSpec& q) {
    s.validate();
    if (!(k >= 0.0)) throw std::invalid_argument("LevySimulator: killing rate must be >= 0");
    scheme_ = s;
    kill_ = k;
    const double eps = s.epsilon;

    if (d.support_hi > eps)
        up_ = build_side(d.pdf, eps, d.support_hi, d.up_rate);
    if (d.support_lo < -eps) {
        auto neg = [&pdf = d.pdf](double u) { return pdf(-u); };
        down_ = build_side(neg, eps, -d.support_lo, d.down_rate);
    }
    lam_plus_ = up_.lambda;
    lam_minus_ = down_.lambda;
    const double lam = lam_plus_ + lam_minus_;
    p_plus_ = lam > 0.0 ? lam_plus_ / lam : 1.0;

    // compensator integral over |y| >= eps against l(y) = (e^y-1) 1_{y < ln 2}
    const double ln2 = std::log(2.0);
    comp_ = 0.0;
    if (lam_plus_ > 0.0 && eps < ln2) {
        auto f = [&](double y) { return std::expm1(y) * d.pdf(y); };
        comp_ += integrate(f, eps, std::min(ln2, d.support_hi), q);
    }
    if (lam_minus_ > 0.0) {
        auto f = [&](double y) { return std::expm1(y) * d.pdf(y); };
        const double lo = std::max(d.support_lo, down_.hi > 0.0 ? -down_.hi - 70.0 : -70.0);
        comp_ += integrate(f, lo, -eps, q);
    }

    // variance of the discarded small jumps
    sigma2_ = 0.0;
    if (d.origin_pole > 0.0) {
        const double pole = d.origin_pole;
        if (d.support_hi > 0.0) {
            auto g = [&](double y) { return std::pow(y, pole + 1.0) * d.pdf(y); };
            sigma2_ += integrate_power_left(g, 0.0, eps, 2.0 - pole, q);
        }
        if (d.support_lo < 0.0) {
            auto g = [&](double u) { return std::pow(u, pole + 1.0) * d.pdf(-u); };
            sigma2_ += integrate_power_left(g, 0.0, eps, 2.0 - pole, q);
        }
    } else {
        auto f = [&](double y) { return y * y * d.pdf(y); };
        if (d.support_hi > 0.0) sigma2_ += integrate(f, 0.0, eps, q);
        if (d.support_lo < 0.0) sigma2_ += integrate(f, -eps, 0.0, q);
    }
    sigma_ = s.gaussian_compensation ? std::sqrt(sigma2_) : 0.0;

    b_eff_ = drift - comp_ - (s.gaussian_compensation ? 0.5 * sigma2_ : 0.0);
}

double LevySimulator::sample_jump(RngStream& rng) const {
    const double u = rng.uniform();
    if (u < p_plus_) return up_.sample(rng.uniform());
    return -down_.sample(rng.uniform());
}

double LevySimulator::increment(double dt, RngStream& rng) const {
    double dx = b_eff_ * dt;
    if (sigma_ > 0.0) dx += sigma_ * std::sqrt(dt) * rng.normal();
    const long n = poisson_draw(lambda_total() * dt, rng);
    for (long j = 0; j < n; ++j) dx += sample_jump(rng);
    return dx;
}

SamplePath LevySimulator::sample_path(RngStream& rng) const {
    if (lambda_total() * scheme_.dt > 10.0)
        throw std::invalid_argument(
            "sample_levy_path: tail-mass guard violated (lambda(epsilon) * dt > 10); "
            "decrease dt or increase epsilon");
    SamplePath out;
    out.kind = PathKind::LEVY;
    out.dt = scheme_.dt;
    const std::size_t n = static_cast<std::size_t>(std::floor(scheme_.horizon / scheme_.dt + 1e-9)) + 1;
    out.values.assign(std::max<std::size_t>(n, 2), SamplePath::cemetery(PathKind::LEVY));

    double zeta = std::numeric_limits<double>::infinity();
    if (kill_ > 0.0) zeta = rng.exponential() / kill_;
    std::size_t live = out.values.size();
    if (zeta <= scheme_.horizon) {
        live = static_cast<std::size_t>(std::ceil(zeta / scheme_.dt - 1e-12));
        if (live < 1) live = 1;
        if (live > out.values.size()) live = out.values.size();
        out.lifetime_index = live;
    }
    double x = 0.0;
    out.values[0] = 0.0;
    for (std::size_t i = 1; i < live; ++i) {
        x += increment(scheme_.dt, rng);
        out.values[i] = x;
    }
    return out;
}

LevySimulator::Endpoint LevySimulator::sample_endpoint(double t, RngStream& rng) const {
    if (!(t > 0.0)) throw std::invalid_argument("sample_endpoint: t must be > 0");
    if (kill_ > 0.0 && rng.exponential() / kill_ <= t) return {0.0, false};
    double x = b_eff_ * t;
    if (sigma_ > 0.0) x += sigma_ * std::sqrt(t) * rng.normal();
    const long n = poisson_draw(lambda_total() * t, rng);
    for (long j = 0; j < n; ++j) x += sample_jump(rng);
    return {x, true};
}

double LevySimulator::sample_overall_min(RngStream& rng, double stop_depth, double t_cap) const {
    double zeta = std::numeric_limits<double>::infinity();
    if (kill_ > 0.0) zeta = rng.exponential() / kill_;
    const double lam = lambda_total();
    const double sig2 = sigma_ * sigma_;
    double t = 0.0, x = 0.0, m = 0.0;
    for (;;) {
        double seg = lam > 0.0 ? rng.exponential() / lam : std::numeric_limits<double>::infinity();
        bool jump_after = true;
        if (t + seg >= zeta) {
            seg = zeta - t;
            jump_after = false;
        }
        if (t + seg >= t_cap) {
            seg = t_cap - t;
            jump_after = false;
        }
        double e = b_eff_ * seg;
        double seg_min;
        if (sigma_ > 0.0 && seg > 0.0) {
            e += sigma_ * std::sqrt(seg) * rng.normal();
            // Brownian bridge minimum given the segment endpoint
            const double lu = std::log(rng.uniform());
            seg_min = 0.5 * (e - std::sqrt(e * e - 2.0 * sig2 * seg * lu));
        } else {
            seg_min = std::min(0.0, e);
        }
        if (x + seg_min < m) m = x + seg_min;
        x += e;
        t += seg;
        if (!jump_after) return m;
        x += sample_jump(rng);
        if (x < m) m = x;
        if (x - m > stop_depth) return m;
    }
}

SamplePath sample_levy_path(const LevyTriplet& t, const SimScheme& s, RngStream& rng) {
    return LevySimulator(t, s).sample_path(rng);
}

double running_min(const SamplePath& xi) {
    const std::size_t live = xi.living_count();
    if (live == 0) throw std::invalid_argument("running_min: path dead from the start");
    double m = xi.values[0];
    for (std::size_t i = 1; i < live; ++i) m = std::min(m, xi.values[i]);
    return m;
}

}  // namespace pssmp
