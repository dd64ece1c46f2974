// Acceptance suite: each case exercises one exit criterion at its pinned
// tolerance and prints one PASS/FAIL line. Run them all with `ctest` or a
// single one with `./acceptance --test-case=A2*`.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <vector>

#include "pssmp/lamperti.hpp"
#include "pssmp/parallel.hpp"
#include "pssmp/path_engine.hpp"
#include "pssmp/validate.hpp"

using namespace pssmp;

namespace {

const QuadratureSpec quad = [] {
    QuadratureSpec q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-13;
    return q;
}();

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s %s  %s\n", name, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(ok, name, ": ", detail);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

struct FitLine {
    double intercept, se;
};

FitLine wls_intercept(const std::vector<double>& t, const std::vector<double>& y,
                      const std::vector<double>& se) {
    double s = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double w = 1.0 / std::max(se[i] * se[i], 1e-300);
        s += w;
        sx += w * t[i];
        sxx += w * t[i] * t[i];
        sy += w * y[i];
        sxy += w * t[i] * y[i];
    }
    const double det = s * sxx - sx * sx;
    return {(sxx * sy - sx * sxy) / det, std::sqrt(sxx / det)};
}

}  // namespace

TEST_CASE("A1 killing-rate consistency identities on the parameter grid") {
    // >= 20 parameter sets with c_minus > 0 spanning alpha in {0.6,1.0,1.2,1.5,1.8}
    std::vector<StableParams> grid;
    for (double alpha : {0.6, 1.2, 1.5, 1.8}) {
        grid.push_back({alpha, 1.0, 1.0});
        grid.push_back({alpha, 2.0, 1.0});
        grid.push_back({alpha, 0.5, 1.5});
        grid.push_back({alpha, 2.0, 0.5});
    }
    grid.push_back({1.0, 1.0, 1.0});
    grid.push_back({1.0, 2.0, 2.0});
    grid.push_back({1.0, 0.5, 0.5});
    grid.push_back({1.0, 3.0, 3.0});

    bool ok = grid.size() >= 20;
    double worst = 0.0;
    for (const auto& p : grid) {
        const auto r = consistency_report(p, quad);
        const double tol_k = 1e-6 * std::max(1.0, r.derived.k);
        const double tol_a = 1e-6 * std::max(1.0, std::fabs(r.derived.a));
        ok = ok && r.resid_up <= tol_k && r.resid_down <= tol_k && r.resid_drift <= tol_a;
        worst = std::max({worst, r.resid_up / tol_k, r.resid_down / tol_k, r.resid_drift / tol_a});
        if (p.alpha == 1.0) {
            // the symmetric Cauchy case pins a2 = c_plus, a = 0 and a4 = a2
            ok = ok && std::fabs(r.constants.a2 - p.c_plus) <= 1e-6 &&
                 std::fabs(r.constants.a4 - r.constants.a2) <= 1e-6 && r.derived.a == 0.0;
        }
    }
    report("A1", ok, fmt("k = a*ar + a2, k = a*(ar-1) + a4, a4 - a2 = a on %zu sets; "
                         "worst residual ratio %.2e",
                         grid.size(), worst));
}

TEST_CASE("A2 Beta law of the killed-path minimum") {
    const StableParams p{1.3, 1.0, 1.0};
    const auto d = derive_params(p);
    const long n = 200000;
    const double dt = 1e-3;
    std::vector<double> mins(n);
    parallel_for(n, [&](std::size_t i) {
        RngStream rng(20260101, i);
        mins[i] = killed_min_sample(p, dt, rng).min_rel;
    });
    // the undershoot law of Prop. 1: exp(min xi) ~ Beta(1 - ar, ar)
    auto cdf = [&](double x) {
        return beta_cdf(1.0 - d.alpha_rho, d.alpha_rho, std::clamp(x, 0.0, 1.0));
    };
    const double ks = ks_distance(mins, cdf);
    const double mean = std::accumulate(mins.begin(), mins.end(), 0.0) / n;
    double var = 0.0;
    for (double v : mins) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    const double se = std::sqrt(var / n);
    const double mean_target = 1.0 - d.alpha_rho;
    const bool ok = ks <= 0.02 && std::fabs(mean - mean_target) <= 3.0 * se;
    report("A2", ok,
           fmt("KS %.4f (tol 0.02); mean %.5f vs %.5f (3se = %.5f), n=%ld, dt=1e-3", ks, mean,
               mean_target, 3.0 * se, n));
}

TEST_CASE("A3 ruin law of the conditioned-to-stay-positive minimum") {
    const StableParams p{1.3, 1.0, 1.0};
    const auto d = derive_params(p);
    const long n = 100000;
    SimScheme s;
    s.epsilon = 1e-3;
    s.dt = 1e-4;
    s.horizon = 1.0;
    const LevyTriplet up = triplet(Variant::STAY_POSITIVE, p, quad);
    const LevySimulator sim(up, s, quad);
    std::vector<double> drop(n);
    parallel_for(n, [&](std::size_t i) {
        RngStream rng(20260202, i);
        drop[i] = -sim.sample_overall_min(rng, 14.0, 5000.0);
    });
    double worst = 0.0;
    for (double z : {0.1, 0.5, 1.0, 2.0}) {
        long cnt = 0;
        for (double v : drop)
            if (v <= z) ++cnt;
        const double emp = static_cast<double>(cnt) / n;
        const double target = std::pow(-std::expm1(-z), d.alpha_rho);
        worst = std::max(worst, std::fabs(emp - target));
    }
    const bool ok = worst <= 0.02;
    report("A3", ok, fmt("max |P(-min<=z) - (1-e^-z)^ar| = %.4f (tol 0.02), n=%ld, eps=1e-3",
                         worst, n));
}

TEST_CASE("A4 Gamma law of the subordinator undershoot") {
    const double ar = 0.65;
    const long n = 100000;
    std::vector<double> us(n);
    parallel_for(n, [&](std::size_t i) {
        RngStream rng(20260303, i);
        const double level = rng.exponential();  // mu = 1
        us[i] = subordinator_undershoot(ar, level, 2e-4, rng);
    });
    auto cdf = [&](double x) { return gamma_cdf(1.0 - ar, 1.0, x); };
    const double ks = ks_distance(us, cdf);
    const bool ok = ks <= 0.02;
    report("A4", ok, fmt("KS vs Gamma(rate 1, shape %.2f) = %.4f (tol 0.02), n=%ld", 1.0 - ar,
                         ks, n));
}

TEST_CASE("A5 small-time first-passage limits") {
    const StableParams p{1.3, 1.0, 1.0};
    const auto d = derive_params(p);
    const long n = 1000000;
    const std::vector<double> ts{1e-3, 2e-3, 5e-3};
    const auto rows = first_passage_stats(p, 1.0, ts, n, 20260404, 400);
    std::vector<double> yt, st, yn, sn;
    for (const auto& r : rows) {
        yt.push_back(r.est_t);
        st.push_back(r.se_t);
        yn.push_back(r.est_neg);
        sn.push_back(r.se_neg);
    }
    const FitLine ft = wls_intercept(ts, yt, st);
    const FitLine fn = wls_intercept(ts, yn, sn);
    const double k = d.k;                          // x0 = 1
    const double neg = p.c_minus / p.alpha;        // x0 = 1
    const double diff_target = k - neg;  // rate of paths that crossed and recovered
    const double e1 = std::fabs(ft.intercept - k);
    const double e2 = std::fabs(fn.intercept - neg);
    const double e3 = std::fabs(ft.intercept - fn.intercept - diff_target);
    // for the symmetric law this difference vanishes identically, so the
    // tolerance carries a 5%-of-k floor
    const double tol3 = 0.2 * std::max(std::fabs(diff_target), 0.05 * k);
    const bool ok = e1 <= 0.15 * k && e2 <= 0.15 * neg && e3 <= tol3;
    report("A5", ok,
           fmt("est_T->%.4f (k=%.4f, err %.1f%%), est_neg->%.4f (c-/a=%.4f, err %.1f%%), "
               "diff %.5f vs %.5f (tol %.5f)",
               ft.intercept, k, 100.0 * e1 / k, fn.intercept, neg, 100.0 * e2 / neg,
               ft.intercept - fn.intercept, diff_target, tol3));
}

TEST_CASE("A6 characteristic-function match for the three variants") {
    const StableParams p{1.5, 2.0, 1.0};
    const long n = 1000000;
    SimScheme s;
    s.epsilon = 1e-3;
    s.dt = 1.0;  // endpoint sampling at t = 1
    s.horizon = 1.0;
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    int block = 0;
    for (Variant v : {Variant::KILLED, Variant::STAY_POSITIVE, Variant::HIT_ZERO}) {
        const LevyTriplet t = triplet(v, p, quad);
        const LevySimulator sim(t, s, quad);
        std::vector<float> vals(n);
        std::vector<unsigned char> alive(n);
        parallel_for(n, [&](std::size_t i) {
            RngStream rng(20260505 + block, i);
            const auto e = sim.sample_endpoint(1.0, rng);
            vals[i] = static_cast<float>(e.value);
            alive[i] = e.alive ? 1 : 0;
        });
        for (double lambda : {0.5, 1.0, 2.0}) {
            double re = 0.0, im = 0.0;
            for (long i = 0; i < n; ++i) {
                if (!alive[i]) continue;
                re += std::cos(lambda * vals[i]);
                im += std::sin(lambda * vals[i]);
            }
            const std::complex<double> emp(re / n, im / n);
            const std::complex<double> target =
                std::exp(char_exponent_at(t, {lambda, 0.0}, quad));
            const double err = std::abs(emp - target);
            worst = std::max(worst, err);
            ok = ok && err <= 0.01;
        }
        ++block;
    }
    report("A6", ok, fmt("max |emp - exp(Phi_v)| over variants and lambda in {0.5,1,2}: %.5f "
                         "(tol 0.01), n=%ld, eps=1e-3",
                         worst, n));
}

TEST_CASE("A7 Lamperti round trip") {
    const StableParams p{1.3, 1.0, 1.0};
    const double dt = 4e-3;
    const RoundTripStats a = lamperti_roundtrip_stats(p, dt, 100, 20260606, quad);
    const RoundTripStats b = lamperti_roundtrip_stats(p, dt / 2.0, 100, 20260707, quad);
    const double bound = 5.0 * std::sqrt(dt);
    const double order = std::log2(a.median_sup / b.median_sup);
    const bool ok = a.max_sup <= bound && order >= 0.5;
    report("A7", ok,
           fmt("max sup-error %.4f (bound %.4f); median %.2e -> %.2e, order %.2f (need >= 0.5)",
               a.max_sup, bound, a.median_sup, b.median_sup, order));
}

TEST_CASE("A8 drift classification of the unkilled Lévy process") {
    const double m_low = mean_xi_tilde(Variant::KILLED, {1.05, 0.0, 1.0}, quad);
    const double m_high = mean_xi_tilde(Variant::KILLED, {1.95, 0.0, 1.0}, quad);
    bool ok = m_low > 0.0 && m_high < 0.0;
    double worst_pos = -1.0;
    for (int i = 0; i < 10; ++i) {
        const double alpha = 1.05 + 0.09 * i;
        const double m = mean_xi_tilde(Variant::KILLED, {alpha, 1.0, 0.0}, quad);
        worst_pos = std::max(worst_pos, m);
        ok = ok && m < 0.0;
    }
    report("A8", ok,
           fmt("c+=0: mean %.3f at a=1.05 (>0), %.3f at a=1.95 (<0); c-=0 grid max mean %.3f (<0)",
               m_low, m_high, worst_pos));
}

TEST_CASE("A9 cross-construction equivalence of the minimum law") {
    const StableParams p{1.3, 1.0, 1.0};
    const long n = 50000;
    std::vector<double> via_inv(n), via_sim(n);
    parallel_for(n, [&](std::size_t i) {
        RngStream rng(20260808, i);
        via_inv[i] = killed_min_via_inverse_lamperti(p, 2.5e-4, 3.0, rng);
    });
    SimScheme s;
    s.epsilon = 1e-3;
    s.dt = 1e-4;
    s.horizon = 1.0;
    const LevyTriplet t = triplet(Variant::KILLED, p, quad);
    const LevySimulator sim(t, s, quad);
    parallel_for(n, [&](std::size_t i) {
        RngStream rng(20260909, i);
        via_sim[i] =
            std::exp(sim.sample_overall_min(rng, std::numeric_limits<double>::infinity(), 1e6));
    });
    const double ks = ks_two_sample(via_inv, via_sim);
    const bool ok = ks <= 0.03;
    report("A9", ok,
           fmt("two-sample KS between inverse-Lamperti and direct-triplet minima: %.4f "
               "(tol 0.03), n=%ld",
               ks, n));
}
