#include "pssmp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "pssmp/lamperti.hpp"
#include "pssmp/parallel.hpp"
#include "pssmp/special.hpp"

namespace pssmp {

double beta_cdf(double a, double b, double x) { return inc_beta(a, b, x); }

double gamma_cdf(double shape, double rate, double x) {
    if (!(rate > 0.0)) throw std::invalid_argument("gamma_cdf: rate must be > 0");
    if (x <= 0.0) return 0.0;
    return inc_gamma(shape, rate * x);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, f - i / n);
        d = std::max(d, (i + 1) / n - f);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                                  static_cast<double>(j) / b.size()));
    }
    return std::max(d, 1.0 - std::min(static_cast<double>(i) / a.size(),
                                      static_cast<double>(j) / b.size()));
}

bool ValidationReport::all_passed() const {
    for (const auto& t : tests)
        if (!t.passed) return false;
    return true;
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["params"] = {{"alpha", params.alpha}, {"c_plus", params.c_plus}, {"c_minus", params.c_minus}};
    j["seed"] = seed;
    j["scheme"] = {{"epsilon", scheme.epsilon},
                   {"gaussian_compensation", scheme.gaussian_compensation},
                   {"dt", mc.dt},
                   {"horizon", mc.horizon},
                   {"n_paths", mc.n_paths},
                   {"x0", mc.x0}};
    j["tests"] = nlohmann::ordered_json::array();
    for (const auto& t : tests) {
        j["tests"].push_back({{"name", t.name},
                              {"statistic", t.statistic},
                              {"threshold", t.threshold},
                              {"n", t.n},
                              {"passed", t.passed},
                              {"details", t.details}});
    }
    return j.dump(2);
}

RoundTripStats lamperti_roundtrip_stats(const StableParams& p, double dt, int n_paths,
                                        std::uint64_t seed, const QuadratureSpec& q) {
    SimScheme scheme;
    scheme.epsilon = 0.02;
    scheme.dt = dt;
    scheme.horizon = 1.0;
    const LevyTriplet kt = triplet(Variant::KILLED, p, q);
    const LevySimulator sim(kt, scheme, q);
    std::vector<double> sups(n_paths, 0.0);

    parallel_for(n_paths, [&](std::size_t i) {
        RngStream rng(seed, 7'000'000 + i);
        const SamplePath xi = sim.sample_path(rng);
        const std::size_t live = xi.living_count();
        double lo = 0.0;
        for (std::size_t j = 0; j < live; ++j) lo = std::min(lo, xi.values[j]);
        // resolve every interpolation ramp well below the dt^{1/2} scale so
        // corner clipping at jumps decays visibly faster than sqrt(dt)
        double out_dt = 0.5 * std::pow(dt, 1.7) * std::exp(p.alpha * lo);
        const double total = exp_clock(xi, p.alpha).target_times.back();
        out_dt = std::max(out_dt, total / 2e7);
        const SamplePath x = lamperti_forward(xi, 1.0, p.alpha, out_dt);
        const SamplePath back = lamperti_inverse(x, p.alpha, dt);
        const std::size_t m = std::min(live, back.living_count());
        double sup = 0.0;
        for (std::size_t j = 0; j + 1 < m; ++j)
            sup = std::max(sup, std::fabs(back.values[j] - xi.values[j]));
        sups[i] = sup;
    }, 1);

    RoundTripStats st;
    for (double s : sups) st.max_sup = std::max(st.max_sup, s);
    std::vector<double> sorted = sups;
    std::sort(sorted.begin(), sorted.end());
    st.median_sup = sorted[sorted.size() / 2];
    return st;
}

namespace {

TestResult make_result(const std::string& name, double stat, double thr, long n,
                       const std::string& details) {
    TestResult t;
    t.name = name;
    t.statistic = stat;
    t.threshold = thr;
    t.n = n;
    t.passed = stat <= thr;
    t.details = details;
    return t;
}

TestResult skipped(const std::string& name, const std::string& why) {
    TestResult t;
    t.name = name;
    t.statistic = 0.0;
    t.threshold = 1.0;
    t.n = 0;
    t.passed = true;
    t.details = "skipped: " + why;
    return t;
}

struct FitLine {
    double intercept;
    double se_intercept;
};

// weighted least squares y = A + B t; returns the extrapolated value at 0
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
    FitLine f;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.se_intercept = std::sqrt(sxx / det);
    return f;
}

}  // namespace

ValidationReport run_suite(const StableParams& p, const McConfig& mc, const QuadratureSpec& q) {
    p.validate();
    mc.validate();
    ValidationReport rep;
    rep.params = p;
    rep.seed = mc.seed;
    rep.mc = mc;
    rep.scheme.epsilon = 1e-3;
    rep.scheme.gaussian_compensation = true;
    rep.scheme.dt = mc.dt;
    rep.scheme.horizon = mc.horizon;

    const StableDerived d = derive_params(p);
    const double ar = d.alpha_rho;
    const long n = mc.n_paths;
    char buf[256];

    // B1: killing-rate consistency identities
    {
        const ConsistencyReport cr = consistency_report(p, q);
        const double stat = std::max({cr.resid_up / std::max(1.0, d.k),
                                      cr.resid_down / std::max(1.0, d.k),
                                      cr.resid_drift / std::max(1.0, std::fabs(d.a))});
        std::snprintf(buf, sizeof(buf), "residuals %.3e %.3e %.3e", cr.resid_up, cr.resid_down,
                      cr.resid_drift);
        rep.tests.push_back(make_result("B1_killing_rate_consistency", stat, 1e-6, 0, buf));
    }

    // B2: law of the killed-path minimum, both constructions
    if (p.c_minus > 0.0) {
        std::vector<double> mins(n);
        parallel_for(n, [&](std::size_t i) {
            RngStream rng(mc.seed, 1'000'000 + i);
            mins[i] = killed_min_sample(p, mc.dt, rng).min_rel;
        });
        auto cdf = [&](double x) { return beta_cdf(1.0 - ar, ar, std::min(std::max(x, 0.0), 1.0)); };
        const double ks = ks_distance(mins, cdf);
        rep.tests.push_back(make_result("B2_beta_minimum_ks", ks, 1.63 / std::sqrt((double)n) + 0.012,
                                        n, "min of killed stable paths vs Beta(1-ar, ar)"));

        const double mean = std::accumulate(mins.begin(), mins.end(), 0.0) / n;
        double var = 0.0;
        for (double v : mins) var += (v - mean) * (v - mean);
        var /= (n - 1.0);
        const double se = std::sqrt(var / n);
        std::snprintf(buf, sizeof(buf), "mean %.5f target %.5f se %.5f", mean, 1.0 - ar, se);
        rep.tests.push_back(make_result("B2_beta_minimum_mean", std::fabs(mean - (1.0 - ar)),
                                        3.0 * se + 0.0015, n, buf));

        // cross-construction equivalence
        const long n2 = std::min<long>(n, 50'000);
        std::vector<double> via_inv(n2), via_sim(n2);
        parallel_for(n2, [&](std::size_t i) {
            RngStream rng(mc.seed, 2'000'000 + i);
            via_inv[i] = killed_min_via_inverse_lamperti(p, mc.dt, 3.0, rng);
        });
        {
            const LevyTriplet kt = triplet(Variant::KILLED, p, q);
            const LevySimulator sim(kt, rep.scheme, q);
            parallel_for(n2, [&](std::size_t i) {
                RngStream rng(mc.seed, 3'000'000 + i);
                via_sim[i] = std::exp(sim.sample_overall_min(
                    rng, std::numeric_limits<double>::infinity(), 1e6));
            });
        }
        const double ks2 = ks_two_sample(via_inv, via_sim);
        rep.tests.push_back(make_result("B2_cross_construction_ks", ks2,
                                        1.63 * std::sqrt(2.0 / (double)n2) + 0.015, n2,
                                        "inverse-Lamperti vs direct triplet minima"));
    } else {
        rep.tests.push_back(skipped("B2_beta_minimum_ks", "requires c_minus > 0"));
        rep.tests.push_back(skipped("B2_beta_minimum_mean", "requires c_minus > 0"));
        rep.tests.push_back(skipped("B2_cross_construction_ks", "requires c_minus > 0"));
    }

    // B3: ruin law of the conditioned-to-stay-positive minimum
    {
        const LevyTriplet up = triplet(Variant::STAY_POSITIVE, p, q);
        const LevySimulator sim(up, rep.scheme, q);
        std::vector<double> drops(n);
        parallel_for(n, [&](std::size_t i) {
            RngStream rng(mc.seed, 4'000'000 + i);
            drops[i] = -sim.sample_overall_min(rng, 12.0, 5000.0);
        });
        const double zs[] = {0.1, 0.5, 1.0, 2.0};
        double stat = 0.0;
        for (double z : zs) {
            long cnt = 0;
            for (double v : drops)
                if (v <= z) ++cnt;
            const double emp = static_cast<double>(cnt) / n;
            stat = std::max(stat, std::fabs(emp - std::pow(-std::expm1(-z), ar)));
        }
        rep.tests.push_back(make_result("B3_ruin_law", stat, 2.6 / std::sqrt((double)n) + 0.01, n,
                                        "P(-min xi_up <= z) vs (1-e^-z)^ar at z in {0.1,0.5,1,2}"));
    }

    // B4: Gamma law of the subordinator undershoot at an exponential level
    if (ar < 1.0) {
        std::vector<double> us(n);
        parallel_for(n, [&](std::size_t i) {
            RngStream rng(mc.seed, 5'000'000 + i);
            const double level = rng.exponential();
            us[i] = subordinator_undershoot(ar, level, 1e-3, rng);
        });
        auto cdf = [&](double x) { return gamma_cdf(1.0 - ar, 1.0, x); };
        const double ks = ks_distance(us, cdf);
        rep.tests.push_back(make_result("B4_gamma_undershoot_ks", ks,
                                        1.63 / std::sqrt((double)n) + 0.008, n,
                                        "undershoot at Exp(1) level vs Gamma(1, 1-ar)"));
    } else {
        rep.tests.push_back(skipped("B4_gamma_undershoot_ks", "requires alpha*rho < 1"));
    }

    // B5: small-time first-passage limits
    if (p.c_minus > 0.0) {
        const std::vector<double> ts = {1e-3, 2e-3, 5e-3};
        const auto rows = first_passage_stats(p, mc.x0, ts, n, mc.seed, 400);
        const double xa = std::pow(mc.x0, p.alpha);
        std::vector<double> yt, yn, st, sn;
        for (const auto& r : rows) {
            yt.push_back(r.est_t);
            st.push_back(std::max(r.se_t, 1e-12));
            yn.push_back(r.est_neg);
            sn.push_back(std::max(r.se_neg, 1e-12));
        }
        const FitLine ft = wls_intercept(ts, yt, st);
        const FitLine fn = wls_intercept(ts, yn, sn);
        const double k_target = d.k / xa;
        const double neg_target = p.c_minus / (p.alpha * xa);
        std::snprintf(buf, sizeof(buf), "extrap %.5f target %.5f se %.5f", ft.intercept, k_target,
                      ft.se_intercept);
        rep.tests.push_back(make_result("B5_first_passage_rate", std::fabs(ft.intercept - k_target),
                                        0.15 * k_target + 3.0 * ft.se_intercept, n, buf));
        std::snprintf(buf, sizeof(buf), "extrap %.5f target %.5f se %.5f", fn.intercept, neg_target,
                      fn.se_intercept);
        rep.tests.push_back(make_result("B5_negative_mass_rate", std::fabs(fn.intercept - neg_target),
                                        0.15 * neg_target + 3.0 * fn.se_intercept, n, buf));
        const double diff_target = k_target - neg_target;
        const double se_diff = std::hypot(ft.se_intercept, fn.se_intercept);
        rep.tests.push_back(make_result(
            "B5_rate_difference", std::fabs(ft.intercept - fn.intercept - diff_target),
            0.2 * std::max(std::fabs(diff_target), 0.05 * k_target) + 3.0 * se_diff, n,
            "difference of the extrapolated rates vs (k - c_minus/alpha)/x0^alpha"));
    } else {
        rep.tests.push_back(skipped("B5_first_passage_rate", "requires c_minus > 0"));
        rep.tests.push_back(skipped("B5_negative_mass_rate", "requires c_minus > 0"));
        rep.tests.push_back(skipped("B5_rate_difference", "requires c_minus > 0"));
    }

    // B6: characteristic-function match for the three variants
    {
        double stat = 0.0;
        const double lams[] = {0.5, 1.0, 2.0};
        int stream_block = 0;
        for (Variant v : {Variant::KILLED, Variant::STAY_POSITIVE, Variant::HIT_ZERO}) {
            const LevyTriplet t = triplet(v, p, q);
            const LevySimulator sim(t, [&] {
                SimScheme s = rep.scheme;
                s.dt = 1.0;  // endpoint sampling only
                s.horizon = 1.0;
                return s;
            }(), q);
            std::vector<double> vals(n), alive(n);
            parallel_for(n, [&](std::size_t i) {
                RngStream rng(mc.seed, 6'000'000 + stream_block * 1'000'000 + i);
                const auto e = sim.sample_endpoint(1.0, rng);
                vals[i] = e.value;
                alive[i] = e.alive ? 1.0 : 0.0;
            });
            for (double lam : lams) {
                double re = 0.0, im = 0.0;
                for (long i = 0; i < n; ++i) {
                    if (alive[i] == 0.0) continue;
                    re += std::cos(lam * vals[i]);
                    im += std::sin(lam * vals[i]);
                }
                const std::complex<double> emp(re / n, im / n);
                const std::complex<double> phi = char_exponent_at(t, {lam, 0.0}, q);
                stat = std::max(stat, std::abs(emp - std::exp(phi)));
            }
            ++stream_block;
        }
        rep.tests.push_back(make_result("B6_char_function_match", stat,
                                        4.0 / std::sqrt((double)n) + 0.003, n,
                                        "empirical E exp(i l xi_1) 1{1<zeta} vs exp(Phi_v(l))"));
    }

    // B7: Lamperti round trip (floored step: very fine grids would need more
    // output resolution than the 20-path battery budget allows)
    {
        const double dt7 = std::max(mc.dt, 2e-3);
        const RoundTripStats a = lamperti_roundtrip_stats(p, dt7, 20, mc.seed, q);
        const RoundTripStats b = lamperti_roundtrip_stats(p, dt7 / 2.0, 20, mc.seed + 1, q);
        const double bound = 5.0 * std::sqrt(dt7);
        std::snprintf(buf, sizeof(buf), "max sup %.4f bound %.4f", a.max_sup, bound);
        rep.tests.push_back(make_result("B7_roundtrip_bound", a.max_sup, bound, 20, buf));
        const double order = std::log2(std::max(a.median_sup, 1e-300) /
                                       std::max(b.median_sup, 1e-300));
        std::snprintf(buf, sizeof(buf), "median %.3e -> %.3e order %.2f", a.median_sup,
                      b.median_sup, order);
        rep.tests.push_back(make_result("B7_roundtrip_order", 0.5 - order, 0.0, 20, buf));
    }

    // B8: drift-sign classification of the unkilled xi
    {
        double stat = 0.0;
        const StableParams neg_low{1.05, 0.0, 1.0};
        const StableParams neg_high{1.95, 0.0, 1.0};
        stat = std::max(stat, -mean_xi_tilde(Variant::KILLED, neg_low, q));   // must be > 0
        stat = std::max(stat, mean_xi_tilde(Variant::KILLED, neg_high, q));   // must be < 0
        for (int i = 0; i < 10; ++i) {
            const double alpha = 1.05 + 0.09 * i;
            const StableParams sp{alpha, 1.0, 0.0};
            stat = std::max(stat, mean_xi_tilde(Variant::KILLED, sp, q));     // must be < 0
        }
        rep.tests.push_back(make_result("B8_drift_classification", stat, 0.0, 0,
                                        "signs of E(xi~_1) across one-sided configurations"));
    }

    return rep;
}

}  // namespace pssmp
