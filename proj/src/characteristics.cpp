#include "pssmp/characteristics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "pssmp/special.hpp"

namespace pssmp {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

// (1+x)^s - 1, stable for small |x|
double pow1p_m1(double s, double x) { return std::expm1(s * std::log1p(x)); }

// (1+x)^s - 1 - s*x, stable for small |x| (binomial series below 0.05)
double pow1p_m1_linear(double s, double x) {
    if (std::fabs(x) < 0.05) {
        double coeff = s * (s - 1.0) / 2.0;  // C(s,2)
        double xn = x * x;
        double sum = coeff * xn;
        for (int n = 3; n <= 14; ++n) {
            coeff *= (s - (n - 1)) / n;
            xn *= x;
            const double term = coeff * xn;
            sum += term;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    return pow1p_m1(s, x) - s * x;
}

// exact pieces on [1/2, 1]
double int_x_pow_malpha(double alpha) {  // ∫_{1/2}^1 x^{-alpha} dx
    if (alpha == 1.0) return kLn2;
    return (1.0 - std::exp2(alpha - 1.0)) / (1.0 - alpha);
}

double int_x_pow_malpham1(double alpha) {  // ∫_{1/2}^1 x^{-alpha-1} dx
    return (std::exp2(alpha) - 1.0) / alpha;
}

// ---------------------------------------------------------------------------
// substitution route
// ---------------------------------------------------------------------------

double i_plus_a1_sub(double s, double alpha, const QuadratureSpec& q) {
    // integrand ((1+x)^s - 1) x^{-alpha} = x^{1-alpha} * g(x), g smooth
    auto g = [&](double x) { return pow1p_m1(s, x) / x; };
    auto f = [&](double x) { return pow1p_m1(s, x) * std::pow(x, -alpha); };
    return integrate_power_left(g, 0.0, 0.5, 2.0 - alpha, q) + integrate(f, 0.5, 1.0, q);
}

double i_minus_a1_sub(double s, double alpha, const QuadratureSpec& q) {
    // ∫_0^1 (1 - (1-x)^s) x^{-alpha} dx, additional (1-x)^s endpoint at x = 1
    auto g0 = [&](double x) { return -pow1p_m1(s, -x) / x; };
    double val = integrate_power_left(g0, 0.0, 0.5, 2.0 - alpha, q);
    auto g1 = [&](double x) { return std::pow(x, -alpha); };
    val += int_x_pow_malpha(alpha) - integrate_power_right(g1, 0.5, 1.0, 1.0 + s, q);
    return val;
}

double j1_sub(double s, double alpha, const QuadratureSpec& q) {
    auto g = [&](double x) { return pow1p_m1_linear(s, x) / (x * x); };
    auto f = [&](double x) { return pow1p_m1_linear(s, x) * std::pow(x, -alpha - 1.0); };
    return integrate_power_left(g, 0.0, 0.5, 2.0 - alpha, q) + integrate(f, 0.5, 1.0, q);
}

double j2_sub(double s, double alpha, const QuadratureSpec& q) {
    // ∫_1^inf ((1+x)^s - 1) x^{-alpha-1} dx mapped by u = 1/x onto (0,1]
    auto g = [&](double u) { return std::pow(1.0 + u, s); };
    return integrate_power_left(g, 0.0, 1.0, alpha - s, q) - 1.0 / alpha;
}

double j3_sub(double s, double alpha, const QuadratureSpec& q) {
    auto g0 = [&](double x) { return pow1p_m1_linear(s, -x) / (x * x); };
    double val = integrate_power_left(g0, 0.0, 0.5, 2.0 - alpha, q);
    auto g1 = [&](double x) { return std::pow(x, -alpha - 1.0); };
    val += integrate_power_right(g1, 0.5, 1.0, 1.0 + s, q);
    val += s * int_x_pow_malpha(alpha) - int_x_pow_malpham1(alpha);
    return val;
}

// ---------------------------------------------------------------------------
// Gauss–Jacobi route
// ---------------------------------------------------------------------------

constexpr int kJacobiN = 120;

double gj_apply(const JacobiRule& r, const std::function<double(double)>& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * g(r.x[i]);
    return acc;
}

double i_plus_a1_gj(double s, double alpha) {
    const JacobiRule r = gauss_jacobi01(kJacobiN, 1.0 - alpha, 0.0);
    return gj_apply(r, [&](double x) { return pow1p_m1(s, x) / x; });
}

double i_minus_a1_gj(double s, double alpha) {
    const JacobiRule left = gauss_jacobi01(kJacobiN, 1.0 - alpha, 0.0);
    double val = std::exp2(-(2.0 - alpha)) *
                 gj_apply(left, [&](double u) { return -pow1p_m1(s, -u / 2.0) / (u / 2.0); });
    const JacobiRule right = gauss_jacobi01(kJacobiN, s, 0.0);
    val += int_x_pow_malpha(alpha) -
           std::exp2(-(1.0 + s)) *
               gj_apply(right, [&](double v) { return std::pow(1.0 - v / 2.0, -alpha); });
    return val;
}

double j1_gj(double s, double alpha) {
    const JacobiRule left = gauss_jacobi01(kJacobiN, 1.0 - alpha, 0.0);
    double val = std::exp2(-(2.0 - alpha)) *
                 gj_apply(left, [&](double u) {
                     const double x = u / 2.0;
                     return pow1p_m1_linear(s, x) / (x * x);
                 });
    const JacobiRule inner = gauss_jacobi01(kJacobiN, 0.0, 0.0);
    // ∫_{1/2}^1 = (1/2) ∫_0^1 with x = (1+v)/2
    val += 0.5 * gj_apply(inner, [&](double v) {
        const double x = 0.5 * (1.0 + v);
        return pow1p_m1_linear(s, x) * std::pow(x, -alpha - 1.0);
    });
    return val;
}

double j2_gj(double s, double alpha) {
    const JacobiRule r = gauss_jacobi01(kJacobiN, alpha - s - 1.0, 0.0);
    return gj_apply(r, [&](double u) { return std::pow(1.0 + u, s); }) - 1.0 / alpha;
}

double j3_gj(double s, double alpha) {
    const JacobiRule left = gauss_jacobi01(kJacobiN, 1.0 - alpha, 0.0);
    double val = std::exp2(-(2.0 - alpha)) *
                 gj_apply(left, [&](double u) {
                     const double x = u / 2.0;
                     return pow1p_m1_linear(s, -x) / (x * x);
                 });
    const JacobiRule right = gauss_jacobi01(kJacobiN, s, 0.0);
    val += std::exp2(-(1.0 + s)) *
           gj_apply(right, [&](double v) { return std::pow(1.0 - v / 2.0, -alpha - 1.0); });
    val += s * int_x_pow_malpha(alpha) - int_x_pow_malpham1(alpha);
    return val;
}

// A(s) = drift integral of the a1/a3 family, B(s) of the a2/a4 family.
// Note: the c_minus terms of the a1/a3 integrals enter with the sign required
// by the exponential-tilt identity Phi_up(lambda) = Phi(lambda - i alpha rho);
// see the drift-constants tests for the numerical cross-checks.
double family_a(double s, const StableParams& p, const QuadratureSpec& q) {
    if (s == 0.0) return 0.0;
    double val = 0.0;
    const bool sub = q.endpoint_strategy == EndpointStrategy::substitution;
    if (p.c_plus > 0.0)
        val += p.c_plus * (sub ? i_plus_a1_sub(s, p.alpha, q) : i_plus_a1_gj(s, p.alpha));
    if (p.c_minus > 0.0)
        val += p.c_minus * (sub ? i_minus_a1_sub(s, p.alpha, q) : i_minus_a1_gj(s, p.alpha));
    return val;
}

double family_b(double s, const StableParams& p, const QuadratureSpec& q) {
    if (s == 0.0) return 0.0;
    double val = 0.0;
    const bool sub = q.endpoint_strategy == EndpointStrategy::substitution;
    if (p.c_plus > 0.0)
        val += p.c_plus * ((sub ? j1_sub(s, p.alpha, q) : j1_gj(s, p.alpha)) +
                           (sub ? j2_sub(s, p.alpha, q) : j2_gj(s, p.alpha)));
    if (p.c_minus > 0.0)
        val += p.c_minus * (sub ? j3_sub(s, p.alpha, q) : j3_gj(s, p.alpha));
    return val;
}

double tilt_for(Variant v, double alpha_rho) {
    switch (v) {
        case Variant::KILLED: return 1.0;
        case Variant::STAY_POSITIVE: return alpha_rho + 1.0;
        case Variant::HIT_ZERO: return alpha_rho;
    }
    throw std::logic_error("unknown variant");
}

// signed moments V_m = ∫_{|y|<=delta} y^m pi_v(y) dy, m = 2,3,4
struct SmallMoments {
    double v2, v3, v4;
};

SmallMoments small_moments(const JumpDensity& pi, double delta, const QuadratureSpec& q) {
    // y^m pi_v(y) = |y|^{m-alpha-1} * smooth; the smooth factor is written as a
    // ratio so that no extreme intermediate powers appear near y = 0
    const double alpha = pi.params.alpha;
    const double tilt = pi.tilt;
    SmallMoments vm{};
    auto moment = [&](int m) {
        double val = 0.0;
        if (pi.params.c_plus > 0.0) {
            auto g = [&](double y) {
                return pi.params.c_plus * std::exp(tilt * y) *
                       std::pow(std::expm1(y) / y, -alpha - 1.0);
            };
            val += integrate_power_left(g, 0.0, delta, m - alpha, q);
        }
        if (pi.params.c_minus > 0.0) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            auto g = [&](double u) {
                return pi.params.c_minus * std::exp(-tilt * u) *
                       std::pow(-std::expm1(-u) / u, -alpha - 1.0);
            };
            val += sign * integrate_power_left(g, 0.0, delta, m - alpha, q);
        }
        return val;
    };
    vm.v2 = moment(2);
    vm.v3 = moment(3);
    vm.v4 = moment(4);
    return vm;
}

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::KILLED: return "killed";
        case Variant::STAY_POSITIVE: return "stay_positive";
        case Variant::HIT_ZERO: return "hit_zero";
    }
    return "?";
}

double JumpDensity::operator()(double y) const {
    if (y == 0.0)
        throw std::domain_error("jump_density: y = 0 is a non-integrable pole");
    const double z = std::expm1(y);
    const double nu = z > 0.0 ? params.c_plus * std::pow(z, -params.alpha - 1.0)
                              : params.c_minus * std::pow(-z, -params.alpha - 1.0);
    return nu == 0.0 ? 0.0 : std::exp(tilt * y) * nu;
}

double jump_density(Variant v, const StableParams& p, double y) {
    const StableDerived d = derive_params(p);
    const JumpDensity pi{v, p, tilt_for(v, d.alpha_rho)};
    return pi(y);
}

DriftConstants drift_constants(const StableParams& p, const QuadratureSpec& q) {
    q.validate();
    const StableDerived d = derive_params(p);
    DriftConstants out{};
    out.a1 = family_a(d.alpha_rho, p, q);
    out.a2 = family_b(d.alpha_rho, p, q);
    out.a3 = family_a(d.alpha_rho - 1.0, p, q);
    out.a4 = family_b(d.alpha_rho - 1.0, p, q);
    return out;
}

LevyTriplet triplet(Variant v, const StableParams& p, const QuadratureSpec& q) {
    const StableDerived d = derive_params(p);
    const JumpDensity pi{v, p, tilt_for(v, d.alpha_rho)};
    switch (v) {
        case Variant::KILLED:
            return {d.a, pi, d.k};
        case Variant::STAY_POSITIVE:
            return {d.a + family_a(d.alpha_rho, p, q), pi, 0.0};
        case Variant::HIT_ZERO:
            return {d.a + family_a(d.alpha_rho - 1.0, p, q), pi, 0.0};
    }
    throw std::logic_error("unknown variant");
}

std::complex<double> char_exponent_at(const LevyTriplet& t, std::complex<double> lambda,
                                      const QuadratureSpec& q) {
    using cplx = std::complex<double>;
    const double im = lambda.imag();
    const double up_eff = t.density.up_rate() + im;
    const double dn_eff = t.density.down_rate() - im;
    if (up_eff < 0.05 || dn_eff < 0.05)
        throw std::domain_error("char_exponent: frequency outside the analyticity strip");
    if (lambda == cplx(0.0, 0.0)) return cplx(-t.killing_rate, 0.0);

    const JumpDensity& pi = t.density;
    const double absl = std::abs(lambda);
    const double delta = 1e-3 * std::min(1.0, 3.0 / (1.0 + absl));

    const SmallMoments vm = small_moments(pi, delta, q);
    const cplx il(-lambda.imag(), lambda.real());
    const cplx il2 = il * il;
    const cplx small = (il2 - il) / 2.0 * vm.v2 + (il2 * il - il) / 6.0 * vm.v3 +
                       (il2 * il2 - il) / 24.0 * vm.v4;

    const bool real_freq = (im == 0.0);
    const double lr = lambda.real();
    auto chf_m1 = [&](double y) -> cplx {
        if (real_freq) {
            const double sh = std::sin(0.5 * lr * y);
            return cplx(-2.0 * sh * sh, std::sin(lr * y));
        }
        return std::exp(il * y) - 1.0;
    };
    auto compensated = [&](double y) -> cplx {
        return (chf_m1(y) - il * std::expm1(y)) * pi(y);
    };
    auto plain = [&](double y) -> cplx { return chf_m1(y) * pi(y); };

    const double y_up = kLn2 + 45.0 / up_eff;
    const double y_dn = -45.0 / dn_eff;

    cplx total = small;
    total += integrate_c(compensated, delta, kLn2, q);
    total += integrate_c(plain, kLn2, y_up, q);
    total += integrate_c(compensated, -1.0, -delta, q);
    if (y_dn < -1.0) total += integrate_c(compensated, y_dn, -1.0, q);
    return il * t.drift + total - t.killing_rate;
}

std::complex<double> char_exponent(Variant v, const StableParams& p, double lambda,
                                   const QuadratureSpec& q) {
    return char_exponent_at(triplet(v, p, q), std::complex<double>(lambda, 0.0), q);
}

double mean_xi_tilde(Variant v, const StableParams& p, const QuadratureSpec& q) {
    const LevyTriplet t = triplet(v, p, q);
    const JumpDensity& pi = t.density;
    const double delta = 1e-3;
    const SmallMoments vm = small_moments(pi, delta, q);
    // y - l(y) = -(y^2/2 + y^3/6 + y^4/24 + ...) below the cutoff
    double total = -(vm.v2 / 2.0 + vm.v3 / 6.0 + vm.v4 / 24.0);

    auto compensated = [&](double y) { return (y - std::expm1(y)) * pi(y); };
    auto plain = [&](double y) { return y * pi(y); };

    const double y_up = kLn2 + 45.0 / pi.up_rate();
    const double y_dn = -45.0 / pi.down_rate();
    total += integrate(compensated, delta, kLn2, q);
    total += integrate(plain, kLn2, y_up, q);
    total += integrate(compensated, -1.0, -delta, q);
    if (y_dn < -1.0) total += integrate(compensated, y_dn, -1.0, q);
    return t.drift + total;
}

ConsistencyReport consistency_report(const StableParams& p, const QuadratureSpec& q) {
    ConsistencyReport r{};
    r.params = p;
    r.derived = derive_params(p);
    r.constants = drift_constants(p, q);
    const double a = r.derived.a;
    const double ar = r.derived.alpha_rho;
    const double k = r.derived.k;
    r.resid_up = std::fabs(k - (a * ar + r.constants.a2));
    r.resid_down = std::fabs(k - (a * (ar - 1.0) + r.constants.a4));
    r.resid_drift = std::fabs(r.constants.a4 - r.constants.a2 - a);
    const double tol_k = 1e-6 * std::max(1.0, std::fabs(k));
    const double tol_a = 1e-6 * std::max(1.0, std::fabs(a));
    r.pass_up = r.resid_up <= tol_k;
    r.pass_down = r.resid_down <= tol_k;
    r.pass_drift = r.resid_drift <= tol_a;
    return r;
}

std::string triplet_json(Variant v, const StableParams& p, const QuadratureSpec& q) {
    const LevyTriplet t = triplet(v, p, q);
    const ConsistencyReport r = consistency_report(p, q);
    nlohmann::ordered_json j;
    j["variant"] = variant_name(v);
    j["alpha"] = p.alpha;
    j["c_plus"] = p.c_plus;
    j["c_minus"] = p.c_minus;
    j["drift"] = t.drift;
    j["killing_rate"] = t.killing_rate;
    j["a1"] = r.constants.a1;
    j["a2"] = r.constants.a2;
    j["a3"] = r.constants.a3;
    j["a4"] = r.constants.a4;
    j["k_closed_form"] = r.derived.k;
    j["residuals"] = {{"k_vs_up", r.resid_up},
                      {"k_vs_down", r.resid_down},
                      {"a4_minus_a2_vs_a", r.resid_drift}};
    return j.dump(2);
}

}  // namespace pssmp
