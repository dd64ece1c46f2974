#include "pssmp/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pssmp/special.hpp"

namespace pssmp {

namespace {
constexpr double kPi = std::numbers::pi;
}

void StableParams::validate() const {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument("StableParams: alpha must lie in (0,2)");
    if (!(c_plus >= 0.0) || !(c_minus >= 0.0))
        throw std::invalid_argument("StableParams: jump intensities must be >= 0");
    if (!(c_plus + c_minus > 0.0))
        throw std::invalid_argument("StableParams: c_plus + c_minus must be > 0");
    if ((c_plus == 0.0 || c_minus == 0.0) && !(alpha > 1.0))
        throw std::invalid_argument(
            "StableParams: one-sided jump measure requires alpha in (1,2) "
            "(subordinator configurations are not supported)");
    if (alpha == 1.0 && c_plus != c_minus)
        throw std::invalid_argument(
            "StableParams: alpha = 1 is restricted to the symmetric Cauchy case "
            "(c_plus must equal c_minus)");
}

StableDerived derive_params(const StableParams& p) {
    p.validate();
    StableDerived d{};
    const double alpha = p.alpha;
    const double csum = p.c_plus + p.c_minus;
    d.beta = (p.c_plus - p.c_minus) / csum;
    d.a = (alpha == 1.0) ? 0.0 : (p.c_plus - p.c_minus) / (1.0 - alpha);

    // c = -(c+ + c-) Gamma(-alpha) cos(pi alpha / 2) rewritten through the
    // reflection formula; positive and continuous through alpha = 1, where it
    // equals c_plus * pi.
    d.c = csum * kPi / (2.0 * std::exp(log_gamma(1.0 + alpha)) * std::sin(kPi * alpha / 2.0));

    if (alpha == 1.0) {
        d.rho = 0.5;
    } else if (p.c_minus == 0.0) {
        d.rho = 1.0 / alpha;  // alpha*rho = 1 exactly
    } else if (p.c_plus == 0.0) {
        d.rho = 1.0 - 1.0 / alpha;
    } else {
        d.rho = 0.5 - std::atan(d.beta * std::tan(kPi * alpha / 2.0)) / (kPi * alpha);
    }
    d.alpha_rho = alpha * d.rho;

    if (alpha == 1.0) {
        d.k = p.c_plus;
    } else if (p.c_minus == 0.0) {
        d.k = 0.0;  // sin(pi * alpha * rho) = sin(pi) = 0
    } else {
        const double t = d.beta * std::tan(kPi * alpha / 2.0);
        d.k = d.c * std::sqrt(1.0 + t * t) * std::exp(log_gamma(alpha)) *
              std::sin(kPi * d.alpha_rho) / kPi;
    }
    return d;
}

std::complex<double> psi(const StableParams& p, double lambda) {
    const StableDerived d = derive_params(p);
    if (lambda == 0.0) return {0.0, 0.0};
    if (p.alpha == 1.0) return {-p.c_plus * kPi * std::fabs(lambda), 0.0};
    const double mag = d.c * std::pow(std::fabs(lambda), p.alpha);
    const double skew = d.beta * std::tan(kPi * p.alpha / 2.0) * (lambda > 0.0 ? 1.0 : -1.0);
    return {-mag, mag * skew};
}

StableSampler::StableSampler(const StableParams& p) {
    const StableDerived d = derive_params(p);
    alpha_ = p.alpha;
    cauchy_ = (p.alpha == 1.0);
    cauchy_scale_ = p.c_plus * kPi;
    if (!cauchy_) {
        const double t = d.beta * std::tan(kPi * alpha_ / 2.0);
        shift_ = std::atan(t) / alpha_;
        const double s = std::pow(1.0 + t * t, 0.5 / alpha_);
        unit_scale_ = s * std::pow(d.c, 1.0 / alpha_);
        inv_alpha_ = 1.0 / alpha_;
        am1_over_a_ = (1.0 - alpha_) / alpha_;
    } else {
        shift_ = 0.0;
        unit_scale_ = 0.0;
        inv_alpha_ = 1.0;
        am1_over_a_ = 0.0;
    }
}

double StableSampler::draw_standard(RngStream& rng) const {
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double av_b = alpha_ * (v + shift_);
    return std::sin(av_b) / std::pow(std::cos(v), inv_alpha_) *
           std::pow(std::cos(v - av_b) / w, am1_over_a_);
}

double StableSampler::increment(double dt, RngStream& rng) const {
    if (!(dt > 0.0)) throw std::invalid_argument("StableSampler: dt must be > 0");
    if (cauchy_) {
        const double v = kPi * (rng.uniform() - 0.5);
        return cauchy_scale_ * dt * std::tan(v);
    }
    return unit_scale_ * std::pow(dt, inv_alpha_) * draw_standard(rng);
}

double sample_increment(const StableParams& p, double dt, RngStream& rng) {
    return StableSampler(p).increment(dt, rng);
}

double positive_stable_draw(double gamma, RngStream& rng) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("positive_stable_draw: index must lie in (0,1)");
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    const double s = std::pow(std::cos(kPi * gamma / 2.0), -1.0 / gamma);
    const double gv_b = gamma * (v + kPi / 2.0);
    return s * std::sin(gv_b) / std::pow(std::cos(v), 1.0 / gamma) *
           std::pow(std::cos(v - gv_b) / w, (1.0 - gamma) / gamma);
}

}  // namespace pssmp
