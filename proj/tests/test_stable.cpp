#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pssmp/quadrature.hpp"
#include "pssmp/rng.hpp"
#include "pssmp/special.hpp"
#include "pssmp/stable.hpp"

using namespace pssmp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("parameter validation names the broken rule") {
    CHECK_THROWS_AS((StableParams{2.0, 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableParams{0.0, 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableParams{1.5, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableParams{0.7, 1.0, 0.0}.validate()), std::invalid_argument);  // subordinator
    CHECK_THROWS_AS((StableParams{0.7, 0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableParams{1.0, 1.0, 2.0}.validate()), std::invalid_argument);  // skewed Cauchy
    CHECK_NOTHROW((StableParams{1.5, 1.0, 0.0}.validate()));
    CHECK_NOTHROW((StableParams{1.0, 2.0, 2.0}.validate()));
}

TEST_CASE("derived constants at reference points") {
    {
        const auto d = derive_params({1.5, 1.0, 1.0});
        CHECK(d.beta == 0.0);
        CHECK(d.a == 0.0);
        CHECK(d.rho == doctest::Approx(0.5).epsilon(1e-15));
    }
    {
        const auto d = derive_params({1.5, 1.0, 0.0});
        CHECK(d.alpha_rho == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.k == 0.0);
    }
    {
        const auto d = derive_params({1.0, 1.0, 1.0});
        CHECK(d.k == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.a == 0.0);
        CHECK(d.c == doctest::Approx(kPi).epsilon(1e-14));
    }
}

TEST_CASE("scale consistency of the derived constants") {
    const StableParams base{1.3, 0.8, 1.7};
    const auto d0 = derive_params(base);
    for (double m : {0.25, 2.0, 13.0}) {
        const auto dm = derive_params({base.alpha, m * base.c_plus, m * base.c_minus});
        CHECK(dm.beta == doctest::Approx(d0.beta).epsilon(1e-14));
        CHECK(dm.rho == doctest::Approx(d0.rho).epsilon(1e-14));
        CHECK(dm.a == doctest::Approx(m * d0.a).epsilon(1e-13));
        CHECK(dm.c == doctest::Approx(m * d0.c).epsilon(1e-13));
        CHECK(dm.k == doctest::Approx(m * d0.k).epsilon(1e-13));
    }
}

TEST_CASE("alpha*rho = 1 exactly when there are no negative jumps") {
    for (int i = 0; i < 50; ++i) {
        const double alpha = 1.02 + 0.96 * i / 49.0;
        const auto d = derive_params({alpha, 1.0, 0.0});
        CHECK(d.alpha_rho == doctest::Approx(1.0).epsilon(1e-14));
        // the arctan formula must agree with the exact branch
        const double rho_formula =
            0.5 - std::atan(std::tan(kPi * alpha / 2.0)) / (kPi * alpha);
        CHECK(alpha * rho_formula == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("killing constant is nonnegative across the valid grid") {
    for (double alpha : {0.3, 0.6, 1.0, 1.2, 1.5, 1.8, 1.95}) {
        for (double cp : {0.2, 1.0, 2.5}) {
            for (double cm : {0.2, 1.0, 2.5}) {
                StableParams p{alpha, cp, cm};
                if (alpha == 1.0 && cp != cm) continue;
                const auto d = derive_params(p);
                CHECK(d.k >= 0.0);
                CHECK(d.alpha_rho <= 1.0 + 1e-14);
                CHECK(d.c > 0.0);
            }
        }
    }
}

TEST_CASE("psi at reference points") {
    CHECK(std::abs(psi({1.5, 2.0, 1.0}, 0.0)) == 0.0);
    const auto v = psi({1.0, 1.0, 1.0}, 2.0);
    CHECK(v.real() == doctest::Approx(-2.0 * kPi).epsilon(1e-14));
    CHECK(v.imag() == 0.0);
    // conjugate symmetry
    const auto w1 = psi({1.5, 2.0, 1.0}, 1.3);
    const auto w2 = psi({1.5, 2.0, 1.0}, -1.3);
    CHECK(w1.real() == doctest::Approx(w2.real()).epsilon(1e-14));
    CHECK(w1.imag() == doctest::Approx(-w2.imag()).epsilon(1e-14));
}

TEST_CASE("psi matches direct quadrature of the Lévy-measure integral") {
    // oracle: i a lambda + ∫ (e^{i l y} - 1 - i l y 1_{|y|<1}) nu(y) dy evaluated
    // with a small-|y| series cut and integration by parts in the far tail
    const StableParams p{1.5, 2.0, 1.0};
    const double lambda = 1.0;
    const double alpha = p.alpha;
    const double a = (p.c_plus - p.c_minus) / (1.0 - alpha);
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    q.max_subdivisions = 20000;

    const double delta = 1e-4;
    using cplx = std::complex<double>;
    const cplx il(0.0, lambda);
    // |y| <= delta: sum_{n>=2} ((i l)^n / n!) \int y^n nu(y) dy, closed moments
    cplx small = 0.0;
    cplx iln = il;
    double fact = 1.0;
    for (int n = 2; n <= 8; ++n) {
        iln *= il;
        fact *= n;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double mom =
            (p.c_plus + sign * p.c_minus) * std::pow(delta, n - alpha) / (n - alpha);
        small += iln / fact * mom;
    }
    auto nu = [&](double y) {
        return y > 0 ? p.c_plus * std::pow(y, -alpha - 1.0)
                     : p.c_minus * std::pow(-y, -alpha - 1.0);
    };
    auto compensated = [&](double y) {
        return (std::exp(il * y) - 1.0 - il * y) * nu(y);
    };
    auto plain = [&](double y) { return (std::exp(il * y) - 1.0) * nu(y); };
    const double big = 300.0;
    cplx total = small;
    total += integrate_c(compensated, delta, 1.0, q);
    total += integrate_c(compensated, -1.0, -delta, q);
    total += integrate_c(plain, 1.0, big, q);
    total += integrate_c(plain, -big, -1.0, q);
    // remainder of ∫_{big}^inf (e^{ily}-1) nu: -1 part exact, oscillatory by parts
    auto tail_osc = [&](double c_side, double sgn) {
        const cplx ils = cplx(0.0, sgn * lambda);
        const cplx e = std::exp(ils * big);
        cplx t = -e * std::pow(big, -alpha - 1.0) / ils;
        t += -(alpha + 1.0) / ils * (-e * std::pow(big, -alpha - 2.0) / ils);
        return c_side * t;
    };
    total += -(p.c_plus + p.c_minus) * std::pow(big, -alpha) / alpha;
    total += tail_osc(p.c_plus, 1.0) + tail_osc(p.c_minus, -1.0);
    total += il * a;

    const auto closed = psi(p, lambda);
    CHECK(std::abs(closed - total) < 1e-6);
}

TEST_CASE("sampler: symmetric law has vanishing self-normalized skewness") {
    const StableParams p{1.5, 1.0, 1.0};
    const StableSampler s(p);
    RngStream rng(42, 0);
    const int n = 100000;
    std::vector<double> x(n);
    for (auto& v : x) v = s.increment(1.0, rng);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0;
    for (double v : x) m2 += (v - mean) * (v - mean);
    m2 /= n;
    const double sd = std::sqrt(m2);
    double skew = 0.0, skew2 = 0.0;
    for (double v : x) {
        const double z = (v - mean) / sd;
        skew += z * z * z;
        skew2 += z * z * z * z * z * z;
    }
    skew /= n;
    skew2 /= n;
    const double se = std::sqrt(std::max(skew2 - skew * skew, 0.0) / n);
    CHECK(std::fabs(skew) <= 3.0 * se);
}

TEST_CASE("sampler: increments scale as dt^{1/alpha}") {
    const StableParams p{1.3, 2.0, 0.7};
    const StableSampler s(p);
    const int n = 100000;
    const double dt = 0.01;
    std::vector<double> a(n), b(n);
    RngStream r1(7, 1), r2(7, 2);
    for (int i = 0; i < n; ++i) {
        a[i] = s.increment(dt, r1) / std::pow(dt, 1.0 / p.alpha);
        b[i] = s.increment(1.0, r2);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        d = std::max(d, std::fabs((double)i / n - (double)j / n));
    }
    CHECK(d < 0.02);
}

TEST_CASE("sampler: empirical characteristic function matches exp(dt psi)") {
    const StableParams p{1.5, 2.0, 1.0};
    const StableSampler s(p);
    const double dt = 0.7;
    const int n = 100000;
    RngStream rng(11, 3);
    std::vector<double> x(n);
    for (auto& v : x) v = s.increment(dt, rng);
    for (double lambda : {0.5, 1.0, 2.0}) {
        std::complex<double> emp = 0.0;
        for (double v : x) emp += std::complex<double>(std::cos(lambda * v), std::sin(lambda * v));
        emp /= static_cast<double>(n);
        const std::complex<double> target = std::exp(dt * psi(p, lambda));
        CHECK(std::abs(emp - target) < 4.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("sampler: alpha > 1 increments are centered") {
    const StableParams p{1.6, 1.0, 2.0};
    const StableSampler s(p);
    RngStream rng(5, 9);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = s.increment(1.0, rng);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::fabs(mean) <= 4.0 * se);
}

TEST_CASE("sample_increment free function draws from the same law") {
    const StableParams p{1.5, 1.0, 1.0};
    RngStream r1(8, 4), r2(8, 4);
    const StableSampler s(p);
    for (int i = 0; i < 16; ++i)
        CHECK(sample_increment(p, 0.3, r1) == s.increment(0.3, r2));
}

TEST_CASE("positive stable draws are positive with the right Laplace transform") {
    const double gamma = 0.65;
    RngStream rng(3, 17);
    const int n = 100000;
    double lt = 0.0;
    for (int i = 0; i < n; ++i) {
        const double h = positive_stable_draw(gamma, rng);
        REQUIRE(h > 0.0);
        lt += std::exp(-h);
    }
    lt /= n;
    // E exp(-s H) = exp(-s^gamma / cos(pi gamma / 2)) at s = 1
    const double target = std::exp(-1.0 / std::cos(kPi * gamma / 2.0));
    CHECK(lt == doctest::Approx(target).epsilon(0.01));
}
