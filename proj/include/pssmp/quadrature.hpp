#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pssmp {

enum class EndpointStrategy { substitution, jacobi_weight };

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;
    EndpointStrategy endpoint_strategy = EndpointStrategy::substitution;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double est, double err)
        : std::runtime_error(what), estimate(est), error(err) {}
    double estimate;
    double error;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK values)
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline double norm_of(double v) { return std::fabs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = kKronrodW[7] * fc;
    T gauss = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodX[i];
        const T fsum = f(c - dx) + f(c + dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
    }
    value = kron * h;
    const double diff = norm_of(kron - gauss) * std::fabs(h);
    // QUADPACK-style error inflation
    err = diff * std::sqrt(diff > 0.0 ? std::min(1.0, std::sqrt(diff * 200.0)) : 0.0);
    if (err == 0.0) err = diff;
    err = std::max(err, diff * 1e-3);
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, const QuadratureSpec& q, double* err_out) {
    struct Interval {
        double a, b, err;
        T val;
    };
    std::vector<Interval> heap;
    auto cmp = [](const Interval& u, const Interval& v) { return u.err < v.err; };

    Interval root;
    gk15<T>(f, a, b, root.val, root.err);
    root.a = a;
    root.b = b;
    heap.push_back(root);

    T total = root.val;
    double total_err = root.err;
    int splits = 0;
    while (total_err > std::max(q.abs_tol, q.rel_tol * norm_of(total))) {
        if (splits >= q.max_subdivisions || heap.empty())
            break;
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine resolution; accept its estimate
            total_err -= worst.err;
            total_err += worst.err * 1e-6;
            continue;
        }
        Interval left, right;
        gk15<T>(f, worst.a, mid, left.val, left.err);
        gk15<T>(f, mid, worst.b, right.val, right.err);
        left.a = worst.a;
        left.b = mid;
        right.a = mid;
        right.b = worst.b;
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++splits;
    }
    if (err_out) *err_out = total_err;
    if (total_err > std::max(q.abs_tol * 10.0, q.rel_tol * 10.0 * norm_of(total)) &&
        splits >= q.max_subdivisions) {
        throw QuadratureError("quadrature did not converge (achieved error " +
                                  std::to_string(total_err) + ")",
                              norm_of(total), total_err);
    }
    return total;
}

}  // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, const QuadratureSpec& q,
                 double* err_out = nullptr) {
    if (a == b) return 0.0;
    return detail::adaptive<double>(f, a, b, q, err_out);
}

template <typename F>
std::complex<double> integrate_c(const F& f, double a, double b, const QuadratureSpec& q,
                                 double* err_out = nullptr) {
    if (a == b) return {0.0, 0.0};
    return detail::adaptive<std::complex<double>>(f, a, b, q, err_out);
}

// ∫_a^b (x-a)^{p-1} g(x) dx with g bounded near a and 0 < p. The substitution
// x = a + t^{1/p} absorbs the endpoint weight exactly, so the transformed
// integrand (1/p) g(a + t^{1/p}) is bounded and never touches the pole.
template <typename G>
double integrate_power_left(const G& g, double a, double b, double p, const QuadratureSpec& q) {
    if (!(p > 0.0)) throw std::invalid_argument("integrate_power_left: p must be > 0");
    const double tb = std::pow(b - a, p);
    const double ip = 1.0 / p;
    auto h = [&](double t) { return g(a + std::pow(t, ip)) * ip; };
    return integrate(h, 0.0, tb, q);
}

// mirror image: ∫_a^b (b-x)^{p-1} g(x) dx with g bounded near b
template <typename G>
double integrate_power_right(const G& g, double a, double b, double p, const QuadratureSpec& q) {
    if (!(p > 0.0)) throw std::invalid_argument("integrate_power_right: p must be > 0");
    const double tb = std::pow(b - a, p);
    const double ip = 1.0 / p;
    auto h = [&](double t) { return g(b - std::pow(t, ip)) * ip; };
    return integrate(h, 0.0, tb, q);
}

// Gauss–Jacobi rule on [0,1]:  sum_i w[i] g(x[i])  ~=  ∫_0^1 x^lexp (1-x)^rexp g(x) dx
// (lexp, rexp > -1). Nodes via Golub–Welsch on the Jacobi recurrence.
struct JacobiRule {
    std::vector<double> x;
    std::vector<double> w;
};

JacobiRule gauss_jacobi01(int n, double lexp, double rexp);

}  // namespace pssmp
