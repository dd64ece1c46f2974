#include "pssmp/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "pssmp/special.hpp"

namespace pssmp {

namespace {

// QL with implicit shifts on a symmetric tridiagonal matrix, tracking the
// first row of the eigenvector matrix (enough for Golub–Welsch weights).
void tql_first_row(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("gauss_jacobi01: eigenvalue iteration stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

JacobiRule gauss_jacobi01(int n, double lexp, double rexp) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi01: n must be >= 1");
    if (!(lexp > -1.0) || !(rexp > -1.0))
        throw std::invalid_argument("gauss_jacobi01: exponents must be > -1");

    // recurrence coefficients for monic Jacobi polynomials, weight
    // (1-x)^A (1+x)^B on [-1,1]; here A = rexp, B = lexp
    const double A = rexp, B = lexp;
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
    const double apb = A + B;
    d[0] = (B - A) / (apb + 2.0);
    for (int k = 1; k < n; ++k) {
        const double kk = 2.0 * k + apb;
        d[k] = (B * B - A * A) / (kk * (kk + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1) {
            bk = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + apb) * (2.0 + apb) * (3.0 + apb));
        } else {
            const double kk = 2.0 * k + apb;
            bk = 4.0 * k * (k + A) * (k + B) * (k + apb) / (kk * kk * (kk + 1.0) * (kk - 1.0));
        }
        e[k - 1] = std::sqrt(bk);
    }

    // mu0 = ∫_{-1}^1 (1-x)^A (1+x)^B dx = 2^{A+B+1} B(A+1, B+1)
    const double log_mu0 = (apb + 1.0) * std::log(2.0) + log_gamma(A + 1.0) +
                           log_gamma(B + 1.0) - log_gamma(apb + 2.0);
    const double mu0 = std::exp(log_mu0);

    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tql_first_row(d, e, z);

    // sort by node
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    JacobiRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double scale = std::exp2(-(apb + 1.0));  // map [-1,1] -> [0,1]
    for (int i = 0; i < n; ++i) {
        rule.x[i] = 0.5 * (d[idx[i]] + 1.0);
        rule.w[i] = mu0 * z[idx[i]] * z[idx[i]] * scale;
    }
    return rule;
}

}  // namespace pssmp
