#pragma once

// Test-only reference computations. Nothing here shares code with the
// library's quadrature or basis routines.

#include <cmath>
#include <functional>
#include <numbers>

namespace salbound::oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 50) {
    struct Step {
        static double run(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
                return left + right + (left + right - whole) / 15.0;
            }
            return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Step::run(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Generalized Laguerre polynomial by its explicit finite sum.
inline double laguerre_sum(int n, double alpha, double x) {
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        // binom(n + alpha, n - i) / i!
        const double log_binom = std::lgamma(n + alpha + 1.0) - std::lgamma(n - i + 1.0) -
                                 std::lgamma(alpha + i + 1.0);
        const double term = std::exp(log_binom - std::lgamma(i + 1.0)) * std::pow(x, i);
        total += (i % 2 == 0 ? term : -term);
    }
    return total;
}

// Normalized radial s-wave oscillator function from the closed form.
inline double oscillator_radial(int n, double u) {
    const double norm = std::sqrt(2.0 * std::exp(std::lgamma(n + 1.0) - std::lgamma(n + 1.5)));
    return norm * std::exp(-0.5 * u * u) * laguerre_sum(n, 0.5, u * u);
}

// <f(u)> in the unit Gaussian ground state, weight 4/sqrt(pi) u^2 exp(-u^2).
inline double unit_gaussian_expectation(const std::function<double(double)>& f) {
    const double c = 4.0 / std::sqrt(std::numbers::pi);
    return adaptive_simpson([&](double u) { return c * u * u * std::exp(-u * u) * f(u); }, 0.0, 12.0);
}

// Ground energy of A p^2 + B r^2 in three dimensions.
inline double oscillator_ground_energy(double a, double b) { return 3.0 * std::sqrt(a * b); }

}  // namespace salbound::oracle
