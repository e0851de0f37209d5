#include "salbound/oscillator_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "salbound/errors.hpp"

namespace salbound {

double oscillator_extent(int basis_size) {
    // Turning point of R_{M-1} is sqrt(4(M-1)+3); exp(-7^2) leaves ~1e-21.
    return std::sqrt(4.0 * basis_size + 2.0) + 7.0;
}

QuadratureRule radial_quadrature(int basis_size, int order) {
    if (basis_size < 1) {
        throw DomainError("basis size must be >= 1, got " + std::to_string(basis_size));
    }
    QuadratureRule rule = gauss_legendre(order, 0.0, oscillator_extent(basis_size));
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        rule.weights[k] *= rule.nodes[k] * rule.nodes[k];
    }
    return rule;
}

Eigen::MatrixXd oscillator_functions(int basis_size, std::span<const double> u) {
    if (basis_size < 1) {
        throw DomainError("basis size must be >= 1, got " + std::to_string(basis_size));
    }
    constexpr double alpha = 0.5;
    const Eigen::Index count = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd R(basis_size, count);
    // N_0 = sqrt(2 / Gamma(3/2)) = 2 / pi^{1/4}
    const double norm0 = 2.0 / std::pow(std::numbers::pi, 0.25);
    for (Eigen::Index k = 0; k < count; ++k) {
        const double x = u[k] * u[k];
        R(0, k) = norm0 * std::exp(-0.5 * x);
        if (basis_size > 1) R(1, k) = (1.0 + alpha - x) * R(0, k) / std::sqrt(1.0 + alpha);
        // Laguerre recurrence carried on normalized functions:
        // (n+1) L_{n+1} = (2n+1+a-x) L_n - (n+a) L_{n-1},  N_{n+1}/N_n = sqrt((n+1)/(n+1+a)).
        for (int n = 1; n + 1 < basis_size; ++n) {
            const double up = std::sqrt((n + 1.0) / (n + 1.0 + alpha));
            const double up2 = up * std::sqrt(n / (n + alpha));
            R(n + 1, k) = ((2.0 * n + 1.0 + alpha - x) * R(n, k) * up -
                           (n + alpha) * R(n - 1, k) * up2) /
                          (n + 1.0);
        }
    }
    return R;
}

}  // namespace salbound
