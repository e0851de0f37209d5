#include "salbound/jacobi.hpp"

#include <cmath>
#include <string>

#include "salbound/errors.hpp"

namespace salbound {

JacobiFrame::JacobiFrame(int order) : order_(order), b_(Eigen::MatrixXd::Zero(order, order)) {
    if (order < 1) throw DomainError("Jacobi frame order must be >= 1, got " + std::to_string(order));
    b_.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(order)));
    for (int k = 1; k < order; ++k) {
        const double f = std::sqrt(k / (k + 1.0));
        for (int i = 0; i < k; ++i) b_(k, i) = f / k;
        b_(k, k) = -f;
    }
}

std::vector<Vec3> JacobiFrame::to_jacobi(std::span<const Vec3> particles) const {
    if (static_cast<int>(particles.size()) != order_) {
        throw DomainError("Jacobi transform expects " + std::to_string(order_) + " vectors, got " +
                          std::to_string(particles.size()));
    }
    std::vector<Vec3> out(order_, Vec3{0.0, 0.0, 0.0});
    for (int k = 0; k < order_; ++k) {
        for (int i = 0; i < order_; ++i) {
            const double b = b_(k, i);
            if (b == 0.0) continue;
            for (int c = 0; c < 3; ++c) out[k][c] += b * particles[i][c];
        }
    }
    return out;
}

std::vector<Vec3> JacobiFrame::from_jacobi(std::span<const Vec3> jacobi) const {
    if (static_cast<int>(jacobi.size()) != order_) {
        throw DomainError("inverse Jacobi transform expects " + std::to_string(order_) +
                          " vectors, got " + std::to_string(jacobi.size()));
    }
    std::vector<Vec3> out(order_, Vec3{0.0, 0.0, 0.0});
    for (int i = 0; i < order_; ++i) {
        for (int k = 0; k < order_; ++k) {
            const double b = b_(k, i);
            if (b == 0.0) continue;
            for (int c = 0; c < 3; ++c) out[i][c] += b * jacobi[k][c];
        }
    }
    return out;
}

double JacobiFrame::orthogonality_defect() const {
    return (b_ * b_.transpose() - Eigen::MatrixXd::Identity(order_, order_)).cwiseAbs().maxCoeff();
}

}  // namespace salbound
