#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace salbound {

using Vec3 = std::array<double, 3>;

/// Orthogonal Jacobi frame for N particles: row 0 is the centre-of-mass row
/// (all entries 1/sqrt(N)); row k >= 1 is sqrt(k/(k+1)) times (mean of the
/// first k particles minus particle k+1), so row 1 gives (r_1 - r_2)/sqrt(2).
/// Positions and momenta transform with the same matrix.
class JacobiFrame {
public:
    explicit JacobiFrame(int order);

    int order() const noexcept { return order_; }
    const Eigen::MatrixXd& matrix() const noexcept { return b_; }

    /// [pi] = B [p]
    std::vector<Vec3> to_jacobi(std::span<const Vec3> particles) const;
    /// [p] = B^T [pi]
    std::vector<Vec3> from_jacobi(std::span<const Vec3> jacobi) const;

    /// max |B B^T - I|
    double orthogonality_defect() const;

private:
    int order_;
    Eigen::MatrixXd b_;
};

inline double squared_norm(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

}  // namespace salbound
