#pragma once

#include <vector>

namespace salbound {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes ascend.
QuadratureRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace salbound
