#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "salbound/quadrature.hpp"

namespace salbound {

// Radial s-wave eigenfunctions of the three-dimensional isotropic oscillator,
//
//   R_n(u) = N_n exp(-u^2/2) L_n^{1/2}(u^2),   int_0^inf R_m R_n u^2 du = delta_mn,
//
// in the dimensionless variable u. A basis of scale s (inverse length) uses
// phi_n(r) = s^{3/2} R_n(s r); its momentum-space image is
// (-1)^n s^{-3/2} R_n(p / s). All matrix elements therefore reduce to
// one-dimensional integrals over u with weight u^2.

/// Radius in u beyond which the first `basis_size` functions are negligible
/// (classical turning point of the highest function plus a Gaussian tail).
double oscillator_extent(int basis_size);

/// Gauss-Legendre rule on [0, oscillator_extent(basis_size)] with the radial
/// measure u^2 folded into the weights.
QuadratureRule radial_quadrature(int basis_size, int order);

/// Matrix of R_n(u_k): row n, column k.
Eigen::MatrixXd oscillator_functions(int basis_size, std::span<const double> u);

/// (-1)^n, the Fourier phase of R_n.
inline double fourier_phase(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace salbound
