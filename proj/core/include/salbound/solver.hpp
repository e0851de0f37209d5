#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "salbound/optimize.hpp"
#include "salbound/potentials.hpp"

namespace salbound {

/// Bottom of the spectrum of |p| + r in three dimensions, to four decimals.
inline constexpr double kLinearReferenceEnergy = 2.2322;

/// Critical coupling above which sqrt(p^2 + m^2) - alpha / r is unbounded
/// below.
inline constexpr double kCriticalCoulombCoupling = 0.63661977236758134;  // 2 / pi

/// One-body operator beta * sqrt(lambda p^2 + m^2) + gamma * V(r), with
/// hbar = c = 1.
struct ReducedHamiltonian {
    double beta = 1.0;
    double lambda = 1.0;
    double gamma = 1.0;
    double mass = 0.0;
    PairPotential potential = PairPotential::linear(1.0);

    /// Throws DomainError unless beta, lambda, gamma > 0 and mass >= 0.
    void validate() const;

    /// Effective Coulomb coupling gamma v / (beta sqrt(lambda)) that the
    /// stability guard compares with 2/pi.
    double effective_coulomb_coupling() const;
};

struct SolverConfig {
    int basis_size = 40;
    ScaleInterval scale_search{0.05, 20.0};
    double scale_tolerance = 1e-4;
    int quadrature_order = 200;
    /// Basis size of the reference solve behind convergence_estimate;
    /// 0 selects basis_size / 2.
    int comparison_basis_size = 0;

    void validate() const;
    int effective_comparison_size() const;
};

struct SpectrumResult {
    double ground_energy = 0.0;
    double optimal_basis_scale = 0.0;
    std::vector<double> coefficients;
    double convergence_estimate = 0.0;
    std::vector<std::string> warnings;
};

/// <phi_i| beta sqrt(lambda p^2 + m^2) |phi_j> over the first basis_size
/// oscillator functions of scale basis_scale. If warnings is non-null the
/// quadrature is repeated at twice the order and a warning is appended when
/// the largest relative change exceeds 1e-10.
Eigen::MatrixXd kinetic_matrix(double beta, double lambda, double mass, int basis_size,
                               double basis_scale, int quadrature_order,
                               std::vector<std::string>* warnings = nullptr);

/// <phi_i| gamma V(r) |phi_j>, same conventions as kinetic_matrix.
Eigen::MatrixXd potential_matrix(const PairPotential& potential, double gamma, int basis_size,
                                 double basis_scale, int quadrature_order,
                                 std::vector<std::string>* warnings = nullptr);

/// Throws StabilityError if the operator has no spectral bottom.
void check_stability(const ReducedHamiltonian& h);

/// Rayleigh-Ritz estimate of the bottom of the spectrum of h, minimized over
/// the basis scale. The result is an upper bound on the true spectral bottom;
/// convergence_estimate = |E0(M) - E0(M')| with M' the comparison size.
///
/// Throws DomainError on invalid input and StabilityError when
/// check_stability fails. An optimum at the edge of the scale interval is
/// returned with a warning.
SpectrumResult ground_energy(const ReducedHamiltonian& h, const SolverConfig& cfg = {});

/// Closed-form bottom of a|p| + b r from scaling: sqrt(ab) times the
/// reference energy.
double scaled_energy_linear(double a, double b);

}  // namespace salbound
