#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salbound/potentials.hpp"
#include "salbound/solver.hpp"

namespace salbound {

/// N identical bosons of mass m interacting through V(r_ij).
struct ProblemSpec {
    int particle_count = 2;
    double mass = 0.0;
    PairPotential potential = PairPotential::linear(1.0);

    void validate() const;
    /// N(N-1)/2
    long pair_count() const;
};

struct ConjectureStatus {
    bool proven = false;
    std::string reason;  // empty when conjectured
};

/// One lower bound N * E0 obtained from a reduced one-body operator.
struct LowerBound {
    double energy = 0.0;
    /// N * (E0 - convergence_estimate): the bound with the variational
    /// truncation error of the one-body solve subtracted.
    double conservative_energy = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    std::string provenance;
    SpectrumResult spectrum;
};

struct GaussianUpperBound {
    double energy = 0.0;
    double optimal_scale = 0.0;
    std::vector<std::string> warnings;
};

struct BoundSet {
    ProblemSpec problem;
    LowerBound lower_n2;
    std::optional<LowerBound> lower_n3;
    std::string lower_n3_absent_reason;
    std::optional<LowerBound> lower_n4;
    std::string lower_n4_absent_reason;
    LowerBound lower_conjectured;
    ConjectureStatus conjecture_status;
    GaussianUpperBound upper_gaussian;
};

/// One-body operator sqrt(lambda p^2 + m^2) + (N-1)/2 V(r); every lower bound
/// is N times its spectral bottom for some lambda.
ReducedHamiltonian reduced_hamiltonian(const ProblemSpec& spec, double lambda);

/// Kinetic factors of the four reductions.
double lambda_n2();
double lambda_n3();
double lambda_n4();
double lambda_conjectured(int particle_count);

/// Pairwise reduction, valid for every N >= 2 and m >= 0.
LowerBound lower_n2(const ProblemSpec& spec, const SolverConfig& cfg = {});
/// Three-body reduction; requires N >= 3.
LowerBound lower_n3(const ProblemSpec& spec, const SolverConfig& cfg = {});
/// Four-body reduction; requires N >= 4 and m = 0.
LowerBound lower_n4(const ProblemSpec& spec, const SolverConfig& cfg = {});
/// Lower bound from the translation-invariant model Hamiltonian. Valid as a
/// bound only where conjecture_status(spec) is proven.
LowerBound conjectured_lower(const ProblemSpec& spec, const SolverConfig& cfg = {});

ConjectureStatus conjecture_status(const ProblemSpec& spec);

/// Product-Gaussian trial-state upper bound, minimized over the Gaussian
/// scale with the same search as the solver.
GaussianUpperBound gaussian_upper(const ProblemSpec& spec, int quadrature_order = 200,
                                  ScaleInterval interval = {0.05, 20.0},
                                  double scale_tolerance = 1e-4);

/// All bounds for one problem. Throws InternalError if the upper bound lies
/// below any lower bound by more than the solver tolerance.
BoundSet compute_bounds(const ProblemSpec& spec, const SolverConfig& cfg = {});

// Closed forms for V(r) = r, m = 0, using kLinearReferenceEnergy.

struct LinearBoundTable {
    int particle_count = 0;
    double lower_n2 = 0.0;
    std::optional<double> lower_n3;
    std::optional<double> lower_n4;
    double lower_conjectured = 0.0;
    double upper_gaussian = 0.0;
};

LinearBoundTable linear_bound_table(int particle_count);

/// Column of the ratio table: a finite N or the N -> infinity limit.
struct RatioColumn {
    std::optional<int> particle_count;  // nullopt is the limit column
    std::optional<double> ratio_n2;
    std::optional<double> ratio_n3;
    std::optional<double> ratio_n4;
    double ratio_conjectured = 0.0;

    std::string label() const;
};

/// Upper-to-lower ratios E_g / E_X for each N in the list, followed by the
/// N -> infinity column when include_limit is set.
std::vector<RatioColumn> ratio_table(std::span<const int> particle_counts, bool include_limit = true);

/// The particle counts of the published table: 2, 3, 4, 5, 6, 10.
std::vector<int> published_table_counts();

/// 4 / (sqrt(pi) e): the N-independent conjectured ratio.
double conjectured_ratio_constant();

}  // namespace salbound
