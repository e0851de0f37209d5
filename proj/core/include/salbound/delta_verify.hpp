#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salbound/jacobi.hpp"

namespace salbound {

/// N momenta with zero sum. Construction rejects a total momentum whose norm
/// exceeds kZeroSumTolerance * max(1, largest |p_i|).
class MomentumConfiguration {
public:
    static constexpr double kZeroSumTolerance = 1e-12;

    explicit MomentumConfiguration(std::vector<Vec3> momenta);

    const std::vector<Vec3>& momenta() const noexcept { return momenta_; }
    int size() const noexcept { return static_cast<int>(momenta_.size()); }

private:
    std::vector<Vec3> momenta_;
};

/// delta(m, N) = sum_i sqrt(p_i^2 + m^2)
///             - 2/(N-1) sum_{i<j} sqrt((N-1)/(2N) (p_i - p_j)^2 + m^2)
///
/// The kinetic energy minus the model Hamiltonian's pairwise kinetic terms.
/// Throws DomainError if N does not match the configuration or N < 2.
double delta_value(double mass, int particle_count, const MomentumConfiguration& config);

/// Same formula without the zero-sum check.
double delta_value_unchecked(double mass, std::span<const Vec3> momenta);

struct TetrahedronRelations {
    double height = 0.0;             // sqrt(2/3) q
    double centroid_distance = 0.0;  // sqrt(3/8) q
};

/// Height and vertex-to-centroid distance of a regular tetrahedron of edge q.
TetrahedronRelations tetrahedron_relations(double edge);

/// Vertices of a regular tetrahedron with the given edge, centred at the
/// origin, built from alternate cube corners.
std::array<Vec3, 4> regular_tetrahedron(double edge);

/// Three coplanar vectors of length `radius` at mutual angles of 120 degrees.
std::array<Vec3, 3> equilateral_configuration(double radius);

/// Axis-aligned Gaussian in the Jacobi momenta (pi_2, ..., pi_N), flattened
/// as 3(N-1) coordinates.
struct GaussianComponent {
    std::vector<double> center;
    std::vector<double> width;
    double weight = 1.0;
};

/// Bosonic momentum distribution: a Gaussian mixture in Jacobi momenta with
/// pi_1 = 0. With `symmetrized` set, every draw is followed by a uniformly
/// random relabelling of the particles, which samples the permutation average
/// of the mixture exactly.
struct SymmetrizedGaussianState {
    int particle_count = 3;
    std::vector<GaussianComponent> components;
    bool symmetrized = true;

    /// Throws DomainError unless widths are positive, weights are nonnegative
    /// and sum to 1, and every vector has 3(N-1) entries.
    void validate() const;

    static SymmetrizedGaussianState isotropic(int particle_count, double width = 1.0);
};

/// Draws `count` configurations from the state using one engine seeded from
/// `seed`. Deterministic in (state, count, seed).
std::vector<MomentumConfiguration> sample_momenta(const SymmetrizedGaussianState& state,
                                                  std::size_t count, std::uint64_t seed);

enum class DeltaRegime {
    Trivial,         // N = 2: delta vanishes identically
    TheoremCovered,  // N = 3 any m, or N = 4 with m = 0
    Conjectured,
};

DeltaRegime delta_regime(int particle_count, double mass);
std::string_view to_string(DeltaRegime regime);

struct DeltaStats {
    std::uint64_t sample_count = 0;
    double mean = 0.0;
    double standard_error = 0.0;
    /// k_i = <sqrt(p_i^2 + m^2)>, one per particle.
    std::vector<double> k;
    std::vector<double> k_standard_error;
    /// q_ij = <sqrt((N-1)/(2N) (p_i - p_j)^2 + m^2)>, pairs in lexicographic order.
    std::vector<double> q;
    std::vector<double> q_standard_error;
    std::uint64_t seed = 0;
    int shard_count = 0;
    /// All k_i (and all q_ij) agree within 3 combined standard errors.
    bool permutation_consistent = true;
};

struct SamplingOptions {
    int shard_count = 8;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend
    /// on this value.
    int threads = 0;
};

/// Monte Carlo estimate of <delta(m, N)>. Shard i draws from an engine seeded
/// by (seed, i); shards are merged in index order, so the result is fixed by
/// (state, m, samples, seed, shard_count). Requires samples >= 10^4.
DeltaStats expectation_delta(const SymmetrizedGaussianState& state, double mass, int particle_count,
                             std::uint64_t samples, std::uint64_t seed,
                             SamplingOptions options = {});

/// A state whose mean delta fell more than 3 standard errors below zero.
struct DeltaFinding {
    SymmetrizedGaussianState state;
    double mass = 0.0;
    int particle_count = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int shard_count = 0;
    double mean = 0.0;
    double standard_error = 0.0;
    DeltaRegime regime = DeltaRegime::Conjectured;
};

std::string finding_to_json(const DeltaFinding& finding);
DeltaFinding finding_from_json(std::string_view text);

/// Random corpus of symmetrized states: 1 to 4 components, centres from a
/// unit isotropic normal, widths log-uniform on [0.3, 3], Dirichlet(1)
/// weights. Deterministic in (particle_count, count, master_seed).
std::vector<SymmetrizedGaussianState> random_state_corpus(int particle_count, int count,
                                                          std::uint64_t master_seed);

/// Per-state sampling seed used by run_delta_corpus.
std::uint64_t corpus_state_seed(std::uint64_t master_seed, int index);

struct CorpusReport {
    int particle_count = 0;
    double mass = 0.0;
    DeltaRegime regime = DeltaRegime::Conjectured;
    std::uint64_t master_seed = 0;
    std::vector<DeltaStats> stats;
    std::vector<DeltaFinding> findings;

    bool all_nonnegative() const noexcept { return findings.empty(); }
};

CorpusReport run_delta_corpus(int particle_count, double mass, int states, std::uint64_t samples,
                              std::uint64_t master_seed, SamplingOptions options = {});

struct QuadraticIdentityReport {
    bool skipped = false;
    std::string warning;
    std::uint64_t sample_count = 0;
    /// Largest |sum p_i^2 - (1/N) sum_{i<j} (p_i - p_j)^2 - (1/N)(sum p_i)^2|.
    double max_identity_residual = 0.0;
    /// <|pi_k|^2> for k = 2..N.
    std::vector<double> jacobi_second_moment;
    std::vector<double> jacobi_second_moment_error;
    /// Largest paired z-score |<pi_a^2 - pi_b^2>| / SE over a < b.
    double max_pair_z = 0.0;
    bool consistent = true;
};

/// Checks the centre-of-mass identity on every sample and equality of the
/// Jacobi second moments (within 4 standard errors) on a symmetrized state.
/// Unsymmetrized states are skipped with a warning.
QuadraticIdentityReport quadratic_identities_check(const SymmetrizedGaussianState& state,
                                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace salbound
