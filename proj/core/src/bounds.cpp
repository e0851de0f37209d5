#include "salbound/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "salbound/errors.hpp"

namespace salbound {
namespace {

constexpr double kSandwichTolerance = 1e-8;

LowerBound reduce(const ProblemSpec& spec, const SolverConfig& cfg, double lambda,
                  std::string provenance) {
    spec.validate();
    const ReducedHamiltonian h = reduced_hamiltonian(spec, lambda);
    LowerBound out;
    out.lambda = lambda;
    out.gamma = h.gamma;
    out.provenance = std::move(provenance);
    out.spectrum = ground_energy(h, cfg);
    const double n = spec.particle_count;
    out.energy = n * out.spectrum.ground_energy;
    out.conservative_energy = n * (out.spectrum.ground_energy - out.spectrum.convergence_estimate);
    return out;
}

void check_below(const GaussianUpperBound& upper, const LowerBound& lower, const char* name) {
    const double slack = kSandwichTolerance * std::max(1.0, std::abs(upper.energy));
    if (lower.energy > upper.energy + slack) {
        std::ostringstream os;
        os.precision(17);
        os << "bound sandwich violated: " << name << " lower bound " << lower.energy
           << " exceeds Gaussian upper bound " << upper.energy;
        throw InternalError(os.str());
    }
}

}  // namespace

void ProblemSpec::validate() const {
    if (particle_count < 2) {
        throw DomainError("particle count N must be >= 2, got " + std::to_string(particle_count));
    }
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be finite and >= 0, got " + std::to_string(mass));
    }
}

long ProblemSpec::pair_count() const {
    const long n = particle_count;
    return n * (n - 1) / 2;
}

ReducedHamiltonian reduced_hamiltonian(const ProblemSpec& spec, double lambda) {
    ReducedHamiltonian h;
    h.beta = 1.0;
    h.lambda = lambda;
    h.gamma = 0.5 * (spec.particle_count - 1);
    h.mass = spec.mass;
    h.potential = spec.potential;
    return h;
}

double lambda_n2() { return 1.0; }
double lambda_n3() { return 4.0 / 3.0; }
double lambda_n4() { return 1.5; }
double lambda_conjectured(int particle_count) {
    return 2.0 * (particle_count - 1) / static_cast<double>(particle_count);
}

LowerBound lower_n2(const ProblemSpec& spec, const SolverConfig& cfg) {
    return reduce(spec, cfg, lambda_n2(), "pairwise N/2 reduction");
}

LowerBound lower_n3(const ProblemSpec& spec, const SolverConfig& cfg) {
    if (spec.particle_count < 3) {
        throw DomainError("N/3 bound requires N >= 3, got N = " + std::to_string(spec.particle_count));
    }
    return reduce(spec, cfg, lambda_n3(), "three-body N/3 reduction");
}

LowerBound lower_n4(const ProblemSpec& spec, const SolverConfig& cfg) {
    if (spec.particle_count < 4) {
        throw DomainError("N/4 bound requires N >= 4, got N = " + std::to_string(spec.particle_count));
    }
    if (spec.mass != 0.0) {
        throw DomainError("N/4 bound: m=0 required (the four-body kinetic inequality is massless only)");
    }
    return reduce(spec, cfg, lambda_n4(), "four-body N/4 reduction (m = 0)");
}

LowerBound conjectured_lower(const ProblemSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    return reduce(spec, cfg, lambda_conjectured(spec.particle_count), "model-Hamiltonian reduction");
}

ConjectureStatus conjecture_status(const ProblemSpec& spec) {
    const int n = spec.particle_count;
    if (n == 2) return {true, "exact two-body reduction"};
    if (n == 3) return {true, "three-body kinetic inequality, m >= 0"};
    if (n == 4 && spec.mass == 0.0) return {true, "four-body kinetic inequality, m = 0"};
    if (std::holds_alternative<Harmonic>(spec.potential.variant())) {
        return {true, "harmonic-oscillator result, any N"};
    }
    return {false, ""};
}

GaussianUpperBound gaussian_upper(const ProblemSpec& spec, int quadrature_order,
                                  ScaleInterval interval, double scale_tolerance) {
    spec.validate();
    const double n = spec.particle_count;
    const double lambda = lambda_conjectured(spec.particle_count);
    const double pairs = static_cast<double>(spec.pair_count());
    // The trial energy is an expectation of this operator, so past the
    // critical coupling the minimization over scale has no floor.
    check_stability(ReducedHamiltonian{n, lambda, pairs, spec.mass, spec.potential});

    auto energy = [&](double sigma) {
        const double kinetic = kinetic_matrix(1.0, lambda, spec.mass, 1, sigma, quadrature_order)(0, 0);
        const double potential = potential_matrix(spec.potential, pairs, 1, sigma, quadrature_order)(0, 0);
        return n * kinetic + potential;
    };
    const ScaleMinimum best = minimize_log_scale(energy, interval, scale_tolerance);

    GaussianUpperBound out;
    out.energy = best.value;
    out.optimal_scale = best.scale;
    if (best.at_endpoint) {
        std::ostringstream os;
        os << "optimizer: Gaussian scale at interval endpoint (" << best.scale << ")";
        out.warnings.push_back(os.str());
    }
    kinetic_matrix(1.0, lambda, spec.mass, 1, best.scale, quadrature_order, &out.warnings);
    potential_matrix(spec.potential, pairs, 1, best.scale, quadrature_order, &out.warnings);
    return out;
}

BoundSet compute_bounds(const ProblemSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    BoundSet set;
    set.problem = spec;
    set.lower_n2 = lower_n2(spec, cfg);

    if (spec.particle_count >= 3) {
        set.lower_n3 = lower_n3(spec, cfg);
    } else {
        set.lower_n3_absent_reason = "requires N>=3";
    }

    if (spec.particle_count < 4) {
        set.lower_n4_absent_reason = "requires N>=4";
    } else if (spec.mass != 0.0) {
        set.lower_n4_absent_reason = "requires m=0";
    } else {
        set.lower_n4 = lower_n4(spec, cfg);
    }

    set.lower_conjectured = conjectured_lower(spec, cfg);
    set.conjecture_status = conjecture_status(spec);
    set.upper_gaussian = gaussian_upper(spec, cfg.quadrature_order, cfg.scale_search, cfg.scale_tolerance);

    check_below(set.upper_gaussian, set.lower_n2, "N/2");
    if (set.lower_n3) check_below(set.upper_gaussian, *set.lower_n3, "N/3");
    if (set.lower_n4) check_below(set.upper_gaussian, *set.lower_n4, "N/4");
    check_below(set.upper_gaussian, set.lower_conjectured, "conjectured");
    return set;
}

LinearBoundTable linear_bound_table(int particle_count) {
    if (particle_count < 2) {
        throw DomainError("particle count N must be >= 2, got " + std::to_string(particle_count));
    }
    const double n = particle_count;
    const double e = kLinearReferenceEnergy;
    const double pi = std::numbers::pi;
    LinearBoundTable t;
    t.particle_count = particle_count;
    t.lower_n2 = n * std::sqrt((n - 1.0) / 2.0) * e;
    if (particle_count >= 3) t.lower_n3 = n * std::sqrt((n - 1.0) / std::sqrt(3.0)) * e;
    if (particle_count >= 4) t.lower_n4 = n * std::pow(3.0 * (n - 1.0) * (n - 1.0) / 8.0, 0.25) * e;
    const double cube = (n - 1.0) * (n - 1.0) * (n - 1.0);
    t.lower_conjectured = n * std::pow(cube / (2.0 * n), 0.25) * e;
    t.upper_gaussian = 4.0 * n * std::pow(cube / (2.0 * n * pi * pi), 0.25);
    return t;
}

double conjectured_ratio_constant() {
    return 4.0 / (std::sqrt(std::numbers::pi) * kLinearReferenceEnergy);
}

std::string RatioColumn::label() const {
    return particle_count ? "N=" + std::to_string(*particle_count) : std::string("N->inf");
}

std::vector<int> published_table_counts() { return {2, 3, 4, 5, 6, 10}; }

std::vector<RatioColumn> ratio_table(std::span<const int> particle_counts, bool include_limit) {
    std::vector<RatioColumn> table;
    for (int n : particle_counts) {
        const LinearBoundTable t = linear_bound_table(n);
        RatioColumn col;
        col.particle_count = n;
        col.ratio_n2 = t.upper_gaussian / t.lower_n2;
        if (t.lower_n3) col.ratio_n3 = t.upper_gaussian / *t.lower_n3;
        if (t.lower_n4) col.ratio_n4 = t.upper_gaussian / *t.lower_n4;
        col.ratio_conjectured = t.upper_gaussian / t.lower_conjectured;
        table.push_back(col);
    }
    if (include_limit) {
        // With R_c constant, R_X(N) = R_c (E_c / E_X)^{...}; the N-dependence
        // reduces to (2(N-1)/N)^{1/4}, (3(N-1)/(2N))^{1/4}, (4(N-1)/(3N))^{1/4}.
        const double rc = conjectured_ratio_constant();
        RatioColumn limit;
        limit.ratio_n2 = rc * std::pow(2.0, 0.25);
        limit.ratio_n3 = rc * std::pow(1.5, 0.25);
        limit.ratio_n4 = rc * std::pow(4.0 / 3.0, 0.25);
        limit.ratio_conjectured = rc;
        table.push_back(limit);
    }
    return table;
}

}  // namespace salbound
