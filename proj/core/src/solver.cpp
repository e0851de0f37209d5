#include "salbound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "salbound/errors.hpp"
#include "salbound/oscillator_basis.hpp"

namespace salbound {
namespace {

constexpr double kQuadratureTolerance = 1e-10;

// Basis values and radial weights for one (basis size, quadrature order),
// shared across every basis scale tried by the optimizer.
class MatrixAssembler {
public:
    MatrixAssembler(int basis_size, int order)
        : rule_(radial_quadrature(basis_size, order)),
          values_(oscillator_functions(basis_size, rule_.nodes)),
          phase_(basis_size) {
        for (int n = 0; n < basis_size; ++n) phase_[n] = fourier_phase(n);
    }

    Eigen::MatrixXd kinetic(double beta, double lambda, double mass, double scale) const {
        Eigen::VectorXd f(nodes());
        for (Eigen::Index k = 0; k < nodes(); ++k) {
            const double p = scale * rule_.nodes[k];
            f[k] = rule_.weights[k] * beta * std::sqrt(lambda * p * p + mass * mass);
        }
        Eigen::MatrixXd m = weighted_gram(f);
        m = phase_.asDiagonal() * m * phase_.asDiagonal();
        return m;
    }

    Eigen::MatrixXd potential(const PairPotential& v, double gamma, double scale) const {
        Eigen::VectorXd f(nodes());
        for (Eigen::Index k = 0; k < nodes(); ++k) {
            f[k] = rule_.weights[k] * gamma * v(rule_.nodes[k] / scale);
        }
        return weighted_gram(f);
    }

private:
    Eigen::Index nodes() const { return static_cast<Eigen::Index>(rule_.nodes.size()); }

    // sum_k R_i(u_k) f_k R_j(u_k), upper triangle mirrored so the result is
    // exactly symmetric.
    Eigen::MatrixXd weighted_gram(const Eigen::VectorXd& f) const {
        Eigen::MatrixXd m = values_ * f.asDiagonal() * values_.transpose();
        m.triangularView<Eigen::StrictlyLower>() = m.transpose().triangularView<Eigen::StrictlyLower>();
        return m;
    }

    QuadratureRule rule_;
    Eigen::MatrixXd values_;
    Eigen::VectorXd phase_;
};

double relative_change(const Eigen::MatrixXd& coarse, const Eigen::MatrixXd& fine) {
    const double scale = std::max(fine.cwiseAbs().maxCoeff(), 1e-300);
    return (coarse - fine).cwiseAbs().maxCoeff() / scale;
}

void check_matrix_inputs(int basis_size, double basis_scale, int quadrature_order) {
    if (basis_size < 1) throw DomainError("basis size must be >= 1");
    if (!(basis_scale > 0.0)) throw DomainError("basis scale must be positive");
    if (quadrature_order < 16) throw DomainError("quadrature order must be >= 16");
}

std::string quadrature_warning(const char* what, double change, int order) {
    std::ostringstream os;
    os << what << " quadrature not converged: relative change " << change << " between order "
       << order << " and " << 2 * order;
    return os.str();
}

struct ScaledSolve {
    ScaleMinimum minimum;
    Eigen::VectorXd vector;
};

ScaledSolve solve_at_size(const ReducedHamiltonian& h, const SolverConfig& cfg, int basis_size) {
    const MatrixAssembler assembler(basis_size, cfg.quadrature_order);
    auto hamiltonian = [&](double s) {
        return Eigen::MatrixXd(assembler.kinetic(h.beta, h.lambda, h.mass, s) +
                               assembler.potential(h.potential, h.gamma, s));
    };
    auto lowest = [&](double s) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian(s), Eigen::EigenvaluesOnly);
        return es.eigenvalues()[0];
    };
    ScaledSolve out;
    out.minimum = minimize_log_scale(lowest, cfg.scale_search, cfg.scale_tolerance);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian(out.minimum.scale));
    out.minimum.value = es.eigenvalues()[0];
    out.vector = es.eigenvectors().col(0);
    return out;
}

}  // namespace

void ReducedHamiltonian::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw DomainError(std::string(name) + " must be finite and > 0, got " + std::to_string(x));
        }
    };
    positive(beta, "beta");
    positive(lambda, "lambda");
    positive(gamma, "gamma");
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw DomainError("mass must be finite and >= 0, got " + std::to_string(mass));
    }
}

double ReducedHamiltonian::effective_coulomb_coupling() const {
    return gamma * potential.coulomb_strength() / (beta * std::sqrt(lambda));
}

void SolverConfig::validate() const {
    if (basis_size < 2) throw DomainError("basis size must be >= 2, got " + std::to_string(basis_size));
    if (!(scale_search.lower > 0.0) || !(scale_search.upper > scale_search.lower)) {
        throw DomainError("scale search interval must satisfy 0 < lower < upper");
    }
    if (!(scale_tolerance > 0.0)) throw DomainError("scale tolerance must be positive");
    if (quadrature_order < 16) {
        throw DomainError("quadrature order must be >= 16, got " + std::to_string(quadrature_order));
    }
    if (comparison_basis_size < 0 || comparison_basis_size >= basis_size) {
        throw DomainError("comparison basis size must lie in [1, basis size) or be 0");
    }
}

int SolverConfig::effective_comparison_size() const {
    return comparison_basis_size == 0 ? std::max(1, basis_size / 2) : comparison_basis_size;
}

Eigen::MatrixXd kinetic_matrix(double beta, double lambda, double mass, int basis_size,
                               double basis_scale, int quadrature_order,
                               std::vector<std::string>* warnings) {
    check_matrix_inputs(basis_size, basis_scale, quadrature_order);
    Eigen::MatrixXd k =
        MatrixAssembler(basis_size, quadrature_order).kinetic(beta, lambda, mass, basis_scale);
    if (warnings) {
        const Eigen::MatrixXd fine =
            MatrixAssembler(basis_size, 2 * quadrature_order).kinetic(beta, lambda, mass, basis_scale);
        const double change = relative_change(k, fine);
        if (change > kQuadratureTolerance) {
            warnings->push_back(quadrature_warning("kinetic", change, quadrature_order));
        }
    }
    return k;
}

Eigen::MatrixXd potential_matrix(const PairPotential& potential, double gamma, int basis_size,
                                 double basis_scale, int quadrature_order,
                                 std::vector<std::string>* warnings) {
    check_matrix_inputs(basis_size, basis_scale, quadrature_order);
    Eigen::MatrixXd v =
        MatrixAssembler(basis_size, quadrature_order).potential(potential, gamma, basis_scale);
    if (warnings) {
        const Eigen::MatrixXd fine =
            MatrixAssembler(basis_size, 2 * quadrature_order).potential(potential, gamma, basis_scale);
        const double change = relative_change(v, fine);
        if (change > kQuadratureTolerance) {
            warnings->push_back(quadrature_warning("potential", change, quadrature_order));
        }
    }
    return v;
}

void check_stability(const ReducedHamiltonian& h) {
    const double coupling = h.effective_coulomb_coupling();
    if (coupling >= kCriticalCoulombCoupling) {
        std::ostringstream os;
        os << "stability guard: Coulomb coupling gamma*v/(beta*sqrt(lambda)) = " << coupling
           << " >= 2/pi; the operator is unbounded below";
        throw StabilityError(os.str());
    }
}

SpectrumResult ground_energy(const ReducedHamiltonian& h, const SolverConfig& cfg) {
    h.validate();
    cfg.validate();
    check_stability(h);

    const ScaledSolve main = solve_at_size(h, cfg, cfg.basis_size);
    SpectrumResult result;
    result.ground_energy = main.minimum.value;
    result.optimal_basis_scale = main.minimum.scale;

    Eigen::VectorXd c = main.vector / main.vector.norm();
    Eigen::Index pivot = 0;
    c.cwiseAbs().maxCoeff(&pivot);
    if (c[pivot] < 0.0) c = -c;
    result.coefficients.assign(c.data(), c.data() + c.size());

    if (main.minimum.at_endpoint) {
        std::ostringstream os;
        os << "optimizer: minimum at scale-interval endpoint (scale " << main.minimum.scale
           << " in [" << cfg.scale_search.lower << ", " << cfg.scale_search.upper
           << "]); widen the interval";
        result.warnings.push_back(os.str());
    }

    kinetic_matrix(h.beta, h.lambda, h.mass, cfg.basis_size, main.minimum.scale,
                   cfg.quadrature_order, &result.warnings);
    potential_matrix(h.potential, h.gamma, cfg.basis_size, main.minimum.scale,
                     cfg.quadrature_order, &result.warnings);

    const ScaledSolve reference = solve_at_size(h, cfg, cfg.effective_comparison_size());
    result.convergence_estimate = std::abs(result.ground_energy - reference.minimum.value);
    return result;
}

double scaled_energy_linear(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("scaled_energy_linear requires a, b > 0");
    return std::sqrt(a * b) * kLinearReferenceEnergy;
}

}  // namespace salbound
