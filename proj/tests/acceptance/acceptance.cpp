// Acceptance suite. Prints one PASS/FAIL line per criterion; with
// `--criterion k` only criterion k runs. Exit status is nonzero if any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "salbound/bounds.hpp"
#include "salbound/delta_verify.hpp"
#include "salbound/errors.hpp"
#include "salbound/jacobi.hpp"
#include "salbound/potentials.hpp"
#include "salbound/solver.hpp"

using namespace salbound;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[violated] " << what << "; ";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, int digits = 8) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

ProblemSpec problem(int n, double m, PairPotential v) { return ProblemSpec{n, m, std::move(v)}; }

// 1. Solver accuracy: e = 2.2322 within 0.001 at the default M = 40, < 10 s.
void solver_accuracy(Outcome& o) {
    const auto t0 = Clock::now();
    const SpectrumResult r = ground_energy(ReducedHamiltonian{});
    const double dt = seconds_since(t0);
    o.require(std::abs(r.ground_energy - 2.2322) <= 1e-3, "|E0 - 2.2322| <= 1e-3");
    o.require(dt < 10.0, "runtime < 10 s");
    o.detail << "E0 = " << num(r.ground_energy) << ", scale " << num(r.optimal_basis_scale, 6)
             << ", runtime " << num(dt, 3) << " s";
}

// 2. Two-body exactness.
void two_body(Outcome& o) {
    const BoundSet b = compute_bounds(problem(2, 0.0, PairPotential::linear(1)));
    const double lower = b.lower_n2.energy;
    const double conj = b.lower_conjectured.energy;
    const double upper = b.upper_gaussian.energy;
    o.require(std::abs(lower - 3.1568) <= 2e-3, "|lower - 3.1568| <= 2e-3");
    o.require(std::abs(conj - 3.1568) <= 2e-3, "|conjectured - 3.1568| <= 2e-3");
    o.require(lower == conj, "lower == conjectured");
    o.require(std::abs(upper - 3.19154) <= 1e-4, "|upper - 3.19154| <= 1e-4");
    o.detail << "lower " << num(lower) << ", conjectured " << num(conj) << ", upper " << num(upper);
}

// 3. Ratio table against the published entries.
void table_reproduction(Outcome& o) {
    const std::vector<std::vector<double>> published = {
        {1.011, 1.08639, 1.11886, 1.13706, 1.14872, 1.17104, 1.20229},
        {0, 1.011, 1.04121, 1.05815, 1.069, 1.08977, 1.11886},
        {0, 0, 1.011, 1.02745, 1.03799, 1.05815, 1.08639},
        {1.011, 1.011, 1.011, 1.011, 1.011, 1.011, 1.011},
    };
    const std::vector<int> counts = published_table_counts();
    const auto cols = ratio_table(counts, true);
    int entries = 0;
    double worst = 0.0;
    double rc_min = 1e300, rc_max = -1e300;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::optional<double> got[4] = {cols[c].ratio_n2, cols[c].ratio_n3, cols[c].ratio_n4,
                                              cols[c].ratio_conjectured};
        for (int r = 0; r < 4; ++r) {
            const double want = published[r][c];
            if (want == 0.0) {
                o.require(!got[r], "entry absent where the table is blank");
                continue;
            }
            if (!got[r]) {
                o.require(false, "entry present where the table has a value");
                continue;
            }
            ++entries;
            worst = std::max(worst, std::abs(*got[r] - want));
        }
        rc_min = std::min(rc_min, cols[c].ratio_conjectured);
        rc_max = std::max(rc_max, cols[c].ratio_conjectured);
    }
    o.require(worst <= 1e-4, "every entry within 1e-4");
    o.require(rc_max - rc_min <= 1e-12, "R_c constant to 1e-12");
    o.detail << entries << " entries, max |diff| " << num(worst, 3) << ", R_c spread "
             << num(rc_max - rc_min, 3);
}

// 4. Closed forms vs solver path for V = r, m = 0.
void closed_form_consistency(Outcome& o) {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const LinearBoundTable t = linear_bound_table(n);
        const BoundSet b = compute_bounds(problem(n, 0.0, PairPotential::linear(1)));
        auto cmp = [&](double closed, double solved) {
            worst = std::max(worst, std::abs(solved - closed) / closed);
        };
        cmp(t.lower_n2, b.lower_n2.energy);
        if (t.lower_n3) cmp(*t.lower_n3, b.lower_n3.value().energy);
        if (t.lower_n4) cmp(*t.lower_n4, b.lower_n4.value().energy);
        cmp(t.lower_conjectured, b.lower_conjectured.energy);
        cmp(t.upper_gaussian, b.upper_gaussian.energy);
    }
    o.require(worst <= 2e-3, "relative difference <= 2e-3");
    o.detail << "max relative difference " << num(worst, 3) << " over N = 2..6";
}

// 5. Scaling law E(a, b) = sqrt(ab) E(1, 1).
void scaling_law(Outcome& o) {
    auto energy = [](double a, double b) {
        ReducedHamiltonian h;
        h.beta = a;
        h.gamma = b;
        return ground_energy(h).ground_energy;
    };
    const double e11 = energy(1, 1);
    double worst = 0.0;
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {2, 1}, {1, 2}, {3, 5}}) {
        const double s = std::sqrt(a * b);
        const double dev = std::abs(energy(a, b) - s * e11) / s;
        o.require(dev <= 1e-4, "(a,b) = (" + num(a) + "," + num(b) + ")");
        worst = std::max(worst, dev);
    }
    o.detail << "max |E(a,b) - sqrt(ab) E(1,1)| / sqrt(ab) = " << num(worst, 3);
}

// 6. Monte Carlo delta suites in the theorem-covered regimes.
void delta_suites(Outcome& o) {
    const auto t0 = Clock::now();
    constexpr std::uint64_t kMasterSeed = 20240601;
    constexpr int kStates = 100;
    constexpr std::uint64_t kSamples = 100000;
    for (auto [n, m] : std::vector<std::pair<int, double>>{{3, 0.0}, {3, 1.0}, {4, 0.0}}) {
        const CorpusReport rep = run_delta_corpus(n, m, kStates, kSamples, kMasterSeed);
        double min_z = 0.0;
        for (const auto& s : rep.stats)
            if (s.standard_error > 0.0) min_z = std::min(min_z, s.mean / s.standard_error);
        o.require(rep.all_nonnegative(), "(N=" + std::to_string(n) + ", m=" + num(m) +
                                              "): every mean >= -3 SE");
        o.detail << "(N=" << n << ", m=" << num(m) << ") " << rep.findings.size() << "/" << kStates
                 << " below -3 SE, min z " << num(min_z, 4) << "; ";
    }
    const double dt = seconds_since(t0);
    o.require(dt < 300.0, "runtime < 5 min");
    o.detail << "runtime " << num(dt, 3) << " s";
}

// 7. Pointwise geometry.
void pointwise_geometry(Outcome& o) {
    double worst = 0.0;
    for (double m : {0.0, 1.0, 10.0}) {
        for (double radius : {0.3, 1.0, 2.5}) {
            const auto tri = equilateral_configuration(radius);
            const MomentumConfiguration cfg({tri.begin(), tri.end()});
            worst = std::max(worst, std::abs(delta_value(m, 3, cfg)));
        }
    }
    for (double edge : {0.5, 1.0, 3.0}) {
        const auto tet = regular_tetrahedron(edge);
        const MomentumConfiguration cfg({tet.begin(), tet.end()});
        worst = std::max(worst, std::abs(delta_value(0.0, 4, cfg)));
    }
    const MomentumConfiguration recoil({{1, 0, 0}, {-1, 0, 0}, {0, 0, 0}});
    const double neg = delta_value(0.0, 3, recoil);
    const double want = 2.0 - 4.0 / std::sqrt(3.0);
    o.require(worst <= 1e-12, "|delta| <= 1e-12 on centroid configurations");
    o.require(std::abs(neg - want) <= 1e-12, "delta(0,3) = 2 - 4/sqrt(3) on p2 = -p1, p3 = 0");
    o.detail << "max |delta| on centroid configurations " << num(worst, 3) << ", recoil example "
             << num(neg, 12);
}

// 8. Jacobi identities.
void jacobi_identities(Outcome& o) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    double norm_residual = 0.0, rebuild_residual = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const JacobiFrame frame(n);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<Vec3> p(static_cast<std::size_t>(n));
            for (auto& v : p)
                for (auto& c : v) c = g(rng);
            const auto pi = frame.to_jacobi(p);
            double lhs = 0.0, rhs = 0.0;
            for (int i = 0; i < n; ++i) {
                lhs += squared_norm(p[i]);
                rhs += squared_norm(pi[i]);
            }
            norm_residual = std::max(norm_residual, std::abs(lhs - rhs));
            for (int c = 0; c < 3; ++c) {
                const double rebuilt =
                    pi[0][c] / std::sqrt(n) - std::sqrt((n - 1.0) / n) * pi[n - 1][c];
                rebuild_residual = std::max(rebuild_residual, std::abs(rebuilt - p[n - 1][c]));
            }
        }
    }
    o.require(norm_residual <= 1e-12, "sum p_i^2 = sum pi_k^2 to 1e-12");
    o.require(rebuild_residual <= 1e-12, "p_N reconstruction to 1e-12");
    o.detail << "norm identity residual " << num(norm_residual, 3) << ", p_N residual "
             << num(rebuild_residual, 3) << " (1000 configurations per N = 2..6)";
}

// 9. Nonrelativistic limit for the harmonic potential.
void nonrelativistic_limit(Outcome& o) {
    for (int n : {3, 5}) {
        std::vector<double> residuals;
        for (double m : {1e2, 1e3, 1e4}) {
            const double oracle = n * m + 3.0 * (n - 1) * std::sqrt(n / (2.0 * m));
            const double got = conjectured_lower(problem(n, m, PairPotential::harmonic(1))).energy;
            residuals.push_back(std::abs(got - oracle));
        }
        const double f1 = residuals[0] / residuals[1];
        const double f2 = residuals[1] / residuals[2];
        o.require(f1 >= 50.0 && f2 >= 50.0, "N=" + std::to_string(n) + " decrease >= 50x per decade");
        o.detail << "N=" << n << " residuals " << num(residuals[0], 3) << ", " << num(residuals[1], 3)
                 << ", " << num(residuals[2], 3) << " (x" << num(f1, 3) << ", x" << num(f2, 3) << "); ";
    }
}

// 10. Bound sandwich over a grid of problems.
void bound_sandwich(Outcome& o) {
    const std::vector<PairPotential> potentials = {
        PairPotential::linear(1),
        PairPotential::harmonic(1),
        PairPotential::power_law(1, 0.5),
        PairPotential::coulomb_plus_linear(0.1, 1),
        PairPotential::coulomb(0.1),
    };
    int checked = 0;
    double worst_gap = 1e300;
    for (const auto& v : potentials) {
        for (int n : {2, 3, 4, 5, 6, 10}) {
            for (double m : {0.0, 1.0, 10.0}) {
                // |p| - v/r has no bound state; its infimum 0 is not attained.
                if (m == 0.0 && v.homogeneity_degree() == -1.0) continue;
                const ProblemSpec spec = problem(n, m, v);
                try {
                    const BoundSet b = compute_bounds(spec);
                    double top_lower = b.lower_n2.energy;
                    if (b.lower_n3) top_lower = std::max(top_lower, b.lower_n3->energy);
                    if (b.lower_n4) top_lower = std::max(top_lower, b.lower_n4->energy);
                    top_lower = std::max(top_lower, b.lower_conjectured.energy);
                    const double gap = b.upper_gaussian.energy - top_lower;
                    worst_gap = std::min(worst_gap, gap / std::abs(b.upper_gaussian.energy));
                    o.require(gap >= 0.0, "upper >= lowers for N=" + std::to_string(n) + ", m=" +
                                              num(m) + ", " + v.to_string());
                } catch (const InternalError& e) {
                    o.require(false, e.what());
                }
                ++checked;
            }
        }
    }
    o.detail << checked << " problems, smallest relative gap (upper - max lower) / upper "
             << num(worst_gap, 3);
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "solver accuracy", solver_accuracy},
        {2, "two-body exactness", two_body},
        {3, "ratio table reproduction", table_reproduction},
        {4, "closed-form vs solver consistency", closed_form_consistency},
        {5, "scaling law", scaling_law},
        {6, "delta theorem suites", delta_suites},
        {7, "pointwise geometry", pointwise_geometry},
        {8, "Jacobi identities", jacobi_identities},
        {9, "nonrelativistic limit", nonrelativistic_limit},
        {10, "bound sandwich", bound_sandwich},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: salbound_acceptance [--criterion k]\n";
            return 2;
        }
    }

    int failures = 0, ran = 0;
    for (const Criterion& c : criteria) {
        if (only && c.id != only) continue;
        ++ran;
        Outcome o;
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": "
                  << o.detail.str() << std::endl;
    }
    if (ran == 0) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }
    std::cout << (ran - failures) << "/" << ran << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
