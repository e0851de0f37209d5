#include "salbound/delta_verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"
#include "salbound/errors.hpp"
#include "salbound/running_stats.hpp"

namespace salbound {
namespace {

constexpr double kRegimeThreshold = 3.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

Vec3 difference(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Draws particle momenta from a state. Buffers are reused across draws.
class StateSampler {
public:
    explicit StateSampler(const SymmetrizedGaussianState& state)
        : state_(state),
          frame_(state.particle_count),
          jacobi_(state.particle_count, Vec3{0.0, 0.0, 0.0}),
          particles_(state.particle_count),
          order_(state.particle_count) {
        double total = 0.0;
        for (const auto& c : state.components) {
            total += c.weight;
            cumulative_.push_back(total);
        }
    }

    template <class Engine>
    const std::vector<Vec3>& draw(Engine& engine) {
        const double u = uniform_(engine) * cumulative_.back();
        std::size_t pick = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
        pick = std::min(pick, cumulative_.size() - 1);
        const GaussianComponent& comp = state_.components[pick];
        const int n = state_.particle_count;
        for (int k = 1; k < n; ++k) {
            for (int c = 0; c < 3; ++c) {
                const std::size_t idx = 3 * (k - 1) + c;
                jacobi_[k][c] = comp.center[idx] + comp.width[idx] * normal_(engine);
            }
        }
        const std::vector<Vec3> p = frame_.from_jacobi(jacobi_);
        if (state_.symmetrized) {
            std::iota(order_.begin(), order_.end(), 0);
            std::shuffle(order_.begin(), order_.end(), engine);
            for (int i = 0; i < n; ++i) particles_[i] = p[order_[i]];
        } else {
            particles_ = p;
        }
        return particles_;
    }

    const std::vector<Vec3>& last_jacobi() const { return jacobi_; }

private:
    const SymmetrizedGaussianState& state_;
    JacobiFrame frame_;
    std::vector<Vec3> jacobi_;
    std::vector<Vec3> particles_;
    std::vector<int> order_;
    std::vector<double> cumulative_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct ShardAccumulator {
    RunningStats delta;
    std::vector<RunningStats> k;
    std::vector<RunningStats> q;

    void merge(const ShardAccumulator& other) {
        delta.merge(other.delta);
        for (std::size_t i = 0; i < k.size(); ++i) k[i].merge(other.k[i]);
        for (std::size_t i = 0; i < q.size(); ++i) q[i].merge(other.q[i]);
    }
};

ShardAccumulator run_shard(const SymmetrizedGaussianState& state, double mass, std::uint64_t count,
                           std::uint64_t seed, int shard) {
    const int n = state.particle_count;
    const double pair_factor = (n - 1.0) / (2.0 * n);
    const double pair_weight = 2.0 / (n - 1.0);
    const double m2 = mass * mass;

    ShardAccumulator acc;
    acc.k.resize(n);
    acc.q.resize(static_cast<std::size_t>(n) * (n - 1) / 2);

    auto engine = make_engine(seed, static_cast<std::uint64_t>(shard));
    StateSampler sampler(state);
    for (std::uint64_t s = 0; s < count; ++s) {
        const std::vector<Vec3>& p = sampler.draw(engine);
        double single = 0.0;
        for (int i = 0; i < n; ++i) {
            const double k = std::sqrt(squared_norm(p[i]) + m2);
            acc.k[i].add(k);
            single += k;
        }
        double pair = 0.0;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j, ++idx) {
                const double q = std::sqrt(pair_factor * squared_norm(difference(p[i], p[j])) + m2);
                acc.q[idx].add(q);
                pair += q;
            }
        }
        acc.delta.add(single - pair_weight * pair);
    }
    return acc;
}

bool estimates_agree(const std::vector<RunningStats>& stats) {
    for (std::size_t a = 0; a < stats.size(); ++a) {
        for (std::size_t b = a + 1; b < stats.size(); ++b) {
            const double se = std::hypot(stats[a].standard_error(), stats[b].standard_error());
            if (std::abs(stats[a].mean() - stats[b].mean()) > kRegimeThreshold * se) return false;
        }
    }
    return true;
}

int resolve_threads(int requested, int shards) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(t, 1, std::max(1, shards));
}

nlohmann::json state_to_json(const SymmetrizedGaussianState& state) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : state.components) {
        comps.push_back({{"center", c.center}, {"width", c.width}, {"weight", c.weight}});
    }
    return {{"particle_count", state.particle_count},
            {"symmetrized", state.symmetrized},
            {"components", comps}};
}

SymmetrizedGaussianState state_from_json(const nlohmann::json& j) {
    SymmetrizedGaussianState s;
    s.particle_count = j.at("particle_count").get<int>();
    s.symmetrized = j.at("symmetrized").get<bool>();
    for (const auto& c : j.at("components")) {
        s.components.push_back({c.at("center").get<std::vector<double>>(),
                                c.at("width").get<std::vector<double>>(), c.at("weight").get<double>()});
    }
    s.validate();
    return s;
}

DeltaRegime regime_from_string(std::string_view text) {
    if (text == "trivial") return DeltaRegime::Trivial;
    if (text == "theorem") return DeltaRegime::TheoremCovered;
    if (text == "conjectured") return DeltaRegime::Conjectured;
    throw ParseError("unknown regime '" + std::string(text) + "'");
}

}  // namespace

MomentumConfiguration::MomentumConfiguration(std::vector<Vec3> momenta) : momenta_(std::move(momenta)) {
    Vec3 total{0.0, 0.0, 0.0};
    double largest = 1.0;
    for (const auto& p : momenta_) {
        for (int c = 0; c < 3; ++c) total[c] += p[c];
        largest = std::max(largest, std::sqrt(squared_norm(p)));
    }
    if (std::sqrt(squared_norm(total)) > kZeroSumTolerance * largest) {
        throw DomainError("momentum configuration has nonzero total momentum (|sum p| = " +
                          std::to_string(std::sqrt(squared_norm(total))) + ")");
    }
}

double delta_value_unchecked(double mass, std::span<const Vec3> p) {
    const int n = static_cast<int>(p.size());
    const double pair_factor = (n - 1.0) / (2.0 * n);
    const double m2 = mass * mass;
    double single = 0.0;
    for (const auto& v : p) single += std::sqrt(squared_norm(v) + m2);
    double pair = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pair += std::sqrt(pair_factor * squared_norm(difference(p[i], p[j])) + m2);
        }
    }
    return single - 2.0 / (n - 1.0) * pair;
}

double delta_value(double mass, int particle_count, const MomentumConfiguration& config) {
    if (particle_count < 2) throw DomainError("delta requires N >= 2");
    if (!(mass >= 0.0)) throw DomainError("delta requires m >= 0");
    if (config.size() != particle_count) {
        throw DomainError("configuration has " + std::to_string(config.size()) +
                          " momenta, expected N = " + std::to_string(particle_count));
    }
    return delta_value_unchecked(mass, config.momenta());
}

TetrahedronRelations tetrahedron_relations(double edge) {
    if (!(edge > 0.0)) throw DomainError("tetrahedron edge must be positive");
    return {std::sqrt(2.0 / 3.0) * edge, std::sqrt(3.0 / 8.0) * edge};
}

std::array<Vec3, 4> regular_tetrahedron(double edge) {
    // Alternate corners of a cube of side a have edge a sqrt(2).
    const double h = 0.5 * edge / std::sqrt(2.0);
    return {Vec3{h, h, h}, Vec3{h, -h, -h}, Vec3{-h, h, -h}, Vec3{-h, -h, h}};
}

std::array<Vec3, 3> equilateral_configuration(double radius) {
    const double c = -0.5 * radius;
    const double s = 0.5 * std::sqrt(3.0) * radius;
    return {Vec3{radius, 0.0, 0.0}, Vec3{c, s, 0.0}, Vec3{c, -s, 0.0}};
}

void SymmetrizedGaussianState::validate() const {
    if (particle_count < 2) throw DomainError("state requires N >= 2");
    if (components.empty()) throw DomainError("state needs at least one component");
    const std::size_t dim = 3 * static_cast<std::size_t>(particle_count - 1);
    double total = 0.0;
    for (const auto& c : components) {
        if (c.center.size() != dim || c.width.size() != dim) {
            throw DomainError("component vectors must have 3(N-1) = " + std::to_string(dim) + " entries");
        }
        for (double w : c.width) {
            if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("component widths must be positive");
        }
        if (!(c.weight >= 0.0)) throw DomainError("mixture weights must be nonnegative");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
}

SymmetrizedGaussianState SymmetrizedGaussianState::isotropic(int particle_count, double width) {
    SymmetrizedGaussianState s;
    s.particle_count = particle_count;
    const std::size_t dim = 3 * static_cast<std::size_t>(particle_count - 1);
    s.components.push_back({std::vector<double>(dim, 0.0), std::vector<double>(dim, width), 1.0});
    s.symmetrized = true;
    s.validate();
    return s;
}

std::vector<MomentumConfiguration> sample_momenta(const SymmetrizedGaussianState& state,
                                                  std::size_t count, std::uint64_t seed) {
    state.validate();
    if (count < 1) throw DomainError("sample count must be >= 1");
    auto engine = make_engine(seed, 0);
    StateSampler sampler(state);
    std::vector<MomentumConfiguration> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(sampler.draw(engine));
    return out;
}

DeltaRegime delta_regime(int particle_count, double mass) {
    if (particle_count == 2) return DeltaRegime::Trivial;
    if (particle_count == 3) return DeltaRegime::TheoremCovered;
    if (particle_count == 4 && mass == 0.0) return DeltaRegime::TheoremCovered;
    return DeltaRegime::Conjectured;
}

std::string_view to_string(DeltaRegime regime) {
    switch (regime) {
        case DeltaRegime::Trivial: return "trivial";
        case DeltaRegime::TheoremCovered: return "theorem";
        case DeltaRegime::Conjectured: return "conjectured";
    }
    return "conjectured";
}

DeltaStats expectation_delta(const SymmetrizedGaussianState& state, double mass, int particle_count,
                             std::uint64_t samples, std::uint64_t seed, SamplingOptions options) {
    state.validate();
    if (state.particle_count != particle_count) {
        throw DomainError("state describes N = " + std::to_string(state.particle_count) +
                          " particles, expected " + std::to_string(particle_count));
    }
    if (!(mass >= 0.0)) throw DomainError("mass must be >= 0");
    if (samples < 10000) throw DomainError("expectation_delta needs at least 10^4 samples");
    if (options.shard_count < 1) throw DomainError("shard count must be >= 1");

    const int shards = options.shard_count;
    std::vector<ShardAccumulator> results(shards);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int s = next++; s < shards; s = next++) {
            const std::uint64_t count = samples / shards + (static_cast<std::uint64_t>(s) < samples % shards ? 1 : 0);
            results[s] = run_shard(state, mass, count, seed, s);
        }
    };
    {
        std::vector<std::jthread> pool;
        const int threads = resolve_threads(options.threads, shards);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    ShardAccumulator total = std::move(results[0]);
    for (int s = 1; s < shards; ++s) total.merge(results[s]);

    DeltaStats out;
    out.sample_count = total.delta.count();
    out.mean = total.delta.mean();
    out.standard_error = total.delta.standard_error();
    for (const auto& k : total.k) {
        out.k.push_back(k.mean());
        out.k_standard_error.push_back(k.standard_error());
    }
    for (const auto& q : total.q) {
        out.q.push_back(q.mean());
        out.q_standard_error.push_back(q.standard_error());
    }
    out.seed = seed;
    out.shard_count = shards;
    out.permutation_consistent = estimates_agree(total.k) && estimates_agree(total.q);
    return out;
}

std::string finding_to_json(const DeltaFinding& f) {
    nlohmann::json j = {{"state", state_to_json(f.state)},
                        {"mass", f.mass},
                        {"n", f.particle_count},
                        {"samples", f.samples},
                        {"seed", f.seed},
                        {"shard_count", f.shard_count},
                        {"mean", f.mean},
                        {"standard_error", f.standard_error},
                        {"regime", std::string(to_string(f.regime))}};
    return j.dump(2);
}

DeltaFinding finding_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        DeltaFinding f;
        f.state = state_from_json(j.at("state"));
        f.mass = j.at("mass").get<double>();
        f.particle_count = j.at("n").get<int>();
        f.samples = j.at("samples").get<std::uint64_t>();
        f.seed = j.at("seed").get<std::uint64_t>();
        f.shard_count = j.at("shard_count").get<int>();
        f.mean = j.at("mean").get<double>();
        f.standard_error = j.at("standard_error").get<double>();
        f.regime = regime_from_string(j.at("regime").get<std::string>());
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid finding document: ") + e.what());
    }
}

std::uint64_t corpus_state_seed(std::uint64_t master_seed, int index) {
    return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

std::vector<SymmetrizedGaussianState> random_state_corpus(int particle_count, int count,
                                                          std::uint64_t master_seed) {
    if (particle_count < 2) throw DomainError("corpus requires N >= 2");
    if (count < 0) throw DomainError("corpus size must be >= 0");
    auto engine = make_engine(master_seed, 0xC0A9U);
    std::uniform_int_distribution<int> component_count(1, 4);
    std::normal_distribution<double> center(0.0, 1.0);
    std::uniform_real_distribution<double> log_width(std::log(0.3), std::log(3.0));
    std::exponential_distribution<double> gamma1(1.0);

    const std::size_t dim = 3 * static_cast<std::size_t>(particle_count - 1);
    std::vector<SymmetrizedGaussianState> corpus;
    corpus.reserve(count);
    for (int s = 0; s < count; ++s) {
        SymmetrizedGaussianState state;
        state.particle_count = particle_count;
        state.symmetrized = true;
        const int k = component_count(engine);
        double total = 0.0;
        for (int c = 0; c < k; ++c) {
            GaussianComponent comp;
            comp.center.resize(dim);
            comp.width.resize(dim);
            for (auto& x : comp.center) x = center(engine);
            for (auto& w : comp.width) w = std::exp(log_width(engine));
            comp.weight = gamma1(engine);
            total += comp.weight;
            state.components.push_back(std::move(comp));
        }
        for (auto& comp : state.components) comp.weight /= total;
        // Renormalize the last weight so the sum is 1 to rounding.
        double partial = 0.0;
        for (std::size_t c = 0; c + 1 < state.components.size(); ++c) partial += state.components[c].weight;
        state.components.back().weight = 1.0 - partial;
        corpus.push_back(std::move(state));
    }
    return corpus;
}

CorpusReport run_delta_corpus(int particle_count, double mass, int states, std::uint64_t samples,
                              std::uint64_t master_seed, SamplingOptions options) {
    CorpusReport report;
    report.particle_count = particle_count;
    report.mass = mass;
    report.regime = delta_regime(particle_count, mass);
    report.master_seed = master_seed;
    const auto corpus = random_state_corpus(particle_count, states, master_seed);
    for (int i = 0; i < states; ++i) {
        const std::uint64_t seed = corpus_state_seed(master_seed, i);
        DeltaStats stats = expectation_delta(corpus[i], mass, particle_count, samples, seed, options);
        if (stats.mean < -kRegimeThreshold * stats.standard_error) {
            report.findings.push_back({corpus[i], mass, particle_count, samples, seed,
                                       stats.shard_count, stats.mean, stats.standard_error,
                                       report.regime});
        }
        report.stats.push_back(std::move(stats));
    }
    return report;
}

QuadraticIdentityReport quadratic_identities_check(const SymmetrizedGaussianState& state,
                                                   std::uint64_t samples, std::uint64_t seed) {
    state.validate();
    QuadraticIdentityReport report;
    if (!state.symmetrized) {
        report.skipped = true;
        report.warning = "state is not permutation-symmetrized; Jacobi second-moment equality "
                         "does not apply, check skipped";
        return report;
    }
    if (samples < 1) throw DomainError("sample count must be >= 1");

    const int n = state.particle_count;
    const JacobiFrame frame(n);
    auto engine = make_engine(seed, 0);
    StateSampler sampler(state);
    std::vector<RunningStats> moments(n - 1);
    std::vector<RunningStats> differences(static_cast<std::size_t>(n - 1) * (n - 2) / 2);
    std::vector<double> sq(n - 1);

    for (std::uint64_t s = 0; s < samples; ++s) {
        const std::vector<Vec3>& p = sampler.draw(engine);
        double lhs = 0.0;
        Vec3 total{0.0, 0.0, 0.0};
        for (const auto& v : p) {
            lhs += squared_norm(v);
            for (int c = 0; c < 3; ++c) total[c] += v[c];
        }
        double pairs = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) pairs += squared_norm(difference(p[i], p[j]));
        }
        const double rhs = (pairs + squared_norm(total)) / n;
        report.max_identity_residual = std::max(report.max_identity_residual, std::abs(lhs - rhs));

        const std::vector<Vec3> pi = frame.to_jacobi(p);
        for (int k = 1; k < n; ++k) {
            sq[k - 1] = squared_norm(pi[k]);
            moments[k - 1].add(sq[k - 1]);
        }
        std::size_t idx = 0;
        for (int a = 0; a < n - 1; ++a) {
            for (int b = a + 1; b < n - 1; ++b, ++idx) differences[idx].add(sq[a] - sq[b]);
        }
    }

    report.sample_count = samples;
    for (const auto& m : moments) {
        report.jacobi_second_moment.push_back(m.mean());
        report.jacobi_second_moment_error.push_back(m.standard_error());
    }
    for (const auto& d : differences) {
        const double se = d.standard_error();
        const double z = se > 0.0 ? std::abs(d.mean()) / se : 0.0;
        report.max_pair_z = std::max(report.max_pair_z, z);
    }
    report.consistent = report.max_pair_z <= 4.0;
    return report;
}

}  // namespace salbound
