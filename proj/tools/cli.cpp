#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "format.hpp"
#include "salbound/bounds.hpp"
#include "salbound/delta_verify.hpp"
#include "salbound/errors.hpp"
#include "salbound/potentials.hpp"
#include "salbound/solver.hpp"

namespace salbound::cli {

using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string subcommand;

    std::string format = "text";
    std::string out;
    std::string config;
    std::uint64_t seed = 42;
    int basis_size = 40;
    int quadrature_order = 200;
    double scale_min = 0.05;
    double scale_max = 20.0;
    double scale_tolerance = 1e-4;

    double beta = 1.0;
    double lambda = 1.0;
    double gamma = 1.0;
    double mass = 0.0;
    std::string potential = "linear:1";

    int n = 2;
    std::vector<int> ns;
    bool with_solver = false;

    int states = 100;
    std::uint64_t samples = 100000;
    int shards = 8;
    std::string findings_out;

    SolverConfig solver() const {
        SolverConfig cfg;
        cfg.basis_size = basis_size;
        cfg.quadrature_order = quadrature_order;
        cfg.scale_search = {scale_min, scale_max};
        cfg.scale_tolerance = scale_tolerance;
        return cfg;
    }

    ProblemSpec problem() const { return {n, mass, PairPotential::parse(potential)}; }
};

struct Report {
    Json json;
    std::string text;
    std::string csv;
    int exit_code = kSuccess;
};

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

// Flags given in the config file are appended only when absent from the
// command line, so explicit flags win.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::string path;
    std::set<std::string> present;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) continue;
        const auto eq = a.find('=');
        const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
        present.insert(name);
        if (name == "config") {
            if (eq != std::string::npos)
                path = a.substr(eq + 1);
            else if (i + 1 < args.size())
                path = args[i + 1];
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw CliError(kUsage, "--config: cannot open '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::exception& e) {
        throw CliError(kUsage, "--config: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw CliError(kUsage, "--config: top level must be an object");

    auto scalar = [&](const std::string& key, const Json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
        if (v.is_number_float()) return full_precision(v.get<double>());
        throw CliError(kUsage, "--config: key '" + key + "' has an unsupported value");
    };

    for (const auto& [raw_key, value] : doc.items()) {
        std::string key = raw_key;
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config" || present.count(key)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (value.is_array()) {
            if (value.empty()) continue;
            args.push_back("--" + key);
            for (const auto& item : value) args.push_back(scalar(raw_key, item));
        } else {
            args.push_back("--" + key);
            args.push_back(scalar(raw_key, value));
        }
    }
    return args;
}

std::string potential_check(const std::string& text) {
    try {
        (void)PairPotential::parse(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

void add_common(CLI::App* sub, RunConfig& rc, bool solver_flags) {
    sub->add_option("--format", rc.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", rc.out, "Write the report to this file instead of stdout");
    sub->add_option("--seed", rc.seed, "Master seed");
    sub->add_option("--config", rc.config, "JSON file with default flag values");
    if (!solver_flags) return;
    sub->add_option("--basis-size", rc.basis_size, "Oscillator basis size M")
        ->check(CLI::Range(2, 400));
    sub->add_option("--quadrature-order", rc.quadrature_order, "Gauss-Legendre order")
        ->check(CLI::Range(16, 20000));
    sub->add_option("--scale-min", rc.scale_min, "Lower end of the basis scale search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--scale-max", rc.scale_max, "Upper end of the basis scale search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--scale-tolerance", rc.scale_tolerance, "Scale search tolerance in log s")
        ->check(CLI::PositiveNumber);
}

void add_potential(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--potential", rc.potential,
                    "linear:b | coulomb:v | harmonic:v | coulomb+linear:v,b | power:c,k")
        ->check(CLI::Validator(potential_check, "POTENTIAL", "potential"));
}

void add_mass(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--mass", rc.mass, "Particle mass m")->check(CLI::NonNegativeNumber);
}

int worker_count(int jobs) {
    int cap = thread_cap_from_environment();
    if (cap <= 0) cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min(cap, jobs));
}

// Runs jobs(i) for i in [0, count) on a small pool. Each job writes only its
// own slot, so the assembled report does not depend on scheduling.
void parallel_for(int count, const std::function<void(int)>& job) {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < worker_count(count); ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

Json solver_json(const RunConfig& rc) {
    Json j;
    j["basis_size"] = rc.basis_size;
    j["quadrature_order"] = rc.quadrature_order;
    j["scale_min"] = rc.scale_min;
    j["scale_max"] = rc.scale_max;
    j["scale_tolerance"] = rc.scale_tolerance;
    return j;
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::string header(const std::string& title) {
    return "# " + title + "\n# units: " + kUnitsHeader + "\n";
}

std::string warnings_text(const std::vector<std::string>& warnings) {
    std::string s;
    for (const auto& w : warnings) s += "warning: " + w + "\n";
    return s;
}

// solve

Report cmd_solve(const RunConfig& rc) {
    ReducedHamiltonian h{rc.beta, rc.lambda, rc.gamma, rc.mass, PairPotential::parse(rc.potential)};
    const SpectrumResult r = ground_energy(h, rc.solver());

    Report rep;
    Json& j = rep.json;
    j["command"] = "solve";
    j["units"] = kUnitsHeader;
    j["hamiltonian"] = {{"beta", h.beta},
                        {"lambda", h.lambda},
                        {"gamma", h.gamma},
                        {"mass", h.mass},
                        {"potential", h.potential.to_string()}};
    j["solver"] = solver_json(rc);
    j["ground_energy"] = r.ground_energy;
    j["optimal_basis_scale"] = r.optimal_basis_scale;
    j["convergence_estimate"] = r.convergence_estimate;
    j["coefficients"] = r.coefficients;
    j["warnings"] = r.warnings;

    std::ostringstream t;
    t << header("solve: beta sqrt(lambda p^2 + m^2) + gamma V(r)");
    t << "potential             " << h.potential.to_string() << "\n"
      << "beta, lambda, gamma   " << six_digits(h.beta) << ", " << six_digits(h.lambda) << ", "
      << six_digits(h.gamma) << "\n"
      << "mass                  " << six_digits(h.mass) << "\n"
      << "basis size            " << rc.basis_size << "\n"
      << "ground energy         " << six_digits(r.ground_energy) << "\n"
      << "optimal basis scale   " << six_digits(r.optimal_basis_scale) << "\n"
      << "convergence estimate  " << six_digits(r.convergence_estimate) << "\n";
    t << warnings_text(r.warnings);
    rep.text = t.str();

    CsvTable csv({"quantity", "index", "value"});
    csv.add_row({"ground_energy", "", full_precision(r.ground_energy)});
    csv.add_row({"optimal_basis_scale", "", full_precision(r.optimal_basis_scale)});
    csv.add_row({"convergence_estimate", "", full_precision(r.convergence_estimate)});
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        csv.add_row({"coefficient", std::to_string(i), full_precision(r.coefficients[i])});
    std::ostringstream c;
    csv.write(c);
    rep.csv = c.str();
    return rep;
}

// bounds

Json lower_json(const LowerBound& b) {
    return {{"energy", b.energy},
            {"conservative_energy", b.conservative_energy},
            {"lambda", b.lambda},
            {"gamma", b.gamma},
            {"provenance", b.provenance},
            {"optimal_basis_scale", b.spectrum.optimal_basis_scale},
            {"convergence_estimate", b.spectrum.convergence_estimate},
            {"warnings", b.spectrum.warnings}};
}

Report cmd_bounds(const RunConfig& rc) {
    const ProblemSpec spec = rc.problem();
    const BoundSet set = compute_bounds(spec, rc.solver());

    Report rep;
    Json& j = rep.json;
    j["command"] = "bounds";
    j["units"] = kUnitsHeader;
    j["n"] = spec.particle_count;
    j["mass"] = spec.mass;
    j["potential"] = spec.potential.to_string();
    j["solver"] = solver_json(rc);

    Json bounds;
    Json reasons = Json::object();
    bounds["n2"] = lower_json(set.lower_n2);
    if (set.lower_n3) {
        bounds["n3"] = lower_json(*set.lower_n3);
    } else {
        bounds["n3"] = nullptr;
        reasons["n3"] = set.lower_n3_absent_reason;
    }
    if (set.lower_n4) {
        bounds["n4"] = lower_json(*set.lower_n4);
    } else {
        bounds["n4"] = nullptr;
        reasons["n4"] = set.lower_n4_absent_reason;
    }
    bounds["conjectured"] = lower_json(set.lower_conjectured);
    bounds["upper"] = {{"energy", set.upper_gaussian.energy},
                       {"optimal_scale", set.upper_gaussian.optimal_scale},
                       {"provenance", "product-Gaussian trial state"},
                       {"warnings", set.upper_gaussian.warnings}};
    j["bounds"] = bounds;
    j["absent_reasons"] = reasons;
    j["status"] = {{"conjectured_bound", set.conjecture_status.proven ? "proven" : "conjectured"},
                   {"reason", set.conjecture_status.reason}};

    struct Row {
        std::string key;
        const LowerBound* bound;
        std::string reason;
    };
    const std::vector<Row> rows = {
        {"n2", &set.lower_n2, ""},
        {"n3", set.lower_n3 ? &*set.lower_n3 : nullptr, set.lower_n3_absent_reason},
        {"n4", set.lower_n4 ? &*set.lower_n4 : nullptr, set.lower_n4_absent_reason},
        {"conjectured", &set.lower_conjectured, ""},
    };

    std::ostringstream t;
    t << header("bounds: N = " + std::to_string(spec.particle_count) + ", m = " +
                six_digits(spec.mass) + ", V = " + spec.potential.to_string());
    TextTable table({"bound", "energy", "lambda", "convergence", "source"});
    CsvTable csv({"bound", "energy", "conservative_energy", "lambda", "gamma",
                  "convergence_estimate", "provenance", "note"});
    std::vector<std::string> warnings;
    for (const Row& r : rows) {
        if (!r.bound) {
            table.add_row({r.key, "null", "", "", r.reason});
            csv.add_row({r.key, "", "", "", "", "", "", r.reason});
            continue;
        }
        const LowerBound& b = *r.bound;
        table.add_row({r.key, six_digits(b.energy), six_digits(b.lambda),
                       six_digits(b.spectrum.convergence_estimate), b.provenance});
        csv.add_row({r.key, full_precision(b.energy), full_precision(b.conservative_energy),
                     full_precision(b.lambda), full_precision(b.gamma),
                     full_precision(b.spectrum.convergence_estimate), b.provenance, ""});
        for (const auto& w : b.spectrum.warnings) warnings.push_back(r.key + ": " + w);
    }
    table.add_row({"upper", six_digits(set.upper_gaussian.energy), "", "",
                   "product-Gaussian trial state"});
    csv.add_row({"upper", full_precision(set.upper_gaussian.energy), "", "", "", "",
                 "product-Gaussian trial state", ""});
    for (const auto& w : set.upper_gaussian.warnings) warnings.push_back("upper: " + w);
    table.write(t);
    t << "conjectured bound: "
      << (set.conjecture_status.proven ? "proven (" + set.conjecture_status.reason + ")"
                                       : std::string("conjectured"))
      << "\n";
    t << warnings_text(warnings);
    rep.text = t.str();

    std::ostringstream c;
    csv.write(c);
    rep.csv = c.str();
    return rep;
}

// linear-table

Report cmd_linear_table(const RunConfig& rc) {
    std::vector<int> ns = rc.ns.empty() ? published_table_counts() : rc.ns;
    for (int n : ns)
        if (n < 2) throw CliError(kUsage, "--n: particle count must be >= 2, got " + std::to_string(n));

    std::vector<LinearBoundTable> closed;
    for (int n : ns) closed.push_back(linear_bound_table(n));

    std::vector<std::optional<BoundSet>> solved(ns.size());
    if (rc.with_solver) {
        const SolverConfig cfg = rc.solver();
        parallel_for(static_cast<int>(ns.size()), [&](int i) {
            const auto k = static_cast<std::size_t>(i);
            solved[k] = compute_bounds(ProblemSpec{ns[k], 0.0, PairPotential::linear(1.0)}, cfg);
        });
    }

    Report rep;
    Json& j = rep.json;
    j["command"] = "linear-table";
    j["units"] = kUnitsHeader;
    j["potential"] = "linear:1";
    j["mass"] = 0.0;
    j["reference_energy"] = kLinearReferenceEnergy;
    if (rc.with_solver) j["solver"] = solver_json(rc);

    TextTable table(rc.with_solver
                        ? std::vector<std::string>{"N", "bound", "closed form", "solver", "rel. diff"}
                        : std::vector<std::string>{"N", "n2", "n3", "n4", "conjectured", "upper"});
    CsvTable csv({"n", "bound", "closed_form", "solver", "relative_difference"});

    Json rows = Json::array();
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const LinearBoundTable& c = closed[k];
        const std::vector<std::pair<std::string, std::optional<double>>> entries = {
            {"n2", c.lower_n2},
            {"n3", c.lower_n3},
            {"n4", c.lower_n4},
            {"conjectured", c.lower_conjectured},
            {"upper", c.upper_gaussian}};

        std::vector<std::optional<double>> numeric(entries.size());
        if (solved[k]) {
            const BoundSet& s = *solved[k];
            numeric = {s.lower_n2.energy,
                       s.lower_n3 ? std::optional<double>(s.lower_n3->energy) : std::nullopt,
                       s.lower_n4 ? std::optional<double>(s.lower_n4->energy) : std::nullopt,
                       s.lower_conjectured.energy, s.upper_gaussian.energy};
        }

        Json row;
        row["n"] = c.particle_count;
        Json cf, sv, rel;
        std::vector<std::string> text_row{std::to_string(c.particle_count)};
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto& [name, value] = entries[e];
            cf[name] = optional_number(value);
            std::optional<double> diff;
            if (value && numeric[e]) diff = (*numeric[e] - *value) / *value;
            if (rc.with_solver) {
                sv[name] = optional_number(numeric[e]);
                rel[name] = optional_number(diff);
                table.add_row({std::to_string(c.particle_count), name, six_digits(value),
                               six_digits(numeric[e]), six_digits(diff)});
            } else {
                text_row.push_back(six_digits(value));
            }
            csv.add_row({std::to_string(c.particle_count), name,
                         value ? full_precision(*value) : "",
                         numeric[e] ? full_precision(*numeric[e]) : "",
                         diff ? full_precision(*diff) : ""});
        }
        if (!rc.with_solver) table.add_row(text_row);
        row["closed_form"] = cf;
        if (rc.with_solver) {
            row["solver"] = sv;
            row["relative_difference"] = rel;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;

    std::ostringstream t;
    t << header("closed-form bounds for V(r) = r, m = 0, e = " + six_digits(kLinearReferenceEnergy));
    table.write(t);
    rep.text = t.str();
    std::ostringstream cs;
    csv.write(cs);
    rep.csv = cs.str();
    return rep;
}

// table1

Report cmd_table1(const RunConfig&) {
    const std::vector<int> counts = published_table_counts();
    const std::vector<RatioColumn> columns = ratio_table(counts, true);

    struct RowSpec {
        std::string label;
        std::function<std::optional<double>(const RatioColumn&)> get;
    };
    const std::vector<RowSpec> rows = {
        {"R_N/2", [](const RatioColumn& c) { return c.ratio_n2; }},
        {"R_N/3", [](const RatioColumn& c) { return c.ratio_n3; }},
        {"R_N/4", [](const RatioColumn& c) { return c.ratio_n4; }},
        {"R_c", [](const RatioColumn& c) { return std::optional<double>(c.ratio_conjectured); }},
    };

    Report rep;
    Json& j = rep.json;
    j["command"] = "table1";
    j["units"] = kUnitsHeader;
    j["description"] = "ratios E_g / E_X of upper to lower bounds for V(r) = r, m = 0";
    Json cols = Json::array();
    for (const auto& c : columns) cols.push_back(c.particle_count ? Json(*c.particle_count) : Json("inf"));
    j["columns"] = cols;

    std::vector<std::string> head{""};
    for (const auto& c : columns) head.push_back(c.label());
    TextTable table(head);
    CsvTable csv({"row_label", "n", "value"});
    Json jrows = Json::array();
    for (const RowSpec& r : rows) {
        Json values = Json::array();
        std::vector<std::string> text_row{r.label};
        for (const auto& c : columns) {
            const std::optional<double> v = r.get(c);
            values.push_back(optional_number(v));
            text_row.push_back(six_digits(v, ""));
            if (v) {
                csv.add_row({r.label, c.particle_count ? std::to_string(*c.particle_count) : "inf",
                             full_precision(*v)});
            }
        }
        table.add_row(text_row);
        jrows.push_back({{"label", r.label}, {"values", values}});
    }
    j["rows"] = jrows;

    std::ostringstream t;
    t << header("ratios of upper to lower energy bounds, V(r) = r, m = 0");
    table.write(t);
    rep.text = t.str();
    std::ostringstream cs;
    csv.write(cs);
    rep.csv = cs.str();
    return rep;
}

// verify-delta

std::string regime_label(DeltaRegime r) {
    switch (r) {
        case DeltaRegime::Trivial: return "trivial regime";
        case DeltaRegime::TheoremCovered: return "theorem-covered regime";
        case DeltaRegime::Conjectured: return "conjectured regime";
    }
    return "";
}

Report cmd_verify_delta(const RunConfig& rc) {
    if (rc.samples < 10000)
        throw CliError(kUsage, "--samples: at least 10000 samples are required");
    SamplingOptions opts;
    opts.shard_count = rc.shards;
    opts.threads = thread_cap_from_environment();
    const CorpusReport report =
        run_delta_corpus(rc.n, rc.mass, rc.states, rc.samples, rc.seed, opts);

    const std::string verdict = report.all_nonnegative() ? "all-nonnegative" : "findings";
    Report rep;
    if (!report.all_nonnegative() && report.regime == DeltaRegime::TheoremCovered)
        rep.exit_code = kVerification;

    Json& j = rep.json;
    j["command"] = "verify-delta";
    j["units"] = kUnitsHeader;
    j["n"] = rc.n;
    j["mass"] = rc.mass;
    j["regime"] = std::string(to_string(report.regime));
    j["regime_label"] = regime_label(report.regime);
    j["seed"] = rc.seed;
    j["states"] = rc.states;
    j["samples"] = rc.samples;
    j["shard_count"] = rc.shards;

    TextTable table({"state", "mean", "std. error", "z", "permutation"});
    CsvTable csv({"state", "seed", "mean", "standard_error", "z", "permutation_consistent"});
    Json per_state = Json::array();
    double min_z = 0.0;
    for (std::size_t i = 0; i < report.stats.size(); ++i) {
        const DeltaStats& s = report.stats[i];
        const double z = s.standard_error > 0.0 ? s.mean / s.standard_error : 0.0;
        min_z = i == 0 ? z : std::min(min_z, z);
        per_state.push_back({{"index", i},
                             {"seed", s.seed},
                             {"mean", s.mean},
                             {"standard_error", s.standard_error},
                             {"z", z},
                             {"permutation_consistent", s.permutation_consistent}});
        table.add_row({std::to_string(i), six_digits(s.mean), six_digits(s.standard_error),
                       six_digits(z), s.permutation_consistent ? "consistent" : "inconsistent"});
        csv.add_row({std::to_string(i), std::to_string(s.seed), full_precision(s.mean),
                     full_precision(s.standard_error), full_precision(z),
                     s.permutation_consistent ? "true" : "false"});
    }
    j["per_state"] = per_state;
    j["summary"] = {{"finding_count", report.findings.size()}, {"min_z", min_z}};
    j["verdict"] = verdict;
    Json findings = Json::array();
    for (const auto& f : report.findings) findings.push_back(Json::parse(finding_to_json(f)));
    j["findings"] = findings;

    if (!rc.findings_out.empty()) {
        std::ofstream f(rc.findings_out);
        if (!f) throw CliError(kUsage, "--findings-out: cannot open '" + rc.findings_out + "'");
        f << findings.dump(2) << '\n';
    }

    std::ostringstream t;
    t << header("verify-delta: N = " + std::to_string(rc.n) + ", m = " + six_digits(rc.mass) +
                ", " + regime_label(report.regime));
    t << "# " << rc.states << " states x " << rc.samples << " samples, seed " << rc.seed << ", "
      << rc.shards << " shards\n";
    table.write(t);
    t << "findings: " << report.findings.size() << " (mean below -3 standard errors)\n";
    t << "verdict: " << verdict << " (" << regime_label(report.regime) << ")\n";
    rep.text = t.str();
    std::ostringstream cs;
    csv.write(cs);
    rep.csv = cs.str();
    return rep;
}

void emit(const Report& rep, const RunConfig& rc, std::ostream& out) {
    std::ostringstream body;
    if (rc.format == "json")
        body << rep.json.dump(2) << '\n';
    else if (rc.format == "csv")
        body << rep.csv;
    else
        body << rep.text;

    if (rc.out.empty()) {
        out << body.str();
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw CliError(kUsage, "--out: cannot open '" + rc.out + "'");
    f << body.str();
}

}  // namespace

int thread_cap_from_environment() {
    const char* v = std::getenv("SALBOUND_THREADS");
    if (!v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n <= 0) return 0;
    return static_cast<int>(std::min<long>(n, 1024));
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Energy bounds for N-boson Salpeter systems"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    CLI::App* solve = app.add_subcommand("solve", "Spectral bottom of the one-body operator");
    add_common(solve, rc, true);
    solve->add_option("--beta", rc.beta, "Kinetic prefactor")->check(CLI::PositiveNumber);
    solve->add_option("--lambda", rc.lambda, "Momentum scale inside the root")
        ->check(CLI::PositiveNumber);
    solve->add_option("--gamma", rc.gamma, "Potential prefactor")->check(CLI::PositiveNumber);
    add_mass(solve, rc);
    add_potential(solve, rc);

    CLI::App* bounds = app.add_subcommand("bounds", "Lower and upper N-body energy bounds");
    add_common(bounds, rc, true);
    bounds->add_option("--n", rc.n, "Particle count N")->check(CLI::Range(2, 100000));
    add_mass(bounds, rc);
    add_potential(bounds, rc);

    CLI::App* linear = app.add_subcommand("linear-table", "Closed-form bounds for V(r) = r, m = 0");
    add_common(linear, rc, true);
    linear->add_option("--n", rc.ns, "Particle counts (default 2 3 4 5 6 10)")
        ->check(CLI::Range(2, 100000));
    linear->add_flag("--solver", rc.with_solver, "Also run the solver path and compare");

    CLI::App* table1 = app.add_subcommand("table1", "Ratios of upper to lower bounds");
    add_common(table1, rc, false);

    CLI::App* verify = app.add_subcommand("verify-delta", "Monte Carlo check of <delta> >= 0");
    add_common(verify, rc, false);
    verify->add_option("--n", rc.n, "Particle count N")->check(CLI::Range(2, 64));
    add_mass(verify, rc);
    verify->add_option("--states", rc.states, "Number of random states")
        ->check(CLI::Range(1, 1000000));
    verify->add_option("--samples", rc.samples, "Samples per state (>= 10000)");
    verify->add_option("--shards", rc.shards, "Sampling shards per state")
        ->check(CLI::Range(1, 4096));
    verify->add_option("--findings-out", rc.findings_out, "Write findings documents to this file");

    try {
        std::vector<std::string> args = inject_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    }

    for (CLI::App* sub : {solve, bounds, linear, table1, verify})
        if (sub->parsed()) rc.subcommand = sub->get_name();

    try {
        Report rep;
        if (rc.subcommand == "solve")
            rep = cmd_solve(rc);
        else if (rc.subcommand == "bounds")
            rep = cmd_bounds(rc);
        else if (rc.subcommand == "linear-table")
            rep = cmd_linear_table(rc);
        else if (rc.subcommand == "table1")
            rep = cmd_table1(rc);
        else
            rep = cmd_verify_delta(rc);
        emit(rep, rc, out);
        if (rep.exit_code == kVerification)
            err << "error: negative mean delta in a theorem-covered regime\n";
        return rep.exit_code;
    } catch (const CliError& e) {
        err << "error: " << e.what() << '\n';
        return e.code();
    } catch (const StabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kSolver;
    } catch (const InternalError& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace salbound::cli
