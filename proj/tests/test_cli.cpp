#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "format.hpp"
#include "support/schema_check.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = salbound::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const Run r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return json::parse(r.out);
}

json load_schema(const std::string& name) {
    std::ifstream in(std::string(SALBOUND_SCHEMA_DIR) + "/" + name + ".schema.json");
    REQUIRE(in.good());
    return json::parse(in);
}

void require_valid(const json& doc, const std::string& schema) {
    const auto errors = schema_check::validate(doc, load_schema(schema));
    std::string joined;
    for (const auto& e : errors) joined += e + "\n";
    CHECK_MESSAGE(errors.empty(), joined);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("salbound_test_" + name);
}

}  // namespace

TEST_CASE("solve reproduces the linear reference energy") {
    const json j = run_json({"solve", "--beta", "1", "--lambda", "1", "--gamma", "1", "--mass", "0",
                             "--potential", "linear:1"});
    CHECK(std::abs(j["ground_energy"].get<double>() - 2.2322) < 1e-3);
    CHECK(j["units"] == "hbar = c = 1");
    CHECK(j["convergence_estimate"].get<double>() < 1e-4);
    require_valid(j, "solve");
}

TEST_CASE("exit codes") {
    SUBCASE("stability guard") {
        const Run r = run({"solve", "--potential", "coulomb:0.8", "--mass", "0"});
        CHECK(r.code == 3);
        CHECK(r.err.find("stability guard") != std::string::npos);
        CHECK(r.out.empty());
    }
    SUBCASE("invalid potential names the flag") {
        const Run r = run({"solve", "--potential", "linear:-1"});
        CHECK(r.code == 2);
        CHECK(r.err.find("--potential") != std::string::npos);
    }
    SUBCASE("malformed potential names the token") {
        const Run r = run({"bounds", "--potential", "linear:abc"});
        CHECK(r.code == 2);
        CHECK(r.err.find("'abc'") != std::string::npos);
    }
    SUBCASE("out-of-range numeric flags") {
        const Run a = run({"solve", "--basis-size", "1"});
        CHECK(a.code == 2);
        CHECK(a.err.find("--basis-size") != std::string::npos);
        CHECK(run({"solve", "--beta", "-1"}).code == 2);
        CHECK(run({"solve", "--mass", "-0.5"}).code == 2);
        CHECK(run({"bounds", "--n", "1"}).code == 2);
        CHECK(run({"verify-delta", "--samples", "100"}).code == 2);
        CHECK(run({"table1", "--format", "xml"}).code == 2);
    }
    SUBCASE("exactly one subcommand") {
        CHECK(run({}).code == 2);
        CHECK(run({"solve", "table1"}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
    }
    SUBCASE("help succeeds") {
        const Run r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("verify-delta") != std::string::npos);
    }
}

TEST_CASE("bounds report") {
    SUBCASE("N = 4, m = 0: four-body and conjectured bounds coincide") {
        const json j = run_json({"bounds", "--n", "4", "--mass", "0", "--potential", "linear:1"});
        const double n4 = j["bounds"]["n4"]["energy"].get<double>();
        const double c = j["bounds"]["conjectured"]["energy"].get<double>();
        CHECK(std::abs(n4 - c) <= 1e-6);
        CHECK(j["status"]["conjectured_bound"] == "proven");
        require_valid(j, "bounds");
    }
    SUBCASE("massive N = 5: four-body bound absent") {
        const json j = run_json({"bounds", "--n", "5", "--mass", "1", "--potential", "linear:1"});
        CHECK(j["bounds"]["n4"].is_null());
        CHECK(j["absent_reasons"]["n4"] == "requires m=0");
        CHECK(j["bounds"]["n3"].is_object());
        CHECK(j["status"]["conjectured_bound"] == "conjectured");
        require_valid(j, "bounds");
    }
    SUBCASE("two bodies") {
        const json j = run_json({"bounds", "--n", "2", "--mass", "0", "--potential", "linear:1"});
        CHECK(std::abs(j["bounds"]["upper"]["energy"].get<double>() - 3.19154) < 1e-4);
        CHECK(std::abs(j["bounds"]["n2"]["energy"].get<double>() - 3.1568) < 2e-3);
        CHECK(j["bounds"]["n3"].is_null());
        CHECK(j["absent_reasons"]["n3"] == "requires N>=3");
        require_valid(j, "bounds");
    }
    SUBCASE("sandwich holds for a Coulomb-plus-linear potential") {
        const json j = run_json({"bounds", "--n", "3", "--mass", "0.5", "--potential", "coulomb+linear:0.3,1"});
        const double upper = j["bounds"]["upper"]["energy"].get<double>();
        for (const char* key : {"n2", "n3", "conjectured"})
            CHECK(j["bounds"][key]["energy"].get<double>() <= upper);
    }
}

TEST_CASE("table1 matches the published ratios") {
    const std::map<std::string, std::vector<double>> published = {
        {"R_N/2", {1.011, 1.08639, 1.11886, 1.13706, 1.14872, 1.17104, 1.20229}},
        {"R_N/3", {1.011, 1.04121, 1.05815, 1.069, 1.08977, 1.11886}},
        {"R_N/4", {1.011, 1.02745, 1.03799, 1.05815, 1.08639}},
        {"R_c", {1.011, 1.011, 1.011, 1.011, 1.011, 1.011, 1.011}},
    };
    const Run r = run({"table1", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 26);
    CHECK(rows[0] == std::vector<std::string>{"row_label", "n", "value"});

    std::map<std::string, std::vector<double>> got;
    for (std::size_t i = 1; i < rows.size(); ++i) got[rows[i][0]].push_back(std::stod(rows[i][2]));
    for (const auto& [label, values] : published) {
        REQUIRE(got[label].size() == values.size());
        for (std::size_t k = 0; k < values.size(); ++k) CHECK(std::abs(got[label][k] - values[k]) < 1e-4);
    }
    CHECK(rows.back()[1] == "inf");

    const json j = run_json({"table1"});
    require_valid(j, "table1");
    CHECK(j["rows"][2]["values"][3].get<double>() == doctest::Approx(1.02745).epsilon(1e-5));
}

TEST_CASE("text, json and csv carry the same numbers") {
    const std::vector<std::string> base{"bounds", "--n", "3", "--mass", "0.25", "--potential", "harmonic:1"};
    const json j = run_json(base);

    auto with = [&](const char* fmt) {
        auto args = base;
        args.insert(args.end(), {"--format", fmt});
        const Run r = run(args);
        REQUIRE(r.code == 0);
        return r.out;
    };
    const auto csv = parse_csv(with("csv"));
    const std::string text = with("text");

    for (std::size_t i = 1; i < csv.size(); ++i) {
        const std::string& key = csv[i][0];
        if (csv[i][1].empty()) {
            CHECK(j["bounds"][key].is_null());
            continue;
        }
        const double value = j["bounds"][key]["energy"].get<double>();
        CHECK(std::stod(csv[i][1]) == value);
        CHECK(text.find(salbound::cli::six_digits(value)) != std::string::npos);
    }
    CHECK(text.find("hbar = c = 1") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
    const fs::path cfg = temp_file("config.json");
    {
        std::ofstream f(cfg);
        f << R"({"n": 5, "mass": 1, "potential": "linear:2", "basis_size": 20, "format": "json"})";
    }
    const Run r = run({"bounds", "--config", cfg.string(), "--n", "4"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const json j = json::parse(r.out);
    CHECK(j["n"] == 4);
    CHECK(j["mass"] == 1.0);
    CHECK(j["potential"] == "linear:2");
    CHECK(j["solver"]["basis_size"] == 20);

    {
        std::ofstream f(cfg);
        f << R"({"no_such_flag": 3})";
    }
    CHECK(run({"bounds", "--config", cfg.string()}).code == 2);
    CHECK(run({"bounds", "--config", (temp_file("missing.json")).string()}).code == 2);
    fs::remove(cfg);
}

TEST_CASE("--out writes the report to a file") {
    const fs::path out = temp_file("table1.csv");
    const Run r = run({"table1", "--format", "csv", "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run({"table1", "--format", "csv"}).out);
    fs::remove(out);
}

TEST_CASE("linear-table") {
    const json j = run_json({"linear-table", "--n", "2", "3", "4"});
    require_valid(j, "linear-table");
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["closed_form"]["n3"].is_null());
    CHECK(j["rows"][1]["closed_form"]["n3"].get<double>() == doctest::Approx(7.1959650).epsilon(1e-7));

    const json s = run_json({"linear-table", "--n", "2", "5", "--solver"});
    require_valid(s, "linear-table");
    for (const auto& row : s["rows"])
        for (const char* key : {"n2", "conjectured", "upper"})
            CHECK(std::abs(row["relative_difference"][key].get<double>()) < 2e-3);
}

TEST_CASE("verify-delta") {
    SUBCASE("regime labels and exit status") {
        const Run c = run({"verify-delta", "--n", "4", "--mass", "0.5", "--states", "3", "--samples", "10000",
                           "--format", "json"});
        CHECK(c.code == 0);
        const json j = json::parse(c.out);
        CHECK(j["regime_label"] == "conjectured regime");
        require_valid(j, "verify-delta");

        const Run t = run({"verify-delta", "--n", "3", "--mass", "0", "--states", "6", "--samples", "10000",
                           "--format", "json"});
        const json k = json::parse(t.out);
        CHECK(k["regime"] == "theorem");
        CHECK(t.code == (k["verdict"] == "findings" ? 4 : 0));
        CHECK(k["findings"].size() == k["summary"]["finding_count"].get<std::size_t>());
        for (const auto& f : k["findings"]) require_valid(f, "finding");
        require_valid(k, "verify-delta");

        const Run two = run({"verify-delta", "--n", "2", "--states", "3", "--samples", "10000"});
        CHECK(two.code == 0);
        CHECK(two.out.find("verdict: all-nonnegative (trivial regime)") != std::string::npos);
    }
    SUBCASE("byte-identical JSON for the same seed, whatever the thread cap") {
        const std::vector<std::string> args{"verify-delta", "--n", "3", "--mass", "1", "--states", "4",
                                            "--samples", "20000", "--seed", "7", "--format", "json"};
        setenv("SALBOUND_THREADS", "1", 1);
        const Run a = run(args);
        setenv("SALBOUND_THREADS", "4", 1);
        const Run b = run(args);
        unsetenv("SALBOUND_THREADS");
        CHECK(a.out == b.out);
        CHECK(a.code == b.code);

        auto other = args;
        other[10] = "8";
        CHECK(run(other).out != a.out);
    }
    SUBCASE("findings file") {
        const fs::path path = temp_file("findings.json");
        const Run r = run({"verify-delta", "--n", "3", "--states", "4", "--samples", "10000", "--findings-out",
                           path.string(), "--format", "json"});
        std::ifstream in(path);
        const json f = json::parse(in);
        CHECK(f == json::parse(r.out)["findings"]);
        fs::remove(path);
    }
}

TEST_CASE("SALBOUND_THREADS parsing") {
    setenv("SALBOUND_THREADS", "3", 1);
    CHECK(salbound::cli::thread_cap_from_environment() == 3);
    setenv("SALBOUND_THREADS", "zero", 1);
    CHECK(salbound::cli::thread_cap_from_environment() == 0);
    setenv("SALBOUND_THREADS", "-2", 1);
    CHECK(salbound::cli::thread_cap_from_environment() == 0);
    unsetenv("SALBOUND_THREADS");
    CHECK(salbound::cli::thread_cap_from_environment() == 0);
}
