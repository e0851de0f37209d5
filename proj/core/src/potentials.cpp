#include "salbound/potentials.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "salbound/errors.hpp"

namespace salbound {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string format_number(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be a finite positive number, got " +
                          format_number(value));
    }
}


double parse_number(std::string_view token, std::string_view context) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("invalid number '" + std::string(token) + "' in potential spec '" +
                         std::string(context) + "'");
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

PairPotential PairPotential::linear(double slope) {
    require_positive(slope, "linear slope b");
    return PairPotential(Linear{slope});
}

PairPotential PairPotential::coulomb(double strength) {
    require_positive(strength, "coulomb strength v");
    return PairPotential(Coulomb{strength});
}

PairPotential PairPotential::harmonic(double strength) {
    require_positive(strength, "harmonic strength v");
    return PairPotential(Harmonic{strength});
}

PairPotential PairPotential::coulomb_plus_linear(double coulomb, double slope) {
    if (!(coulomb >= 0.0) || !std::isfinite(coulomb)) {
        throw DomainError("coulomb+linear strength v must be finite and >= 0, got " +
                          format_number(coulomb));
    }
    require_positive(slope, "coulomb+linear slope b");
    return PairPotential(CoulombPlusLinear{coulomb, slope});
}

PairPotential PairPotential::power_law(double coefficient, double exponent) {
    require_positive(coefficient, "power-law coefficient c");
    require_positive(exponent, "power-law exponent k");
    return PairPotential(PowerLaw{coefficient, exponent});
}

PairPotential PairPotential::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("potential spec '" + std::string(text) +
                         "' is missing ':' (expected e.g. linear:1)");
    }
    const std::string_view kind = text.substr(0, colon);
    const auto args = split_commas(text.substr(colon + 1));

    auto expect_args = [&](std::size_t n) {
        if (args.size() != n) {
            throw ParseError("potential '" + std::string(kind) + "' expects " + std::to_string(n) +
                             " parameter(s), got '" + std::string(text.substr(colon + 1)) + "'");
        }
    };

    if (kind == "linear") {
        expect_args(1);
        return linear(parse_number(args[0], text));
    }
    if (kind == "coulomb") {
        expect_args(1);
        return coulomb(parse_number(args[0], text));
    }
    if (kind == "harmonic") {
        expect_args(1);
        return harmonic(parse_number(args[0], text));
    }
    if (kind == "coulomb+linear") {
        expect_args(2);
        return coulomb_plus_linear(parse_number(args[0], text), parse_number(args[1], text));
    }
    if (kind == "power") {
        expect_args(2);
        return power_law(parse_number(args[0], text), parse_number(args[1], text));
    }
    throw ParseError("unknown potential kind '" + std::string(kind) +
                     "' (expected linear, coulomb, harmonic, coulomb+linear or power)");
}

double PairPotential::operator()(double r) const {
    if (!(r >= 0.0)) {
        throw DomainError("potential evaluated at negative radius " + format_number(r));
    }
    if (r == 0.0 && !finite_at_origin()) {
        throw DomainError("potential " + to_string() + " is singular at r = 0");
    }
    return std::visit(
        overloaded{
            [r](const Linear& p) { return p.slope * r; },
            [r](const Coulomb& p) { return -p.strength / r; },
            [r](const Harmonic& p) { return p.strength * r * r; },
            [r](const CoulombPlusLinear& p) {
                return (p.coulomb == 0.0 ? 0.0 : -p.coulomb / r) + p.slope * r;
            },
            [r](const PowerLaw& p) { return p.coefficient * std::pow(r, p.exponent); },
        },
        value_);
}

std::optional<double> PairPotential::homogeneity_degree() const noexcept {
    return std::visit(overloaded{
                          [](const Linear&) -> std::optional<double> { return 1.0; },
                          [](const Coulomb&) -> std::optional<double> { return -1.0; },
                          [](const Harmonic&) -> std::optional<double> { return 2.0; },
                          [](const CoulombPlusLinear& p) -> std::optional<double> {
                              if (p.coulomb == 0.0) return 1.0;
                              return std::nullopt;
                          },
                          [](const PowerLaw& p) -> std::optional<double> { return p.exponent; },
                      },
                      value_);
}

bool PairPotential::finite_at_origin() const noexcept { return coulomb_strength() == 0.0; }

double PairPotential::coulomb_strength() const noexcept {
    if (const auto* c = std::get_if<Coulomb>(&value_)) return c->strength;
    if (const auto* c = std::get_if<CoulombPlusLinear>(&value_)) return c->coulomb;
    return 0.0;
}

std::string PairPotential::to_string() const {
    return std::visit(
        overloaded{
            [](const Linear& p) { return "linear:" + format_number(p.slope); },
            [](const Coulomb& p) { return "coulomb:" + format_number(p.strength); },
            [](const Harmonic& p) { return "harmonic:" + format_number(p.strength); },
            [](const CoulombPlusLinear& p) {
                return "coulomb+linear:" + format_number(p.coulomb) + "," + format_number(p.slope);
            },
            [](const PowerLaw& p) {
                return "power:" + format_number(p.coefficient) + "," + format_number(p.exponent);
            },
        },
        value_);
}

}  // namespace salbound
