#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace salbound {

/// V(r) = b r
struct Linear {
    double slope;

    bool operator==(const Linear&) const = default;
};

/// V(r) = -v / r
struct Coulomb {
    double strength;

    bool operator==(const Coulomb&) const = default;
};

/// V(r) = v r^2
struct Harmonic {
    double strength;

    bool operator==(const Harmonic&) const = default;
};

/// V(r) = -v / r + b r, with v >= 0 and b > 0.
struct CoulombPlusLinear {
    double coulomb;
    double slope;

    bool operator==(const CoulombPlusLinear&) const = default;
};

/// V(r) = c r^k, with c > 0 and k > 0.
struct PowerLaw {
    double coefficient;
    double exponent;

    bool operator==(const PowerLaw&) const = default;
};

/// Attractive radial pair potential drawn from a closed family.
///
/// Construction goes through the named factories, which validate the
/// parameters; a PairPotential therefore always satisfies its invariants.
class PairPotential {
public:
    using Variant = std::variant<Linear, Coulomb, Harmonic, CoulombPlusLinear, PowerLaw>;

    static PairPotential linear(double slope);
    static PairPotential coulomb(double strength);
    static PairPotential harmonic(double strength);
    static PairPotential coulomb_plus_linear(double coulomb, double slope);
    static PairPotential power_law(double coefficient, double exponent);

    /// Parses `linear:<b>`, `coulomb:<v>`, `harmonic:<v>`,
    /// `coulomb+linear:<v>,<b>` or `power:<c>,<k>`. Throws ParseError naming the
    /// offending token, or DomainError for out-of-range parameters.
    static PairPotential parse(std::string_view text);

    const Variant& variant() const noexcept { return value_; }

    /// Throws DomainError for r < 0, and for r == 0 when V is singular there.
    double operator()(double r) const;

    /// Degree k with V(s r) = s^k V(r), or nullopt for the genuinely mixed
    /// Coulomb-plus-linear case.
    std::optional<double> homogeneity_degree() const noexcept;

    bool finite_at_origin() const noexcept;

    /// Strength of the -1/r part (0 if none). Used by the stability guard.
    double coulomb_strength() const noexcept;

    /// Canonical text form; parse(to_string()) reproduces the potential.
    std::string to_string() const;

    friend bool operator==(const PairPotential&, const PairPotential&) = default;

private:
    explicit PairPotential(Variant v) : value_(v) {}
    Variant value_;
};

inline double evaluate(const PairPotential& v, double r) { return v(r); }

inline std::optional<double> homogeneity_degree(const PairPotential& v) noexcept {
    return v.homogeneity_degree();
}

}  // namespace salbound
