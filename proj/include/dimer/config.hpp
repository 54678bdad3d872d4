// config.hpp — Physical parameters of the dimer + two spin-star baths, unit
// conventions and validation.
//
// Energies are angular frequencies in ps^-1 (hbar = 1); inverse temperature
// beta is in ps, so Boltzmann exponents are beta * E.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dimer {

// CODATA 2018 exact values.
inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s
inline constexpr double kBoltzmann = 1.380649e-23;         // J / K
// hbar / k_B expressed in ps K.
inline constexpr double kHbarOverKbPsKelvin = kReducedPlanck / kBoltzmann * 1e12;

// beta = (hbar / k_B) / T, in ps.
inline double beta_from_kelvin(double kelvin) {
    if (!std::isfinite(kelvin) || kelvin <= 0.0) {
        throw std::invalid_argument("temperature must be positive");
    }
    return kHbarOverKbPsKelvin / kelvin;
}

inline double kelvin_from_beta(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw std::invalid_argument("beta must be positive");
    }
    return kHbarOverKbPsKelvin / beta;
}

struct DimerParams {
    double epsilon1{0.0};  // energy of level 1
    double epsilon2{0.0};  // energy of level 2
    double J{1.0};         // tunneling amplitude
};

struct BathParams {
    int N{1};            // number of spin-1/2 particles
    double alpha{0.0};   // level splitting
    double gamma{0.0};   // coupling to the dimer level this bath is attached to
};

struct CorrelationParams {
    double q{0.0};  // Ising S1z S2z coupling between the baths
};

// Exactly one of: temperature in kelvin, inverse temperature, or the
// zero-temperature tag. Zero temperature is never emulated with a huge beta.
class ThermalSpec {
public:
    struct Kelvin { double value; };
    struct Beta { double value; };
    struct Zero {};

    ThermalSpec() = default;
    static ThermalSpec kelvin(double t) { return ThermalSpec(Kelvin{t}); }
    static ThermalSpec inverse_temperature(double beta) { return ThermalSpec(Beta{beta}); }
    static ThermalSpec zero_temperature() { return ThermalSpec(Zero{}); }

    bool is_zero() const noexcept { return std::holds_alternative<Zero>(rep_); }
    bool is_kelvin() const noexcept { return std::holds_alternative<Kelvin>(rep_); }
    bool is_beta() const noexcept { return std::holds_alternative<Beta>(rep_); }

    // Raw value as given (kelvin or beta); nullopt for zero temperature.
    std::optional<double> raw() const {
        if (auto k = std::get_if<Kelvin>(&rep_)) return k->value;
        if (auto b = std::get_if<Beta>(&rep_)) return b->value;
        return std::nullopt;
    }

    // Inverse temperature in ps; nullopt for zero temperature.
    std::optional<double> beta() const {
        if (auto k = std::get_if<Kelvin>(&rep_)) return beta_from_kelvin(k->value);
        if (auto b = std::get_if<Beta>(&rep_)) return b->value;
        return std::nullopt;
    }

    // Beta for code paths that require a finite temperature.
    double finite_beta() const {
        auto b = beta();
        if (!b) throw std::invalid_argument("operation requires a finite temperature");
        return *b;
    }

    friend bool operator==(const ThermalSpec& a, const ThermalSpec& b) {
        if (a.rep_.index() != b.rep_.index()) return false;
        return a.raw() == b.raw();
    }

private:
    using Rep = std::variant<Zero, Kelvin, Beta>;
    explicit ThermalSpec(Rep r) : rep_(r) {}
    Rep rep_{Zero{}};
};

struct SystemConfig {
    DimerParams dimer;
    BathParams bath1;
    BathParams bath2;
    CorrelationParams correlation;
    ThermalSpec thermal;

    // Bare detuning (epsilon2 - epsilon1) / 2.
    double half_gap() const noexcept { return 0.5 * (dimer.epsilon2 - dimer.epsilon1); }
    bool correlated() const noexcept { return correlation.q != 0.0; }
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> errors)
        : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}

    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    static std::string join(const std::vector<std::string>& errs) {
        std::string out = "invalid configuration";
        for (const auto& e : errs) out += "; " + e;
        return out;
    }
    std::vector<std::string> errors_;
};

// Every violated invariant, in a fixed order. Empty when valid.
inline std::vector<std::string> validation_errors(const SystemConfig& c) {
    std::vector<std::string> errs;
    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) errs.push_back(std::string(name) + " must be finite");
    };
    finite(c.dimer.epsilon1, "epsilon1");
    finite(c.dimer.epsilon2, "epsilon2");
    if (!std::isfinite(c.dimer.J)) {
        errs.emplace_back("J must be finite");
    } else if (c.dimer.J == 0.0) {
        errs.emplace_back("J must be nonzero");
    } else if (c.dimer.J < 0.0) {
        errs.emplace_back("J must be positive");
    }
    const std::pair<const BathParams*, const char*> baths[] = {{&c.bath1, "1"}, {&c.bath2, "2"}};
    for (auto [b, idx] : baths) {
        if (b->N < 1) errs.push_back(std::string("N") + idx + " must be at least 1");
        finite(b->alpha, (std::string("alpha") + idx).c_str());
        finite(b->gamma, (std::string("gamma") + idx).c_str());
        // The zero-temperature bath state is the fully polarized m = -N/2 level.
        if (c.thermal.is_zero() && std::isfinite(b->alpha) && b->alpha <= 0.0) {
            errs.push_back(std::string("alpha") + idx + " must be positive at zero temperature");
        }
    }
    finite(c.correlation.q, "q");
    if (c.thermal.is_kelvin()) {
        double t = *c.thermal.raw();
        if (!std::isfinite(t) || t <= 0.0) errs.emplace_back("temperature must be positive");
    } else if (c.thermal.is_beta()) {
        double b = *c.thermal.raw();
        if (!std::isfinite(b) || b <= 0.0) errs.emplace_back("beta must be positive");
    }
    return errs;
}

// Returns the config unchanged, or throws ConfigError carrying every violation.
inline SystemConfig validate(const SystemConfig& c) {
    auto errs = validation_errors(c);
    if (!errs.empty()) throw ConfigError(std::move(errs));
    return c;
}

}  // namespace dimer
