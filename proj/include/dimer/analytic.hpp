// analytic.hpp — Closed-form transition probabilities P(1 -> 2) for the dimer
// dephased by spin-star baths: bare Rabi formula, zero-temperature bath shift,
// and the finite-temperature sum over bath magnetization sectors.

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "dimer/combinatorics.hpp"
#include "dimer/config.hpp"

namespace dimer {

enum class DetuningSource { bare, zero_temperature, sector, correlated_ground_state };

inline const char* to_string(DetuningSource s) {
    switch (s) {
        case DetuningSource::bare: return "bare";
        case DetuningSource::zero_temperature: return "zero_temperature";
        case DetuningSource::sector: return "sector";
        case DetuningSource::correlated_ground_state: return "correlated_ground_state";
    }
    return "?";
}

// Effective detuning entering the Rabi formula, with where it came from.
struct DetuningSpec {
    double value{0.0};
    DetuningSource source{DetuningSource::bare};
    std::optional<HalfInt> m1;  // set for sector detunings
    std::optional<HalfInt> m2;
};

// J^2 / (J^2 + D^2) sin^2(t sqrt(J^2 + D^2)).
inline double rabi_probability(double J, double delta, double t) {
    const double omega2 = J * J + delta * delta;
    const double s = std::sin(t * std::sqrt(omega2));
    return J * J / omega2 * s * s;
}

inline double rabi_probability(double J, const DetuningSpec& delta, double t) {
    return rabi_probability(J, delta.value, t);
}

inline double rabi_peak(double J, double delta) { return J * J / (J * J + delta * delta); }

// First time at which the Rabi formula peaks.
inline double rabi_peak_time(double J, double delta) {
    return 0.5 * std::numbers::pi / std::sqrt(J * J + delta * delta);
}

inline DetuningSpec detuning_bare(const SystemConfig& c) {
    return {c.half_gap(), DetuningSource::bare, std::nullopt, std::nullopt};
}

// Both baths fully polarized down: D = (e2 - e1)/2 + (g1 N1 - g2 N2)/4.
inline DetuningSpec detuning_zero_temp(const SystemConfig& c) {
    const double shift = (c.bath1.gamma * c.bath1.N - c.bath2.gamma * c.bath2.N) / 4.0;
    return {c.half_gap() + shift, DetuningSource::zero_temperature, std::nullopt, std::nullopt};
}

// D(m1, m2) = (e2 - e1)/2 + (g2 m2 - g1 m1)/2.
inline DetuningSpec detuning_sector(const SystemConfig& c, HalfInt m1, HalfInt m2) {
    auto in_range = [](HalfInt m, int N) { return std::abs(m.twice) <= N && (N + m.twice) % 2 == 0; };
    if (!in_range(m1, c.bath1.N) || !in_range(m2, c.bath2.N)) {
        throw std::out_of_range("sector magnetization outside bath range");
    }
    // Written with doubled magnetizations: (g2 2m2 - g1 2m1) / 4.
    const double shift = (c.bath2.gamma * m2.twice - c.bath1.gamma * m1.twice) / 4.0;
    return {c.half_gap() + shift, DetuningSource::sector, m1, m2};
}

inline DetuningSpec detuning_sector(const SystemConfig& c, double m1, double m2) {
    return detuning_sector(c, HalfInt::from_double(m1), HalfInt::from_double(m2));
}

// Zero temperature, independent baths.
inline double p12_zero_temp(const SystemConfig& c, double t) {
    if (!c.thermal.is_zero()) throw std::invalid_argument("p12_zero_temp requires zero temperature");
    if (c.correlated()) {
        throw std::invalid_argument("p12_zero_temp requires q = 0; use p12_correlated_zero_temp");
    }
    return rabi_probability(c.dimer.J, detuning_zero_temp(c), t);
}

// Finite temperature, any q: thermal average of the sector Rabi formulas,
// summed over bath magnetizations with z-basis degeneracies g(m).
inline double p12_thermal(const SystemConfig& c, double t) {
    const auto w = thermal_weights(c);
    double p = 0.0;
    for (int a = 0; a <= c.bath1.N; ++a) {
        for (int b = 0; b <= c.bath2.N; ++b) {
            const HalfInt m1{2 * a - c.bath1.N}, m2{2 * b - c.bath2.N};
            const double wt = w.weights()[static_cast<std::size_t>(a) * (c.bath2.N + 1) + b];
            if (wt == 0.0) continue;
            p += wt * rabi_probability(c.dimer.J, detuning_sector(c, m1, m2), t);
        }
    }
    return p;
}

// Same quantity as the explicit sum over (j1, m1, j2, m2) with multiplicities
// nu(N, j). Quadratically more terms; kept for equivalence checks.
inline double p12_thermal_jm(const SystemConfig& c, double t) {
    const double beta = c.thermal.finite_beta();
    const MultiplicityTable t1(c.bath1.N), t2(c.bath2.N);
    const double a1 = c.bath1.alpha, a2 = c.bath2.alpha, q = c.correlation.q;

    // Reference energy keeps every exponent <= 0.
    double e_min = std::numeric_limits<double>::infinity();
    for (auto m1 : t1.magnetizations())
        for (auto m2 : t2.magnetizations())
            e_min = std::min(e_min, a1 * m1.value() + a2 * m2.value() + q * m1.value() * m2.value());

    double num = 0.0, z = 0.0;
    for (auto j1 : t1.spins()) {
        const double nu1 = static_cast<double>(t1.nu(j1));
        for (int tm1 = -j1.twice; tm1 <= j1.twice; tm1 += 2) {
            const HalfInt m1{tm1};
            for (auto j2 : t2.spins()) {
                const double nu2 = static_cast<double>(t2.nu(j2));
                for (int tm2 = -j2.twice; tm2 <= j2.twice; tm2 += 2) {
                    const HalfInt m2{tm2};
                    const double e = a1 * m1.value() + a2 * m2.value() + q * m1.value() * m2.value();
                    const double w = nu1 * nu2 * std::exp(-beta * (e - e_min));
                    z += w;
                    num += w * rabi_probability(c.dimer.J, detuning_sector(c, m1, m2), t);
                }
            }
        }
    }
    return num / z;
}

}  // namespace dimer
