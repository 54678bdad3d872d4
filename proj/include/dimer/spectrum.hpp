// spectrum.hpp — P(t) as a weighted sum of Rabi lines, built once per config
// and evaluated at many times.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "dimer/analytic.hpp"
#include "dimer/combinatorics.hpp"
#include "dimer/correlated.hpp"

namespace dimer {

struct RabiLine {
    double weight;     // ensemble probability of this detuning
    double amplitude;  // J^2 / (J^2 + D^2)
    double frequency;  // sqrt(J^2 + D^2)
};

// P(t) = sum_k weight_k amplitude_k sin^2(frequency_k t). Sectors with equal
// |D| are merged exactly; sectors whose weight underflows to 0 are dropped.
class TransitionSpectrum {
public:
    TransitionSpectrum() = default;

    static TransitionSpectrum single(double J, double delta) {
        TransitionSpectrum s;
        s.add(1.0, J, delta);
        return s;
    }

    // Thermal average over the magnetization sectors of both baths.
    static TransitionSpectrum thermal(const SystemConfig& c) {
        const auto w = thermal_weights(c);
        std::map<double, double> by_detuning;
        const std::size_t n2 = static_cast<std::size_t>(c.bath2.N) + 1;
        for (int a = 0; a <= c.bath1.N; ++a) {
            for (int b = 0; b <= c.bath2.N; ++b) {
                const double wt = w.weights()[static_cast<std::size_t>(a) * n2 + static_cast<std::size_t>(b)];
                if (wt == 0.0) continue;
                const double d = detuning_sector(c, HalfInt{2 * a - c.bath1.N}, HalfInt{2 * b - c.bath2.N}).value;
                by_detuning[std::abs(d)] += wt;
            }
        }
        TransitionSpectrum s;
        for (const auto& [d, wt] : by_detuning) s.add(wt, c.dimer.J, d);
        return s;
    }

    double operator()(double t) const {
        double p = 0.0;
        for (const auto& l : lines_) {
            const double s = std::sin(l.frequency * t);
            p += l.weight * l.amplitude * s * s;
        }
        return p;
    }

    const std::vector<RabiLine>& lines() const noexcept { return lines_; }
    bool single_line() const noexcept { return lines_.size() == 1; }

    double max_frequency() const {
        double f = 0.0;
        for (const auto& l : lines_) f = std::max(f, l.frequency);
        return f;
    }

    // Upper bound on P(t): the largest line amplitude.
    double peak_bound() const {
        double a = 0.0;
        for (const auto& l : lines_) a = std::max(a, l.amplitude);
        return a;
    }

private:
    void add(double weight, double J, double delta) {
        const double omega2 = J * J + delta * delta;
        lines_.push_back({weight, J * J / omega2, std::sqrt(omega2)});
    }

    std::vector<RabiLine> lines_;
};

// The closed form that applies to the config: zero temperature with
// independent baths, zero temperature with correlated baths (ground-state
// branch with the given superposition angle), or the thermal sum.
inline TransitionSpectrum transition_spectrum(const SystemConfig& c, double theta = 0.0,
                                              double phi = 0.0) {
    if (!c.thermal.is_zero()) return TransitionSpectrum::thermal(c);
    if (!c.correlated()) return TransitionSpectrum::single(c.dimer.J, detuning_zero_temp(c).value);
    const auto branch = correlated_ground_state(c, theta, phi);
    return TransitionSpectrum::single(c.dimer.J, delta0_correlated(c, branch).value);
}

inline double transition_probability(const SystemConfig& c, double t) {
    if (!c.thermal.is_zero()) return p12_thermal(c, t);
    if (!c.correlated()) return p12_zero_temp(c, t);
    return p12_correlated_zero_temp(c, t);
}

}  // namespace dimer
