// analysis.hpp — Maximization of P(1 -> 2) over time, one- and two-parameter
// sweeps, and the gain in transfer over the decoupled dimer.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dimer/analytic.hpp"
#include "dimer/config.hpp"
#include "dimer/correlated.hpp"
#include "dimer/spectrum.hpp"

namespace dimer {

struct TimeWindow {
    double t_min{0.0};
    double t_max{2.0};
    int coarse_steps{2000};
    int refine_iterations{60};

    void check() const {
        if (!(t_min >= 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) {
            throw std::invalid_argument("time window requires 0 <= t_min < t_max");
        }
        if (coarse_steps < 2) throw std::invalid_argument("time window requires coarse_steps >= 2");
        if (refine_iterations < 0) throw std::invalid_argument("refine_iterations must be >= 0");
    }
    double spacing() const { return (t_max - t_min) / (coarse_steps - 1); }
    double at(int i) const { return i == coarse_steps - 1 ? t_max : t_min + i * spacing(); }
};

struct TimeMaximum {
    double t{0.0};
    double p{0.0};
};

// Minimum samples per period pi / omega of sin^2(omega t).
inline constexpr double kSamplesPerPeriod = 8.0;

// Coarse scan + golden-section refinement around the best sample. The result
// is never below the best coarse sample; ties keep the earliest time.
inline TimeMaximum max_over_time_numeric(const TransitionSpectrum& spectrum, const TimeWindow& w) {
    w.check();
    const double period = std::numbers::pi / spectrum.max_frequency();
    if (w.spacing() > period / kSamplesPerPeriod) {
        const int needed = static_cast<int>(std::ceil((w.t_max - w.t_min) / (period / kSamplesPerPeriod))) + 1;
        throw std::invalid_argument("time grid too coarse for the fastest Rabi frequency; need coarse_steps >= " +
                                    std::to_string(needed));
    }

    TimeMaximum best{w.t_min, spectrum(w.t_min)};
    int best_i = 0;
    for (int i = 1; i < w.coarse_steps; ++i) {
        const double t = w.at(i);
        const double p = spectrum(t);
        if (p > best.p) {
            best = {t, p};
            best_i = i;
        }
    }
    if (w.refine_iterations == 0) return best;

    // Golden-section search on the bracket of neighbouring samples.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = w.at(std::max(best_i - 1, 0));
    double hi = w.at(std::min(best_i + 1, w.coarse_steps - 1));
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = spectrum(x1), f2 = spectrum(x2);
    for (int it = 0; it < w.refine_iterations; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = spectrum(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = spectrum(x1);
        }
    }
    const TimeMaximum refined = f1 >= f2 ? TimeMaximum{x1, f1} : TimeMaximum{x2, f2};
    return refined.p > best.p ? refined : best;
}

// Zero-temperature configs have a single Rabi line and use the closed form
// when its first peak lies inside the window.
inline TimeMaximum max_over_time(const SystemConfig& c, const TimeWindow& w = {},
                                 const TransitionSpectrum* prebuilt = nullptr) {
    w.check();
    const TransitionSpectrum spectrum = prebuilt ? *prebuilt : transition_spectrum(c);
    if (c.thermal.is_zero() && spectrum.single_line()) {
        const auto& line = spectrum.lines().front();
        const double period = std::numbers::pi / line.frequency;
        // First peak at or after t_min.
        const double k = std::ceil((w.t_min - 0.5 * period) / period);
        const double t_peak = (std::max(k, 0.0) + 0.5) * period;
        if (t_peak <= w.t_max) return {t_peak, line.weight * line.amplitude};
    }
    return max_over_time_numeric(spectrum, w);
}

enum class SweepParameter { gamma1, gamma2, gamma_both, q, temperature, J, time };

inline const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::gamma1: return "gamma1";
        case SweepParameter::gamma2: return "gamma2";
        case SweepParameter::gamma_both: return "gamma_both";
        case SweepParameter::q: return "q";
        case SweepParameter::temperature: return "temperature";
        case SweepParameter::J: return "J";
        case SweepParameter::time: return "time";
    }
    return "?";
}

inline SweepParameter parse_sweep_parameter(const std::string& name) {
    for (auto p : {SweepParameter::gamma1, SweepParameter::gamma2, SweepParameter::gamma_both,
                   SweepParameter::q, SweepParameter::temperature, SweepParameter::J, SweepParameter::time}) {
        if (name == to_string(p)) return p;
    }
    throw std::invalid_argument("unknown sweep parameter \"" + name + "\"");
}

struct SweepAxis {
    SweepParameter parameter;
    std::vector<double> values;

    // Inclusive endpoints; count == 1 yields just min.
    static SweepAxis linspace(SweepParameter p, double min, double max, int count) {
        if (count < 1) throw std::invalid_argument("axis count must be at least 1");
        if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("axis range must be finite");
        SweepAxis a{p, {}};
        for (int i = 0; i < count; ++i) {
            a.values.push_back(count == 1 ? min : (i == count - 1 ? max : min + (max - min) * i / (count - 1)));
        }
        return a;
    }
};

// Parses "name=min:max:count".
inline SweepAxis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("axis must look like name=min:max:count");
    const auto name = spec.substr(0, eq);
    const auto rest = spec.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : rest.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("axis must look like name=min:max:count");
    try {
        std::size_t used = 0;
        const auto whole = [&](const std::string& s) {
            if (used != s.size()) throw std::invalid_argument("trailing characters");
        };
        const std::string s_min = rest.substr(0, c1), s_max = rest.substr(c1 + 1, c2 - c1 - 1),
                          s_n = rest.substr(c2 + 1);
        const double lo = std::stod(s_min, &used);
        whole(s_min);
        const double hi = std::stod(s_max, &used);
        whole(s_max);
        const int n = std::stoi(s_n, &used);
        whole(s_n);
        return SweepAxis::linspace(parse_sweep_parameter(name), lo, hi, n);
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).find("unknown sweep parameter") != std::string::npos) throw;
        throw std::invalid_argument("malformed axis \"" + spec + "\"");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("malformed axis \"" + spec + "\"");
    }
}

// Config with one swept parameter applied.
inline SystemConfig apply_parameter(SystemConfig c, SweepParameter p, double v) {
    switch (p) {
        case SweepParameter::gamma1: c.bath1.gamma = v; break;
        case SweepParameter::gamma2: c.bath2.gamma = v; break;
        case SweepParameter::gamma_both: c.bath1.gamma = c.bath2.gamma = v; break;
        case SweepParameter::q: c.correlation.q = v; break;
        case SweepParameter::temperature: c.thermal = ThermalSpec::kelvin(v); break;
        case SweepParameter::J: c.dimer.J = v; break;
        case SweepParameter::time: break;
    }
    return c;
}

struct SweepArgmax {
    std::size_t i1{0};
    std::size_t i2{0};
    double t{0.0};
    double p{-1.0};
};

// values[i1 * n2 + i2]; n2 == 1 for a one-axis sweep. Cells hold max over
// time, or P(t) itself when one axis is time.
struct SweepGrid {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::vector<double> values;
    std::vector<double> peak_times;  // t of each cell's value
    SweepArgmax argmax;

    std::size_t n1() const { return axis1.values.size(); }
    std::size_t n2() const { return axis2 ? axis2->values.size() : 1; }
    double at(std::size_t i1, std::size_t i2 = 0) const { return values[i1 * n2() + i2]; }
};

inline unsigned default_thread_count() {
    if (const char* env = std::getenv("DIMER_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Runs job(i) for i in [0, n) on up to `threads` workers; each result goes to
// its own slot so completion order never matters.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job&& job) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline SweepGrid sweep(const SystemConfig& base, const SweepAxis& axis1,
                       const std::optional<SweepAxis>& axis2 = std::nullopt, const TimeWindow& window = {},
                       unsigned threads = default_thread_count()) {
    window.check();
    const bool t1 = axis1.parameter == SweepParameter::time;
    const bool t2 = axis2 && axis2->parameter == SweepParameter::time;
    if (t1 && t2) throw std::invalid_argument("at most one sweep axis may be time");
    if (t1 && !axis2) throw std::invalid_argument("a time axis needs a parameter axis alongside it");
    if (axis1.values.empty() || (axis2 && axis2->values.empty())) throw std::invalid_argument("empty sweep axis");

    // Validate every parameter value up front.
    for (const SweepAxis* ax : {&axis1, axis2 ? &*axis2 : nullptr}) {
        if (!ax) continue;
        for (double v : ax->values) {
            if (ax->parameter == SweepParameter::time) {
                if (!(v >= 0.0)) throw std::invalid_argument("time axis values must be non-negative");
                continue;
            }
            validate(apply_parameter(base, ax->parameter, v));
        }
    }

    SweepGrid g{axis1, axis2, {}, {}, {}};
    const std::size_t n1 = g.n1(), n2 = g.n2();
    g.values.assign(n1 * n2, 0.0);
    g.peak_times.assign(n1 * n2, 0.0);

    if (t1 || t2) {
        // One spectrum per parameter value, evaluated along the time axis.
        const SweepAxis& param = t1 ? *axis2 : axis1;
        const SweepAxis& time = t1 ? axis1 : *axis2;
        detail::parallel_for(param.values.size(), threads, [&](std::size_t ip) {
            const auto spectrum = transition_spectrum(apply_parameter(base, param.parameter, param.values[ip]));
            for (std::size_t it = 0; it < time.values.size(); ++it) {
                const std::size_t cell = t1 ? it * n2 + ip : ip * n2 + it;
                g.values[cell] = spectrum(time.values[it]);
                g.peak_times[cell] = time.values[it];
            }
        });
    } else {
        detail::parallel_for(n1 * n2, threads, [&](std::size_t cell) {
            SystemConfig c = apply_parameter(base, axis1.parameter, axis1.values[cell / n2]);
            if (axis2) c = apply_parameter(c, axis2->parameter, axis2->values[cell % n2]);
            const auto m = max_over_time(c, window);
            g.values[cell] = m.p;
            g.peak_times[cell] = m.t;
        });
    }

    for (std::size_t cell = 0; cell < g.values.size(); ++cell) {
        if (g.values[cell] > g.argmax.p) {
            g.argmax = {cell / n2, cell % n2, g.peak_times[cell], g.values[cell]};
        }
    }
    return g;
}

struct AssistanceGain {
    double gain{0.0};
    TimeMaximum coupled;
    TimeMaximum decoupled;
};

// Best transfer with the baths coupled minus the best with g1 = g2 = 0.
inline AssistanceGain assistance_gain(const SystemConfig& c, const TimeWindow& w = {}) {
    SystemConfig free = c;
    free.bath1.gamma = 0.0;
    free.bath2.gamma = 0.0;
    AssistanceGain r;
    r.coupled = max_over_time(c, w);
    r.decoupled = max_over_time(free, w);
    r.gain = r.coupled.p - r.decoupled.p;
    return r;
}

}  // namespace dimer
