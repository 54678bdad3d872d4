// correlated.hpp — Ising-correlated baths at zero temperature: ground-state
// branch selection, the ground-state detuning, and the conditions under which
// the bath shift cancels the dimer detuning exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/analytic.hpp"
#include "dimer/config.hpp"

namespace dimer {

// Relative band inside which two energies are treated as equal.
inline constexpr double kBranchTolerance = 1e-12;

// Fully polarized product state of both baths: m_i = sign_i * N_i / 2.
struct BathCorner {
    int sign1{-1};
    int sign2{-1};
    friend bool operator==(const BathCorner&, const BathCorner&) = default;
};

inline constexpr BathCorner kBothDown{-1, -1};
inline constexpr BathCorner kBath2Up{-1, +1};
inline constexpr BathCorner kBath1Up{+1, -1};

enum class BranchKind { both_down, bath2_up, bath1_up, degenerate_superposition };

inline const char* to_string(BranchKind k) {
    switch (k) {
        case BranchKind::both_down: return "both_down";
        case BranchKind::bath2_up: return "bath2_up";
        case BranchKind::bath1_up: return "bath1_up";
        case BranchKind::degenerate_superposition: return "degenerate_superposition";
    }
    return "?";
}

// Ground state of a1 S1z + a2 S2z + q S1z S2z. For a degenerate ground level
// the state is cos(theta)|corners[0]> + sin(theta) e^{i phi}|corners[1]>;
// a third degenerate corner (triple point) is listed but carries no amplitude.
struct GroundStateBranch {
    BranchKind kind{BranchKind::both_down};
    double theta{0.0};
    double phi{0.0};
    std::vector<BathCorner> corners{kBothDown};

    bool degenerate() const noexcept { return kind == BranchKind::degenerate_superposition; }

    // Population of each listed corner.
    std::vector<double> populations() const {
        std::vector<double> p(corners.size(), 0.0);
        if (!degenerate()) {
            p[0] = 1.0;
        } else {
            p[0] = std::cos(theta) * std::cos(theta);
            p[1] = std::sin(theta) * std::sin(theta);
        }
        return p;
    }
};

// q0 = 2 min(a1 / N2, a2 / N1).
inline double q_threshold(double alpha1, double alpha2, int N1, int N2) {
    if (N1 < 1 || N2 < 1) throw std::invalid_argument("bath sizes must be at least 1");
    return 2.0 * std::min(alpha1 / N2, alpha2 / N1);
}

namespace detail {

// -1, 0, +1 with equality inside a relative band.
inline int banded_compare(double a, double b, double rel = kBranchTolerance) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(a - b) <= rel * scale) return 0;
    return a < b ? -1 : 1;
}

}  // namespace detail

// Products like q N1 against 2 a2 are compared directly rather than via
// divisions, so exactly representable thresholds land inside the band.
inline GroundStateBranch correlated_ground_state(double alpha1, double alpha2, double q, int N1,
                                                 int N2, double theta = 0.0, double phi = 0.0) {
    if (N1 < 1 || N2 < 1) throw std::invalid_argument("bath sizes must be at least 1");
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
        throw std::invalid_argument("ground-state table requires alpha1, alpha2 > 0");
    }
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw std::invalid_argument("phi must lie in [0, 2 pi)");

    // E(bath2_up) - E(both_down) = N2 (a2 - q N1 / 2)
    // E(bath1_up) - E(both_down) = N1 (a1 - q N2 / 2)
    // E(bath2_up) - E(bath1_up)  = a2 N2 - a1 N1
    const int c2 = detail::banded_compare(q * N1, 2.0 * alpha2);
    const int c1 = detail::banded_compare(q * N2, 2.0 * alpha1);
    const int ca = detail::banded_compare(alpha1 * N1, alpha2 * N2);

    const bool bd_min = c2 <= 0 && c1 <= 0;
    const bool b2_min = c2 >= 0 && ca >= 0;
    const bool b1_min = c1 >= 0 && ca <= 0;

    GroundStateBranch out;
    out.corners.clear();
    if (b2_min && b1_min) {
        out.corners = {kBath2Up, kBath1Up};
        if (bd_min) out.corners.push_back(kBothDown);
    } else {
        if (bd_min) out.corners.push_back(kBothDown);
        if (b2_min) out.corners.push_back(kBath2Up);
        if (b1_min) out.corners.push_back(kBath1Up);
    }
    if (out.corners.empty()) throw std::logic_error("ground-state classification found no minimum");

    if (out.corners.size() == 1) {
        const auto c = out.corners.front();
        out.kind = c == kBothDown ? BranchKind::both_down
                 : c == kBath2Up  ? BranchKind::bath2_up
                                  : BranchKind::bath1_up;
    } else {
        out.kind = BranchKind::degenerate_superposition;
        out.theta = theta;
        out.phi = phi;
    }
    return out;
}

inline GroundStateBranch correlated_ground_state(const SystemConfig& c, double theta = 0.0,
                                                 double phi = 0.0) {
    return correlated_ground_state(c.bath1.alpha, c.bath2.alpha, c.correlation.q, c.bath1.N,
                                   c.bath2.N, theta, phi);
}

// <(g2 S2z - g1 S1z) / 2> in a corner state.
inline double corner_shift(const SystemConfig& c, BathCorner k) {
    return (c.bath2.gamma * k.sign2 * c.bath2.N - c.bath1.gamma * k.sign1 * c.bath1.N) / 4.0;
}

// D0 = (e2 - e1)/2 + <Psi_B|(g2 S2z - g1 S1z)/2|Psi_B>. The observable is
// diagonal in the corner basis, so phi never enters.
inline DetuningSpec delta0_correlated(const SystemConfig& c, const GroundStateBranch& branch) {
    if (!c.thermal.is_zero()) throw std::invalid_argument("delta0_correlated requires zero temperature");
    const auto pops = branch.populations();
    double shift = 0.0;
    for (std::size_t i = 0; i < branch.corners.size(); ++i) {
        if (pops[i] != 0.0) shift += pops[i] * corner_shift(c, branch.corners[i]);
    }
    return {c.half_gap() + shift, DetuningSource::correlated_ground_state, std::nullopt, std::nullopt};
}

inline double p12_correlated_zero_temp(const SystemConfig& c, double t, double theta = 0.0,
                                       double phi = 0.0) {
    const auto branch = correlated_ground_state(c, theta, phi);
    return rabi_probability(c.dimer.J, delta0_correlated(c, branch), t);
}

struct AssistanceReport {
    GroundStateBranch branch;
    double delta0{0.0};
    double tolerance{0.0};
    bool satisfied{false};
};

inline double energy_scale(const SystemConfig& c) {
    return std::max({std::abs(c.dimer.epsilon1), std::abs(c.dimer.epsilon2), std::abs(c.dimer.J),
                     std::abs(c.bath1.gamma) * c.bath1.N, std::abs(c.bath2.gamma) * c.bath2.N});
}

// Whether the ground-state bath shift cancels the dimer detuning (D0 = 0).
inline AssistanceReport assistance_condition(const SystemConfig& c, double theta = 0.0,
                                             double phi = 0.0) {
    AssistanceReport r;
    r.branch = correlated_ground_state(c, theta, phi);
    r.delta0 = delta0_correlated(c, r.branch).value;
    r.tolerance = kBranchTolerance * energy_scale(c);
    r.satisfied = std::abs(r.delta0) <= r.tolerance;
    return r;
}

enum class FreeCoupling { gamma1, gamma2 };

struct ResonanceSolution {
    double gamma{0.0};
    bool already_satisfied{false};  // the config as given is resonant
    bool any_gamma{false};          // D0 does not depend on the free coupling
};

// Solves D0 = 0 for one coupling with the other held fixed, in the active
// ground-state branch. Couplings are restricted to gamma >= 0; nullopt when
// the branch admits no such solution.
inline std::optional<ResonanceSolution> resonance_gamma(const SystemConfig& c, FreeCoupling free,
                                                        double theta = 0.0, double phi = 0.0) {
    const auto branch = correlated_ground_state(c, theta, phi);
    if (!c.thermal.is_zero()) throw std::invalid_argument("resonance_gamma requires zero temperature");
    const auto pops = branch.populations();

    // D0 = half_gap + k1 g1 + k2 g2.
    double k1 = 0.0, k2 = 0.0;
    for (std::size_t i = 0; i < branch.corners.size(); ++i) {
        k1 += pops[i] * (-branch.corners[i].sign1 * c.bath1.N / 4.0);
        k2 += pops[i] * (branch.corners[i].sign2 * c.bath2.N / 4.0);
    }
    const bool solve1 = free == FreeCoupling::gamma1;
    const double k_free = solve1 ? k1 : k2;
    const double k_fixed = solve1 ? k2 : k1;
    const double g_fixed = solve1 ? c.bath2.gamma : c.bath1.gamma;
    const double g_current = solve1 ? c.bath1.gamma : c.bath2.gamma;
    const int n_free = solve1 ? c.bath1.N : c.bath2.N;
    const double rest = c.half_gap() + k_fixed * g_fixed;
    const double tol = kBranchTolerance * energy_scale(c);

    ResonanceSolution s;
    if (std::abs(k_free) <= kBranchTolerance * n_free) {
        if (std::abs(rest) > tol) return std::nullopt;
        s.gamma = g_current;
        s.any_gamma = true;
        s.already_satisfied = true;
        return s;
    }
    s.gamma = -rest / k_free;
    if (s.gamma < 0.0) {
        if (s.gamma < -tol) return std::nullopt;
        s.gamma = 0.0;
    }
    s.already_satisfied = detail::banded_compare(s.gamma, g_current) == 0 ||
                          std::abs(c.half_gap() + k1 * c.bath1.gamma + k2 * c.bath2.gamma) <= tol;
    return s;
}

}  // namespace dimer
