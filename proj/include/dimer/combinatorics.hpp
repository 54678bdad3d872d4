// combinatorics.hpp — Collective-spin degeneracies of N spin-1/2 particles,
// magnetization counts, and log-space thermal weights / partition functions.
//
// Half-integer quantum numbers (j, m) are carried as doubled integers
// internally. Exact integer tables are available for N <= 64.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/config.hpp"

namespace dimer {

inline constexpr int kMaxExactBathSize = 64;

// A half-integer stored as twice its value.
struct HalfInt {
    int twice{0};

    static HalfInt from_double(double v) {
        double t = 2.0 * v;
        if (!std::isfinite(t) || t != std::nearbyint(t) || std::abs(t) > 1e9) {
            throw std::invalid_argument("value " + std::to_string(v) + " is not a half-integer");
        }
        return HalfInt{static_cast<int>(t)};
    }
    double value() const noexcept { return 0.5 * twice; }
    friend auto operator<=>(const HalfInt&, const HalfInt&) = default;
};

namespace detail {

inline void check_exact_size(int N) {
    if (N < 1) throw std::invalid_argument("bath size N must be at least 1");
    if (N > kMaxExactBathSize) {
        throw std::invalid_argument("exact tables support N <= " + std::to_string(kMaxExactBathSize));
    }
}

// log of the sum of exp(v) over values, with max shift.
inline double log_sum_exp(const std::vector<double>& v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

// log sinh(y) for y > 0, without overflow and without cancellation for small y.
inline double log_sinh(double y) {
    return y + std::log(-std::expm1(-2.0 * y)) - std::log(2.0);
}

}  // namespace detail

// Exact binomial coefficient C(n, k) for 0 <= n <= 64.
inline std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > kMaxExactBathSize) throw std::invalid_argument("binomial: n out of range");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(c);
}

// log C(n, k); exact table values for n <= 64, lgamma beyond.
inline double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (n <= kMaxExactBathSize) return std::log(static_cast<double>(binomial(n, k)));
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// nu(N, j) = C(N, N/2 - j) - C(N, N/2 - j - 1), with j passed doubled.
inline std::uint64_t multiplicity_twice(int N, int twice_j) {
    detail::check_exact_size(N);
    if (twice_j < 0 || twice_j > N || (N - twice_j) % 2 != 0) {
        throw std::invalid_argument("invalid total spin 2j=" + std::to_string(twice_j) +
                                    " for N=" + std::to_string(N));
    }
    int k = (N - twice_j) / 2;
    return binomial(N, k) - (k >= 1 ? binomial(N, k - 1) : 0);
}

inline std::uint64_t multiplicity(int N, double j) {
    return multiplicity_twice(N, HalfInt::from_double(j).twice);
}

// Degeneracies of one bath: nu over total spin and g over magnetization.
class MultiplicityTable {
public:
    explicit MultiplicityTable(int N) : N_(N) {
        detail::check_exact_size(N);
        for (int twice_j = N; twice_j >= 0; twice_j -= 2) {
            nu_.push_back(multiplicity_twice(N, twice_j));
        }
        for (int k = 0; k <= N; ++k) g_.push_back(binomial(N, k));
    }

    int size() const noexcept { return N_; }

    // j from N/2 down to 0 or 1/2.
    std::vector<HalfInt> spins() const {
        std::vector<HalfInt> out;
        for (int twice_j = N_; twice_j >= 0; twice_j -= 2) out.push_back({twice_j});
        return out;
    }
    // m from -N/2 up to N/2.
    std::vector<HalfInt> magnetizations() const {
        std::vector<HalfInt> out;
        for (int k = 0; k <= N_; ++k) out.push_back({2 * k - N_});
        return out;
    }

    std::uint64_t nu(HalfInt j) const {
        if (j.twice < 0 || j.twice > N_ || (N_ - j.twice) % 2 != 0) {
            throw std::invalid_argument("total spin not present in this bath");
        }
        return nu_[static_cast<std::size_t>((N_ - j.twice) / 2)];
    }
    std::uint64_t nu(double j) const { return nu(HalfInt::from_double(j)); }

    // Number of z-basis states with magnetization m; zero outside [-N/2, N/2].
    std::uint64_t g(HalfInt m) const {
        if (std::abs(m.twice) > N_ || (N_ + m.twice) % 2 != 0) return 0;
        return g_[static_cast<std::size_t>((N_ + m.twice) / 2)];
    }
    std::uint64_t g(double m) const { return g(HalfInt::from_double(m)); }

    // g(m) recomputed from nu: sum of nu(j) over j >= |m|.
    std::uint64_t g_from_nu(HalfInt m) const {
        std::uint64_t s = 0;
        for (int twice_j = N_; twice_j >= std::abs(m.twice); twice_j -= 2) s += nu(HalfInt{twice_j});
        return s;
    }

    // Sum over j of nu(N, j) (2j + 1); equals 2^N.
    unsigned __int128 dimension_sum() const {
        unsigned __int128 s = 0;
        for (int twice_j = N_, k = 0; twice_j >= 0; twice_j -= 2, ++k) {
            s += static_cast<unsigned __int128>(nu_[static_cast<std::size_t>(k)]) *
                 static_cast<unsigned>(twice_j + 1);
        }
        return s;
    }

private:
    int N_;
    std::vector<std::uint64_t> nu_;
    std::vector<std::uint64_t> g_;
};

// g(m) for m = -N/2 .. N/2.
inline std::vector<std::uint64_t> magnetization_counts(int N) {
    MultiplicityTable t(N);
    std::vector<std::uint64_t> out;
    for (auto m : t.magnetizations()) {
        if (t.g(m) != t.g_from_nu(m)) throw std::logic_error("magnetization count mismatch");
        out.push_back(t.g(m));
    }
    return out;
}

class ConsistencyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both evaluations of log Z for one bath with H_B = alpha * S^z.
struct PartitionFunction {
    double log_z_direct;  // sum over m of g(m) exp(-beta alpha m)
    double log_z_sinh;    // sum over j of nu(N, j) sinh(x (j + 1/2)) / sinh(x / 2)

    double relative_disagreement() const {
        return std::abs(std::expm1(log_z_direct - log_z_sinh));
    }
};

inline PartitionFunction partition_function_forms(int N, double alpha, double beta) {
    detail::check_exact_size(N);
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
    const double x = beta * alpha;

    std::vector<double> terms;
    for (int k = 0; k <= N; ++k) {
        double m = 0.5 * (2 * k - N);
        terms.push_back(log_binomial(N, k) - x * m);
    }
    const double direct = detail::log_sum_exp(terms);

    double sinh_form;
    if (x == 0.0) {
        sinh_form = N * std::log(2.0);
    } else {
        // The ratio is even in x.
        const double ax = std::abs(x);
        terms.clear();
        const double log_den = detail::log_sinh(0.5 * ax);
        for (int twice_j = N; twice_j >= 0; twice_j -= 2) {
            double nu = static_cast<double>(multiplicity_twice(N, twice_j));
            terms.push_back(std::log(nu) + detail::log_sinh(ax * 0.5 * (twice_j + 1)) - log_den);
        }
        sinh_form = detail::log_sum_exp(terms);
    }
    return {direct, sinh_form};
}

inline constexpr double kPartitionFunctionTolerance = 1e-10;

// log Z of a single bath. The closed sinh form and the direct magnetization
// sum must agree to 1e-10 relative; the direct sum is returned.
inline double log_partition_function(int N, double alpha, double beta) {
    auto pf = partition_function_forms(N, alpha, beta);
    if (!(pf.relative_disagreement() <= kPartitionFunctionTolerance)) {
        throw ConsistencyError("partition function forms disagree: direct=" +
                               std::to_string(pf.log_z_direct) +
                               " sinh=" + std::to_string(pf.log_z_sinh));
    }
    return pf.log_z_direct;
}

// Canonical weights of the joint bath state over the (N1+1) x (N2+1)
// magnetization grid for H_B = a1 S1z + a2 S2z + q S1z S2z (+ offset),
// including the z-basis degeneracies g1(m1) g2(m2).
class ThermalWeights {
public:
    ThermalWeights(int N1, int N2, double alpha1, double alpha2, double q, double beta,
                   double energy_offset = 0.0)
        : N1_(N1), N2_(N2), beta_(beta) {
        if (N1 < 1 || N2 < 1) throw std::invalid_argument("bath sizes must be at least 1");
        if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
        const std::size_t n1 = static_cast<std::size_t>(N1) + 1;
        const std::size_t n2 = static_cast<std::size_t>(N2) + 1;

        // Energies measured from the grid minimum so a uniform offset cancels
        // before any multiplication by beta.
        std::vector<double> energy(n1 * n2);
        double e_min = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < n1; ++a) {
            const double m1 = 0.5 * (2.0 * static_cast<double>(a) - N1);
            for (std::size_t b = 0; b < n2; ++b) {
                const double m2 = 0.5 * (2.0 * static_cast<double>(b) - N2);
                double e = alpha1 * m1 + alpha2 * m2 + q * m1 * m2 + energy_offset;
                energy[a * n2 + b] = e;
                e_min = std::min(e_min, e);
            }
        }

        log_weights_.resize(n1 * n2);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < n1; ++a) {
            const double lg1 = log_binomial(N1, static_cast<int>(a));
            for (std::size_t b = 0; b < n2; ++b) {
                double lw = -beta * (energy[a * n2 + b] - e_min) + lg1 +
                            log_binomial(N2, static_cast<int>(b));
                log_weights_[a * n2 + b] = lw;
                mx = std::max(mx, lw);
            }
        }
        double total = 0.0;
        for (double& lw : log_weights_) {
            lw -= mx;
            total += std::exp(lw);
        }
        log_z_shifted_ = std::log(total);
        weights_.resize(log_weights_.size());
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            weights_[i] = std::exp(log_weights_[i]) / total;
        }
    }

    static ThermalWeights from_config(const SystemConfig& c, double energy_offset = 0.0) {
        return ThermalWeights(c.bath1.N, c.bath2.N, c.bath1.alpha, c.bath2.alpha,
                              c.correlation.q, c.thermal.finite_beta(), energy_offset);
    }

    int N1() const noexcept { return N1_; }
    int N2() const noexcept { return N2_; }
    double beta() const noexcept { return beta_; }

    // Index helpers: a = m1 + N1/2, b = m2 + N2/2.
    std::size_t index(HalfInt m1, HalfInt m2) const {
        if (std::abs(m1.twice) > N1_ || (N1_ + m1.twice) % 2 || std::abs(m2.twice) > N2_ ||
            (N2_ + m2.twice) % 2) {
            throw std::out_of_range("magnetization outside bath range");
        }
        return static_cast<std::size_t>((N1_ + m1.twice) / 2) * static_cast<std::size_t>(N2_ + 1) +
               static_cast<std::size_t>((N2_ + m2.twice) / 2);
    }

    double log_weight(HalfInt m1, HalfInt m2) const { return log_weights_[index(m1, m2)]; }
    double weight(HalfInt m1, HalfInt m2) const { return weights_[index(m1, m2)]; }

    // Row-major over (m1, m2), max log-weight shifted to 0.
    const std::vector<double>& log_weights() const noexcept { return log_weights_; }
    // Normalized weights, same layout.
    const std::vector<double>& weights() const noexcept { return weights_; }
    double log_z_shifted() const noexcept { return log_z_shifted_; }

private:
    int N1_, N2_;
    double beta_;
    std::vector<double> log_weights_;
    std::vector<double> weights_;
    double log_z_shifted_{0.0};
};

inline ThermalWeights thermal_weights(const SystemConfig& c, double energy_offset = 0.0) {
    return ThermalWeights::from_config(c, energy_offset);
}

}  // namespace dimer
