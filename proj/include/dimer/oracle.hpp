// oracle.hpp — Brute-force reference: the full Hamiltonian on the product
// space dimer x bath1 spins x bath2 spins, exact diagonalization, and thermal
// averaging over every bath z-configuration.
//
// Nothing here uses collective-spin quantum numbers, degeneracy formulas or
// the closed-form detunings; it only knows single-site Pauli matrices.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dimer/combinatorics.hpp"
#include "dimer/config.hpp"
#include "dimer/correlated.hpp"

namespace dimer::oracle {

inline constexpr int kMaxBathSpins = 14;

class SizeGuardError : public std::length_error {
public:
    explicit SizeGuardError(int total)
        : std::length_error("oracle refuses N1 + N2 = " + std::to_string(total) +
                            "; limit is N1 + N2 <= " + std::to_string(kMaxBathSpins)) {}
};

inline void check_size(int N1, int N2) {
    if (N1 < 1 || N2 < 1) throw std::invalid_argument("bath sizes must be at least 1");
    if (N1 + N2 > kMaxBathSpins) throw SizeGuardError(N1 + N2);
}

using Matrix2 = Eigen::Matrix2cd;

inline Matrix2 pauli_x() { Matrix2 m; m << 0, 1, 1, 0; return m; }
inline Matrix2 pauli_z() { Matrix2 m; m << 1, 0, 0, -1; return m; }
inline Matrix2 identity2() { return Matrix2::Identity(); }
// Dimer basis: index 0 = level |1>, index 1 = level |2>.
inline Matrix2 projector(int level) {
    Matrix2 m = Matrix2::Zero();
    m(level - 1, level - 1) = 1.0;
    return m;
}

// Kronecker product of single-site operators, site 0 most significant.
inline Eigen::MatrixXcd kron_chain(const std::vector<Matrix2>& ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (const auto& op : ops) {
        const Eigen::Index n = out.rows();
        Eigen::MatrixXcd next(2 * n, 2 * n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * op;
        out = std::move(next);
    }
    return out;
}

struct DenseHamiltonian {
    int N1{0};
    int N2{0};
    Eigen::MatrixXcd matrix;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    std::size_t bath_dimension() const noexcept { return std::size_t{1} << (N1 + N2); }

    // Basis index of |level> x |bath configuration>.
    std::size_t index(int level, std::size_t bath_config) const {
        return static_cast<std::size_t>(level - 1) * bath_dimension() + bath_config;
    }
};

// sigma_z of site k (0-based within its bath): bit clear = +1, bit set = -1,
// matching the row order of pauli_z().
inline int spin_sign(std::size_t bath_config, int N1, int N2, int bath, int k) {
    const int bit = bath == 1 ? (N1 + N2 - 1 - k) : (N2 - 1 - k);
    return (bath_config >> bit) & 1u ? -1 : 1;
}

// H = J sx + sum_i [ e_i |i><i| + a_i S_i^z + g_i |i><i| S_i^z ] + q S1z S2z
// (+ offset * 1), assembled term by term from single-site operators.
inline DenseHamiltonian build_hamiltonian(const SystemConfig& c, double energy_offset = 0.0) {
    const int N1 = c.bath1.N, N2 = c.bath2.N;
    check_size(N1, N2);
    const int sites = 1 + N1 + N2;

    auto chain = [&](std::vector<std::pair<int, Matrix2>> placed) {
        std::vector<Matrix2> ops(static_cast<std::size_t>(sites), identity2());
        for (auto& [site, op] : placed) ops[static_cast<std::size_t>(site)] = ops[static_cast<std::size_t>(site)] * op;
        return kron_chain(ops);
    };
    auto bath_site = [&](int bath, int k) { return bath == 1 ? 1 + k : 1 + N1 + k; };
    const Matrix2 half_z = 0.5 * pauli_z();

    DenseHamiltonian h;
    h.N1 = N1;
    h.N2 = N2;
    h.matrix = c.dimer.J * chain({{0, pauli_x()}});
    h.matrix += c.dimer.epsilon1 * chain({{0, projector(1)}});
    h.matrix += c.dimer.epsilon2 * chain({{0, projector(2)}});

    const BathParams* baths[] = {&c.bath1, &c.bath2};
    for (int bath = 1; bath <= 2; ++bath) {
        const auto& b = *baths[bath - 1];
        for (int k = 0; k < b.N; ++k) {
            const int s = bath_site(bath, k);
            h.matrix += b.alpha * chain({{s, half_z}});
            h.matrix += b.gamma * chain({{0, projector(bath)}, {s, half_z}});
        }
    }
    if (c.correlation.q != 0.0) {
        for (int k = 0; k < N1; ++k)
            for (int l = 0; l < N2; ++l)
                h.matrix += c.correlation.q * chain({{bath_site(1, k), half_z}, {bath_site(2, l), half_z}});
    }
    if (energy_offset != 0.0) {
        h.matrix += energy_offset * Eigen::MatrixXcd::Identity(h.matrix.rows(), h.matrix.cols());
    }
    return h;
}

// Bath energy a1 S1 + a2 S2 + q S1 S2 of one z-configuration, from raw spins.
inline double bath_energy(const SystemConfig& c, std::size_t bath_config) {
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < c.bath1.N; ++k) s1 += 0.5 * spin_sign(bath_config, c.bath1.N, c.bath2.N, 1, k);
    for (int k = 0; k < c.bath2.N; ++k) s2 += 0.5 * spin_sign(bath_config, c.bath1.N, c.bath2.N, 2, k);
    return c.bath1.alpha * s1 + c.bath2.alpha * s2 + c.correlation.q * s1 * s2;
}

// Initial bath ensemble: dimer starts in level 1, bath is canonical (or the
// uniform mixture over ground configurations at zero temperature).
struct ThermalEnsembleState {
    std::vector<std::pair<std::size_t, double>> configurations;

    double total_probability() const {
        double s = 0.0;
        for (const auto& [_, p] : configurations) s += p;
        return s;
    }
};

inline ThermalEnsembleState thermal_ensemble(const SystemConfig& c) {
    check_size(c.bath1.N, c.bath2.N);
    const std::size_t nb = std::size_t{1} << (c.bath1.N + c.bath2.N);
    std::vector<double> energy(nb);
    double e_min = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
        energy[b] = bath_energy(c, b);
        e_min = std::min(e_min, energy[b]);
    }

    ThermalEnsembleState st;
    if (c.thermal.is_zero()) {
        const double scale = std::abs(c.bath1.alpha) * c.bath1.N + std::abs(c.bath2.alpha) * c.bath2.N +
                             std::abs(c.correlation.q) * c.bath1.N * c.bath2.N;
        for (std::size_t b = 0; b < nb; ++b)
            if (energy[b] - e_min <= kBranchTolerance * scale) st.configurations.push_back({b, 1.0});
        for (auto& [_, p] : st.configurations) p = 1.0 / static_cast<double>(st.configurations.size());
        return st;
    }
    const double beta = c.thermal.finite_beta();
    double z = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        const double w = std::exp(-beta * (energy[b] - e_min));
        z += w;
        st.configurations.push_back({b, w});
    }
    for (auto& [_, p] : st.configurations) p /= z;
    return st;
}

// Diagonalizes once; evaluates P(1 -> 2) at any number of times.
class DenseOracle {
public:
    explicit DenseOracle(const SystemConfig& c, double energy_offset = 0.0)
        : hamiltonian_(build_hamiltonian(c, energy_offset)), ensemble_(thermal_ensemble(c)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_.matrix);
        if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigendecomposition failed");
        energies_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }

    const DenseHamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
    const ThermalEnsembleState& ensemble() const noexcept { return ensemble_; }

    // e^{-iHt} applied to a basis vector.
    Eigen::VectorXcd evolve(std::size_t basis_index, double t) const {
        return vectors_ * coefficients(basis_index, t);
    }

    double probability(double t) const {
        if (t < 0.0) throw std::invalid_argument("time must be non-negative");
        const Eigen::Index half = static_cast<Eigen::Index>(hamiltonian_.bath_dimension());
        const auto level2 = vectors_.bottomRows(half);
        double p = 0.0;
        for (const auto& [b, w] : ensemble_.configurations) {
            const Eigen::VectorXcd amp = level2 * coefficients(hamiltonian_.index(1, b), t);
            p += w * amp.squaredNorm();
        }
        return p;
    }

private:
    Eigen::VectorXcd coefficients(std::size_t basis_index, double t) const {
        const Eigen::Index k = static_cast<Eigen::Index>(basis_index);
        Eigen::VectorXcd c = vectors_.row(k).adjoint();
        for (Eigen::Index n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, -energies_(n) * t);
        return c;
    }

    DenseHamiltonian hamiltonian_;
    ThermalEnsembleState ensemble_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

inline double evolve_probability(const SystemConfig& c, double t) { return DenseOracle(c).probability(t); }

// Every (m1, m2) on the magnetization grid minimizing a1 m1 + a2 m2 + q m1 m2,
// by exhaustive enumeration.
inline std::vector<std::pair<HalfInt, HalfInt>> brute_force_bath_ground(double alpha1, double alpha2,
                                                                        double q, int N1, int N2) {
    if (N1 < 1 || N2 < 1) throw std::invalid_argument("bath sizes must be at least 1");
    std::vector<std::pair<std::pair<HalfInt, HalfInt>, double>> all;
    double e_min = std::numeric_limits<double>::infinity();
    for (int a = -N1; a <= N1; a += 2) {
        for (int b = -N2; b <= N2; b += 2) {
            const double m1 = 0.5 * a, m2 = 0.5 * b;
            const double e = alpha1 * m1 + alpha2 * m2 + q * m1 * m2;
            all.push_back({{HalfInt{a}, HalfInt{b}}, e});
            e_min = std::min(e_min, e);
        }
    }
    const double scale = std::abs(alpha1) * N1 / 2.0 + std::abs(alpha2) * N2 / 2.0 + std::abs(q) * N1 * N2 / 4.0;
    std::vector<std::pair<HalfInt, HalfInt>> out;
    for (const auto& [m, e] : all)
        if (e - e_min <= kBranchTolerance * scale) out.push_back(m);
    return out;
}

// Branch label of a brute-force minimizer set.
inline BranchKind classify_minimizers(const std::vector<std::pair<HalfInt, HalfInt>>& mins, int N1, int N2) {
    if (mins.size() != 1) return BranchKind::degenerate_superposition;
    const auto [m1, m2] = mins.front();
    if (m1.twice == -N1 && m2.twice == -N2) return BranchKind::both_down;
    if (m1.twice == -N1 && m2.twice == N2) return BranchKind::bath2_up;
    if (m1.twice == N1 && m2.twice == -N2) return BranchKind::bath1_up;
    throw std::logic_error("bath ground state is not a polarized corner");
}

}  // namespace dimer::oracle
