#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <random>

#include "dimer/combinatorics.hpp"

namespace {

using namespace dimer;

// Total spin S^2 of N spin-1/2 particles, built from collective Sx, iSy, Sz
// on the 2^N product basis. iSy is real, and Sy^2 = -(iSy)^2.
Eigen::MatrixXd total_spin_squared(int N) {
    const Eigen::Index dim = Eigen::Index{1} << N;
    Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(dim, dim), isy = sx, sz = sx;
    for (Eigen::Index s = 0; s < dim; ++s) {
        for (int k = 0; k < N; ++k) {
            const bool up = !((s >> k) & 1);
            const Eigen::Index flipped = s ^ (Eigen::Index{1} << k);
            sz(s, s) += up ? 0.5 : -0.5;
            sx(flipped, s) += 0.5;
            // i sigma_y / 2: |up> -> -1/2 |down>, |down> -> +1/2 |up>.
            isy(flipped, s) += up ? -0.5 : 0.5;
        }
    }
    return sx * sx - isy * isy + sz * sz;
}

// Multiplicity of each j read off the S^2 spectrum: count / (2j + 1).
std::map<int, std::uint64_t> brute_force_multiplicities(int N) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(total_spin_squared(N), Eigen::EigenvaluesOnly);
    std::map<int, std::uint64_t> count;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double jj = es.eigenvalues()(i);
        const double j = 0.5 * (std::sqrt(1.0 + 4.0 * jj) - 1.0);
        ++count[static_cast<int>(std::lround(2.0 * j))];
    }
    for (auto& [twice_j, c] : count) c /= static_cast<std::uint64_t>(twice_j + 1);
    return count;
}

TEST(Multiplicity, SmallCases) {
    EXPECT_EQ(multiplicity(2, 1.0), 1u);
    EXPECT_EQ(multiplicity(2, 0.0), 1u);
    EXPECT_EQ(multiplicity(4, 1.0), 3u);
    EXPECT_EQ(multiplicity(4, 2.0), 1u);
    EXPECT_EQ(multiplicity(4, 0.0), 2u);
    EXPECT_EQ(multiplicity(3, 0.5), 2u);
}

TEST(Multiplicity, FullySymmetricIsUnique) {
    for (int N = 1; N <= kMaxExactBathSize; ++N) EXPECT_EQ(multiplicity_twice(N, N), 1u) << N;
}

TEST(Multiplicity, MatchesSpinSquaredBlockCounting) {
    for (int N = 1; N <= 10; ++N) {
        const auto bf = brute_force_multiplicities(N);
        MultiplicityTable t(N);
        for (auto j : t.spins()) {
            ASSERT_TRUE(bf.count(j.twice)) << "N=" << N << " 2j=" << j.twice;
            EXPECT_EQ(t.nu(j), bf.at(j.twice)) << "N=" << N << " 2j=" << j.twice;
        }
        EXPECT_EQ(bf.size(), t.spins().size());
    }
}

TEST(Multiplicity, InvalidPairing) {
    EXPECT_THROW(multiplicity(4, 0.5), std::invalid_argument);
    EXPECT_THROW(multiplicity(3, 1.0), std::invalid_argument);
    EXPECT_THROW(multiplicity(3, 2.5), std::invalid_argument);
    EXPECT_THROW(multiplicity(3, -0.5), std::invalid_argument);
    EXPECT_THROW(multiplicity(0, 0.0), std::invalid_argument);
    EXPECT_THROW(multiplicity(4, 0.3), std::invalid_argument);
    EXPECT_THROW(multiplicity(65, 0.5), std::invalid_argument);
}

TEST(Multiplicity, DimensionIdentityUpTo64) {
    for (int N = 1; N <= kMaxExactBathSize; ++N) {
        MultiplicityTable t(N);
        EXPECT_TRUE(t.dimension_sum() == (static_cast<unsigned __int128>(1) << N)) << N;
    }
}

TEST(MagnetizationCounts, Binomial) {
    EXPECT_EQ(magnetization_counts(2), (std::vector<std::uint64_t>{1, 2, 1}));
    const auto g20 = magnetization_counts(20);
    EXPECT_EQ(g20[0], 1u);
    EXPECT_EQ(g20[1], 20u);
    std::uint64_t sum = 0;
    for (auto v : magnetization_counts(22)) sum += v;
    EXPECT_EQ(sum, std::uint64_t{1} << 22);
}

TEST(MagnetizationCounts, SymmetricAndConsistentWithNu) {
    for (int N = 1; N <= kMaxExactBathSize; ++N) {
        MultiplicityTable t(N);
        for (auto m : t.magnetizations()) {
            EXPECT_EQ(t.g(m), t.g(HalfInt{-m.twice}));
            EXPECT_EQ(t.g(m), t.g_from_nu(m));
            EXPECT_EQ(t.g(m), binomial(N, (N + m.twice) / 2));
        }
    }
}

TEST(PartitionFunction, SingleSpin) {
    for (double x : {1e-6, 0.3, 2.0, 24.8, 50.0}) {
        const double z = 2.0 * std::cosh(x / 2.0);
        EXPECT_NEAR(log_partition_function(1, x, 1.0), std::log(z), 1e-13);
    }
}

TEST(PartitionFunction, TwoSpinsEnumerated) {
    // States: m = -1 (1), 0 (2), +1 (1) with weights e^{-x m}; x = 1.
    EXPECT_NEAR(std::exp(log_partition_function(2, 1.0, 1.0)), 5.0861612696304876, 1e-14);
}

TEST(PartitionFunction, InfiniteTemperatureLimit) {
    for (int N : {1, 7, 24}) {
        EXPECT_NEAR(log_partition_function(N, 250.0, 1e-18), N * std::log(2.0), 1e-12);
        EXPECT_NEAR(log_partition_function(N, 0.0, 1.0), N * std::log(2.0), 1e-14);
    }
}

TEST(PartitionFunction, ClosedFormAgreesWithDirectSum) {
    for (int N = 1; N <= 24; ++N) {
        for (double x = 1e-6; x <= 50.0; x *= 1.9) {
            auto pf = partition_function_forms(N, x, 1.0);
            EXPECT_LE(pf.relative_disagreement(), 1e-10) << "N=" << N << " x=" << x;
            auto neg = partition_function_forms(N, -x, 1.0);
            EXPECT_NEAR(neg.log_z_direct, pf.log_z_direct, 1e-12 * std::max(1.0, pf.log_z_direct));
        }
        // 77 K, alpha = 250 ps^-1.
        auto pf = partition_function_forms(N, 250.0, beta_from_kelvin(77.0));
        EXPECT_LE(pf.relative_disagreement(), 1e-10);
    }
}

TEST(PartitionFunction, RejectsBadBeta) {
    EXPECT_THROW(log_partition_function(3, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(log_partition_function(3, 1.0, -1.0), std::invalid_argument);
}

TEST(ThermalWeightsTest, NormalizedAndShifted) {
    ThermalWeights w(22, 20, 250.0, 250.0, 12.0, beta_from_kelvin(77.0));
    double sum = 0.0, mx = -1e300;
    for (double v : w.weights()) sum += v;
    for (double v : w.log_weights()) mx = std::max(mx, v);
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(mx, 0.0);
}

TEST(ThermalWeightsTest, InfiniteTemperatureIsDegeneracyWeighted) {
    ThermalWeights w(4, 3, 250.0, -80.0, 30.0, 1e-15);
    for (int a = -4; a <= 4; a += 2)
        for (int b = -3; b <= 3; b += 2) {
            const double expect = static_cast<double>(binomial(4, (4 + a) / 2) * binomial(3, (3 + b) / 2)) / 128.0;
            EXPECT_NEAR(w.weight(HalfInt{a}, HalfInt{b}), expect, 1e-12);
        }
}

TEST(ThermalWeightsTest, FactorizesWithoutCorrelation) {
    const double beta = beta_from_kelvin(300.0);
    ThermalWeights w(6, 5, 210.0, 170.0, 0.0, beta);
    ThermalWeights w1(6, 1, 210.0, 0.0, 0.0, beta), w2(1, 5, 0.0, 170.0, 0.0, beta);
    for (int a = -6; a <= 6; a += 2)
        for (int b = -5; b <= 5; b += 2) {
            double p1 = w1.weight(HalfInt{a}, HalfInt{-1}) + w1.weight(HalfInt{a}, HalfInt{1});
            double p2 = w2.weight(HalfInt{-1}, HalfInt{b}) + w2.weight(HalfInt{1}, HalfInt{b});
            EXPECT_NEAR(w.weight(HalfInt{a}, HalfInt{b}), p1 * p2, 1e-12);
        }
}

TEST(ThermalWeightsTest, FourStateEnumeration) {
    // N1 = N2 = 1, beta alpha1 = beta alpha2 = beta q = 1 (beta = 1).
    ThermalWeights w(1, 1, 1.0, 1.0, 1.0, 1.0);
    const double e[2][2] = {{-0.5 - 0.5 + 0.25, -0.5 + 0.5 - 0.25}, {0.5 - 0.5 - 0.25, 0.5 + 0.5 + 0.25}};
    double z = 0.0;
    for (auto& row : e)
        for (double v : row) z += std::exp(-v);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            EXPECT_NEAR(w.weight(HalfInt{2 * a - 1}, HalfInt{2 * b - 1}), std::exp(-e[a][b]) / z, 1e-15);
}

TEST(ThermalWeightsTest, UniformEnergyShiftIsBitwiseInvisible) {
    // Dyadic parameters keep every bath energy exactly representable.
    const double beta = beta_from_kelvin(77.0);
    ThermalWeights base(9, 12, 250.0, 187.5, 22.25, beta);
    for (double c : {1.0, -3.5, 1024.0, 12345.0}) {
        ThermalWeights shifted(9, 12, 250.0, 187.5, 22.25, beta, c);
        EXPECT_EQ(base.weights(), shifted.weights()) << c;
    }
}

TEST(ThermalWeightsTest, NoOverflowAtLowTemperature) {
    ThermalWeights w(64, 64, 250.0, 250.0, 0.0, beta_from_kelvin(1.0));
    double sum = 0.0;
    for (double v : w.weights()) {
        ASSERT_TRUE(std::isfinite(v));
        sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_NEAR(w.weight(HalfInt{-64}, HalfInt{-64}), 1.0, 1e-12);
}

}  // namespace
