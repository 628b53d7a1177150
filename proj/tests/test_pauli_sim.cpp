#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"

using namespace dacos;

namespace {
CompiledCircuit native(const char* name) {
    const auto p = preset(name);
    return compile_code(p.tableau, p.native);
}

std::optional<DecoderTable> decoder_for(const char* name) {
    const std::string s = name;
    if (s == "five_one_three") return table_513();
    if (s == "steane") return table_713();
    return std::nullopt;
}

std::vector<double> grid50() {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(i / 49.0);
    return g;
}

void expect_result_sane(const SimResult& r) {
    EXPECT_GE(r.p_success, 0.0);
    EXPECT_LE(r.p_success, 1.0 + 1e-12);
    if (r.p_success == 0.0) return;
    EXPECT_TRUE(r.dist.valid(1e-9));
    for (std::size_t i = 0; i < r.k; ++i) {
        EXPECT_LE(r.fidelity_joint, r.fidelity_reduced[i] + 1e-12);
        for (double c : r.correlators[i]) {
            EXPECT_GE(c, -1.0 - 1e-12);
            EXPECT_LE(c, 1.0 + 1e-12);
        }
    }
}
}  // namespace

TEST(ExactSim, IcebergClosedFormOnGrid) {
    for (std::size_t n : {4, 6, 8}) {
        const auto c = compile_code(preset("iceberg" + std::to_string(n)).tableau, preset("iceberg" + std::to_string(n)).native);
        for (double p : grid50()) {
            const auto r = simulate_exact(c, std::nullopt, p);
            const double dn = static_cast<double>(n);
            const double closed =
                (std::pow(1 - 0.75 * p, dn) + 3 * std::pow(p / 4, dn)) / (0.25 + 0.75 * std::pow(1 - p, dn));
            EXPECT_NEAR(r.fidelity_joint, closed, 1e-12) << n << " " << p;
            EXPECT_NEAR(r.p_success, (1 + 3 * std::pow(1 - p, dn)) / 4, 1e-12);
            EXPECT_NEAR(iceberg_fidelity(n, p), closed, 1e-15);
            expect_result_sane(r);
        }
        const double p = 2.0 / 3.0;
        EXPECT_NEAR(simulate_exact(c, std::nullopt, p).fidelity_joint, std::pow(1 - 0.75 * p, n - 2.0), 1e-12);
    }
}

TEST(ExactSim, IcebergFourAtPointOne) {
    const auto r = simulate_exact(native("iceberg4"), std::nullopt, 0.1);
    EXPECT_NEAR(r.p_success, 0.742075, 1e-12);
    EXPECT_NEAR(r.fidelity_joint, 0.9866, 1e-4);
}

TEST(ExactSim, FiveQubitPolynomialWithTable) {
    const auto c = native("five_one_three");
    for (double p : grid50()) {
        const double poly = 1 - 45.0 / 8 * p * p + 75.0 / 8 * std::pow(p, 3) - 45.0 / 8 * std::pow(p, 4) +
                            9.0 / 8 * std::pow(p, 5);
        const auto r = simulate_exact(c, table_513(), p);
        EXPECT_NEAR(r.fidelity_joint, poly, 1e-12) << p;
        EXPECT_EQ(r.p_success, 1.0);
    }
}

// Two-way statistics against direct enumeration over the stabilizer group of random codes.
TEST(ExactSim, TwoWayMatchesBruteForceOnRandomCodes) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 5;
        const auto tab = oracle::random_tableau(n, 1 + rng() % (n - 1), rng);
        const auto c = compile_code(tab);
        for (double p : {0.05, 0.3, 0.7}) {
            const auto want = oracle::brute_force_two_way(tab, p);
            const auto got = simulate_exact(c, std::nullopt, p);
            EXPECT_NEAR(got.p_success, want.p_success, 1e-12);
            EXPECT_NEAR(got.fidelity_joint, want.fidelity, 1e-12);
        }
    }
}

TEST(ExactSim, PerfectInputAndNormalization) {
    for (const auto* name : {"iceberg4", "iceberg6", "five_one_three", "steane"}) {
        const auto c = native(name);
        const auto r0 = simulate_exact(c, decoder_for(name), 0.0);
        EXPECT_EQ(r0.p_success, 1.0);
        EXPECT_EQ(r0.fidelity_joint, 1.0);
        for (const auto& cor : r0.correlators) EXPECT_EQ(cor, (std::array<double, 3>{1, -1, 1}));
        for (double p : {0.1, 0.5, 0.9}) {
            const auto r = simulate_exact(c, decoder_for(name), p);
            EXPECT_NEAR(r.dist.total(), 1.0, 1e-12);
            expect_result_sane(r);
        }
    }
}

TEST(ExactSim, CapsAndValidation) {
    const auto big = compile_code(preset("iceberg(12)").tableau);
    EXPECT_THROW(simulate_exact(big, std::nullopt, 0.1), CapExceeded);
    EXPECT_THROW(simulate_exact(native("iceberg4"), std::nullopt, 1.5), std::invalid_argument);
    EXPECT_THROW(simulate_mc(native("iceberg4"), std::nullopt, {0.1, 0.0}, 0, 1), std::invalid_argument);
}

TEST(Correlators, BellTable) {
    EXPECT_EQ(correlators(BellDiag{}), (std::array<double, 3>{1, -1, 1}));
    const double p = 0.3;
    const auto c = correlators(BellDiag::isotropic(p));
    EXPECT_NEAR(c[0], 1 - p, 1e-15);
    EXPECT_NEAR(c[1], -(1 - p), 1e-15);
    EXPECT_NEAR(c[2], 1 - p, 1e-15);
    const auto u = correlators(BellDiag{{0.25, 0.25, 0.25, 0.25}});
    for (double v : u) EXPECT_NEAR(v, 0.0, 1e-15);
    EXPECT_THROW(correlators(BellClassDist::identity(2), 2), std::out_of_range);
}

// q = 0: Monte Carlo lies within 5 standard errors of exact in at least 99 of 100 seeded runs.
TEST(MonteCarlo, ConvergesToExactAtZeroGateNoise) {
    for (const auto* name : {"iceberg4", "five_one_three"}) {
        const auto c = native(name);
        const auto dec = decoder_for(name);
        const auto ex = simulate_exact(c, dec, 0.1);
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto mc = simulate_mc(c, dec, {0.1, 0.0}, 100000, seed);
            const bool ps_ok = mc.stderr_p_success == 0.0 ? mc.p_success == ex.p_success
                                                          : std::abs(mc.p_success - ex.p_success) <= 5 * mc.stderr_p_success;
            const bool f_ok = std::abs(mc.fidelity_joint - ex.fidelity_joint) <= 5 * mc.stderr_fidelity_joint;
            ok += ps_ok && f_ok;
        }
        EXPECT_GE(ok, 99) << name;
    }
}

TEST(MonteCarlo, AllPresetsWithinFourSigmaAtOneMillionShots) {
    for (const auto* name : {"iceberg4", "five_one_three", "steane"}) {
        const auto c = native(name);
        const auto ex = simulate_exact(c, decoder_for(name), 0.1);
        const auto mc = simulate_mc(c, decoder_for(name), {0.1, 0.0}, 1000000, 3);
        EXPECT_LE(std::abs(mc.fidelity_joint - ex.fidelity_joint), 4 * mc.stderr_fidelity_joint) << name;
        EXPECT_LE(std::abs(mc.fidelity_reduced[0] - ex.fidelity_reduced[0]), 4 * mc.stderr_fidelity_reduced[0]);
        expect_result_sane(mc);
    }
}

TEST(MonteCarlo, ThreadCountDoesNotChangeOutput) {
    const auto c = native("steane");
    const NoiseModel noise{0.05, 0.001};
    const auto ref = sim_csv_row(0.05, 0.001, simulate_mc(c, table_713(), noise, 20000, 42, 1));
    for (unsigned t : {2U, 3U, 8U})
        EXPECT_EQ(sim_csv_row(0.05, 0.001, simulate_mc(c, table_713(), noise, 20000, 42, t)), ref) << t;
    EXPECT_NE(sim_csv_row(0.05, 0.001, simulate_mc(c, table_713(), noise, 20000, 43, 1)), ref);
}

// Gate noise: Monte Carlo (independent sides) against the exact convolution with combined strength.
TEST(MonteCarlo, NoisyExactAgreesWithSampling) {
    for (const auto* name : {"iceberg4", "five_one_three", "steane"}) {
        const auto c = native(name);
        const NoiseModel noise{0.04, 0.01};
        const auto ex = simulate_exact_noisy(c, decoder_for(name), noise);
        const auto mc = simulate_mc(c, decoder_for(name), noise, 400000, 11);
        expect_result_sane(ex);
        EXPECT_LE(std::abs(mc.fidelity_joint - ex.fidelity_joint), 5 * mc.stderr_fidelity_joint) << name;
        if (mc.stderr_p_success > 0) {
            EXPECT_LE(std::abs(mc.p_success - ex.p_success), 5 * mc.stderr_p_success) << name;
        }
    }
    // q = 0 noisy path equals the plain one.
    const auto c = native("steane");
    EXPECT_NEAR(simulate_exact_noisy(c, table_713(), {0.1, 0.0}).fidelity_joint,
                simulate_exact(c, table_713(), 0.1).fidelity_joint, 1e-15);
}

TEST(MonteCarlo, OneWayNeverAborts) {
    const auto r = simulate_mc(native("five_one_three"), table_513(), {0.3, 0.01}, 5000, 1);
    EXPECT_EQ(r.p_success, 1.0);
    EXPECT_EQ(r.stderr_p_success, 0.0);
}

TEST(SimCsv, HeaderMatchesRow) {
    const auto r = simulate_exact(native("iceberg4"), std::nullopt, 0.1);
    const auto header = sim_csv_header(r.k), row = sim_csv_row(0.1, 0.0, r);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
    EXPECT_EQ(header.rfind("p,q,shots,p_success,fidelity_joint,fidelity_reduced_0", 0), 0U);
    EXPECT_EQ(row.substr(row.size() - 5), "exact");
}
