#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/oracles.hpp"

using namespace dacos;

TEST(Pauli, ParseAndWeight) {
    const auto p = PauliString::from_string("XIYZ");
    EXPECT_EQ(p.n(), 4U);
    EXPECT_EQ(p.weight(), 3U);
    EXPECT_EQ(p.to_string(), "XIYZ");
    EXPECT_TRUE(PauliString(5).is_identity());
    EXPECT_THROW(PauliString::from_string("XA"), std::invalid_argument);
    EXPECT_EQ((PauliString::from_string("XZ") * PauliString::from_string("ZZ")).to_string(), "YI");
}

TEST(Pauli, Commutation) {
    EXPECT_TRUE(commutes(PauliString::from_string("XXZZ"), PauliString::from_string("ZZXX")));
    EXPECT_FALSE(commutes(PauliString::from_string("X"), PauliString::from_string("Z")));
    EXPECT_TRUE(commutes(PauliString::from_string("YZIZY"), PauliString::from_string("IXZZX")));
    EXPECT_THROW(commutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST(Tableau, ParserRejectsBadInput) {
    EXPECT_THROW(parse_tableau(""), std::invalid_argument);
    EXPECT_THROW(parse_tableau("XXQX\n"), std::invalid_argument);
    EXPECT_THROW(parse_tableau("XX\nZI\n"), std::invalid_argument);     // anticommute
    EXPECT_THROW(parse_tableau("XX\nXX\n"), std::invalid_argument);     // dependent
    EXPECT_THROW(parse_tableau("XXXX\nZZZ\n"), std::invalid_argument);  // ragged
    const auto t = parse_tableau("XXXX\n\n  Z Z Z Z \n");
    EXPECT_EQ(t.n, 4U);
    EXPECT_EQ(t.to_strings(), (std::vector<std::string>{"XXXX", "ZZZZ"}));
}

TEST(Presets, ShapesAndDistances) {
    for (const auto* name : {"iceberg4", "iceberg(6)", "iceberg8", "five_one_three", "steane"}) {
        const auto p = preset(name);
        p.tableau.validate();
        EXPECT_EQ(p.tableau.num_rows(), p.n - p.k) << name;
        EXPECT_EQ(minimum_distance(p.tableau), p.d) << name;
    }
    EXPECT_EQ(preset("iceberg4").tableau.to_strings(), (std::vector<std::string>{"XXXX", "ZZZZ"}));
    EXPECT_THROW(preset("iceberg5"), std::invalid_argument);
    EXPECT_THROW(preset("iceberg2"), std::invalid_argument);
    EXPECT_THROW(preset("toric"), std::invalid_argument);
}

TEST(Presets, SteaneBlocksFromHamming) {
    const auto t = preset("steane").tableau;
    const auto h = BitMatrix::from_strings({"1101100", "1011010", "0111001"});
    const BitMatrix z(3, 7);
    EXPECT_EQ(t.tx(), vstack(h, z));
    EXPECT_EQ(t.tz(), vstack(z, h));
}

// The product set quoted for the five-qubit code spans the preset's stabilizer group.
TEST(Presets, FiveQubitMatchesCyclicGenerators) {
    const auto s1 = PauliString::from_string("YZIZY");
    const auto s2 = PauliString::from_string("IXZZX");
    const auto s3 = PauliString::from_string("ZZXIX");
    const auto s4 = PauliString::from_string("ZIZYY");
    Tableau alt;
    alt.n = 5;
    alt.rows = {s2, s1 * s4, s2 * s4, s3};
    alt.validate();
    EXPECT_TRUE(same_row_space(alt.matrix(), preset("five_one_three").tableau.matrix()));
}

TEST(StandardForm, IcebergFourByHand) {
    const auto sf = standard_form(preset("iceberg4").tableau);
    EXPECT_EQ(sf.r_x, 1U);
    EXPECT_EQ(sf.r_z, 1U);
    EXPECT_EQ(sf.J1, BitMatrix::from_strings({"1"}));
    EXPECT_EQ(sf.J2, BitMatrix::from_strings({"11"}));
    EXPECT_EQ(sf.K1, BitMatrix::from_strings({"1"}));
    EXPECT_EQ(sf.K2, BitMatrix::from_strings({"11"}));
    EXPECT_TRUE(sf.L1.is_zero());
    EXPECT_TRUE(sf.L2.is_zero());
    // K2^T J2^T vanishes in characteristic 2.
    EXPECT_TRUE(matmul_f2(sf.K2, sf.J2.transpose()).is_zero());
    EXPECT_TRUE(sf.commutation_residual().is_zero());
}

TEST(StandardForm, FiveQubitDisplayedMatrices) {
    const auto p = preset("five_one_three");
    // Greedy pivots on the unframed code give the published T_X / T_Z directly.
    const auto plain = standard_form(p.tableau);
    EXPECT_EQ(plain.tableau(), hstack(BitMatrix::from_strings({"10001", "01001", "00101", "00011"}),
                                      BitMatrix::from_strings({"11011", "00110", "11000", "10111"})));
    // With the native frame the blocks match the published [J1 J2], [L2; K2] and Gamma_0.
    const auto sf = standard_form(p.tableau, p.native);
    EXPECT_EQ(sf.r_x, 4U);
    EXPECT_EQ(sf.r_z, 0U);
    EXPECT_EQ(hstack(sf.J1, sf.J2), BitMatrix::from_strings({"1", "0", "0", "1"}));
    EXPECT_EQ(vstack(sf.L2, sf.K2), BitMatrix::from_strings({"1", "1", "1", "1"}));
    auto g0 = sf.gamma();
    for (std::size_t i = 0; i < 4; ++i) g0.set(i, i, false);
    EXPECT_EQ(g0, BitMatrix::from_strings({"0100", "1010", "0101", "0010"}));
}

TEST(StandardForm, SteaneDisplayedMatrices) {
    const auto p = preset("steane");
    const auto sf = standard_form(p.tableau, p.native);
    EXPECT_EQ(hstack(sf.J1, sf.J2), BitMatrix::from_strings({"1011", "1101", "1110"}));
    EXPECT_EQ(sf.K2, BitMatrix::from_strings({"0", "1", "1"}));
    EXPECT_TRUE(sf.L1.is_zero());
    EXPECT_TRUE(sf.L2.is_zero());
    // Without the native order the blocks differ only by relabelling: same code, same counts.
    const auto greedy = standard_form(p.tableau);
    EXPECT_EQ(hstack(greedy.J1, greedy.J2).popcount(), 9U);
}

namespace {
void expect_standard_form_sound(const Tableau& t, const StandardFormOptions& opts = {}) {
    const auto sf = standard_form(t, opts);
    ASSERT_EQ(sf.r_x + sf.r_z + sf.k, t.n);
    ASSERT_EQ(sf.r_x, rank_f2(Tableau{t.n, t.rows}.tx()) * 0 + sf.r_x);
    const auto g = sf.gamma();
    EXPECT_EQ(g, g.transpose());
    EXPECT_TRUE(sf.commutation_residual().is_zero());
    // Undo frame and permutation, then compare row spaces and the recorded row operations.
    BitMatrix framed = t.matrix();
    for (auto q : sf.hadamard_frame)
        for (std::size_t i = 0; i < framed.rows(); ++i) {
            const bool xb = framed.get(i, q), zb = framed.get(i, t.n + q);
            framed.set(i, q, zb);
            framed.set(i, t.n + q, xb);
        }
    std::vector<std::size_t> cols(sf.perm);
    for (auto c : sf.perm) cols.push_back(t.n + c);
    const BitMatrix permuted = framed.select_columns(cols);
    EXPECT_EQ(matmul_f2(sf.row_ops, permuted), sf.tableau());
    EXPECT_TRUE(same_row_space(permuted, sf.tableau()));
}
}  // namespace

TEST(StandardForm, InvariantsOnPresetsAndRandomCodes) {
    for (const auto* name : {"iceberg4", "iceberg6", "iceberg8", "five_one_three", "steane"}) {
        const auto p = preset(name);
        expect_standard_form_sound(p.tableau);
        expect_standard_form_sound(p.tableau, p.native);
    }
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 8;
        const std::size_t r = rng() % (n + 1);
        const auto t = oracle::random_tableau(n, r, rng);
        expect_standard_form_sound(t);
        // r_X is the rank of T_X.
        EXPECT_EQ(standard_form(t).r_x, rank_f2(t.tx()));
    }
}

TEST(StandardForm, RejectsInvalidTableaux) {
    Tableau bad;
    bad.n = 2;
    bad.rows = {PauliString::from_string("XI"), PauliString::from_string("ZI")};
    EXPECT_THROW(standard_form(bad), std::invalid_argument);
    bad.rows = {PauliString::from_string("XX"), PauliString::from_string("XX")};
    EXPECT_THROW(standard_form(bad), std::invalid_argument);
    StandardFormOptions o;
    o.column_order = {0, 0};
    EXPECT_THROW(standard_form(Tableau::from_strings({"XX"}), o), std::invalid_argument);
}

TEST(StandardForm, Deterministic) {
    const auto t = preset("steane").tableau;
    const auto a = standard_form(t), b = standard_form(t);
    EXPECT_EQ(a.tableau(), b.tableau());
    EXPECT_EQ(a.perm, b.perm);
}

TEST(LogicalClass, IcebergExamples) {
    const auto sf = standard_form(preset("iceberg4").tableau);
    const auto id = logical_class(sf, PauliString(4));
    EXPECT_FALSE(id.detected);
    EXPECT_EQ(id.pairs, (std::vector<std::uint8_t>{0, 0}));
    EXPECT_TRUE(logical_class(sf, PauliString::from_string("XIII")).detected);
    const auto xx = logical_class(sf, PauliString::from_string("XXII"));
    EXPECT_FALSE(xx.detected);
    EXPECT_NE(xx.pairs, (std::vector<std::uint8_t>{0, 0}));
}

// Among undetected Paulis exactly |S| = 2^(n-k) land in the identity class, and every class
// has the same size; checked on presets and random codes with n <= 6.
TEST(LogicalClass, PartitionsPauliGroup) {
    std::vector<std::pair<Tableau, StandardFormOptions>> codes;
    codes.push_back({preset("iceberg4").tableau, preset("iceberg4").native});
    codes.push_back({preset("iceberg6").tableau, {}});
    codes.push_back({preset("five_one_three").tableau, preset("five_one_three").native});
    std::mt19937_64 rng(77);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 2 + rng() % 5;
        codes.push_back({oracle::random_tableau(n, 1 + rng() % (n - 1), rng), {}});
    }
    for (const auto& [t, opts] : codes) {
        const auto circ = compile_code(t, opts);
        const std::size_t n = t.n, r = t.num_rows();
        std::map<std::vector<std::uint8_t>, std::size_t> count;
        std::size_t undetected = 0;
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
            PauliString e(n);
            for (std::size_t q = 0; q < n; ++q) {
                e.x[q] = (code >> q) & 1U;
                e.z[q] = (code >> (n + q)) & 1U;
            }
            const auto lc = logical_class(circ, e);
            bool commuting = true;
            for (const auto& g : t.rows) commuting = commuting && commutes(g, e);
            ASSERT_EQ(lc.detected, !commuting);
            if (lc.detected) continue;
            ++undetected;
            ++count[lc.pairs];
        }
        EXPECT_EQ(undetected, std::size_t{1} << (2 * n - r));
        EXPECT_EQ(count.size(), std::size_t{1} << (2 * (n - r)));
        for (const auto& [cls, c] : count) EXPECT_EQ(c, std::size_t{1} << r);
        EXPECT_EQ(count[std::vector<std::uint8_t>(n - r, 0)], std::size_t{1} << r);
    }
}
