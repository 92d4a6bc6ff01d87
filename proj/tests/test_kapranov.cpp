#include <fnef/kapranov.hpp>

#include <gtest/gtest.h>

using namespace fnef;

TEST(ExpandPairDivisor, TermCounts) {
    auto k7 = expand_pair_divisor(7, 1, 2);
    EXPECT_EQ(k7.h, 1);
    EXPECT_EQ(k7.exceptional.size(), 14u);
    for (const auto& [j, c] : k7.exceptional) {
        EXPECT_EQ(c, -1);
        EXPECT_TRUE(has_point(j, 1) && has_point(j, 2) && !has_point(j, 7));
    }
    auto k6 = expand_pair_divisor(6, 1, 2);
    EXPECT_EQ(k6.exceptional.size(), 6u);
    EXPECT_THROW(expand_pair_divisor(7, 1, 7), DomainError);
    EXPECT_THROW(expand_pair_divisor(7, 2, 2), DomainError);
}

TEST(DualPairing, ClosedFormAllPairs) {
    for (int n = 6; n <= 7; ++n)
        for (int k = 3; k <= n - 2; ++k)
            for (PointSet j : k_subsets(n - 1, k))
                for (const auto& t : moduli_data(n).tuples) {
                    Rational v = dual_pairing(n, j, t);
                    int meet = set_size(j & t.set());
                    EXPECT_EQ(v, meet == 4 ? -2 : meet == 3 ? -1 : 0);
                }
}

TEST(DualPairing, RejectsNonExceptional) {
    auto t = FourTuple::of(7, {1, 2, 3, 4});
    EXPECT_THROW(dual_pairing(7, make_set({1, 2}), t), DomainError);
    EXPECT_THROW(dual_pairing(7, make_set({1, 2, 7}), t), DomainError);
}

TEST(MatrixM, Determinants) {
    auto m6 = matrix_M(6);
    EXPECT_EQ(m6.m.rows(), 15u);
    EXPECT_EQ(m6.det, 32);
    EXPECT_EQ(m6.expected, 32);
    auto m7 = matrix_M(7);
    EXPECT_EQ(m7.m.rows(), 35u);
    EXPECT_EQ(m7.det, 32768);
    EXPECT_EQ(m7.expected, 32768);
    EXPECT_EQ(mat_rank(m6.m), 15u);
    EXPECT_EQ(mat_rank(m7.m), 35u);
    EXPECT_THROW(matrix_M(5), DomainError);
}

TEST(MatrixM, BlockStructure) {
    for (int n = 6; n <= 7; ++n) {
        auto r = matrix_M(n);
        EXPECT_TRUE(r.diagonal_d);
        EXPECT_TRUE(r.bc_pattern);
    }
}

TEST(KeelIndependence, Ranks) {
    auto r5 = keel_independence_check(5);
    EXPECT_TRUE(r5.independent);
    EXPECT_EQ(r5.rank, 5u);
    auto r6 = keel_independence_check(6);
    EXPECT_TRUE(r6.independent);
    EXPECT_EQ(r6.rank, 15u);
    auto r7 = keel_independence_check(7);
    EXPECT_TRUE(r7.independent);
    EXPECT_EQ(r7.rank, 35u);
}

TEST(Kapranov, RelationsVanish) {
    // Keel relations are numerically trivial, so their Kapranov coordinates must vanish.
    for (const auto& r : keel_relations(6)) {
        auto k = to_kapranov(r.vector);
        EXPECT_EQ(k.h, 0);
        EXPECT_TRUE(k.exceptional.empty());
    }
}
