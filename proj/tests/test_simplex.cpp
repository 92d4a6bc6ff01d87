#include <fnef/simplex.hpp>

#include <gtest/gtest.h>

#include "lp_oracle.hpp"

#include <functional>
#include <random>

using namespace fnef;

using namespace lp_oracle;

TEST(Simplex, TinyExamples) {
    LinearProgram lp;
    lp.vars = 2;
    lp.objective = {1, 1};
    lp.add_ge({1, 0}, 1);
    lp.add_ge({0, 1}, 2);
    auto r = simplex_min(lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, 3);
    EXPECT_TRUE(check_lp_result(lp, r));

    lp.add_ge({-1, -1}, -2);
    r = simplex_min(lp);
    EXPECT_EQ(r.status, LPStatus::infeasible);
    EXPECT_TRUE(check_lp_result(lp, r));

    LinearProgram un;
    un.vars = 2;
    un.objective = {-1, 0};
    un.add_ge({1, -1}, 0);
    r = simplex_min(un);
    EXPECT_EQ(r.status, LPStatus::unbounded);
    EXPECT_TRUE(check_lp_result(un, r));
}

TEST(Simplex, ZeroObjectiveAtOrigin) {
    LinearProgram lp;
    lp.vars = 3;
    lp.objective = {0, 0, 0};
    lp.add_ge({1, 1, 0}, 0);
    auto r = simplex_min(lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, 0);
    for (const auto& y : r.dual_lower) EXPECT_EQ(y, 0);
}

TEST(Simplex, FreeVariableWithoutConstraints) {
    LinearProgram lp;
    lp.vars = 2;
    lp.objective = {0, 1};
    lp.add_range({1, 0}, 0, 1);
    auto r = simplex_min(lp);
    EXPECT_EQ(r.status, LPStatus::unbounded);
    EXPECT_TRUE(check_lp_result(lp, r));
}

// Beale's example cycles under the textbook largest-coefficient rule.
TEST(Simplex, BealeDegenerateExample) {
    LinearProgram lp;
    lp.vars = 4;
    lp.objective = {frac(-3, 4), 20, frac(-1, 2), 6};
    lp.add_ge({frac(-1, 4), 8, 1, -9}, 0);
    lp.add_ge({frac(-1, 2), 12, frac(1, 2), -3}, 0);
    lp.add_ge({0, 0, -1, 0}, -1);
    for (std::size_t j = 0; j < 4; ++j) {
        RatVector e(4);
        e[j] = 1;
        lp.add_ge(e, 0);
    }
    auto r = simplex_min(lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, frac(-5, 4));
    EXPECT_TRUE(check_lp_result(lp, r));
}

TEST(Simplex, RandomAgainstVertexEnumeration) {
    std::mt19937 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto lp = random_lp(rng, true);
        ASSERT_LE(lp.rows.size(), 10u);
        auto r = simplex_min(lp);
        auto brute = brute_force(lp);
        ASSERT_TRUE(check_lp_result(lp, r)) << trial;
        if (brute) {
            ASSERT_EQ(r.status, LPStatus::optimal) << trial;
            EXPECT_EQ(r.value, *brute) << trial;
            ++optimal;
        } else {
            EXPECT_EQ(r.status, LPStatus::infeasible) << trial;
            ++infeasible;
        }
    }
    EXPECT_GT(optimal, 10);
    EXPECT_GT(infeasible, 0);
}

TEST(Simplex, RandomUnboxedWitnesses) {
    std::mt19937 rng(77);
    int seen[3] = {0, 0, 0};
    for (int trial = 0; trial < 60; ++trial) {
        auto lp = random_lp(rng, false);
        auto r = simplex_min(lp);
        EXPECT_TRUE(check_lp_result(lp, r)) << trial;
        ++seen[static_cast<int>(r.status)];
    }
    EXPECT_GT(seen[static_cast<int>(LPStatus::unbounded)], 0);
}

TEST(Simplex, Deterministic) {
    std::mt19937 rng(5);
    auto lp = random_lp(rng, true);
    auto a = simplex_min(lp), b = simplex_min(lp);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.primal, b.primal);
    EXPECT_EQ(a.dual_lower, b.dual_lower);
    EXPECT_EQ(a.pivots, b.pivots);
}
