#include <fnef/relation_averages.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fnef;

namespace {

const PointSet A = make_set({1, 2, 3});

BoundaryLabel label(std::initializer_list<int> pts) { return BoundaryLabel::of(7, pts); }

// Case I display, read off from how a label meets {1,2,3}.
Rational case_i_display(const BoundaryLabel& d) {
    int a = set_size(d.set() & A);
    if (d.size() == 2) return a == 2 ? frac(1, 3) : a == 1 ? frac(-1, 6) : frac(1, 6);
    if (a == 3) return 0;
    return a == 2 ? Rational(0) : a == 1 ? frac(-1, 6) : frac(1, 2);
}

// Cases III and IV: xs is the averaged triple, w the remaining point of {4,..,7}.
Rational case_iii_display(const BoundaryLabel& d, PointSet xs, int w) {
    PointSet j = d.set();
    bool has_w = has_point(j, w);
    PointSet rest = j & ~point_bit(w);
    int a = set_size(rest & A), x = set_size(rest & xs);
    if (j == xs) return 1;
    if (d.size() == 2 && !has_w) {
        if (a == 2 || x == 2) return frac(1, 3);
        if (a == 1 && x == 1) return frac(-2, 9);
        return 0;
    }
    if (d.size() == 3 && has_w) {
        if (a == 2 || x == 2) return frac(1, 3);
        if (a == 1 && x == 1) return frac(-2, 9);
        return 0;
    }
    if (d.size() == 3 && !has_w && a + x == 3 && a >= 1 && x >= 1) return frac(-1, 9);
    return 0;
}

BoundaryVector case_ii_display() {
    BoundaryVector v(7);
    for (auto t : {label({2, 3, 6}), label({2, 3, 7}), label({1, 4, 5}), label({4, 5, 6}), label({4, 5, 7}), label({2, 3}), label({4, 5})})
        v.add(t, 1);
    for (auto t : {label({1, 2, 4}), label({2, 4, 6}), label({2, 4, 7}), label({1, 3, 5}), label({3, 5, 6}), label({3, 5, 7}),
                   label({2, 4}), label({3, 5})})
        v.add(t, -1);
    return v;
}

Permutation random_fixing_123(std::mt19937& rng) {
    std::vector<int> a = {1, 2, 3}, x = {4, 5, 6, 7};
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(x.begin(), x.end(), rng);
    a.insert(a.end(), x.begin(), x.end());
    return Permutation(a);
}

}  // namespace

TEST(Averages, CaseIDisplay) {
    auto e = average_expression(AverageCase::I);
    EXPECT_EQ(e.relation_count, 36u);
    for (const auto& d : moduli_data(7).labels) EXPECT_EQ(e.vector.coeff(d), case_i_display(d)) << d.to_string();
}

TEST(Averages, CaseIIDisplay) {
    auto e = average_expression(AverageCase::II);
    EXPECT_EQ(e.vector, case_ii_display());
    EXPECT_EQ(e.vector.terms().size(), 15u);
}

TEST(Averages, CaseIIIAndIVDisplays) {
    auto e3 = average_expression(AverageCase::III);
    auto e4 = average_expression(AverageCase::IV);
    EXPECT_EQ(e3.relation_count, 18u);
    EXPECT_EQ(e4.relation_count, 18u);
    for (const auto& d : moduli_data(7).labels) {
        EXPECT_EQ(e3.vector.coeff(d), case_iii_display(d, make_set({4, 5, 6}), 7)) << d.to_string();
        EXPECT_EQ(e4.vector.coeff(d), case_iii_display(d, make_set({5, 6, 7}), 4)) << d.to_string();
    }
    EXPECT_EQ(e3.vector.coeff(label({1, 4})), frac(-2, 9));
    EXPECT_EQ(e3.vector.coeff(label({1, 4, 7})), frac(-2, 9));
}

TEST(Averages, StructuralZeros) {
    auto e3 = average_expression(AverageCase::III);
    for (int a = 1; a <= 6; ++a) EXPECT_EQ(e3.vector.coeff(BoundaryLabel(7, point_bit(a) | point_bit(7))), 0);
    auto e4 = average_expression(AverageCase::IV);
    EXPECT_EQ(e4.vector.coeff(label({1, 4})), 0);
    auto e4b = average_expression(AverageCase::IV, make_set({2, 6}));
    EXPECT_EQ(e4b.vector.coeff(label({2, 6})), 0);
}

TEST(Averages, AllValid) {
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV})
        EXPECT_TRUE(validate_average(average_expression(c))) << to_string(c);
    EXPECT_TRUE(validate_average(average_expression(AverageCase::II, make_set({2, 5, 7}))));
    EXPECT_TRUE(validate_average(average_expression(AverageCase::III, make_set({4, 5, 7}))));
    EXPECT_TRUE(validate_average(average_expression(AverageCase::IV, make_set({3, 6}))));
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV}) {
        auto e = average_expression(c);
        BoundaryVector v = e.vector;
        v.add(label({1, 2, 3}), 1);
        for (const auto& C : moduli_data(7).curves) ASSERT_EQ(intersect_vector(C, v), 0);
    }
}

TEST(Averages, PerturbationBreaksValidity) {
    auto e = average_expression(AverageCase::I);
    e.vector.set(label({4, 5, 6}), frac(1, 3));
    EXPECT_FALSE(validate_average(e));
}

TEST(Averages, BadParameters) {
    EXPECT_THROW(average_expression(AverageCase::II, make_set({1, 2, 4})), DomainError);
    EXPECT_THROW(average_expression(AverageCase::III, make_set({3, 4, 5})), DomainError);
    EXPECT_THROW(average_expression(AverageCase::IV, make_set({4, 5})), DomainError);
    EXPECT_THROW(parse_average_case("v"), std::invalid_argument);
    EXPECT_EQ(parse_average_case("iii"), AverageCase::III);
}

TEST(Averages, RelabelingPreservesValidity) {
    std::mt19937 rng(13);
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV}) {
        auto e = average_expression(c);
        for (int trial = 0; trial < 6; ++trial) {
            auto s = random_fixing_123(rng);
            auto r = relabel(e, s);
            EXPECT_TRUE(validate_average(r));
            if (c != AverageCase::I) {
                EXPECT_EQ(r.vector, average_expression(c, r.distinguished).vector);
            }
        }
    }
}

TEST(Thresholds, CaseI) {
    auto e = average_expression(AverageCase::I);
    std::map<BoundaryLabel, Rational> want = {
        {label({1, 2, 4}), 0}, {label({1, 4, 5}), frac(1, 6)}, {label({4, 5, 6}), frac(-1, 2)}, {label({1, 4}), frac(1, 6)}};
    EXPECT_EQ(e.thresholds, want);
    std::size_t members = 0;
    for (const auto& o : e.orbits) members += o.members.size();
    EXPECT_EQ(members, 12u + 18u + 4u + 12u);
}

TEST(Thresholds, CaseII) {
    auto e = average_expression(AverageCase::II);
    bool has246 = false, has24 = false;
    for (const auto& o : e.orbits) {
        for (const auto& m : o.members) {
            if (m == label({2, 4, 6})) { has246 = true; EXPECT_EQ(o.bound, 1); }
            if (m == label({2, 4})) { has24 = true; EXPECT_EQ(o.bound, 1); }
            EXPECT_NE(m, label({1, 4, 5}));
            if (m.size() == 3) {
                EXPECT_GE(o.bound, 0);
            }
        }
    }
    EXPECT_TRUE(has246);
    EXPECT_TRUE(has24);
}

TEST(Thresholds, MechanicalAgreement) {
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV}) {
        auto e = average_expression(c);
        std::set<BoundaryLabel> covered;
        for (const auto& o : e.orbits) {
            EXPECT_EQ(e.thresholds.at(o.representative), o.bound);
            EXPECT_EQ(o.representative, *std::min_element(o.members.begin(), o.members.end()));
            for (const auto& m : o.members) {
                EXPECT_EQ(-e.vector.coeff(m), o.bound);
                covered.insert(m);
            }
        }
        for (const auto& d : moduli_data(7).labels) {
            if (covered.count(d) || d == label({1, 2, 3})) continue;
            Rational need = -e.vector.coeff(d);
            EXPECT_TRUE(d.size() == 2 ? need <= 0 : need <= -1) << d.to_string();
        }
    }
}

TEST(Substitute, Examples) {
    auto e = average_expression(AverageCase::I);
    BoundaryVector v(7);
    v.add(label({1, 2, 3}), -1);
    EXPECT_EQ(substitute_average(v, e), e.vector);
}

TEST(Substitute, ThresholdsGiveEffectiveResult) {
    std::mt19937 rng(3);
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV}) {
        auto e = average_expression(c);
        BoundaryVector v(7);
        for (const auto& d : moduli_data(7).labels) v.add(d, d.size() == 2 ? Rational(0) : Rational(-1));
        for (const auto& o : e.orbits)
            for (const auto& m : o.members) v.set(m, o.bound + frac(static_cast<long>(rng() % 3), 4));
        v.set(label({1, 2, 3}), -1);
        auto out = substitute_average(v, e);
        EXPECT_TRUE(is_numerically_trivial(out - v));
        for (const auto& [d, coef] : out.terms()) {
            bool low_triple = d.size() == 3 && v.coeff(d) == -1 && !e.thresholds.count(d);
            if (!low_triple) {
                EXPECT_GE(coef, 0) << to_string(c) << " " << d.to_string();
            }
        }
        EXPECT_EQ(out.coeff(label({1, 2, 3})), 0);
    }
}

TEST(Substitute, NumericallyEquivalent) {
    std::mt19937 rng(9);
    auto e = average_expression(AverageCase::III);
    for (int trial = 0; trial < 10; ++trial) {
        BoundaryVector v(7);
        for (const auto& d : moduli_data(7).labels) v.add(d, frac(static_cast<long>(rng() % 9) - 4, 1 + rng() % 4));
        EXPECT_TRUE(is_numerically_trivial(substitute_average(v, e) - v));
    }
}
