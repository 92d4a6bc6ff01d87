#include <fnef/corpus.hpp>
#include <fnef/lp_search.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace fnef;

namespace {

const BoundaryLabel c123 = BoundaryLabel::of(7, {1, 2, 3});
const BoundaryLabel c145 = BoundaryLabel::of(7, {1, 4, 5});

BoundProblem problem(std::initializer_list<int> target, std::vector<Assumption> assumptions = {}) {
    return {ParamTriple::defaults(), BoundaryLabel::of(7, target), {{c123, -1}}, std::move(assumptions)};
}

std::vector<Assumption> case_two() { return {{c145, BoundSide::at_least, -1}, {c145, BoundSide::at_most, frac(1, 6)}}; }

Certificate corpus_cert(const std::string& id) {
    for (auto& c : appendix_corpus())
        if (c.id == id) return c;
    throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(Search, ConeAloneGivesZero) {
    BoundProblem p{ParamTriple::defaults(), BoundaryLabel::of(7, {1, 2}), {}, {}};
    auto built = detail::build_program(p);
    auto r = simplex_min(built.lp);
    ASSERT_EQ(r.status, LPStatus::optimal);
    EXPECT_EQ(r.value, 0);
    EXPECT_TRUE(check_lp_result(built.lp, r));
}

TEST(Search, ConeAloneUnboundedForTriple) {
    BoundProblem p{ParamTriple::defaults(), c123, {}, {}};
    auto built = detail::build_program(p);
    auto r = simplex_min(built.lp);
    EXPECT_EQ(r.status, LPStatus::unbounded);
    EXPECT_TRUE(check_lp_result(built.lp, r));
}

TEST(Search, CaseOneBound) {
    auto s = search_bound(problem({1, 2, 4}), "lp.124");
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_EQ(*s.optimum, 3);
    ASSERT_TRUE(s.verification.has_value());
    EXPECT_EQ(s.verification->status, VerifyStatus::pass);
    EXPECT_GT(s.verification->m, 0);
    EXPECT_EQ(*s.verification->implied_bound, 3);
    Rational a123 = 0;
    for (const auto& [l, a] : s.verification->coefficients)
        if (l == c123) a123 = a;
    EXPECT_EQ(a123 / s.verification->m, 3);
    EXPECT_TRUE(lint_certificate(*s.certificate).empty());
}

TEST(Search, CaseTwo246) {
    auto s = search_bound(problem({2, 4, 6}, case_two()));
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_EQ(*s.optimum, frac(17, 3));
    EXPECT_EQ(*s.verification->implied_bound, frac(17, 3));
}

TEST(Search, StrongDualityAcrossTargets) {
    for (auto t : {make_set({1, 4}), make_set({4, 5, 6}), make_set({1, 2}), make_set({2, 4})}) {
        BoundProblem p{ParamTriple::defaults(), BoundaryLabel(7, t), {{c123, -1}}, case_two()};
        auto built = detail::build_program(p);
        auto r = simplex_min(built.lp);
        ASSERT_EQ(r.status, LPStatus::optimal);
        EXPECT_TRUE(check_lp_result(built.lp, r));
        auto s = search_bound(p);
        if (s.verification) {
            EXPECT_EQ(*s.verification->implied_bound, r.value);
        } else {
            EXPECT_TRUE(s.certificate->terms.empty());
        }
    }
}

TEST(Search, PrimalPointsRespectTheBound) {
    // random objectives give feasible classes; none beats the certified bound on c246
    auto p = problem({2, 4, 6}, case_two());
    auto built = detail::build_program(p);
    auto target = coefficient_functional(p.target, p.params);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 8; ++trial) {
        auto lp = built.lp;
        for (std::size_t k = 0; k < lp.objective.size(); ++k) lp.objective[k] = target[k] * 20 + d(rng);
        auto r = simplex_min(lp);
        if (r.status != LPStatus::optimal) continue;
        for (const auto& row : lp.rows) ASSERT_TRUE(row_satisfied(row, r.primal));
        Rational value = 0;
        for (std::size_t k = 0; k < target.size(); ++k) value += target[k] * r.primal[k];
        EXPECT_GE(value, frac(17, 3));
    }
}

TEST(Search, ZeroObjectiveGivesEmptyCertificate) {
    BoundProblem p = problem({1, 2, 3});
    auto s = search_bound(p);
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_EQ(*s.optimum, -1);
    ASSERT_TRUE(s.certificate.has_value());
    EXPECT_TRUE(s.certificate->terms.empty());
}

TEST(Search, Deterministic) {
    auto a = search_bound(problem({2, 4, 6}, case_two()));
    auto b = search_bound(problem({2, 4, 6}, case_two()));
    EXPECT_EQ(a.pivots, b.pivots);
    EXPECT_EQ(serialize_certificate(*a.certificate), serialize_certificate(*b.certificate));
}

TEST(Search, SingularParamsRejected) {
    BoundProblem p = problem({1, 2, 4});
    p.params = {35, 10, 36};
    EXPECT_THROW(search_bound(p), DomainError);
}

TEST(Problem, ParseFromText) {
    auto p = parse_problem("n: 7\nparams: 3 5 9\nminimize c{2,4}\nset c{1,2,3} = -1\nassume c{1,4,5} >= -1\nassume c{1,4,5} <= 1/6\n");
    EXPECT_EQ(p.target, BoundaryLabel::of(7, {2, 4}));
    ASSERT_EQ(p.normalizations.size(), 1u);
    EXPECT_EQ(p.assumptions.size(), 2u);
    auto s = search_bound(p);
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_GE(*s.optimum, 1);
}

TEST(Repair, ValidCertificateUnchanged) {
    auto c = corpus_cert("ii.246");
    auto r = repair_certificate(c);
    EXPECT_EQ(r.outcome, RepairResult::Outcome::unchanged);
    EXPECT_EQ(serialize_certificate(*r.certificate), serialize_certificate(c));
}

TEST(Repair, UncoveredPointEntry) {
    auto r = repair_certificate(corpus_cert("ii.24"));
    ASSERT_EQ(r.outcome, RepairResult::Outcome::repaired) << r.message;
    EXPECT_EQ(r.original.status, VerifyStatus::lint);
    EXPECT_GE(*r.verification->implied_bound, 1);
    EXPECT_EQ(r.certificate->claim, 1);
    EXPECT_TRUE(lint_certificate(*r.certificate).empty());
}

TEST(Repair, RepeatedPointEntry) {
    auto r = repair_certificate(corpus_cert("ii.467"));
    ASSERT_EQ(r.outcome, RepairResult::Outcome::repaired) << r.message;
    EXPECT_GE(*r.verification->implied_bound, frac(13, 2));
    EXPECT_EQ(r.verification->status, VerifyStatus::pass);
}

TEST(Repair, ResidualEntry) {
    auto r = repair_certificate(corpus_cert("ii.245"));
    EXPECT_EQ(r.original.status, VerifyStatus::residual);
    ASSERT_EQ(r.outcome, RepairResult::Outcome::repaired) << r.message;
    EXPECT_GE(*r.verification->implied_bound, frac(37, 6));
}

TEST(Repair, UnachievableClaimIsAFinding) {
    auto c = corpus_cert("ii.24");
    c.claim = 100;
    auto r = repair_certificate(c);
    EXPECT_EQ(r.outcome, RepairResult::Outcome::unachievable);
    ASSERT_TRUE(r.optimum.has_value());
    EXPECT_LT(*r.optimum, 100);
    EXPECT_FALSE(r.message.empty());
}
