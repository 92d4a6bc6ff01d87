#ifndef FNEF_LP_SEARCH_HPP
#define FNEF_LP_SEARCH_HPP

#include "certificate.hpp"
#include "simplex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fnef {

/// Minimize one boundary coefficient over the F-nef cone plus side conditions.
struct BoundProblem {
    ParamTriple params;
    BoundaryLabel target;
    std::vector<Normalization> normalizations;
    std::vector<Assumption> assumptions;
};

inline BoundProblem problem_of(const Certificate& c) {
    if (!c.target) throw DomainError("certificate has no target");
    return {c.params, *c.target, c.normalizations, c.assumptions};
}

inline BoundProblem parse_problem(std::string_view text) { return problem_of(parse_certificate(text, true)); }

struct SearchResult {
    LPStatus status = LPStatus::infeasible;
    std::optional<Rational> optimum;
    std::optional<Certificate> certificate;
    std::optional<VerificationReport> verification;
    std::size_t pivots = 0;
};

namespace detail {

struct BuiltProgram {
    LinearProgram lp;
    std::size_t curve_rows = 0;
};

inline BuiltProgram build_program(const BoundProblem& p) {
    if (p.params.closed_form_singular()) throw DomainError("parameters do not give a basis");
    BuiltProgram b;
    b.lp.vars = m07_dim;
    b.lp.objective = coefficient_functional(p.target, p.params);
    M07Basis basis(p.params);
    const auto& g = basis.inequality_matrix();
    for (std::size_t r = 0; r < g.rows(); ++r) b.lp.add_ge(g.row_vector(r), 0);
    b.curve_rows = g.rows();
    Certificate shell;
    shell.normalizations = p.normalizations;
    shell.assumptions = p.assumptions;
    for (const auto& [label, iv] : side_intervals(shell)) {
        auto f = coefficient_functional(label, p.params);
        if (iv.lo && iv.hi) {
            if (*iv.lo == *iv.hi) b.lp.add_eq(f, *iv.lo);
            else b.lp.add_range(f, *iv.lo, *iv.hi);
        } else if (iv.lo) {
            b.lp.add_ge(f, *iv.lo);
        } else {
            for (auto& x : f) x = -x;
            b.lp.add_ge(f, -*iv.hi);
        }
    }
    return b;
}

}  // namespace detail

/// Reads the optimal dual on the curve rows as a certificate for the optimum.
inline Certificate farkas_certificate(const BoundProblem& p, const LPResult& r, const std::string& id = "") {
    if (r.status != LPStatus::optimal) throw DomainError("no finite optimum to certify");
    const auto& curves = moduli_data(m07_points).curves;
    if (r.dual_lower.size() < curves.size()) throw DimensionError("dual does not cover the curve rows");
    Certificate c;
    c.id = id;
    c.params = p.params;
    c.target = p.target;
    c.claim = r.value;
    c.normalizations = p.normalizations;
    c.assumptions = p.assumptions;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (sgn(r.dual_lower[i]) == 0) continue;
        CurveTerm t;
        t.weight = r.dual_lower[i];
        for (PointSet part : curves[i].parts()) t.parts.push_back(elements(part));
        c.terms.push_back(std::move(t));
    }
    return c;
}

inline SearchResult search_bound(const BoundProblem& p, const std::string& id = "") {
    auto built = detail::build_program(p);
    auto r = simplex_min(built.lp);
    SearchResult out;
    out.status = r.status;
    out.pivots = r.pivots;
    if (r.status != LPStatus::optimal) return out;
    out.optimum = r.value;
    auto cert = farkas_certificate(p, r, id);
    if (cert.terms.empty()) {
        // objective is a combination of side conditions alone
        out.certificate = cert;
        return out;
    }
    auto report = verify_certificate(cert);
    if (report.status != VerifyStatus::pass || *report.implied_bound != r.value)
        throw ConsistencyError("extracted dual certificate does not verify at the optimum");
    out.certificate = std::move(cert);
    out.verification = std::move(report);
    return out;
}

struct RepairResult {
    enum class Outcome { unchanged, repaired, unachievable, failed } outcome = Outcome::failed;
    VerificationReport original;
    std::optional<Certificate> certificate;
    std::optional<VerificationReport> verification;
    std::optional<Rational> optimum;
    std::string message;
};

inline std::string to_string(RepairResult::Outcome o) {
    switch (o) {
        case RepairResult::Outcome::unchanged: return "PASS";
        case RepairResult::Outcome::repaired: return "REPAIRED";
        case RepairResult::Outcome::unachievable: return "UNACHIEVABLE";
        case RepairResult::Outcome::failed: return "FAILED";
    }
    return "?";
}

/// Keeps a verifying certificate; otherwise regenerates one for the same bound.
inline RepairResult repair_certificate(const Certificate& c) {
    RepairResult out;
    out.original = verify_certificate(c);
    if (out.original.status == VerifyStatus::pass) {
        out.outcome = RepairResult::Outcome::unchanged;
        out.certificate = c;
        out.verification = out.original;
        return out;
    }
    auto s = search_bound(problem_of(c), c.id);
    if (s.status != LPStatus::optimal) {
        out.outcome = RepairResult::Outcome::failed;
        out.message = "bound problem is " + to_string(s.status);
        return out;
    }
    out.optimum = s.optimum;
    if (*s.optimum < c.claim) {
        out.outcome = RepairResult::Outcome::unachievable;
        out.message = "optimum " + s.optimum->get_str() + " is below the claim " + c.claim.get_str();
        return out;
    }
    Certificate fixed = *s.certificate;
    fixed.claim = c.claim;
    fixed.comments = c.comments;
    auto report = verify_certificate(fixed);
    if (report.status != VerifyStatus::pass) throw ConsistencyError("repaired certificate does not verify");
    out.outcome = RepairResult::Outcome::repaired;
    out.certificate = std::move(fixed);
    out.verification = std::move(report);
    return out;
}

}  // namespace fnef

#endif
