#ifndef FNEF_REPORT_HPP
#define FNEF_REPORT_HPP

#include "kapranov.hpp"
#include "theorem.hpp"

#include <json.hpp>

#include <string>

namespace fnef {

using Report = nlohmann::ordered_json;

inline std::string q(const Rational& r) { return r.get_str(); }

/// Flattens a report into "key: value" lines; nested keys join with '.', array items as key[i].
inline void render_lines(const Report& r, const std::string& prefix, std::string& out) {
    if (r.is_object()) {
        for (auto it = r.begin(); it != r.end(); ++it)
            render_lines(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (r.is_array()) {
        bool scalars = std::all_of(r.begin(), r.end(), [](const Report& x) { return !x.is_structured(); });
        if (scalars) {
            out += prefix + ":";
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? ", " : " ") + (r[i].is_string() ? r[i].get<std::string>() : r[i].dump());
            out += "\n";
        } else {
            for (std::size_t i = 0; i < r.size(); ++i) render_lines(r[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out += prefix + ": " + (r.is_string() ? r.get<std::string>() : r.dump()) + "\n";
    }
}

inline std::string render_text(const Report& r) {
    std::string out;
    render_lines(r, "", out);
    return out;
}

inline std::string render(const Report& r, bool structured) { return structured ? r.dump(2) + "\n" : render_text(r); }

inline Report rank_report(int n) {
    const auto& md = moduli_data(n);
    std::size_t rank = mat_rank(pairing_matrix(n));
    Report r;
    r["n"] = n;
    r["boundary"] = md.labels.size();
    r["fcurves"] = md.curves.size();
    r["rank"] = rank;
    r["kernel"] = md.labels.size() - rank;
    return r;
}

inline Report intersect_report(const FCurve& c, const BoundaryLabel& d) {
    Report r;
    r["curve"] = c.to_string();
    r["divisor"] = d.to_string();
    r["value"] = intersect(c, d);
    return r;
}

inline Report keel_report(const KeelCoefficientReport& k) {
    Report r;
    r["label"] = k.label.to_string();
    r["type"] = format_type(k.type);
    r["split"] = k.split.to_string();
    r["curves"] = k.curves.size();
    r["multiplicity"] = q(k.multiplicity);
    r["identity"] = k.passed ? "PASS" : "FAIL";
    return r;
}

inline Report kapranov_report(int n) {
    auto m = matrix_M(n);
    auto ind = keel_independence_check(n);
    Report r;
    r["n"] = n;
    r["det"] = q(m.det);
    r["expected"] = q(m.expected);
    r["bc_pattern"] = m.bc_pattern ? "PASS" : "FAIL";
    r["diagonal_d"] = m.diagonal_d ? "PASS" : "FAIL";
    r["keel_rank"] = ind.rank;
    r["keel_independent"] = ind.independent ? "PASS" : "FAIL";
    return r;
}

inline Report reference_report(const ReferenceCoords& c) {
    Report r = Report::object();
    const auto& tuples = moduli_data(m07_points).tuples;
    for (std::size_t i = 0; i < m07_keel_count; ++i)
        if (sgn(c.s[i]) != 0) r[tuples[i].to_string()] = q(c.s[i]);
    for (int j = 0; j < 6; ++j)
        if (sgn(c.delta_j7[j]) != 0) r["D{" + std::to_string(j + 1) + ",7}"] = q(c.delta_j7[j]);
    if (sgn(c.h) != 0) r["H"] = q(c.h);
    return r;
}

inline Report basis_report(const ParamTriple& p) {
    Report r;
    r["params"] = p.to_string();
    r["degeneracy_form"] = q(p.degeneracy_form());
    bool singular = basis_singularity_test(p);
    r["singular"] = singular;
    r["p_rank"] = p_rank_modulo_keel(p);
    r["det_p"] = q(mat_det(p_block(p)));
    r["D1"] = reference_report(express_in_reference(d_divisor(m07_points, 1)));
    r["B2"] = reference_report(express_in_reference(b_sum(m07_points, 2)));
    r["B3"] = reference_report(express_in_reference(b_sum(m07_points, 3)));
    return r;
}

inline Report verification_report(const VerificationReport& v) {
    Report r;
    r["id"] = v.id;
    r["status"] = to_string(v.status);
    r["claim"] = q(v.claimed);
    if (v.residual_zero) {
        r["m"] = q(v.m);
        Report co = Report::object();
        for (const auto& [label, a] : v.coefficients) co[label.functional_name()] = q(a);
        r["coefficients"] = co;
    }
    r["residual_zero"] = v.residual_zero;
    if (v.implied_bound) r["implied_bound"] = q(*v.implied_bound);
    if (!v.lint.empty()) {
        Report l = Report::array();
        for (const auto& f : v.lint) l.push_back(f.to_string());
        r["lint"] = l;
    }
    if (!v.message.empty()) r["message"] = v.message;
    return r;
}

inline Report outcome_report(const CertificateOutcome& o) {
    Report r;
    r["id"] = o.id;
    r["result"] = to_string(o.outcome);
    r["claim"] = q(o.claimed);
    if (o.bound) r["bound"] = q(*o.bound);
    if (!o.defect.empty()) r["defect"] = o.defect;
    if (!o.message.empty()) r["message"] = o.message;
    return r;
}

inline Report search_report(const SearchResult& s) {
    Report r;
    r["status"] = to_string(s.status);
    if (s.optimum) r["optimum"] = q(*s.optimum);
    r["pivots"] = s.pivots;
    if (s.verification) r["certificate_check"] = to_string(s.verification->status);
    if (s.certificate) r["terms"] = s.certificate->terms.size();
    return r;
}

inline Report theorem_report(const TheoremReport& t) {
    Report r;
    Report steps = Report::array();
    for (const auto& s : t.steps) steps.push_back({{"name", s.name}, {"result", s.passed ? "PASS" : "FAIL"}, {"detail", s.detail}});
    r["steps"] = steps;
    Report certs = Report::array();
    for (const auto& c : t.certificates) certs.push_back(outcome_report(c));
    r["certificates"] = certs;
    Report cov = Report::array();
    for (const auto& c : t.coverage)
        cov.push_back({{"average", c.average},
                       {"orbit", c.representative.functional_name()},
                       {"needed", q(c.needed)},
                       {"covered_by", c.covered_by.empty() ? "-" : c.covered_by}});
    r["coverage"] = cov;
    Report rep = Report::array();
    for (const auto& id : t.repaired()) rep.push_back(id);
    r["repaired"] = rep;
    r["verdict"] = t.passed ? "PASS" : "FAIL";
    return r;
}

}  // namespace fnef

#endif
