#ifndef FNEF_CERTIFICATE_HPP
#define FNEF_CERTIFICATE_HPP

#include "m07_basis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fnef {

struct CertificateSyntaxError : std::invalid_argument {
    CertificateSyntaxError(std::size_t line, std::size_t column, const std::string& msg)
        : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    std::size_t line, column;
};

/// One weighted curve term, kept as written so that defective curves survive parsing.
struct CurveTerm {
    Rational weight;
    std::vector<std::vector<int>> parts;
    std::size_t line = 0;

    std::string curve_text() const {
        std::string out = "C(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += '|';
            for (std::size_t k = 0; k < parts[i].size(); ++k) {
                if (k) out += ',';
                out += std::to_string(parts[i][k]);
            }
        }
        return out + ")";
    }
    friend bool operator==(const CurveTerm& a, const CurveTerm& b) { return a.weight == b.weight && a.parts == b.parts; }
};

struct Normalization {
    BoundaryLabel label;
    Rational value;
    friend bool operator==(const Normalization&, const Normalization&) = default;
};

enum class BoundSide { at_most, at_least };

struct Assumption {
    BoundaryLabel label;
    BoundSide side = BoundSide::at_most;
    Rational value;
    friend bool operator==(const Assumption&, const Assumption&) = default;
};

struct LintFinding {
    std::size_t line = 0;
    std::string term;
    std::string message;
    std::string to_string() const { return "line " + std::to_string(line) + ": " + term + ": " + message; }
    friend bool operator==(const LintFinding&, const LintFinding&) = default;
};

struct Certificate {
    std::string id;
    int n = m07_points;
    ParamTriple params;
    std::optional<BoundaryLabel> target;
    Rational claim;
    std::vector<Normalization> normalizations;
    std::vector<Assumption> assumptions;
    std::vector<std::string> comments;
    /// Stored "# lint:" annotations, verbatim.
    std::vector<std::string> lint_notes;
    std::vector<CurveTerm> terms;
    /// Problem files name the objective instead of a target.
    bool is_problem = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const { throw CertificateSyntaxError(line_, pos_ + 1, msg); }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool accept(std::string_view tok) {
        skip_space();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::string word() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '*') ++pos_;
        if (start == pos_) fail("expected a value");
        return std::string(text_.substr(start, pos_ - start));
    }
    Rational rational() {
        std::size_t start = (skip_space(), pos_);
        std::string w = word();
        try {
            return parse_rational(w);
        } catch (const std::exception& e) {
            pos_ = start;
            fail(std::string("bad rational: ") + e.what());
        }
    }
    int integer() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a point");
        if (pos_ - start > 3) fail("point out of range");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }
    BoundaryLabel functional(int n) {
        skip_space();
        std::size_t start = pos_;
        expect("c{");
        while (pos_ < text_.size() && text_[pos_] != '}') ++pos_;
        if (pos_ >= text_.size()) fail("unterminated label");
        ++pos_;
        try {
            return parse_boundary_label(text_.substr(start, pos_ - start), n);
        } catch (const std::exception& e) {
            pos_ = start;
            fail(std::string("bad label: ") + e.what());
        }
    }
    std::size_t column() const { return pos_ + 1; }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the certificate grammar. Problem files ("minimize c{..}") are accepted
/// only when allow_problem is set.
inline Certificate parse_certificate(std::string_view text, bool allow_problem = false) {
    Certificate c;
    bool have_n = false, have_claim = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line[0] == '#') {
            std::string body = detail::trim(std::string_view(line).substr(1));
            if (body.rfind("lint:", 0) == 0) c.lint_notes.push_back(detail::trim(std::string_view(body).substr(5)));
            else c.comments.push_back(body);
            continue;
        }
        detail::LineCursor cur(line, line_no);
        auto done = [&] {
            if (!cur.at_end()) cur.fail("unexpected trailing text");
        };
        if (cur.accept("id:")) {
            c.id = cur.word();
            done();
        } else if (cur.accept("n:")) {
            c.n = cur.integer();
            if (c.n != m07_points) cur.fail("only n = 7 certificates are supported");
            have_n = true;
            done();
        } else if (cur.accept("params:")) {
            c.params.alpha = cur.rational();
            c.params.lambda = cur.rational();
            c.params.mu = cur.rational();
            done();
        } else if (cur.accept("target:")) {
            c.target = cur.functional(c.n);
            done();
        } else if (cur.accept("minimize")) {
            if (!allow_problem) cur.fail("'minimize' is only valid in problem files");
            c.target = cur.functional(c.n);
            c.is_problem = true;
            done();
        } else if (cur.accept("claim:")) {
            cur.expect(">=");
            c.claim = cur.rational();
            have_claim = true;
            done();
        } else if (cur.accept("set")) {
            auto label = cur.functional(c.n);
            cur.expect("=");
            c.normalizations.push_back({label, cur.rational()});
            done();
        } else if (cur.accept("assume")) {
            auto label = cur.functional(c.n);
            BoundSide side;
            if (cur.accept("<=")) side = BoundSide::at_most;
            else if (cur.accept(">=")) side = BoundSide::at_least;
            else cur.fail("expected '<=' or '>='");
            c.assumptions.push_back({label, side, cur.rational()});
            done();
        } else {
            CurveTerm t;
            t.line = line_no;
            t.weight = cur.rational();
            cur.expect("*");
            cur.expect("C(");
            t.parts.emplace_back();
            for (;;) {
                t.parts.back().push_back(cur.integer());
                if (cur.accept(",")) continue;
                if (cur.accept("|")) {
                    t.parts.emplace_back();
                    continue;
                }
                cur.expect(")");
                break;
            }
            done();
            c.terms.push_back(std::move(t));
        }
    }
    if (!have_n) throw CertificateSyntaxError(line_no, 1, "missing 'n:' header");
    if (!c.target) throw CertificateSyntaxError(line_no, 1, allow_problem ? "missing target or minimize line" : "missing 'target:' header");
    if (!c.is_problem && !have_claim) throw CertificateSyntaxError(line_no, 1, "missing 'claim:' header");
    return c;
}

/// Line numbers of terms in the canonical serialization.
inline std::size_t canonical_first_term_line(const Certificate& c) {
    return c.comments.size() + (c.id.empty() ? 0 : 1) + 4 - (c.is_problem ? 1 : 0) + c.normalizations.size() +
           c.assumptions.size() + c.lint_notes.size() + 1;
}

inline std::vector<LintFinding> lint_certificate(const Certificate& c) {
    std::vector<LintFinding> out;
    std::size_t base = canonical_first_term_line(c);
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const auto& t = c.terms[i];
        std::size_t line = t.line ? t.line : base + i;
        auto report = [&](const std::string& msg) { out.push_back({line, t.curve_text(), msg}); };
        if (sgn(t.weight) <= 0) report("nonpositive weight " + t.weight.get_str());
        if (t.parts.size() != 4) report("expected 4 parts, found " + std::to_string(t.parts.size()));
        std::vector<int> seen(c.n + 1, 0);
        for (const auto& p : t.parts)
            for (int x : p) {
                if (x < 1 || x > c.n) {
                    report("point " + std::to_string(x) + " out of range");
                    continue;
                }
                if (seen[x]++ == 1) report("point " + std::to_string(x) + " repeated");
            }
        for (int x = 1; x <= c.n; ++x)
            if (!seen[x]) report("point " + std::to_string(x) + " uncovered");
    }
    return out;
}

inline std::string functional_text(const BoundaryLabel& d) { return d.functional_name(); }

inline std::string serialize_certificate(const Certificate& c) {
    std::ostringstream out;
    for (const auto& s : c.comments) out << "# " << s << "\n";
    if (!c.id.empty()) out << "id: " << c.id << "\n";
    out << "n: " << c.n << "\n";
    out << "params: " << c.params.to_string() << "\n";
    if (c.is_problem) {
        out << "minimize " << functional_text(*c.target) << "\n";
    } else {
        out << "target: " << functional_text(*c.target) << "\n";
        out << "claim: >= " << c.claim.get_str() << "\n";
    }
    for (const auto& nm : c.normalizations) out << "set " << functional_text(nm.label) << " = " << nm.value.get_str() << "\n";
    for (const auto& a : c.assumptions)
        out << "assume " << functional_text(a.label) << (a.side == BoundSide::at_most ? " <= " : " >= ") << a.value.get_str() << "\n";
    for (const auto& s : c.lint_notes) out << "# lint: " << s << "\n";
    for (const auto& t : c.terms) out << t.weight.get_str() << " * " << t.curve_text() << "\n";
    return out.str();
}

inline std::optional<FCurve> term_curve(const CurveTerm& t, int n) {
    if (t.parts.size() != 4) return std::nullopt;
    std::array<PointSet, 4> parts{};
    PointSet all = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& p = t.parts[i];
        PointSet s = 0;
        for (int x : p) {
            if (x < 1 || x > n || has_point(s | all, x)) return std::nullopt;
            s |= point_bit(x);
        }
        all |= s;
        parts[i] = s;
    }
    if (all != full_set(n)) return std::nullopt;
    return FCurve(n, parts);
}

inline Certificate relabel(const Certificate& c, const Permutation& sigma) {
    check_perm(c.n, sigma);
    Certificate out = c;
    out.target = relabel(*c.target, sigma);
    for (auto& nm : out.normalizations) nm.label = relabel(nm.label, sigma);
    for (auto& a : out.assumptions) a.label = relabel(a.label, sigma);
    for (auto& t : out.terms) {
        for (auto& p : t.parts)
            for (int& x : p)
                if (x >= 1 && x <= c.n) x = sigma(x);
        t.line = 0;
    }
    out.lint_notes.clear();
    return out;
}

// ---------------------------------------------------------------------------
// Verification

enum class VerifyStatus { pass, bound_gap, residual, degenerate, empty, lint };

inline std::string to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::pass: return "PASS";
        case VerifyStatus::bound_gap: return "BOUND_GAP";
        case VerifyStatus::residual: return "RESIDUAL";
        case VerifyStatus::degenerate: return "DEGENERATE";
        case VerifyStatus::empty: return "EMPTY";
        case VerifyStatus::lint: return "LINT";
    }
    return "?";
}

/// Exit code convention of the verifier: 0 pass, 1 bound gap, 2 invalid, 3 lint.
inline int exit_code(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::pass: return 0;
        case VerifyStatus::bound_gap: return 1;
        case VerifyStatus::residual:
        case VerifyStatus::degenerate:
        case VerifyStatus::empty: return 2;
        case VerifyStatus::lint: return 3;
    }
    return 2;
}

struct VerificationReport {
    std::string id;
    VerifyStatus status = VerifyStatus::residual;
    Rational m;
    /// Coefficient of each normalization/assumption functional in the decomposition.
    std::vector<std::pair<BoundaryLabel, Rational>> coefficients;
    bool residual_zero = false;
    std::optional<Rational> implied_bound;
    Rational claimed;
    std::vector<LintFinding> lint;
    std::string message;
};

/// Interval of allowed values for each side-condition functional.
struct Interval {
    std::optional<Rational> lo, hi;
};

inline std::map<BoundaryLabel, Interval> side_intervals(const Certificate& c) {
    std::map<BoundaryLabel, Interval> out;
    for (const auto& nm : c.normalizations) {
        auto& iv = out[nm.label];
        if ((iv.lo && *iv.lo > nm.value) || (iv.hi && *iv.hi < nm.value)) throw DomainError("contradictory side conditions");
        iv.lo = iv.hi = nm.value;
    }
    for (const auto& a : c.assumptions) {
        auto& iv = out[a.label];
        if (a.side == BoundSide::at_most) iv.hi = iv.hi ? std::min(*iv.hi, a.value) : a.value;
        else iv.lo = iv.lo ? std::max(*iv.lo, a.value) : a.value;
        if (iv.lo && iv.hi && *iv.lo > *iv.hi) throw DomainError("contradictory side conditions");
    }
    return out;
}

/// Lower bound of -sum a_k g_k over the side intervals; nullopt if unbounded.
inline std::optional<Rational> worst_case(const std::vector<std::pair<BoundaryLabel, Rational>>& a,
                                          const std::map<BoundaryLabel, Interval>& iv) {
    Rational total = 0;
    for (const auto& [label, coef] : a) {
        if (sgn(coef) == 0) continue;
        const auto& range = iv.at(label);
        const auto& end = sgn(coef) > 0 ? range.hi : range.lo;
        if (!end) return std::nullopt;
        total -= coef * *end;
    }
    return total;
}

inline VerificationReport verify_certificate(const Certificate& c) {
    VerificationReport r;
    r.id = c.id;
    r.claimed = c.claim;
    r.lint = lint_certificate(c);
    if (!r.lint.empty()) {
        r.status = VerifyStatus::lint;
        r.message = std::to_string(r.lint.size()) + " malformed term(s)";
        return r;
    }
    if (c.terms.empty()) {
        r.status = VerifyStatus::empty;
        r.message = "certificate has no curve terms";
        return r;
    }
    if (c.params.closed_form_singular()) throw DomainError("parameters do not give a basis");

    RatVector L(m07_dim);
    for (const auto& t : c.terms) {
        auto row = f_inequality_row(*term_curve(t, c.n), c.params);
        for (std::size_t k = 0; k < m07_dim; ++k) L[k] += t.weight * row[k];
    }
    auto intervals = side_intervals(c);
    std::vector<BoundaryLabel> labels;
    for (const auto& [label, iv] : intervals)
        if (label != *c.target) labels.push_back(label);

    std::vector<CoordFunctional> cols = {coefficient_functional(*c.target, c.params)};
    for (const auto& l : labels) cols.push_back(coefficient_functional(l, c.params));
    RatMatrix g(m07_dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t k = 0; k < m07_dim; ++k) g(k, j) = cols[j][k];
    auto x = mat_solve(g, L);
    if (!x) {
        r.status = VerifyStatus::residual;
        r.message = "combination is not in the span of the target and side-condition functionals";
        return r;
    }
    // independent re-expansion
    RatVector back(m07_dim);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t k = 0; k < m07_dim; ++k) back[k] += (*x)[j] * cols[j][k];
    if (back != L) throw ConsistencyError("decomposition does not re-expand");
    r.residual_zero = true;
    r.m = (*x)[0];
    for (std::size_t j = 0; j < labels.size(); ++j) r.coefficients.emplace_back(labels[j], (*x)[j + 1]);
    if (sgn(r.m) <= 0) {
        r.status = VerifyStatus::degenerate;
        r.message = "target coefficient " + r.m.get_str() + " is not positive";
        return r;
    }
    auto worst = worst_case(r.coefficients, intervals);
    if (!worst) {
        r.status = VerifyStatus::bound_gap;
        r.message = "combination needs a side bound that is not assumed";
        return r;
    }
    r.implied_bound = *worst / r.m;
    if (*r.implied_bound < c.claim) {
        r.status = VerifyStatus::bound_gap;
        r.message = "implied bound " + r.implied_bound->get_str() + " is below the claim " + c.claim.get_str();
        return r;
    }
    r.status = VerifyStatus::pass;
    return r;
}

}  // namespace fnef

#endif
