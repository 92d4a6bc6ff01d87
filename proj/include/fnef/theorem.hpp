#ifndef FNEF_THEOREM_HPP
#define FNEF_THEOREM_HPP

#include "corpus.hpp"
#include "keel_certificates.hpp"
#include "lp_search.hpp"
#include "relation_averages.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace fnef {

struct StepResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CertificateOutcome {
    std::string id;
    RepairResult::Outcome outcome = RepairResult::Outcome::failed;
    /// Why the shipped certificate was not used as is.
    std::string defect;
    Rational claimed;
    std::optional<Rational> bound;
    std::string message;
};

/// Threshold orbit of one case and whether a corpus bound reaches it.
struct CoverageLine {
    std::string average;
    BoundaryLabel representative;
    Rational needed;
    std::string covered_by;
};

struct TheoremReport {
    std::vector<StepResult> steps;
    std::vector<CertificateOutcome> certificates;
    std::vector<CoverageLine> coverage;
    bool passed = false;
    std::vector<std::string> repaired() const {
        std::vector<std::string> out;
        for (const auto& c : certificates)
            if (c.outcome == RepairResult::Outcome::repaired) out.push_back(c.id);
        return out;
    }
};

inline unsigned worker_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FNEF_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

/// Runs fn(i) for i < count on a small worker pool; exceptions are rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
    unsigned workers = worker_count(count);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto work = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline CertificateOutcome check_corpus_certificate(const Certificate& c) {
    CertificateOutcome o;
    o.id = c.id;
    o.claimed = c.claim;
    auto r = repair_certificate(c);
    o.outcome = r.outcome;
    if (r.outcome != RepairResult::Outcome::unchanged) {
        o.defect = to_string(r.original.status);
        if (!r.original.lint.empty()) o.defect += " (" + r.original.lint.front().message + ")";
        else if (!r.original.message.empty()) o.defect += " (" + r.original.message + ")";
    }
    if (r.verification) o.bound = r.verification->implied_bound;
    else if (r.optimum) o.bound = r.optimum;
    o.message = r.message;
    return o;
}

namespace detail {

inline SymbolicFunctional sum_inequalities(const std::vector<FCurve>& curves) {
    SymbolicFunctional total(m07_dim);
    for (const auto& c : curves) {
        auto row = symbolic_inequality_row(c);
        for (std::size_t k = 0; k < m07_dim; ++k) total[k] += row[k];
    }
    return total;
}

inline SymbolicFunctional with_p(SymbolicFunctional f, const Rational& scale, PointSet tail_a, const Linear3& va,
                                 PointSet tail_b, const Linear3& vb) {
    for (auto& x : f) x *= scale;
    for (int i : elements(tail_a)) f[m07_keel_count + i - 1] += va;
    for (int i : elements(tail_b)) f[m07_keel_count + i - 1] += vb;
    return f;
}

inline StepResult symbolic_step(std::string name, const SymbolicFunctional& lhs, const SymbolicFunctional& rhs) {
    return {std::move(name), lhs == rhs, lhs == rhs ? "identity holds in (alpha, lambda, mu)" : "identity fails"};
}


}  // namespace detail

inline TheoremReport verify_theorem_m07(const std::filesystem::path& corpus_dir = default_corpus_dir()) {
    using namespace detail;
    TheoremReport rep;
    auto step = [&](StepResult s) { rep.steps.push_back(std::move(s)); };
    auto guarded = [&](const std::string& name, auto fn) {
        try {
            step(fn());
        } catch (const std::exception& e) {
            step({name, false, std::string("error: ") + e.what()});
        }
    };

    guarded("c12 combination", [&] {
        auto j = BoundaryLabel::of(7, {1, 2});
        auto a = sum_inequalities(f_collection(j, {1, 1, 1, 4}));
        auto b = sum_inequalities(f_collection(j, {1, 1, 2, 3}));
        SymbolicFunctional combo(m07_dim);
        for (std::size_t k = 0; k < m07_dim; ++k) combo[k] = frac(1, 15) * a[k] + frac(1, 30) * b[k];
        return symbolic_step("c12 combination", combo, coefficient_functional_symbolic(j));
    });
    const PointSet p123 = make_set({1, 2, 3}), p4567 = make_set({4, 5, 6, 7});
    guarded("c123 inequality 1:1:2:3", [&] {
        auto j = BoundaryLabel::of(7, {1, 2, 3});
        auto lhs = sum_inequalities(f_collection(j, {1, 1, 2, 3}));
        auto rhs = with_p(coefficient_functional_symbolic(j), 12, p123, Linear3::of(0, -4), p4567, Linear3::of(0, 3));
        return symbolic_step("c123 inequality 1:1:2:3", lhs, rhs);
    });
    guarded("c123 inequality 1:2:2:2", [&] {
        auto j = BoundaryLabel::of(7, {1, 2, 3});
        auto lhs = sum_inequalities(f_collection(j, {1, 2, 2, 2}));
        auto rhs = with_p(coefficient_functional_symbolic(j), 12, p123, Linear3::of(0, -6, -27, 15), p4567,
                          Linear3::of(0, -9, -27, 15));
        return symbolic_step("c123 inequality 1:2:2:2", lhs, rhs);
    });
    guarded("codimension one locus", [&] {
        ParamTriple degenerate{35, 10, 36};
        std::size_t rank = p_rank_modulo_keel(degenerate);
        Linear3 implied = Linear3::of(0, 6, 27, -15) + frac(4, 3) * Linear3::of(0, 9, 27, -15);
        bool ok = rank == 6 && implied == Linear3::of(0, 18, 63, -35) && basis_singularity_test(degenerate);
        return StepResult{"codimension one locus", ok, "rank " + std::to_string(rank) + " at (35, 10, 36)"};
    });

    std::vector<Certificate> certs;
    try {
        certs = appendix_corpus(corpus_dir);
        step({"corpus", certs.size() == 16, std::to_string(certs.size()) + " certificates loaded"});
    } catch (const std::exception& e) {
        step({"corpus", false, std::string("error: ") + e.what()});
    }

    const std::map<BoundaryLabel, Rational> case_i_list = {{BoundaryLabel::of(7, {1, 2, 4}), 0},
                                                           {BoundaryLabel::of(7, {1, 4, 5}), frac(1, 6)},
                                                           {BoundaryLabel::of(7, {4, 5, 6}), frac(-1, 2)},
                                                           {BoundaryLabel::of(7, {1, 4}), frac(1, 6)}};
    for (auto c : {AverageCase::I, AverageCase::II, AverageCase::III, AverageCase::IV}) {
        std::string name = "average " + to_string(c);
        guarded(name, [&] {
            auto e = average_expression(c);
            bool ok = validate_average(e);
            std::string detail = ok ? "numerically trivial" : "not numerically trivial";
            if (c == AverageCase::I) {
                bool match = e.thresholds == case_i_list;
                ok = ok && match;
                detail += match ? ", thresholds match" : ", thresholds differ";
            }
            if (c == AverageCase::II) {
                bool match = e.thresholds.count(BoundaryLabel::of(7, {2, 4, 6})) && e.thresholds.count(BoundaryLabel::of(7, {2, 4})) &&
                             e.thresholds.at(BoundaryLabel::of(7, {2, 4, 6})) == 1 && e.thresholds.at(BoundaryLabel::of(7, {2, 4})) == 1;
                ok = ok && match;
                detail += match ? ", thresholds match" : ", thresholds differ";
            }
            detail += ", " + std::to_string(e.thresholds.size()) + " threshold orbits";
            std::string prefix = c == AverageCase::I ? "i." : c == AverageCase::II ? "ii." : c == AverageCase::III ? "iii." : "iv.";
            for (const auto& o : e.orbits) {
                CoverageLine line{to_string(c), o.representative, o.bound, ""};
                for (const auto& cert : certs) {
                    bool same_case = cert.id.rfind(prefix, 0) == 0 || cert.id.rfind("i.", 0) == 0;
                    if (!same_case) continue;
                    auto hit = std::find(o.members.begin(), o.members.end(), *cert.target);
                    if (hit != o.members.end() && cert.claim >= o.bound) line.covered_by = cert.id;
                }
                rep.coverage.push_back(std::move(line));
            }
            return StepResult{name, ok, detail};
        });
    }

    rep.certificates.resize(certs.size());
    guarded("certificates", [&] {
        parallel_for(certs.size(), [&](std::size_t i) { rep.certificates[i] = check_corpus_certificate(certs[i]); });
        std::size_t good = 0;
        for (const auto& c : rep.certificates)
            if (c.outcome == RepairResult::Outcome::unchanged || c.outcome == RepairResult::Outcome::repaired) ++good;
        return StepResult{"certificates", good == certs.size() && !certs.empty(),
                          std::to_string(good) + " of " + std::to_string(certs.size()) + " verified or repaired"};
    });

    rep.passed = std::all_of(rep.steps.begin(), rep.steps.end(), [](const StepResult& s) { return s.passed; });
    return rep;
}

}  // namespace fnef

#endif
