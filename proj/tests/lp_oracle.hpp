#ifndef FNEF_TESTS_LP_ORACLE_HPP
#define FNEF_TESTS_LP_ORACLE_HPP

#include <fnef/simplex.hpp>

#include <functional>
#include <optional>
#include <random>

namespace lp_oracle {

using namespace fnef;

struct Half {
    RatVector a;
    Rational b;
};

inline std::vector<Half> half_rows(const LinearProgram& lp) {
    std::vector<Half> out;
    for (const auto& r : lp.rows) {
        out.push_back({r.coeffs, r.lower});
        if (r.kind == RowKind::greater_equal) continue;
        RatVector neg(r.coeffs.size());
        for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -r.coeffs[j];
        out.push_back({neg, r.kind == RowKind::equal ? Rational(-r.lower) : Rational(-r.upper)});
    }
    return out;
}

// Minimum over all basic feasible points; nullopt when no vertex is feasible.
inline std::optional<Rational> brute_force(const LinearProgram& lp) {
    auto hs = half_rows(lp);
    const std::size_t n = lp.vars;
    std::optional<Rational> best;
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
        if (depth == n) {
            RatMatrix m(n, n);
            RatVector rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) m(i, j) = hs[pick[i]].a[j];
                rhs[i] = hs[pick[i]].b;
            }
            if (mat_rank(m) != n) return;
            auto x = *mat_solve(m, rhs);
            for (const auto& h : hs) {
                Rational v = 0;
                for (std::size_t j = 0; j < n; ++j) v += h.a[j] * x[j];
                if (v < h.b) return;
            }
            Rational z = 0;
            for (std::size_t j = 0; j < n; ++j) z += lp.objective[j] * x[j];
            if (!best || z < *best) best = z;
            return;
        }
        for (std::size_t k = from; k < hs.size(); ++k) {
            pick[depth] = k;
            rec(depth + 1, k + 1);
        }
    };
    rec(0, 0);
    return best;
}

inline Rational small(std::mt19937& rng, int span = 5) {
    return frac(static_cast<long>(rng() % (2 * span + 1)) - span, 1 + rng() % 3);
}

inline LinearProgram random_lp(std::mt19937& rng, bool boxed) {
    LinearProgram lp;
    lp.vars = 2 + rng() % 4;
    lp.objective.resize(lp.vars);
    for (auto& c : lp.objective) c = small(rng);
    if (boxed)
        for (std::size_t j = 0; j < lp.vars; ++j) {
            RatVector e(lp.vars);
            e[j] = 1;
            lp.add_range(e, -static_cast<long>(1 + rng() % 6), static_cast<long>(1 + rng() % 6));
        }
    std::size_t room = boxed ? 10 - lp.vars : 10;
    std::size_t extra = 1 + rng() % room;
    for (std::size_t k = 0; k < extra; ++k) {
        RatVector a(lp.vars);
        for (auto& x : a) x = static_cast<long>(rng() % 7) - 3;
        Rational b = small(rng, 4);
        int kind = rng() % 8;
        if (kind == 0) lp.add_eq(a, b);
        else if (kind == 1) lp.add_range(a, b, b + static_cast<long>(rng() % 3));
        else lp.add_ge(a, b);
    }
    return lp;
}

}  // namespace lp_oracle

#endif
