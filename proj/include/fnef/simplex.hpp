#ifndef FNEF_SIMPLEX_HPP
#define FNEF_SIMPLEX_HPP

#include "matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fnef {

enum class RowKind { greater_equal, equal, range };

/// lower <= coeffs . x (<= upper for ranges; = lower for equalities).
struct LPRow {
    RatVector coeffs;
    RowKind kind = RowKind::greater_equal;
    Rational lower;
    Rational upper;
};

/// Minimize objective . x over free variables x.
struct LinearProgram {
    std::size_t vars = 0;
    RatVector objective;
    std::vector<LPRow> rows;

    void add_ge(RatVector a, Rational b) { rows.push_back({std::move(a), RowKind::greater_equal, std::move(b), 0}); }
    void add_eq(RatVector a, Rational b) { rows.push_back({std::move(a), RowKind::equal, std::move(b), 0}); }
    void add_range(RatVector a, Rational lo, Rational hi) {
        if (lo > hi) throw DomainError("empty range row");
        rows.push_back({std::move(a), RowKind::range, std::move(lo), std::move(hi)});
    }
};

enum class LPStatus { optimal, unbounded, infeasible };

inline std::string to_string(LPStatus s) {
    switch (s) {
        case LPStatus::optimal: return "OPTIMAL";
        case LPStatus::unbounded: return "UNBOUNDED";
        case LPStatus::infeasible: return "INFEASIBLE";
    }
    return "?";
}

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    Rational value;
    RatVector primal;
    /// Nonnegative multipliers on the lower and upper side of each row. At an
    /// optimum: objective = sum (lo_r - up_r) a_r and value = sum lo_r*lower_r - up_r*upper_r.
    /// When infeasible the same vectors give a Farkas combination with zero
    /// left side and positive right side.
    RatVector dual_lower;
    RatVector dual_upper;
    /// Direction with objective . ray < 0 keeping every row satisfied.
    RatVector ray;
    std::size_t pivots = 0;
};

namespace detail {

class Dictionary {
public:
    // basic_r = constant_r + sum_c coef(r, c) * nonbasic_c
    std::vector<std::size_t> basic, nonbasic;
    std::vector<Rational> constant;
    std::vector<std::vector<Rational>> coef;
    std::vector<Rational> obj;
    Rational obj_constant;
    std::size_t free_count = 0;
    std::size_t pivots = 0;

    bool is_free(std::size_t var) const { return var < free_count; }

    void pivot(std::size_t r, std::size_t c) {
        ++pivots;
        Rational p = coef[r][c];
        if (sgn(p) == 0) throw ConsistencyError("zero pivot");
        // solve row r for nonbasic c
        Rational inv = -1 / p;
        std::vector<Rational>& row = coef[r];
        Rational k = constant[r] * inv;
        constant[r] = k;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (j != c && sgn(row[j]) != 0) row[j] *= inv;
        row[c] = -inv;
        std::swap(basic[r], nonbasic[c]);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            if (i == r) continue;
            Rational f = coef[i][c];
            if (sgn(f) == 0) continue;
            eliminate(coef[i], constant[i], f, c, row, constant[r]);
        }
        Rational f = obj[c];
        if (sgn(f) != 0) eliminate(obj, obj_constant, f, c, row, constant[r]);
    }

private:
    static void eliminate(std::vector<Rational>& target, Rational& tconst, const Rational& f, std::size_t c,
                          const std::vector<Rational>& row, const Rational& rconst) {
        tconst += f * rconst;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j == c) target[j] = f * row[j];
            else if (sgn(row[j]) != 0) target[j] += f * row[j];
        }
    }
};

struct HalfRow {
    std::size_t source;
    bool upper;
};

}  // namespace detail

/// Exact two-phase dictionary simplex with Bland's rule.
inline LPResult simplex_min(const LinearProgram& lp) {
    using detail::Dictionary;
    const std::size_t n = lp.vars;
    if (lp.objective.size() != n) throw DimensionError("objective length mismatch");
    std::vector<detail::HalfRow> halves;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        if (lp.rows[r].coeffs.size() != n) throw DimensionError("row length mismatch");
        halves.push_back({r, false});
        if (lp.rows[r].kind != RowKind::greater_equal) halves.push_back({r, true});
    }
    const std::size_t m = halves.size();
    const std::size_t t_var = n + m;

    Dictionary d;
    d.free_count = n;
    for (std::size_t h = 0; h < m; ++h) {
        const auto& row = lp.rows[halves[h].source];
        bool up = halves[h].upper;
        Rational bound = up ? (row.kind == RowKind::equal ? row.lower : row.upper) : row.lower;
        d.basic.push_back(n + h);
        d.constant.push_back(up ? bound : Rational(-bound));
        std::vector<Rational> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = up ? Rational(-row.coeffs[j]) : row.coeffs[j];
        d.coef.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < n; ++j) d.nonbasic.push_back(j);
    d.obj.assign(n, Rational(0));

    auto column_of = [&](std::size_t var) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < d.nonbasic.size(); ++c)
            if (d.nonbasic[c] == var) return c;
        return std::nullopt;
    };

    // free variables into the basis
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t c = *column_of(j);
        for (std::size_t r = 0; r < d.basic.size(); ++r)
            if (!d.is_free(d.basic[r]) && sgn(d.coef[r][c]) != 0) {
                d.pivot(r, c);
                break;
            }
    }

    LPResult res;
    res.dual_lower.assign(lp.rows.size(), Rational(0));
    res.dual_upper.assign(lp.rows.size(), Rational(0));

    auto read_duals = [&](const std::vector<Rational>& reduced) {
        for (std::size_t c = 0; c < d.nonbasic.size(); ++c) {
            std::size_t var = d.nonbasic[c];
            if (var < n || var == t_var || sgn(reduced[c]) == 0) continue;
            const auto& h = halves[var - n];
            (h.upper ? res.dual_upper : res.dual_lower)[h.source] += reduced[c];
        }
    };

    // Bland's rule minimization of the dictionary objective; returns the
    // entering column when unbounded
    auto run = [&](bool phase_one) -> std::optional<std::size_t> {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t c = 0; c < d.nonbasic.size(); ++c) {
                std::size_t var = d.nonbasic[c];
                if (phase_one && var < n) continue;
                bool eligible = d.is_free(var) ? sgn(d.obj[c]) != 0 : sgn(d.obj[c]) < 0;
                if (eligible && (!enter || var < d.nonbasic[*enter])) enter = c;
            }
            if (!enter) return std::nullopt;
            std::size_t c = *enter;
            if (d.is_free(d.nonbasic[c])) return c;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t r = 0; r < d.basic.size(); ++r) {
                if (d.is_free(d.basic[r]) || sgn(d.coef[r][c]) >= 0) continue;
                Rational ratio = d.constant[r] / -d.coef[r][c];
                if (!leave || ratio < best || (ratio == best && d.basic[r] < d.basic[*leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (!leave) return c;
            d.pivot(*leave, c);
        }
    };

    // phase one
    std::optional<std::size_t> worst;
    for (std::size_t r = 0; r < d.basic.size(); ++r)
        if (!d.is_free(d.basic[r]) && sgn(d.constant[r]) < 0 && (!worst || d.constant[r] < d.constant[*worst])) worst = r;
    if (worst) {
        for (std::size_t r = 0; r < d.basic.size(); ++r) d.coef[r].push_back(d.is_free(d.basic[r]) ? Rational(0) : Rational(1));
        d.nonbasic.push_back(t_var);
        d.obj.assign(d.nonbasic.size(), Rational(0));
        d.obj.back() = 1;
        d.obj_constant = 0;
        d.pivot(*worst, d.nonbasic.size() - 1);
        run(true);
        if (sgn(d.obj_constant) > 0) {
            res.status = LPStatus::infeasible;
            read_duals(d.obj);
            res.pivots = d.pivots;
            return res;
        }
        for (std::size_t r = 0; r < d.basic.size(); ++r) {
            if (d.basic[r] != t_var) continue;
            std::optional<std::size_t> col;
            for (std::size_t c = 0; c < d.nonbasic.size() && !col; ++c)
                if (sgn(d.coef[r][c]) != 0) col = c;
            if (col) {
                d.pivot(r, *col);
            } else {
                d.basic.erase(d.basic.begin() + r);
                d.constant.erase(d.constant.begin() + r);
                d.coef.erase(d.coef.begin() + r);
            }
            break;
        }
        if (auto tc = column_of(t_var)) {
            for (auto& row : d.coef) row.erase(row.begin() + *tc);
            d.nonbasic.erase(d.nonbasic.begin() + *tc);
        }
    }

    // phase two objective in terms of the nonbasic variables
    d.obj.assign(d.nonbasic.size(), Rational(0));
    d.obj_constant = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const Rational& cj = lp.objective[j];
        if (sgn(cj) == 0) continue;
        if (auto c = column_of(j)) {
            d.obj[*c] += cj;
            continue;
        }
        for (std::size_t r = 0; r < d.basic.size(); ++r)
            if (d.basic[r] == j) {
                d.obj_constant += cj * d.constant[r];
                for (std::size_t c = 0; c < d.nonbasic.size(); ++c)
                    if (sgn(d.coef[r][c]) != 0) d.obj[c] += cj * d.coef[r][c];
            }
    }

    auto primal = [&] {
        RatVector x(n);
        for (std::size_t r = 0; r < d.basic.size(); ++r)
            if (d.basic[r] < n) x[d.basic[r]] = d.constant[r];
        return x;
    };

    if (auto c = run(false)) {
        res.status = LPStatus::unbounded;
        res.primal = primal();
        int s = d.is_free(d.nonbasic[*c]) && sgn(d.obj[*c]) > 0 ? -1 : 1;
        res.ray.assign(n, Rational(0));
        if (d.nonbasic[*c] < n) res.ray[d.nonbasic[*c]] = s;
        for (std::size_t r = 0; r < d.basic.size(); ++r)
            if (d.basic[r] < n) res.ray[d.basic[r]] = s * d.coef[r][*c];
        res.pivots = d.pivots;
        return res;
    }
    res.status = LPStatus::optimal;
    res.value = d.obj_constant;
    res.primal = primal();
    read_duals(d.obj);
    res.pivots = d.pivots;
    return res;
}

/// Net multiplier per row: lower side minus upper side.
inline RatVector net_duals(const LPResult& r) {
    RatVector y(r.dual_lower.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = r.dual_lower[i] - r.dual_upper[i];
    return y;
}

inline bool row_satisfied(const LPRow& row, const RatVector& x) {
    Rational v = 0;
    for (std::size_t j = 0; j < x.size(); ++j) v += row.coeffs[j] * x[j];
    switch (row.kind) {
        case RowKind::greater_equal: return v >= row.lower;
        case RowKind::equal: return v == row.lower;
        case RowKind::range: return v >= row.lower && v <= row.upper;
    }
    return false;
}

/// Re-checks the witness attached to a result against the program.
inline bool check_lp_result(const LinearProgram& lp, const LPResult& r) {
    const std::size_t n = lp.vars;
    auto combination = [&](RatVector& lhs, Rational& rhs) {
        lhs.assign(n, Rational(0));
        rhs = 0;
        for (std::size_t i = 0; i < lp.rows.size(); ++i) {
            const auto& row = lp.rows[i];
            if (sgn(r.dual_lower[i]) < 0 || sgn(r.dual_upper[i]) < 0) return false;
            if (row.kind == RowKind::greater_equal && sgn(r.dual_upper[i]) != 0) return false;
            Rational y = r.dual_lower[i] - r.dual_upper[i];
            for (std::size_t j = 0; j < n; ++j) lhs[j] += y * row.coeffs[j];
            Rational hi = row.kind == RowKind::equal ? row.lower : row.upper;
            rhs += r.dual_lower[i] * row.lower - r.dual_upper[i] * hi;
        }
        return true;
    };
    RatVector lhs;
    Rational rhs;
    switch (r.status) {
        case LPStatus::optimal: {
            for (const auto& row : lp.rows)
                if (!row_satisfied(row, r.primal)) return false;
            Rational v = 0;
            for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * r.primal[j];
            if (v != r.value || !combination(lhs, rhs)) return false;
            return lhs == lp.objective && rhs == r.value;
        }
        case LPStatus::infeasible:
            if (!combination(lhs, rhs)) return false;
            for (const auto& x : lhs)
                if (sgn(x) != 0) return false;
            return sgn(rhs) > 0;
        case LPStatus::unbounded: {
            for (const auto& row : lp.rows)
                if (!row_satisfied(row, r.primal)) return false;
            Rational slope = 0;
            for (std::size_t j = 0; j < n; ++j) slope += lp.objective[j] * r.ray[j];
            if (sgn(slope) >= 0) return false;
            for (const auto& row : lp.rows) {
                Rational v = 0;
                for (std::size_t j = 0; j < n; ++j) v += row.coeffs[j] * r.ray[j];
                if (row.kind == RowKind::greater_equal ? sgn(v) < 0 : sgn(v) != 0) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace fnef

#endif
