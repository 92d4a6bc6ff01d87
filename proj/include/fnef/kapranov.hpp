#ifndef FNEF_KAPRANOV_HPP
#define FNEF_KAPRANOV_HPP

#include "pairing.hpp"

#include <map>
#include <vector>

namespace fnef {

/// A divisor written in the Kapranov basis: H plus exceptional classes
/// Delta_J with n not in J and 3 <= |J| <= n-2.
struct KapranovCoords {
    int n = 0;
    Rational h;
    std::map<PointSet, Rational> exceptional;

    Rational at(PointSet j) const {
        auto it = exceptional.find(j);
        return it == exceptional.end() ? Rational(0) : it->second;
    }
    void add(PointSet j, const Rational& c) {
        if (sgn(c) == 0) return;
        auto& slot = exceptional[j];
        slot += c;
        if (sgn(slot) == 0) exceptional.erase(j);
    }
};

inline bool is_exceptional_label(int n, PointSet j) {
    return !has_point(j, n) && set_size(j) >= 3 && set_size(j) <= n - 2 && (j & ~full_set(n)) == 0;
}

/// Delta_ij = H - sum of Delta_J over J containing {i,j}, n not in J, 3 <= |J| <= n-2.
inline KapranovCoords expand_pair_divisor(int n, int i, int j) {
    check_n(n);
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw DomainError("invalid pair");
    if (i == n || j == n) throw DomainError("pairs containing n are exceptional labels");
    KapranovCoords k;
    k.n = n;
    k.h = 1;
    PointSet ij = point_bit(i) | point_bit(j);
    PointSet rest = full_set(n - 1) & ~ij;
    for (PointSet extra = rest;; extra = (extra - 1) & rest) {
        PointSet s = ij | extra;
        if (is_exceptional_label(n, s)) k.add(s, -1);
        if (extra == 0) break;
    }
    return k;
}

inline KapranovCoords to_kapranov(const BoundaryVector& v) {
    int n = v.n();
    KapranovCoords k;
    k.n = n;
    for (const auto& [d, c] : v.terms()) {
        PointSet side = has_point(d.set(), n) ? d.complement() : d.set();
        if (set_size(side) >= 3) {
            k.add(side, c);
        } else {
            auto e = elements(side);
            auto pair = expand_pair_divisor(n, e[0], e[1]);
            k.h += c * pair.h;
            for (const auto& [j, q] : pair.exceptional) k.add(j, c * q);
        }
    }
    return k;
}

inline int closed_form_dual_pairing(PointSet j, const FourTuple& t) {
    return std::min(0, 2 - set_size(j & t.set()));
}

/// <[Delta_J]^dual, S_I> computed from the Kapranov expansion of S_I and
/// checked against min{0, 2 - |I cap J|}.
inline Rational dual_pairing(int n, PointSet j, const FourTuple& t) {
    if (!is_exceptional_label(n, j)) throw DomainError("dual pairing needs an exceptional label {" + format_set(j) + "}");
    if (t.n() != n) throw DomainError("tuple over a different n");
    Rational value = to_kapranov(keel_divisor(t)).at(j);
    if (value != closed_form_dual_pairing(j, t))
        throw ConsistencyError("dual pairing mismatch at {" + format_set(j) + "}, " + t.to_string());
    return value;
}

struct MatrixMReport {
    int n = 0;
    std::vector<PointSet> row_labels;
    std::vector<FourTuple> column_tuples;
    RatMatrix m;
    Rational det;
    Rational expected;
    /// (BC)_{J,I} equals 4, 1, 0 for I = J, |I cap J| = 3, otherwise.
    bool bc_pattern = false;
    bool diagonal_d = false;
};

/// Rows: 4-sets J without n, then 3-sets J' without n (lex). Columns: 4-sets
/// without n in the same order, then J' + {n}; the D block is then -identity.
inline MatrixMReport matrix_M(int n) {
    if (n < 6) throw DomainError("matrix M needs n >= 6");
    MatrixMReport r;
    r.n = n;
    auto fours = k_subsets(n - 1, 4);
    auto threes = k_subsets(n - 1, 3);
    for (PointSet s : fours) r.row_labels.push_back(s);
    for (PointSet s : threes) r.row_labels.push_back(s);
    for (PointSet s : fours) r.column_tuples.emplace_back(n, s);
    for (PointSet s : threes) r.column_tuples.emplace_back(n, s | point_bit(n));
    std::size_t size = r.row_labels.size();
    r.m = RatMatrix(size, size);
    for (std::size_t c = 0; c < size; ++c) {
        auto k = to_kapranov(keel_divisor(r.column_tuples[c]));
        for (std::size_t row = 0; row < size; ++row) {
            r.m(row, c) = k.at(r.row_labels[row]);
            if (r.m(row, c) != closed_form_dual_pairing(r.row_labels[row], r.column_tuples[c]))
                throw ConsistencyError("matrix M entry disagrees with the closed form");
        }
    }
    r.det = mat_det(r.m);
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(fours.size()));
    r.expected = Rational(two_pow * ((threes.size() % 2) ? -1 : 1));

    std::size_t nf = fours.size(), nt = threes.size();
    r.diagonal_d = true;
    for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = 0; b < nt; ++b)
            if (r.m(nf + a, nf + b) != (a == b ? -1 : 0)) r.diagonal_d = false;
    r.bc_pattern = true;
    for (std::size_t a = 0; a < nf; ++a)
        for (std::size_t b = 0; b < nf; ++b) {
            Rational bc = 0;
            for (std::size_t k = 0; k < nt; ++k) bc += r.m(a, nf + k) * r.m(nf + k, b);
            int meet = set_size(fours[a] & fours[b]);
            int want = a == b ? 4 : (meet == 3 ? 1 : 0);
            if (bc != want) r.bc_pattern = false;
        }
    if (abs(r.det) != abs(r.expected)) throw ConsistencyError("det M has the wrong magnitude");
    return r;
}

struct KeelIndependenceReport {
    int n = 0;
    std::size_t rank = 0;
    std::size_t expected = 0;
    bool independent = false;
};

/// Rank of the Keel classes as numerical classes: their F-curve pairing profiles.
inline KeelIndependenceReport keel_independence_check(int n) {
    const auto& md = moduli_data(n);
    std::vector<RatVector> rows;
    for (const auto& t : md.tuples) rows.push_back(pairing_profile(keel_divisor(t)));
    KeelIndependenceReport r;
    r.n = n;
    r.rank = mat_rank(RatMatrix::from_rows(rows));
    r.expected = md.tuples.size();
    r.independent = r.rank == r.expected;
    return r;
}

}  // namespace fnef

#endif
