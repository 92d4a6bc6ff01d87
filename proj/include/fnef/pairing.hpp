#ifndef FNEF_PAIRING_HPP
#define FNEF_PAIRING_HPP

#include "combinatorics.hpp"
#include "matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace fnef {

/// Sparse rational combination of boundary divisors on M_{0,n}.
class BoundaryVector {
public:
    BoundaryVector() = default;
    explicit BoundaryVector(int n) : n_(n) { check_n(n); }

    int n() const { return n_; }
    const std::map<BoundaryLabel, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const BoundaryLabel& d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const BoundaryLabel& d, const Rational& c) {
        if (d.n() != n_) throw DomainError("label belongs to a different n");
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms_.try_emplace(d, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    void add(PointSet j, const Rational& c) { add(BoundaryLabel(n_, j), c); }

    void set(const BoundaryLabel& d, const Rational& c) {
        terms_.erase(d);
        add(d, c);
    }

    BoundaryVector& operator+=(const BoundaryVector& o) {
        check_same(o);
        for (const auto& [d, c] : o.terms_) add(d, c);
        return *this;
    }
    BoundaryVector& operator-=(const BoundaryVector& o) {
        check_same(o);
        for (const auto& [d, c] : o.terms_) add(d, -c);
        return *this;
    }
    BoundaryVector& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [d, c] : terms_) c *= s;
        return *this;
    }
    friend BoundaryVector operator+(BoundaryVector a, const BoundaryVector& b) { return a += b; }
    friend BoundaryVector operator-(BoundaryVector a, const BoundaryVector& b) { return a -= b; }
    friend BoundaryVector operator*(const Rational& s, BoundaryVector a) { return a *= s; }
    friend bool operator==(const BoundaryVector& a, const BoundaryVector& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// Dense coefficients in enumerate_boundary order.
    RatVector dense() const {
        const auto& md = moduli_data(n_);
        RatVector v(md.labels.size());
        for (const auto& [d, c] : terms_) v[md.index_of(d)] = c;
        return v;
    }
    static BoundaryVector from_dense(int n, std::span<const Rational> v) {
        const auto& md = moduli_data(n);
        if (v.size() != md.labels.size()) throw DimensionError("dense boundary vector length mismatch");
        BoundaryVector b(n);
        for (std::size_t i = 0; i < v.size(); ++i) b.add(md.labels[i], v[i]);
        return b;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [d, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += c.get_str() + "*" + d.to_string();
        }
        return out;
    }

private:
    void check_same(const BoundaryVector& o) const {
        if (o.n_ != n_) throw DomainError("boundary vectors over different n");
    }

    int n_ = 0;
    std::map<BoundaryLabel, Rational> terms_;
};

inline BoundaryVector relabel(const BoundaryVector& v, const Permutation& sigma) {
    BoundaryVector out(v.n());
    for (const auto& [d, c] : v.terms()) out.add(relabel(d, sigma), c);
    return out;
}

/// B_j: sum of all Delta_J with |J| = j (on the canonical side).
inline BoundaryVector b_sum(int n, int j) {
    BoundaryVector v(n);
    for (const auto& d : moduli_data(n).labels)
        if (d.size() == j) v.add(d, 1);
    return v;
}

/// D_i = sum over j != i of Delta_ij.
inline BoundaryVector d_divisor(int n, int i) {
    if (i < 1 || i > n) throw DomainError("point out of range");
    BoundaryVector v(n);
    for (int j = 1; j <= n; ++j)
        if (j != i) v.add(point_bit(i) | point_bit(j), 1);
    return v;
}

/// Intersection of an F-curve with a boundary divisor: -1 when J is a part,
/// +1 when J is the union of two parts, 0 otherwise (up to complement).
inline int intersect(const FCurve& curve, const BoundaryLabel& d) {
    if (curve.n() != d.n()) throw DomainError("curve and label over different n");
    PointSet j = d.set(), jc = d.complement();
    const auto& p = curve.parts();
    for (PointSet part : p)
        if (part == j || part == jc) return -1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            PointSet u = p[a] | p[b];
            if (u == j || u == jc) return 1;
        }
    return 0;
}

inline Rational intersect_vector(const FCurve& curve, const BoundaryVector& v) {
    if (curve.n() != v.n()) throw DomainError("curve and vector over different n");
    Rational s = 0;
    for (const auto& [d, c] : v.terms()) {
        int k = intersect(curve, d);
        if (k) s += c * k;
    }
    return s;
}

/// Pairing of v with every F-curve, in enumerate_fcurves order.
inline RatVector pairing_profile(const BoundaryVector& v) {
    const auto& md = moduli_data(v.n());
    RatVector out(md.curves.size());
    for (std::size_t i = 0; i < md.curves.size(); ++i) out[i] = intersect_vector(md.curves[i], v);
    return out;
}

inline bool is_numerically_trivial(const BoundaryVector& v) {
    const auto& md = moduli_data(v.n());
    for (const auto& c : md.curves)
        if (sgn(intersect_vector(c, v)) != 0) return false;
    return true;
}

/// Intersection matrix: rows are boundary labels, columns are F-curves.
inline RatMatrix pairing_matrix(int n) {
    const auto& md = moduli_data(n);
    RatMatrix m(md.labels.size(), md.curves.size());
    for (std::size_t r = 0; r < md.labels.size(); ++r)
        for (std::size_t c = 0; c < md.curves.size(); ++c) m(r, c) = intersect(md.curves[c], md.labels[r]);
    return m;
}

/// One of the three ways to split I = {i<j<k<l} into two pairs.
enum class Splitting { ij_kl, ik_jl, il_jk };

inline std::pair<PointSet, PointSet> splitting_pairs(const FourTuple& t, Splitting s) {
    auto [i, j, k, l] = t.points();
    switch (s) {
        case Splitting::ij_kl: return {make_set({i, j}), make_set({k, l})};
        case Splitting::ik_jl: return {make_set({i, k}), make_set({j, l})};
        case Splitting::il_jk: return {make_set({i, l}), make_set({j, k})};
    }
    throw DomainError("bad splitting");
}

/// Sum of Delta_T over boundary divisors separating the pair {a,b} from {c,d}.
inline BoundaryVector pair_splitting_sum(int n, PointSet ab, PointSet cd) {
    BoundaryVector v(n);
    for (const auto& d : moduli_data(n).labels) {
        PointSet j = d.set(), jc = d.complement();
        if (((ab & ~j) == 0 && (cd & ~jc) == 0) || ((ab & ~jc) == 0 && (cd & ~j) == 0)) v.add(d, 1);
    }
    return v;
}

inline BoundaryVector splitting_sum(const FourTuple& t, Splitting s) {
    auto [a, b] = splitting_pairs(t, s);
    return pair_splitting_sum(t.n(), a, b);
}

/// Keel relation: splitting sum of `first` minus splitting sum of `second`.
struct KeelRelation {
    FourTuple tuple;
    Splitting first;
    Splitting second;
    BoundaryVector vector;
};

inline KeelRelation keel_relation(const FourTuple& t, Splitting first, Splitting second) {
    if (first == second) throw DomainError("keel relation needs two different splittings");
    return {t, first, second, splitting_sum(t, first) - splitting_sum(t, second)};
}

/// Two generating relations per four-tuple, in tuple order.
inline std::vector<KeelRelation> keel_relations(int n) {
    std::vector<KeelRelation> out;
    for (const auto& t : moduli_data(n).tuples) {
        out.push_back(keel_relation(t, Splitting::ij_kl, Splitting::ik_jl));
        out.push_back(keel_relation(t, Splitting::ij_kl, Splitting::il_jk));
    }
    return out;
}

/// Basis of the span of the Keel relations, as boundary vectors.
inline std::vector<BoundaryVector> relation_kernel(int n) {
    auto rels = keel_relations(n);
    std::vector<RatVector> rows;
    for (const auto& r : rels) rows.push_back(r.vector.dense());
    RatMatrix m = RatMatrix::from_rows(rows);
    rref_in_place(m);
    std::vector<BoundaryVector> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        bool zero = std::all_of(row.begin(), row.end(), [](const Rational& q) { return sgn(q) == 0; });
        if (zero) break;
        out.push_back(BoundaryVector::from_dense(n, row));
    }
    return out;
}

/// Keel divisor S_I: coefficient 1/3 on every Delta_T with |I cap T| = 2.
inline BoundaryVector keel_divisor(const FourTuple& t) {
    BoundaryVector v(t.n());
    Rational third(1, 3);
    for (const auto& d : moduli_data(t.n()).labels)
        if (set_size(d.set() & t.set()) == 2) v.add(d, third);
    return v;
}

/// Closed form for S_I . C: 1 when each part meets I in exactly one point, else 0.
inline Rational keel_intersections(const FourTuple& t, const FCurve& c) {
    if (t.n() != c.n()) throw DomainError("tuple and curve over different n");
    for (PointSet part : c.parts())
        if (set_size(part & t.set()) != 1) return 0;
    return 1;
}

/// Coefficient of Delta_J in sum_I s_I S_I.
inline Rational keel_coefficient(const BoundaryLabel& d, const std::map<FourTuple, Rational>& s) {
    Rational out = 0;
    for (const auto& [t, q] : s)
        if (set_size(d.set() & t.set()) == 2) out += q;
    return out / 3;
}

/// Whether the F-curve classes span the dual of the boundary lattice modulo
/// relations: rank of the pairing plus the relation rank equals the label count.
inline bool fcurves_detect_classes(int n) {
    const auto& md = moduli_data(n);
    return mat_rank(pairing_matrix(n)) + relation_kernel(n).size() == md.labels.size();
}

}  // namespace fnef

#endif
