#ifndef FNEF_M07_BASIS_HPP
#define FNEF_M07_BASIS_HPP

#include "pairing.hpp"

#include <array>
#include <sstream>
#include <string>
#include <vector>

namespace fnef {

inline constexpr int m07_points = 7;
inline constexpr std::size_t m07_keel_count = 35;
inline constexpr std::size_t m07_dim = 42;

/// Parameters of the family P_i = alpha D_i + lambda B_2 + mu B_3.
struct ParamTriple {
    Rational alpha = 3, lambda = 5, mu = 9;

    static ParamTriple defaults() { return {}; }
    Rational degeneracy_form() const { return 18 * alpha + 63 * lambda - 35 * mu; }
    bool closed_form_singular() const { return sgn(alpha) == 0 || sgn(degeneracy_form()) == 0; }
    std::string to_string() const { return alpha.get_str() + " " + lambda.get_str() + " " + mu.get_str(); }
    friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

/// Affine form k + a*alpha + l*lambda + m*mu.
struct Linear3 {
    Rational constant, alpha, lambda, mu;

    static Linear3 of(Rational k, Rational a = 0, Rational l = 0, Rational m = 0) {
        return {std::move(k), std::move(a), std::move(l), std::move(m)};
    }
    Rational evaluate(const ParamTriple& p) const { return constant + alpha * p.alpha + lambda * p.lambda + mu * p.mu; }
    bool is_zero() const { return sgn(constant) == 0 && sgn(alpha) == 0 && sgn(lambda) == 0 && sgn(mu) == 0; }

    Linear3& operator+=(const Linear3& o) {
        constant += o.constant;
        alpha += o.alpha;
        lambda += o.lambda;
        mu += o.mu;
        return *this;
    }
    Linear3& operator*=(const Rational& s) {
        constant *= s;
        alpha *= s;
        lambda *= s;
        mu *= s;
        return *this;
    }
    friend Linear3 operator+(Linear3 a, const Linear3& b) { return a += b; }
    friend Linear3 operator-(Linear3 a, const Linear3& b) {
        Linear3 nb = b;
        nb *= -1;
        return a += nb;
    }
    friend Linear3 operator*(const Rational& s, Linear3 a) { return a *= s; }
    friend bool operator==(const Linear3&, const Linear3&) = default;

    std::string to_string() const {
        std::string out;
        auto term = [&](const Rational& c, const char* name) {
            if (sgn(c) == 0) return;
            if (!out.empty()) out += sgn(c) > 0 ? " + " : " - ";
            else if (sgn(c) < 0) out += "-";
            Rational a = abs(c);
            if (*name == 0) out += a.get_str();
            else {
                if (a != 1) out += a.get_str() + "*";
                out += name;
            }
        };
        term(constant, "");
        term(alpha, "alpha");
        term(lambda, "lambda");
        term(mu, "mu");
        return out.empty() ? "0" : out;
    }
};

/// A class in the basis {S_I} + {P_i}: 35 Keel coordinates then 7 p-coordinates.
struct M07Coords {
    std::array<Rational, m07_keel_count> s{};
    std::array<Rational, m07_points> p{};

    RatVector flat() const {
        RatVector v(s.begin(), s.end());
        v.insert(v.end(), p.begin(), p.end());
        return v;
    }
    static M07Coords from_flat(std::span<const Rational> v) {
        if (v.size() != m07_dim) throw DimensionError("M07 coordinates need 42 entries");
        M07Coords c;
        for (std::size_t i = 0; i < m07_keel_count; ++i) c.s[i] = v[i];
        for (std::size_t i = 0; i < m07_points; ++i) c.p[i] = v[m07_keel_count + i];
        return c;
    }
    /// One line per non-zero coordinate: "s{1,2,3,4} = 5/3", "p3 = -1/2".
    std::string dump() const {
        const auto& tuples = moduli_data(m07_points).tuples;
        std::ostringstream out;
        for (std::size_t i = 0; i < m07_keel_count; ++i)
            if (sgn(s[i]) != 0) out << "s{" << format_set(tuples[i].set()) << "} = " << s[i].get_str() << "\n";
        for (std::size_t i = 0; i < m07_points; ++i)
            if (sgn(p[i]) != 0) out << "p" << i + 1 << " = " << p[i].get_str() << "\n";
        return out.str();
    }
    friend bool operator==(const M07Coords&, const M07Coords&) = default;
};

/// Linear functional on M07Coords in flat order.
using CoordFunctional = RatVector;
using SymbolicFunctional = std::vector<Linear3>;

inline Rational apply_functional(const CoordFunctional& f, const M07Coords& c) {
    Rational out = 0;
    for (std::size_t i = 0; i < m07_keel_count; ++i) out += f[i] * c.s[i];
    for (std::size_t i = 0; i < m07_points; ++i) out += f[m07_keel_count + i] * c.p[i];
    return out;
}

inline CoordFunctional evaluate(const SymbolicFunctional& f, const ParamTriple& p) {
    CoordFunctional out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].evaluate(p);
    return out;
}

inline std::size_t keel_index(const FourTuple& t) { return moduli_data(m07_points).index_of(t); }

inline BoundaryVector p_divisor(int i, const ParamTriple& params) {
    if (i < 1 || i > m07_points) throw DomainError("P_i needs 1 <= i <= 7");
    return params.alpha * d_divisor(m07_points, i) + params.lambda * b_sum(m07_points, 2) + params.mu * b_sum(m07_points, 3);
}

/// Hyperplane class, from inverting the pair expansion of Delta_12:
/// H = Delta_12 + sum of Delta_J over J containing {1,2}, n not in J, 3 <= |J| <= n-2.
inline BoundaryVector hyperplane_class(int n) {
    check_n(n);
    BoundaryVector h(n);
    PointSet ij = make_set({1, 2});
    h.add(ij, 1);
    PointSet rest = full_set(n - 1) & ~ij;
    for (PointSet extra = rest;; extra = (extra - 1) & rest) {
        PointSet s = ij | extra;
        if (set_size(s) >= 3 && set_size(s) <= n - 2) h.add(s, 1);
        if (extra == 0) break;
    }
    return h;
}

/// Reference basis {S_I} + {Delta_j7, j <= 6} + {H}, in that order.
inline const std::vector<BoundaryVector>& reference_basis() {
    static const std::vector<BoundaryVector> basis = [] {
        std::vector<BoundaryVector> out;
        for (const auto& t : moduli_data(m07_points).tuples) out.push_back(keel_divisor(t));
        for (int j = 1; j <= 6; ++j) {
            BoundaryVector d(m07_points);
            d.add(point_bit(j) | point_bit(7), 1);
            out.push_back(d);
        }
        out.push_back(hyperplane_class(m07_points));
        return out;
    }();
    return basis;
}

struct ReferenceCoords {
    std::array<Rational, m07_keel_count> s{};
    std::array<Rational, 6> delta_j7{};
    Rational h;

    ReferenceCoords& operator+=(const ReferenceCoords& o) {
        for (std::size_t i = 0; i < m07_keel_count; ++i) s[i] += o.s[i];
        for (std::size_t j = 0; j < 6; ++j) delta_j7[j] += o.delta_j7[j];
        h += o.h;
        return *this;
    }
    friend ReferenceCoords operator*(const Rational& c, ReferenceCoords r) {
        for (auto& x : r.s) x *= c;
        for (auto& x : r.delta_j7) x *= c;
        r.h *= c;
        return r;
    }
};

namespace detail {

// Pairing matrix of the reference basis against all curves, with a set of
// 42 independent curve rows and the inverse of that square block.
struct ReferenceSolver {
    RatMatrix full;
    std::vector<std::size_t> rows;
    RatMatrix inverse;
};

inline const ReferenceSolver& reference_solver() {
    static const ReferenceSolver solver = [] {
        ReferenceSolver r;
        const auto& basis = reference_basis();
        const auto& curves = moduli_data(m07_points).curves;
        r.full = RatMatrix(curves.size(), basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            auto prof = pairing_profile(basis[k]);
            for (std::size_t c = 0; c < curves.size(); ++c) r.full(c, k) = prof[c];
        }
        RatMatrix t = r.full.transpose();
        r.rows = rref_in_place(t);
        if (r.rows.size() != m07_dim) throw ConsistencyError("reference basis does not span N^1");
        RatMatrix square(m07_dim, m07_dim);
        for (std::size_t i = 0; i < m07_dim; ++i)
            for (std::size_t k = 0; k < m07_dim; ++k) square(i, k) = r.full(r.rows[i], k);
        r.inverse = mat_inverse(square);
        return r;
    }();
    return solver;
}

}  // namespace detail

/// Coordinates of v over {S_I, Delta_j7, H}, solved against all 350 F-curves.
inline ReferenceCoords express_in_reference(const BoundaryVector& v) {
    if (v.n() != m07_points) throw DomainError("reference basis exists for n = 7 only");
    const auto& solver = detail::reference_solver();
    auto prof = pairing_profile(v);
    RatVector sub(m07_dim);
    for (std::size_t i = 0; i < m07_dim; ++i) sub[i] = prof[solver.rows[i]];
    RatVector x = solver.inverse.apply(sub);
    if (solver.full.apply(x) != prof) throw ConsistencyError("class is not in the span of the reference basis");
    ReferenceCoords r;
    for (std::size_t i = 0; i < m07_keel_count; ++i) r.s[i] = x[i];
    for (std::size_t j = 0; j < 6; ++j) r.delta_j7[j] = x[m07_keel_count + j];
    r.h = x[m07_keel_count + 6];
    return r;
}

namespace detail {

// Reference coordinates of D_1..D_7, B_2, B_3 (indices 0..6, 7, 8).
inline const std::array<ReferenceCoords, 9>& generator_coords() {
    static const std::array<ReferenceCoords, 9> coords = [] {
        std::array<ReferenceCoords, 9> c;
        for (int i = 1; i <= 7; ++i) c[i - 1] = express_in_reference(d_divisor(m07_points, i));
        c[7] = express_in_reference(b_sum(m07_points, 2));
        c[8] = express_in_reference(b_sum(m07_points, 3));
        return c;
    }();
    return coords;
}

inline ReferenceCoords p_reference(int i, const ParamTriple& params) {
    const auto& g = generator_coords();
    ReferenceCoords r = params.alpha * g[i - 1];
    r += params.lambda * g[7];
    r += params.mu * g[8];
    return r;
}

}  // namespace detail

/// The 7x7 block of P_i coordinates on {Delta_j7} + {H}; rows indexed by i.
inline RatMatrix p_block(const ParamTriple& params) {
    RatMatrix m(7, 7);
    for (int i = 1; i <= 7; ++i) {
        auto r = detail::p_reference(i, params);
        for (int j = 0; j < 6; ++j) m(i - 1, j) = r.delta_j7[j];
        m(i - 1, 6) = r.h;
    }
    return m;
}

/// Full 42x42 change of basis from {S_I, P_i} to the reference basis
/// (columns are basis elements).
inline RatMatrix change_of_basis(const ParamTriple& params) {
    RatMatrix m(m07_dim, m07_dim);
    for (std::size_t i = 0; i < m07_keel_count; ++i) m(i, i) = 1;
    for (int i = 1; i <= 7; ++i) {
        auto r = detail::p_reference(i, params);
        std::size_t col = m07_keel_count + i - 1;
        for (std::size_t k = 0; k < m07_keel_count; ++k) m(k, col) = r.s[k];
        for (std::size_t j = 0; j < 6; ++j) m(m07_keel_count + j, col) = r.delta_j7[j];
        m(m07_dim - 1, col) = r.h;
    }
    return m;
}

/// True when {S_I} + {P_i} fails to be a basis. Cross-checked against the closed form.
inline bool basis_singularity_test(const ParamTriple& params) {
    bool singular = mat_rank(change_of_basis(params)) < m07_dim;
    if (singular != params.closed_form_singular())
        throw ConsistencyError("basis rank disagrees with the closed-form singular locus at (" + params.to_string() + ")");
    return singular;
}

/// Rank of {P_i} modulo the Keel subspace.
inline std::size_t p_rank_modulo_keel(const ParamTriple& params) { return mat_rank(p_block(params)); }

inline BoundaryVector obvious_representative(const M07Coords& c, const ParamTriple& params) {
    const auto& tuples = moduli_data(m07_points).tuples;
    BoundaryVector v(m07_points);
    for (std::size_t i = 0; i < m07_keel_count; ++i)
        if (sgn(c.s[i]) != 0) v += c.s[i] * keel_divisor(tuples[i]);
    for (int i = 1; i <= 7; ++i)
        if (sgn(c.p[i - 1]) != 0) v += c.p[i - 1] * p_divisor(i, params);
    return v;
}

/// Symbolic functional c -> <obvious_representative(c), C>, computed by pairing.
inline SymbolicFunctional pairing_inequality_row(const FCurve& curve) {
    if (curve.n() != m07_points) throw DomainError("F-inequality rows exist for n = 7 only");
    const auto& tuples = moduli_data(m07_points).tuples;
    SymbolicFunctional f(m07_dim);
    for (std::size_t i = 0; i < m07_keel_count; ++i) f[i].constant = keel_intersections(tuples[i], curve);
    Rational b2 = intersect_vector(curve, b_sum(m07_points, 2));
    Rational b3 = intersect_vector(curve, b_sum(m07_points, 3));
    for (int i = 1; i <= 7; ++i)
        f[m07_keel_count + i - 1] = Linear3::of(0, intersect_vector(curve, d_divisor(m07_points, i)), b2, b3);
    return f;
}

/// The closed-form inequality templates, by curve type.
inline SymbolicFunctional template_inequality_row(const FCurve& curve) {
    if (curve.n() != m07_points) throw DomainError("F-inequality rows exist for n = 7 only");
    auto parts = curve.parts();
    std::sort(parts.begin(), parts.end(), [](PointSet a, PointSet b) {
        if (set_size(a) != set_size(b)) return set_size(a) < set_size(b);
        return a < b;
    });
    SymbolicFunctional f(m07_dim);
    for (const auto& t : moduli_data(m07_points).tuples) {
        bool hits = true;
        for (PointSet p : parts) hits = hits && set_size(p & t.set()) == 1;
        if (hits) f[keel_index(t)].constant = 1;
    }
    auto set_p = [&](PointSet part, const Linear3& value) {
        for (int i : elements(part)) f[m07_keel_count + i - 1] = value;
    };
    auto t = curve.type();
    if (t == CurveType{1, 1, 1, 4}) {
        for (int k = 0; k < 3; ++k) set_p(parts[k], Linear3::of(0, 2, 3, -1));
        set_p(parts[3], Linear3::of(0, 0, 3, -1));
    } else if (t == CurveType{1, 1, 2, 3}) {
        set_p(parts[0], Linear3::of(0, 1, 0, 1));
        set_p(parts[1], Linear3::of(0, 1, 0, 1));
        set_p(parts[2], Linear3::of(0, -1, 0, 1));
        set_p(parts[3], Linear3::of(0, 0, 0, 1));
    } else {
        set_p(parts[0], Linear3::of(0, 0, -3, 3));
        for (int k = 1; k < 4; ++k) set_p(parts[k], Linear3::of(0, -1, -3, 3));
    }
    return f;
}

inline std::size_t keel_term_count(const SymbolicFunctional& f) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m07_keel_count; ++i) k += !f[i].is_zero();
    return k;
}

/// Symbolic F-inequality row; the pairing and the template must agree.
inline SymbolicFunctional symbolic_inequality_row(const FCurve& curve) {
    auto paired = pairing_inequality_row(curve);
    auto templ = template_inequality_row(curve);
    std::size_t want = curve.type() == CurveType{1, 1, 1, 4} ? 4 : curve.type() == CurveType{1, 1, 2, 3} ? 6 : 8;
    if (paired != templ || keel_term_count(paired) != want)
        throw ConsistencyError("F-inequality template mismatch for " + curve.to_string());
    return paired;
}

inline CoordFunctional f_inequality_row(const FCurve& curve, const ParamTriple& params) {
    return evaluate(symbolic_inequality_row(curve), params);
}

/// Coefficient of Delta_J in the obvious representative, as a functional.
inline SymbolicFunctional coefficient_functional_symbolic(const BoundaryLabel& j) {
    if (j.n() != m07_points) throw DomainError("coefficient functionals exist for n = 7 only");
    SymbolicFunctional f(m07_dim);
    for (const auto& t : moduli_data(m07_points).tuples)
        if (set_size(t.set() & j.set()) == 2) f[keel_index(t)].constant = frac(1, 3);
    Rational b2 = j.size() == 2 ? 1 : 0, b3 = j.size() == 3 ? 1 : 0;
    for (int i = 1; i <= 7; ++i) {
        Rational d = d_divisor(m07_points, i).coeff(j);
        f[m07_keel_count + i - 1] = Linear3::of(0, d, b2, b3);
    }
    return f;
}

inline CoordFunctional coefficient_functional(const BoundaryLabel& j, const ParamTriple& params) {
    return evaluate(coefficient_functional_symbolic(j), params);
}

/// Precomputed solver for coordinates in {S_I, P_i} at fixed parameters.
class M07Basis {
public:
    explicit M07Basis(ParamTriple params = ParamTriple::defaults()) : params_(std::move(params)) {
        singular_ = params_.closed_form_singular();
        const auto& md = moduli_data(m07_points);
        gram_ = RatMatrix(md.curves.size(), m07_dim);
        for (std::size_t c = 0; c < md.curves.size(); ++c) {
            auto row = f_inequality_row(md.curves[c], params_);
            for (std::size_t k = 0; k < m07_dim; ++k) gram_(c, k) = row[k];
        }
    }

    const ParamTriple& params() const { return params_; }
    bool singular() const { return singular_; }

    /// Row c is the F-inequality functional of curve c (enumerate_fcurves order).
    const RatMatrix& inequality_matrix() const { return gram_; }
    CoordFunctional inequality_row(std::size_t curve_index) const { return gram_.row_vector(curve_index); }

    M07Coords to_coords(const BoundaryVector& v) const {
        if (singular_) throw DomainError("parameters (" + params_.to_string() + ") do not give a basis");
        if (v.n() != m07_points) throw DomainError("coordinates exist for n = 7 only");
        auto x = mat_solve(gram_, pairing_profile(v));
        if (!x) throw ConsistencyError("class outside the span of a nonsingular basis");
        return M07Coords::from_flat(*x);
    }

    BoundaryVector obvious_representative(const M07Coords& c) const { return fnef::obvious_representative(c, params_); }
    CoordFunctional coefficient_functional(const BoundaryLabel& j) const { return fnef::coefficient_functional(j, params_); }

private:
    ParamTriple params_;
    bool singular_ = false;
    RatMatrix gram_;
};

/// Ansatz D_1 = a G_a + ... + h H, with the seven groups
/// (1,7 in I), (1 in I, 7 not), (1 not, 7 in I), (neither), Delta_17, sum_{j=2..6} Delta_j7, H.
inline const std::array<BoundaryVector, 7>& d1_ansatz_groups() {
    static const std::array<BoundaryVector, 7> groups = [] {
        std::array<BoundaryVector, 7> g;
        for (auto& v : g) v = BoundaryVector(m07_points);
        for (const auto& t : moduli_data(m07_points).tuples) {
            bool one = has_point(t.set(), 1), seven = has_point(t.set(), 7);
            int k = one && seven ? 0 : one ? 1 : seven ? 2 : 3;
            g[k] += keel_divisor(t);
        }
        g[4].add(make_set({1, 7}), 1);
        for (int j = 2; j <= 6; ++j) g[5].add(point_bit(j) | point_bit(7), 1);
        g[6] = hyperplane_class(m07_points);
        return g;
    }();
    return groups;
}

struct AnsatzRow {
    std::array<Rational, 7> coefficients{};
    Rational value;
    friend std::strong_ordering operator<=>(const AnsatzRow& a, const AnsatzRow& b) {
        for (int i = 0; i < 7; ++i)
            if (a.coefficients[i] != b.coefficients[i])
                return a.coefficients[i] < b.coefficients[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a.value != b.value) return a.value < b.value ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const AnsatzRow& a, const AnsatzRow& b) { return (a <=> b) == 0; }
};

inline AnsatzRow ansatz_row(const FCurve& c) {
    AnsatzRow r;
    const auto& g = d1_ansatz_groups();
    for (int k = 0; k < 7; ++k) r.coefficients[k] = intersect_vector(c, g[k]);
    r.value = intersect_vector(c, d_divisor(m07_points, 1));
    return r;
}

/// Distinct equations produced by all 350 F-curves.
inline std::vector<AnsatzRow> ansatz_system() {
    std::vector<AnsatzRow> rows;
    for (const auto& c : moduli_data(m07_points).curves) rows.push_back(ansatz_row(c));
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

/// The unique (a, b, c, d, e, f, h) solving the overdetermined system.
inline std::array<Rational, 7> solve_ansatz() {
    auto rows = ansatz_system();
    RatMatrix m(rows.size(), 7);
    RatVector rhs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int k = 0; k < 7; ++k) m(i, k) = rows[i].coefficients[k];
        rhs[i] = rows[i].value;
    }
    auto x = mat_solve(m, rhs);
    if (!x || mat_rank(m) != 7) throw ConsistencyError("ansatz system is inconsistent or underdetermined");
    std::array<Rational, 7> out;
    for (int k = 0; k < 7; ++k) out[k] = (*x)[k];
    return out;
}

}  // namespace fnef

#endif
