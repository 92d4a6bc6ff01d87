#ifndef FNEF_KEEL_CERTIFICATES_HPP
#define FNEF_KEEL_CERTIFICATES_HPP

#include "pairing.hpp"

#include <tuple>
#include <string>
#include <vector>

namespace fnef {

/// How two parts A, B of an F-curve unite J while C, D cover the complement.
/// Sizes satisfy a <= b and c <= d.
struct Split {
    int a = 0, b = 0, c = 0, d = 0;
    friend bool operator==(const Split&, const Split&) = default;
    std::string to_string() const {
        return std::to_string(a) + "+" + std::to_string(b) + "|" + std::to_string(c) + "+" + std::to_string(d);
    }
};

inline std::vector<Split> valid_splits(const BoundaryLabel& j, const CurveType& t) {
    std::vector<Split> out;
    int k = j.size(), rest = j.n() - k;
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) {
            if (t[x] + t[y] != k) continue;
            int z[2], m = 0;
            for (int w = 0; w < 4; ++w)
                if (w != x && w != y) z[m++] = t[w];
            if (z[0] + z[1] != rest) continue;
            Split s{std::min(t[x], t[y]), std::max(t[x], t[y]), std::min(z[0], z[1]), std::max(z[0], z[1])};
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    return out;
}

inline void check_split(const BoundaryLabel& j, const CurveType& t, const Split& s) {
    auto v = valid_splits(j, t);
    if (std::find(v.begin(), v.end(), s) == v.end())
        throw DomainError("split " + s.to_string() + " is not compatible with " + j.to_string() + " and type " + format_type(t));
}

/// F-curves of type t in which two parts of sizes (a, b) unite J.
inline std::vector<FCurve> f_collection(const BoundaryLabel& j, const CurveType& t, const Split& s) {
    check_split(j, t, s);
    std::vector<FCurve> out;
    for (const auto& c : moduli_data(j.n()).curves) {
        if (c.type() != t) continue;
        const auto& p = c.parts();
        bool hit = false;
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
                if ((p[x] | p[y]) != j.set()) continue;
                int sx = set_size(p[x]), sy = set_size(p[y]);
                if (std::min(sx, sy) == s.a && std::max(sx, sy) == s.b) hit = true;
            }
        if (hit) out.push_back(c);
    }
    return out;
}

/// Union over all splits; empty when none exists.
inline std::vector<FCurve> f_collection(const BoundaryLabel& j, const CurveType& t) {
    std::vector<FCurve> out;
    for (const auto& s : valid_splits(j, t)) {
        auto part = f_collection(j, t, s);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// m_t = 3 m' where m' counts how many curves of the collection meet a fixed
/// four-tuple with |I cap J| = 2 in one point per part.
inline Rational keel_multiplicity(const BoundaryLabel& j, const CurveType& t, const Split& s) {
    check_split(j, t, s);
    int k = j.size(), n = j.n();
    Integer m = (s.a == s.b ? 1 : 2) * (s.c == s.d ? 1 : 2);
    m *= binomial(k - 2, s.a - 1) * binomial(n - k - 2, s.c - 1);
    return Rational(3 * m);
}

struct KeelCoefficientReport {
    BoundaryLabel label;
    CurveType type{};
    Split split;
    std::vector<FCurve> curves;
    Rational multiplicity;
    /// Coefficient of each s_I in the summed pairings over the collection; zeros omitted.
    std::map<FourTuple, Rational> combination;
    bool passed = false;
};

/// Verifies over indeterminate s_I that sum_{C in F} <sum s_I S_I, C> = m_t c_J(s).
inline KeelCoefficientReport prove_keel_coefficient(const BoundaryLabel& j, const CurveType& t, const Split& s) {
    const auto& md = moduli_data(j.n());
    KeelCoefficientReport r;
    r.label = j;
    r.type = t;
    r.split = s;
    r.curves = f_collection(j, t, s);
    r.multiplicity = keel_multiplicity(j, t, s);
    for (const auto& c : r.curves)
        for (const auto& tup : md.tuples) {
            Rational k = keel_intersections(tup, c);
            if (sgn(k) != 0) r.combination[tup] += k;
        }
    // Right side m_t c_J(s) as a functional in s: coefficient m_t/3 on each I with |I cap J| = 2.
    bool ok = !r.curves.empty();
    for (const auto& tup : md.tuples) {
        std::map<FourTuple, Rational> unit{{tup, Rational(1)}};
        Rational want = r.multiplicity * keel_coefficient(j, unit);
        auto it = r.combination.find(tup);
        Rational got = it == r.combination.end() ? Rational(0) : it->second;
        if (got != want) ok = false;
    }
    if (!ok) throw ConsistencyError("Keel coefficient identity failed for " + j.to_string() + " type " + format_type(t));
    r.passed = true;
    return r;
}

/// Every (J, t, split) triple for n, in label then type order.
inline std::vector<std::tuple<BoundaryLabel, CurveType, Split>> keel_certificate_cases(int n) {
    std::vector<std::tuple<BoundaryLabel, CurveType, Split>> out;
    for (const auto& j : moduli_data(n).labels)
        for (const auto& t : curve_types(n))
            for (const auto& s : valid_splits(j, t)) out.emplace_back(j, t, s);
    return out;
}

}  // namespace fnef

#endif
