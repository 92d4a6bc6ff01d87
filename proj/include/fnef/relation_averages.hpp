#ifndef FNEF_RELATION_AVERAGES_HPP
#define FNEF_RELATION_AVERAGES_HPP

#include "pairing.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace fnef {

enum class AverageCase { I, II, III, IV };

inline std::string to_string(AverageCase c) {
    switch (c) {
        case AverageCase::I: return "I";
        case AverageCase::II: return "II";
        case AverageCase::III: return "III";
        case AverageCase::IV: return "IV";
    }
    return "?";
}

inline AverageCase parse_average_case(std::string_view s) {
    if (s == "I" || s == "i") return AverageCase::I;
    if (s == "II" || s == "ii") return AverageCase::II;
    if (s == "III" || s == "iii") return AverageCase::III;
    if (s == "IV" || s == "iv") return AverageCase::IV;
    throw std::invalid_argument("unknown average case '" + std::string(s) + "'");
}

struct LabelOrbit {
    BoundaryLabel representative;
    std::vector<BoundaryLabel> members;
    Rational bound;
};

/// A boundary vector equal to -[Delta_123] modulo Keel relations.
struct AverageExpression {
    AverageCase case_id = AverageCase::I;
    PointSet distinguished = 0;
    std::size_t relation_count = 0;
    BoundaryVector vector;
    /// Orbit representative -> lower bound needed on that coefficient when c_123 = -1.
    std::map<BoundaryLabel, Rational> thresholds;
    std::vector<LabelOrbit> orbits;
};

namespace detail {

constexpr int avg_n = 7;
inline const PointSet avg_a = make_set({1, 2, 3});
inline const PointSet avg_x = make_set({4, 5, 6, 7});

inline BoundaryLabel delta123() { return BoundaryLabel(avg_n, avg_a); }

inline BoundaryVector split_sum(int i, int j, int k, int l) {
    return pair_splitting_sum(avg_n, point_bit(i) | point_bit(j), point_bit(k) | point_bit(l));
}

/// Mean of (ab)(xy) - (ax)(by) and (ab)(xy) - (ay)(bx) over a,b in {1,2,3}, x,y in xs.
inline BoundaryVector mean_relations(PointSet xs, std::size_t& count) {
    BoundaryVector sum(avg_n);
    count = 0;
    auto as = elements(avg_a), xe = elements(xs);
    for (std::size_t p = 0; p < as.size(); ++p)
        for (std::size_t q = p + 1; q < as.size(); ++q)
            for (std::size_t r = 0; r < xe.size(); ++r)
                for (std::size_t s = r + 1; s < xe.size(); ++s) {
                    int a = as[p], b = as[q], x = xe[r], y = xe[s];
                    auto lhs = split_sum(a, b, x, y);
                    sum += lhs - split_sum(a, x, b, y);
                    sum += lhs - split_sum(a, y, b, x);
                    count += 2;
                }
    return frac(1, static_cast<long>(count)) * sum;
}

inline std::vector<Permutation> vector_stabilizer(const BoundaryVector& v) {
    std::vector<Permutation> out;
    for (const auto& s : all_permutations(avg_n))
        if (relabel(v, s) == v) out.push_back(s);
    return out;
}

inline void fill_thresholds(AverageExpression& e) {
    auto stab = vector_stabilizer(e.vector);
    std::set<BoundaryLabel> seen;
    for (const auto& d : moduli_data(avg_n).labels) {
        if (d == delta123() || seen.count(d)) continue;
        std::set<BoundaryLabel> orbit;
        for (const auto& s : stab) orbit.insert(relabel(d, s));
        seen.insert(orbit.begin(), orbit.end());
        Rational bound = -e.vector.coeff(d);
        for (const auto& m : orbit)
            if (-e.vector.coeff(m) != bound) throw ConsistencyError("coefficient not constant on orbit");
        bool implied = (d.size() == 2 && bound <= 0) || (d.size() == 3 && bound <= -1);
        if (implied) continue;
        LabelOrbit o{*orbit.begin(), {orbit.begin(), orbit.end()}, bound};
        e.thresholds[o.representative] = bound;
        e.orbits.push_back(std::move(o));
    }
}

inline PointSet default_distinguished(AverageCase c) {
    switch (c) {
        case AverageCase::I: return 0;
        case AverageCase::II: return make_set({1, 4, 5});
        case AverageCase::III: return make_set({4, 5, 6});
        case AverageCase::IV: return make_set({1, 4});
    }
    return 0;
}

}  // namespace detail

/// Case I uses no extra data. Case II takes the label a,x,y to be kept negative,
/// case III a triple x,y,z in {4..7}, case IV the pair a,x whose Delta is avoided.
/// A zero `distinguished` selects 145, 456 and 14 respectively.
inline AverageExpression average_expression(AverageCase c, PointSet distinguished = 0) {
    using namespace detail;
    if (distinguished == 0) distinguished = default_distinguished(c);
    AverageExpression e;
    e.case_id = c;
    e.distinguished = distinguished;
    BoundaryVector mean(avg_n);
    switch (c) {
        case AverageCase::I:
            if (distinguished != 0) throw DomainError("case I takes no distinguished label");
            mean = mean_relations(avg_x, e.relation_count);
            break;
        case AverageCase::II: {
            if (set_size(distinguished) != 3 || set_size(distinguished & avg_a) != 1 || (distinguished & ~(avg_a | avg_x)))
                throw DomainError("case II needs a label {a,x,y} with a in {1,2,3}");
            auto bc = elements(avg_a & ~distinguished);
            auto xy = elements(distinguished & avg_x);
            mean = split_sum(bc[0], bc[1], xy[0], xy[1]) - split_sum(bc[0], xy[0], bc[1], xy[1]);
            e.relation_count = 1;
            break;
        }
        case AverageCase::III:
            if (set_size(distinguished) != 3 || (distinguished & ~avg_x))
                throw DomainError("case III needs a triple inside {4,5,6,7}");
            mean = mean_relations(distinguished, e.relation_count);
            break;
        case AverageCase::IV:
            if (set_size(distinguished) != 2 || set_size(distinguished & avg_a) != 1 || (distinguished & ~(avg_a | avg_x)))
                throw DomainError("case IV needs a pair {a,x} with a in {1,2,3}");
            mean = mean_relations(avg_x & ~distinguished, e.relation_count);
            break;
    }
    if (mean.coeff(delta123()) != 1) throw ConsistencyError("relations do not isolate Delta_123");
    e.vector = mean;
    e.vector.set(delta123(), 0);
    fill_thresholds(e);
    return e;
}

inline bool validate_average(const AverageExpression& e) {
    BoundaryVector v = e.vector;
    v.add(detail::delta123(), 1);
    return is_numerically_trivial(v);
}

/// Replaces c_123 Delta_123 in v by |c_123| times the expression for -Delta_123.
inline BoundaryVector substitute_average(const BoundaryVector& v, const AverageExpression& e) {
    Rational c = v.coeff(detail::delta123());
    BoundaryVector out = v;
    out.set(detail::delta123(), 0);
    out += (-c) * e.vector;
    return out;
}

inline AverageExpression relabel(const AverageExpression& e, const Permutation& sigma) {
    AverageExpression out = e;
    out.vector = relabel(e.vector, sigma);
    out.distinguished = sigma(e.distinguished);
    out.thresholds.clear();
    out.orbits.clear();
    detail::fill_thresholds(out);
    return out;
}

}  // namespace fnef

#endif
