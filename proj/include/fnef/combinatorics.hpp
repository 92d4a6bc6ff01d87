#ifndef FNEF_COMBINATORICS_HPP
#define FNEF_COMBINATORICS_HPP

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fnef {

/// Subset of {1..n}; point p is bit p-1.
using PointSet = std::uint64_t;

constexpr int max_points = 63;

constexpr PointSet point_bit(int p) { return PointSet{1} << (p - 1); }
constexpr PointSet full_set(int n) { return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }
inline int set_size(PointSet s) { return std::popcount(s); }
inline int min_point(PointSet s) { return std::countr_zero(s) + 1; }
constexpr bool has_point(PointSet s, int p) { return (s & point_bit(p)) != 0; }

inline PointSet make_set(std::initializer_list<int> points) {
    PointSet s = 0;
    for (int p : points) s |= point_bit(p);
    return s;
}

inline std::vector<int> elements(PointSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

inline std::string format_set(PointSet s, const char* sep = ",") {
    std::string out;
    for (int p : elements(s)) {
        if (!out.empty()) out += sep;
        out += std::to_string(p);
    }
    return out;
}

/// Lexicographic comparison of the sorted element lists (a proper prefix is smaller).
inline std::strong_ordering set_lex_compare(PointSet a, PointSet b) {
    while (a && b) {
        PointSet la = a & (~a + 1), lb = b & (~b + 1);
        if (la != lb) return la < lb ? std::strong_ordering::less : std::strong_ordering::greater;
        a ^= la;
        b ^= lb;
    }
    if (!a && !b) return std::strong_ordering::equal;
    return a ? std::strong_ordering::greater : std::strong_ordering::less;
}

/// Size first, then lexicographic.
inline std::strong_ordering set_order(PointSet a, PointSet b) {
    if (auto c = set_size(a) <=> set_size(b); c != 0) return c;
    return set_lex_compare(a, b);
}

inline void check_n(int n) {
    if (n < 4 || n > max_points) throw DomainError("number of points must lie in [4, 63], got " + std::to_string(n));
}

inline void check_within(int n, PointSet s) {
    if (s & ~full_set(n)) throw DomainError("point outside 1.." + std::to_string(n));
}

/// Boundary divisor label, stored on its canonical side: |J| <= n/2 and,
/// when |J| = n/2, 1 in J.
class BoundaryLabel {
public:
    BoundaryLabel() = default;
    BoundaryLabel(int n, PointSet j) : n_(n) {
        check_n(n);
        check_within(n, j);
        int k = set_size(j);
        if (k < 2 || k > n - 2) throw DomainError("boundary label needs 2 <= |J| <= n-2: {" + format_set(j) + "}");
        PointSet c = full_set(n) ^ j;
        if (2 * k > n || (2 * k == n && !has_point(j, 1))) j = c;
        set_ = j;
    }
    static BoundaryLabel of(int n, std::initializer_list<int> points) { return {n, make_set(points)}; }

    int n() const { return n_; }
    PointSet set() const { return set_; }
    PointSet complement() const { return full_set(n_) ^ set_; }
    int size() const { return set_size(set_); }
    std::string to_string() const { return "D{" + format_set(set_) + "}"; }
    /// Functional notation used by certificates: c{1,2,3}.
    std::string functional_name() const { return "c{" + format_set(set_) + "}"; }

    friend bool operator==(const BoundaryLabel& a, const BoundaryLabel& b) { return a.n_ == b.n_ && a.set_ == b.set_; }
    friend std::strong_ordering operator<=>(const BoundaryLabel& a, const BoundaryLabel& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return set_order(a.set_, b.set_);
    }

private:
    int n_ = 0;
    PointSet set_ = 0;
};

/// Four-element subset I = {i<j<k<l}.
class FourTuple {
public:
    FourTuple() = default;
    FourTuple(int n, PointSet s) : n_(n), set_(s) {
        check_n(n);
        check_within(n, s);
        if (set_size(s) != 4) throw DomainError("four-tuple needs exactly 4 points: {" + format_set(s) + "}");
    }
    static FourTuple of(int n, std::initializer_list<int> points) { return {n, make_set(points)}; }

    int n() const { return n_; }
    PointSet set() const { return set_; }
    std::array<int, 4> points() const {
        auto e = elements(set_);
        return {e[0], e[1], e[2], e[3]};
    }
    std::string to_string() const { return "S{" + format_set(set_) + "}"; }

    friend bool operator==(const FourTuple& a, const FourTuple& b) { return a.n_ == b.n_ && a.set_ == b.set_; }
    friend std::strong_ordering operator<=>(const FourTuple& a, const FourTuple& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return set_lex_compare(a.set_, b.set_);
    }

private:
    int n_ = 0;
    PointSet set_ = 0;
};

/// Type of an F-curve: the four part sizes in non-decreasing order.
using CurveType = std::array<int, 4>;

inline std::string format_type(const CurveType& t) {
    return std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" + std::to_string(t[2]) + ":" + std::to_string(t[3]);
}

/// F-curve: unordered partition of {1..n} into four non-empty parts,
/// stored sorted by minimum element.
class FCurve {
public:
    FCurve() = default;
    FCurve(int n, std::array<PointSet, 4> parts) : n_(n) {
        check_n(n);
        PointSet seen = 0;
        for (PointSet p : parts) {
            if (p == 0) throw DomainError("F-curve part is empty");
            check_within(n, p);
            if (seen & p) throw DomainError("F-curve parts overlap");
            seen |= p;
        }
        if (seen != full_set(n)) throw DomainError("F-curve parts do not cover 1.." + std::to_string(n));
        std::sort(parts.begin(), parts.end(), [](PointSet a, PointSet b) { return min_point(a) < min_point(b); });
        parts_ = parts;
    }

    int n() const { return n_; }
    const std::array<PointSet, 4>& parts() const { return parts_; }
    CurveType type() const {
        CurveType t{};
        for (int i = 0; i < 4; ++i) t[i] = set_size(parts_[i]);
        std::sort(t.begin(), t.end());
        return t;
    }
    std::string to_string() const {
        std::string out = "C(";
        for (int i = 0; i < 4; ++i) {
            if (i) out += "|";
            out += format_set(parts_[i]);
        }
        return out + ")";
    }

    friend bool operator==(const FCurve& a, const FCurve& b) { return a.n_ == b.n_ && a.parts_ == b.parts_; }
    friend std::strong_ordering operator<=>(const FCurve& a, const FCurve& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        for (int i = 0; i < 4; ++i)
            if (auto c = set_lex_compare(a.parts_[i], b.parts_[i]); c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    int n_ = 0;
    std::array<PointSet, 4> parts_{};
};

/// Permutation of {1..n}.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : image_(std::move(images)) {
        int n = static_cast<int>(image_.size());
        std::vector<bool> hit(n + 1, false);
        for (int v : image_) {
            if (v < 1 || v > n || hit[v]) throw DomainError("not a permutation");
            hit[v] = true;
        }
    }
    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }
    static Permutation transposition(int n, int a, int b) {
        auto p = identity(n);
        std::swap(p.image_[a - 1], p.image_[b - 1]);
        return p;
    }

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int p) const { return image_[p - 1]; }
    PointSet operator()(PointSet s) const {
        PointSet out = 0;
        for (int p : elements(s)) out |= point_bit(image_[p - 1]);
        return out;
    }
    /// (a * b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        std::vector<int> v(b.image_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.image_[b.image_[i] - 1];
        return Permutation(std::move(v));
    }
    Permutation inverse() const {
        std::vector<int> v(image_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[image_[i] - 1] = static_cast<int>(i) + 1;
        return Permutation(std::move(v));
    }
    const std::vector<int>& images() const { return image_; }
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

inline void check_perm(int n, const Permutation& sigma) {
    if (sigma.n() != n) throw DomainError("permutation degree does not match n");
}

inline BoundaryLabel relabel(const BoundaryLabel& d, const Permutation& sigma) {
    check_perm(d.n(), sigma);
    return {d.n(), sigma(d.set())};
}

inline FourTuple relabel(const FourTuple& t, const Permutation& sigma) {
    check_perm(t.n(), sigma);
    return {t.n(), sigma(t.set())};
}

inline FCurve relabel(const FCurve& c, const Permutation& sigma) {
    check_perm(c.n(), sigma);
    std::array<PointSet, 4> parts{};
    for (int i = 0; i < 4; ++i) parts[i] = sigma(c.parts()[i]);
    return {c.n(), parts};
}

/// All permutations of {1..n} in lexicographic order of image words.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Subsets of {1..n} of size k in lexicographic order.
inline std::vector<PointSet> k_subsets(int n, int k) {
    std::vector<PointSet> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        PointSet s = 0;
        for (int p : idx) s |= point_bit(p);
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline std::vector<BoundaryLabel> enumerate_boundary(int n) {
    check_n(n);
    std::vector<BoundaryLabel> out;
    for (int k = 2; 2 * k <= n; ++k)
        for (PointSet s : k_subsets(n, k))
            if (2 * k < n || has_point(s, 1)) out.emplace_back(n, s);
    return out;
}

inline std::vector<FourTuple> enumerate_four_tuples(int n) {
    check_n(n);
    std::vector<FourTuple> out;
    for (PointSet s : k_subsets(n, 4)) out.emplace_back(n, s);
    return out;
}

/// All partitions into four blocks, via restricted growth strings.
inline std::vector<FCurve> enumerate_fcurves(int n) {
    check_n(n);
    std::vector<FCurve> out;
    std::vector<int> block(n, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (n - i < 4 - used) return;
        if (i == n) {
            std::array<PointSet, 4> parts{};
            for (int p = 0; p < n; ++p) parts[block[p]] |= point_bit(p + 1);
            out.emplace_back(n, parts);
            return;
        }
        for (int b = 0; b < std::min(used + 1, 4); ++b) {
            block[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<CurveType> curve_types(int n) {
    check_n(n);
    std::vector<CurveType> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a; a + b <= n; ++b)
            for (int c = b; a + b + c <= n; ++c) {
                int d = n - a - b - c;
                if (d >= c) out.push_back({a, b, c, d});
            }
    return out;
}

/// Cached enumerations and index lookups for a fixed n.
struct ModuliData {
    int n;
    std::vector<BoundaryLabel> labels;
    std::vector<FCurve> curves;
    std::vector<FourTuple> tuples;
    std::unordered_map<PointSet, std::size_t> label_index;
    std::unordered_map<PointSet, std::size_t> tuple_index;

    std::size_t index_of(const BoundaryLabel& d) const { return label_index.at(d.set()); }
    std::size_t index_of(const FourTuple& t) const { return tuple_index.at(t.set()); }
};

inline const ModuliData& moduli_data(int n) {
    check_n(n);
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ModuliData>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto d = std::make_unique<ModuliData>();
        d->n = n;
        d->labels = enumerate_boundary(n);
        d->curves = enumerate_fcurves(n);
        d->tuples = enumerate_four_tuples(n);
        for (std::size_t i = 0; i < d->labels.size(); ++i) d->label_index[d->labels[i].set()] = i;
        for (std::size_t i = 0; i < d->tuples.size(); ++i) d->tuple_index[d->tuples[i].set()] = i;
        slot = std::move(d);
    }
    return *slot;
}

/// Parses a comma separated point list such as "1,2,3" (surrounding braces allowed).
inline PointSet parse_point_list(std::string_view text) {
    std::string s(text);
    if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
    PointSet out = 0;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string tok = s.substr(i, j - i);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 2)
            throw std::invalid_argument("malformed point list '" + std::string(text) + "'");
        int p = std::stoi(tok);
        if (p < 1 || p > max_points) throw DomainError("point " + tok + " out of range");
        if (out & point_bit(p)) throw DomainError("point " + tok + " repeated");
        out |= point_bit(p);
        i = j + 1;
    }
    return out;
}

/// Accepts "D{1,2}", "c{1,2}", "{1,2}" or "1,2".
inline BoundaryLabel parse_boundary_label(std::string_view text, int n) {
    if (!text.empty() && (text.front() == 'D' || text.front() == 'c')) text.remove_prefix(1);
    return {n, parse_point_list(text)};
}

/// Accepts "C(1|2|3,4|5,6,7)" or "1|2|3,4|5,6,7".
inline FCurve parse_fcurve(std::string_view text, int n) {
    std::string s(text);
    if (s.rfind("C(", 0) == 0 && s.back() == ')') s = s.substr(2, s.size() - 3);
    std::array<PointSet, 4> parts{};
    int count = 0;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find('|', i);
        if (j == std::string::npos) j = s.size();
        if (count == 4) throw std::invalid_argument("F-curve needs exactly four parts: '" + std::string(text) + "'");
        parts[count++] = parse_point_list(s.substr(i, j - i));
        i = j + 1;
    }
    if (count != 4) throw std::invalid_argument("F-curve needs exactly four parts: '" + std::string(text) + "'");
    return {n, parts};
}

}  // namespace fnef

#endif
