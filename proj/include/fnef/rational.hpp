#ifndef FNEF_RATIONAL_HPP
#define FNEF_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fnef {

/// Exact rational scalar. Values are always kept in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

/// A value or argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A cross-check that must hold by construction has failed.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Parses "7", "-26/7", "+3/9". Throws std::invalid_argument on malformed text
/// and DomainError on a zero denominator.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t pos = 0;
    if (s[0] == '+') s.erase(0, 1);
    if (!s.empty() && s[0] == '-') pos = 1;
    bool seen_digit = false;
    bool seen_slash = false;
    bool digit_after_slash = false;
    for (std::size_t i = pos; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
            if (seen_slash) digit_after_slash = true;
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    Rational q;
    if (seen_slash) {
        auto slash = s.find('/');
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        q = Rational(num, den);
        q.canonicalize();
    } else {
        q = Rational(Integer(s));
    }
    return q;
}

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational frac(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace fnef

#endif
