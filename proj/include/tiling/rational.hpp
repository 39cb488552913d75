#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tiling {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::rational<Int>;

inline Rational rat(long long p, long long q = 1) { return Rational(Int(p), Int(q)); }

inline Int rat_floor(const Rational& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
    return q;
}

inline Int rat_ceil(const Rational& r) {
    Int q = r.numerator() / r.denominator();
    if (r.numerator() > 0 && q * r.denominator() != r.numerator()) ++q;
    return q;
}

inline long long to_ll(const Int& x) { return static_cast<long long>(x); }

inline std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

// Accepts "p", "p/q" and plain decimal integers with optional sign.
inline std::optional<Rational> parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) return std::nullopt;
        return Rational(p, q);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace tiling
