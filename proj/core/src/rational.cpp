#include "irmlab/rational.hpp"

#include "irmlab/errors.hpp"

#include <cctype>
#include <cstdio>

namespace irmlab {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw StructuralError("bad rational '" + text + "'");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw StructuralError("bad rational '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) throw StructuralError("zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
}

std::string format_rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_decimal(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double to_double(const Rational& q) {
    return q.convert_to<double>();
}

Rational vec_sum(const RationalVec& v) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

bool is_probability_vector(const RationalVec& v) {
    for (const auto& x : v) {
        if (x < 0) return false;
    }
    return vec_sum(v) == 1;
}

Rational squared_distance(const RationalVec& a, const RationalVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace irmlab
