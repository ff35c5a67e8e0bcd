#pragma once

#include "irmlab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace irmlab {

/// Exact risk value: a rational plus a Q-linear combination of natural logs of
/// integers > 1, or a distinguished +infinity that orders above every finite
/// value. Least-square risks stay purely rational; cross-entropy risks carry
/// log terms. The type is closed under addition and non-negative rational
/// scaling, which is all risk evaluation needs.
///
/// Comparison is a genuine decision procedure: the log part of a difference is
/// zero iff an integer-exponent power product of the bases equals 1 (unique
/// factorization), a mixed rational+log expression cannot vanish unless both
/// parts do, and any remaining nonzero difference is separated by evaluating
/// at escalating precision.
class ExactScalar {
public:
    ExactScalar() = default;

    static ExactScalar from_rational(Rational q);
    static ExactScalar infinity();
    /// coeff * ln(base); base must be > 0.
    static ExactScalar log_term(const Rational& base, const Rational& coeff);
    /// -ln(p) for p > 0; p == 0 yields +infinity.
    static ExactScalar neg_log(const Rational& p);

    bool is_infinite() const { return infinite_; }
    bool is_rational() const { return !infinite_ && logs_.empty(); }
    const Rational& rational_part() const { return rat_; }

    ExactScalar& operator+=(const ExactScalar& other);
    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) {
        a += b;
        return a;
    }

    /// c * value. Scaling +infinity requires c > 0; c == 0 gives exact zero.
    ExactScalar scaled(const Rational& c) const;

    /// Exact three-way comparison: -1, 0, +1.
    int compare(const ExactScalar& other) const;

    bool operator==(const ExactScalar& o) const { return compare(o) == 0; }
    bool operator!=(const ExactScalar& o) const { return compare(o) != 0; }
    bool operator<(const ExactScalar& o) const { return compare(o) < 0; }
    bool operator<=(const ExactScalar& o) const { return compare(o) <= 0; }
    bool operator>(const ExactScalar& o) const { return compare(o) > 0; }
    bool operator>=(const ExactScalar& o) const { return compare(o) >= 0; }

    double to_double() const;

    /// Canonical rendering: "num/den" when purely rational, "inf" when
    /// infinite, otherwise terms like "-8/5*ln(2) + 1/1*ln(5)" sorted by base.
    std::string to_string() const;

private:
    // Terms coeff * ln(base), base an integer > 1, coeff != 0, sorted by base.
    using LogTerm = std::pair<BigInt, Rational>;

    bool infinite_ = false;
    Rational rat_ = 0;
    std::vector<LogTerm> logs_;

    void add_log(const BigInt& base, const Rational& coeff);
    bool log_part_is_zero() const;
    int numeric_sign() const;
};

} // namespace irmlab
