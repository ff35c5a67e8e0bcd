#include "irmlab/exact_scalar.hpp"

#include "irmlab/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace irmlab {

namespace {

// Small primes used to canonicalize log bases. Bases met in practice are
// numerators/denominators of instance probabilities, so they factor fully and
// structurally equal values compare equal without the power-product fallback.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<std::uint32_t> out;
        std::vector<bool> sieve(10000, true);
        for (std::uint32_t p = 2; p < sieve.size(); ++p) {
            if (!sieve[p]) continue;
            out.push_back(p);
            for (std::uint32_t q = p * p; q < sieve.size(); q += p) sieve[q] = false;
        }
        return out;
    }();
    return primes;
}

int sign_of(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

// Cheap double-precision separation with a generous error margin (~1e4 ulps
// per term); returns 0 when the value is too close to zero to call.
int double_sign(const Rational& rat, const std::vector<std::pair<BigInt, Rational>>& logs) {
    double acc = rat.convert_to<double>();
    double magnitude = std::abs(acc);
    for (const auto& [base, coeff] : logs) {
        const double term = coeff.convert_to<double>() * std::log(base.convert_to<double>());
        acc += term;
        magnitude += std::abs(term);
    }
    const double bound = (magnitude + 1.0) * 1e-12 * static_cast<double>(logs.size() + 1);
    if (acc > bound) return 1;
    if (acc < -bound) return -1;
    return 0;
}

template <unsigned Digits10>
int numeric_sign_at(const Rational& rat,
                    const std::vector<std::pair<BigInt, Rational>>& logs) {
    using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits10>>;
    Float acc = Float(rat);
    Float magnitude = abs(acc);
    for (const auto& [base, coeff] : logs) {
        const Float term = Float(coeff) * log(Float(base));
        acc += term;
        magnitude += abs(term);
    }
    // A few ulps per operation, scaled by the largest intermediate magnitude.
    const Float bound = (magnitude + 1) * std::numeric_limits<Float>::epsilon() *
                        Float(64 * (logs.size() + 1));
    if (acc > bound) return 1;
    if (acc < -bound) return -1;
    return 0;
}

} // namespace

ExactScalar ExactScalar::from_rational(Rational q) {
    ExactScalar v;
    v.rat_ = std::move(q);
    return v;
}

ExactScalar ExactScalar::infinity() {
    ExactScalar v;
    v.infinite_ = true;
    return v;
}

void ExactScalar::add_log(const BigInt& base, const Rational& coeff) {
    auto it = std::lower_bound(
        logs_.begin(), logs_.end(), base,
        [](const LogTerm& t, const BigInt& b) { return t.first < b; });
    if (it != logs_.end() && it->first == base) {
        it->second += coeff;
        if (it->second == 0) logs_.erase(it);
    } else {
        logs_.insert(it, {base, coeff});
    }
}

ExactScalar ExactScalar::log_term(const Rational& base, const Rational& coeff) {
    if (base <= 0) throw StructuralError("log of non-positive value");
    ExactScalar v;
    if (coeff == 0 || base == 1) return v;

    // ln(num/den) = ln(num) - ln(den); factor each side by small primes so
    // different groupings of the same value normalize identically.
    const auto absorb = [&v](BigInt n, const Rational& c) {
        for (std::uint32_t p : small_primes()) {
            if (n == 1) break;
            if (BigInt(p) * p > n) break;
            unsigned exp = 0;
            while (n % p == 0) {
                n /= p;
                ++exp;
            }
            if (exp > 0) v.add_log(BigInt(p), c * exp);
        }
        if (n > 1) v.add_log(n, c);
    };
    absorb(numerator(base), coeff);
    absorb(denominator(base), -coeff);
    return v;
}

ExactScalar ExactScalar::neg_log(const Rational& p) {
    if (p == 0) return infinity();
    return log_term(p, Rational(-1));
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
    if (other.infinite_) infinite_ = true;
    if (infinite_) {
        rat_ = 0;
        logs_.clear();
        return *this;
    }
    rat_ += other.rat_;
    for (const auto& [base, coeff] : other.logs_) add_log(base, coeff);
    return *this;
}

ExactScalar ExactScalar::scaled(const Rational& c) const {
    if (c == 0) return ExactScalar();
    if (infinite_) {
        if (c < 0) throw StructuralError("negative scaling of infinite value");
        return infinity();
    }
    ExactScalar v;
    v.rat_ = rat_ * c;
    v.logs_ = logs_;
    for (auto& term : v.logs_) term.second *= c;
    return v;
}

bool ExactScalar::log_part_is_zero() const {
    if (logs_.empty()) return true;
    // sum c_i ln(b_i) == 0  iff  prod b_i^(c_i * N) == 1 for N = lcm of
    // coefficient denominators.
    BigInt n = 1;
    for (const auto& term : logs_) n = lcm(n, denominator(term.second));
    BigInt num = 1, den = 1;
    for (const auto& [base, coeff] : logs_) {
        const BigInt e = numerator(coeff) * (n / denominator(coeff));
        if (abs(e) > 1000000) {
            throw Error("power-product exponent too large for exact zero test");
        }
        if (e > 0) {
            num *= pow(base, e.convert_to<unsigned>());
        } else if (e < 0) {
            den *= pow(base, (-e).convert_to<unsigned>());
        }
    }
    return num == den;
}

int ExactScalar::numeric_sign() const {
    if (int s = numeric_sign_at<50>(rat_, logs_)) return s;
    return 0;
}

int ExactScalar::compare(const ExactScalar& other) const {
    if (infinite_ && other.infinite_) return 0;
    if (infinite_) return 1;
    if (other.infinite_) return -1;
    if (rat_ == other.rat_ && logs_ == other.logs_) return 0;

    ExactScalar diff = *this;
    diff.rat_ -= other.rat_;
    for (const auto& [base, coeff] : other.logs_) diff.add_log(base, -coeff);

    if (diff.logs_.empty()) return sign_of(diff.rat_);
    if (int s = double_sign(diff.rat_, diff.logs_)) return s;
    if (int s = diff.numeric_sign()) return s;
    if (diff.log_part_is_zero()) return sign_of(diff.rat_);
    // The difference is provably nonzero; escalate precision until separated.
    if (int s = numeric_sign_at<120>(diff.rat_, diff.logs_)) return s;
    if (int s = numeric_sign_at<300>(diff.rat_, diff.logs_)) return s;
    if (int s = numeric_sign_at<800>(diff.rat_, diff.logs_)) return s;
    if (int s = numeric_sign_at<2000>(diff.rat_, diff.logs_)) return s;
    throw Error("exact comparison did not separate at 2000 digits");
}

double ExactScalar::to_double() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    double v = irmlab::to_double(rat_);
    for (const auto& [base, coeff] : logs_) {
        v += irmlab::to_double(coeff) * std::log(base.convert_to<double>());
    }
    return v;
}

std::string ExactScalar::to_string() const {
    if (infinite_) return "inf";
    if (logs_.empty()) return format_rational(rat_);
    std::string out;
    if (rat_ != 0) out = format_rational(rat_);
    for (const auto& [base, coeff] : logs_) {
        const bool neg = coeff < 0;
        const Rational mag = neg ? Rational(-coeff) : coeff;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += format_rational(mag) + "*ln(" + base.str() + ")";
    }
    return out;
}

} // namespace irmlab
