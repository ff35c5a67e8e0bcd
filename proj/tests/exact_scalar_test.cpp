#include "irmlab/exact_scalar.hpp"

#include <doctest.h>

using namespace irmlab;

namespace {

ExactScalar rat(const char* s) { return ExactScalar::from_rational(parse_rational(s)); }

} // namespace

TEST_CASE("rational values behave like rationals") {
    CHECK(rat("4/25").to_string() == "4/25");
    CHECK((rat("1/3") + rat("1/6")) == rat("1/2"));
    CHECK(rat("1/3").scaled(parse_rational("3/2")) == rat("1/2"));
    CHECK(rat("-1/2") < rat("0"));
    CHECK(rat("2").compare(rat("2")) == 0);
}

TEST_CASE("log terms normalize across groupings") {
    // -(1/5 ln(1/5) + 4/5 ln(4/5)) built termwise...
    ExactScalar entropy = ExactScalar::neg_log(parse_rational("1/5")).scaled(parse_rational("1/5"));
    entropy += ExactScalar::neg_log(parse_rational("4/5")).scaled(parse_rational("4/5"));
    // ...equals ln(5) - 8/5 ln(2) built directly.
    ExactScalar direct = ExactScalar::log_term(parse_rational("5"), parse_rational("1"));
    direct += ExactScalar::log_term(parse_rational("2"), parse_rational("-8/5"));
    CHECK(entropy == direct);
    CHECK(entropy.to_string() == "-8/5*ln(2) + 1/1*ln(5)");
    CHECK(entropy.to_double() == doctest::Approx(0.5004024235381879).epsilon(1e-14));
}

TEST_CASE("log identities are detected exactly") {
    const ExactScalar two_ln2 = ExactScalar::log_term(parse_rational("2"), parse_rational("2"));
    const ExactScalar ln4 = ExactScalar::log_term(parse_rational("4"), parse_rational("1"));
    CHECK(two_ln2 == ln4);

    ExactScalar ln6 = ExactScalar::log_term(parse_rational("2"), parse_rational("1"));
    ln6 += ExactScalar::log_term(parse_rational("3"), parse_rational("1"));
    CHECK(ln6 == ExactScalar::log_term(parse_rational("6"), parse_rational("1")));

    CHECK(ExactScalar::neg_log(parse_rational("1")) == ExactScalar());
}

TEST_CASE("mixed rational and log comparisons") {
    const ExactScalar ln2 = ExactScalar::log_term(parse_rational("2"), parse_rational("1"));
    CHECK(ln2 < rat("7/10"));
    CHECK(ln2 > rat("69/100"));
    CHECK(rat("17/24") > ln2);

    // ln(2) ~ 0.693147180559945...; a very close rational still separates.
    CHECK(ln2 < rat("693147180560/1000000000000"));
    CHECK(ln2 > rat("693147180559/1000000000000"));
}

TEST_CASE("power-product fallback handles bases beyond the prime sieve") {
    // 10007 and 10009 are primes above the factorization sieve, so the two
    // sides normalize to structurally different log maps that are equal as
    // reals; only the exact power-product test can certify it.
    const ExactScalar joined =
        ExactScalar::log_term(parse_rational("100160063"), parse_rational("1"));
    ExactScalar split = ExactScalar::log_term(parse_rational("10007"), parse_rational("1"));
    split += ExactScalar::log_term(parse_rational("10009"), parse_rational("1"));
    CHECK(joined == split);
    CHECK(joined < split + rat("1/1000000"));
}

TEST_CASE("infinity orders above every finite value") {
    const ExactScalar inf = ExactScalar::infinity();
    CHECK(inf.is_infinite());
    CHECK(inf == ExactScalar::infinity());
    CHECK(rat("1000000") < inf);
    CHECK(ExactScalar::log_term(parse_rational("7"), parse_rational("99")) < inf);
    CHECK((rat("1") + inf).is_infinite());
    CHECK(ExactScalar::neg_log(parse_rational("0")).is_infinite());
    CHECK(inf.to_string() == "inf");
    CHECK(inf.scaled(parse_rational("1/2")).is_infinite());
    CHECK(inf.scaled(parse_rational("0")) == ExactScalar());
}

TEST_CASE("scaling by zero annihilates log terms") {
    const ExactScalar v = ExactScalar::log_term(parse_rational("3"), parse_rational("2/7"));
    CHECK(v.scaled(parse_rational("0")) == ExactScalar());
    CHECK(v.scaled(parse_rational("-1")) == ExactScalar::log_term(parse_rational("3"),
                                                                  parse_rational("-2/7")));
}
