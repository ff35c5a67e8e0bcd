#include "irmlab/errors.hpp"
#include "irmlab/risk.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace irmlab;
using golden::make_classification;
using golden::make_instance;
using golden::vec;

namespace {

const golden::Golden& canonical_reg() { return golden::suite()[0]; }

Predictor constant_half(const Instance& inst) {
    Predictor p;
    p.phi = constant_partition(inst);
    p.head.cell_values = {vec({"1/2"})};
    return p;
}

} // namespace

TEST_CASE("bayes predictor risk on the canonical instance is 4/25 on every domain") {
    const auto& g = canonical_reg();
    const Predictor bayes = bayes_ood_predictor(g.instance, g.loss);
    CHECK(bayes.head.cell_values[0] == vec({"4/5"}));
    CHECK(bayes.head.cell_values[1] == vec({"1/5"}));
    for (const Domain& d : g.training) {
        CHECK(risk(g.instance, d, bayes, g.loss) ==
              ExactScalar::from_rational(parse_rational("4/25")));
    }
}

TEST_CASE("constant-1/2 predictor risk is 1/4") {
    const auto& g = canonical_reg();
    const Predictor p = constant_half(g.instance);
    for (const Domain& d : g.training) {
        CHECK(risk(g.instance, d, p, g.loss) ==
              ExactScalar::from_rational(parse_rational("1/4")));
    }
    CHECK(ood_risk(g.instance, p, g.loss) ==
          ExactScalar::from_rational(parse_rational("1/4")));
}

TEST_CASE("a certain predictor in a deterministic domain has zero cross-entropy") {
    // One x1 with a certain label; the predictor repeats the kernel row.
    const Instance inst = make_classification(1, 2, 2, 1, {{"1", "0"}});
    const Predictor p = bayes_ood_predictor(inst, LossKind::cross_entropy);
    const Domain d = golden::uniform_x2_domain(inst, {"1"});
    CHECK(risk(inst, d, p, LossKind::cross_entropy) == ExactScalar());
    CHECK(ood_risk(inst, p, LossKind::cross_entropy) == ExactScalar());
}

TEST_CASE("zero head probability on a reachable label gives infinite risk") {
    const Instance inst = make_classification(2, 2, 2, 2,
                                              {{"1/5", "4/5"}, {"4/5", "1/5"}});
    Predictor p;
    p.phi = constant_partition(inst);
    p.head.cell_values = {vec({"1", "0"})};
    const Domain d = golden::uniform_x2_domain(inst, {"1/2", "1/2"});
    CHECK(risk(inst, d, p, LossKind::cross_entropy).is_infinite());
    CHECK(ood_risk(inst, p, LossKind::cross_entropy).is_infinite());
    CHECK(std::isinf(risk_float(inst, d, p, LossKind::cross_entropy)));
    CHECK(std::isinf(ood_risk_float(inst, p, LossKind::cross_entropy)));
    // The worst-case domain still attains the (infinite) value.
    const Domain worst = worst_case_domain(inst, p, LossKind::cross_entropy);
    CHECK(risk(inst, worst, p, LossKind::cross_entropy).is_infinite());
}

TEST_CASE("loss and task must match") {
    const auto& g = canonical_reg();
    const Predictor p = bayes_ood_predictor(g.instance, g.loss);
    CHECK_THROWS_AS(risk(g.instance, g.training[0], p, LossKind::cross_entropy),
                    StructuralError);
    Predictor bad = p;
    bad.head.cell_values.pop_back();
    CHECK_THROWS_AS(risk(g.instance, g.training[0], bad, g.loss), StructuralError);
}

TEST_CASE("o.o.d. risk of the canonical bayes predictor is 4/25") {
    const auto& g = canonical_reg();
    const Predictor bayes = bayes_ood_predictor(g.instance, g.loss);
    CHECK(ood_risk(g.instance, bayes, g.loss) ==
          ExactScalar::from_rational(parse_rational("4/25")));
    CHECK(ood_risk_float(g.instance, bayes, g.loss) == doctest::Approx(0.16).epsilon(1e-14));
}

TEST_CASE("classification bayes o.o.d. risk equals the max row entropy") {
    const Instance inst = make_classification(2, 2, 2, 2,
                                              {{"1/5", "4/5"}, {"4/5", "1/5"}});
    const Predictor bayes = bayes_ood_predictor(inst, LossKind::cross_entropy);
    CHECK(bayes.head.cell_values[0] == inst.kernel.table[0]);
    CHECK(bayes.head.cell_values[1] == inst.kernel.table[1]);

    ExactScalar entropy;
    for (const auto& p : inst.kernel.table[0]) {
        entropy += ExactScalar::neg_log(p).scaled(p);
    }
    CHECK(ood_risk(inst, bayes, LossKind::cross_entropy) == entropy);
    CHECK(ood_risk_float(inst, bayes, LossKind::cross_entropy) ==
          doctest::Approx(0.5004024235381879).epsilon(1e-13));
}

TEST_CASE("bayes head for a certain label is the label itself") {
    const Instance inst = make_instance(TaskKind::regression, 1, 2, {{"0"}, {"1"}}, 1,
                                        {{"1", "0"}});
    const Predictor bayes = bayes_ood_predictor(inst, LossKind::least_square);
    CHECK(bayes.head.cell_values[0] == vec({"0"}));
}

TEST_CASE("worst-case domain breaks ties toward the lowest index") {
    const auto& g = canonical_reg();
    const Predictor bayes = bayes_ood_predictor(g.instance, g.loss);
    // Both x1 contribute the same worst value 4/25, so the marginal must be a
    // point mass at index 0; the head is constant in x2, so every inner
    // argmax resolves to x2 = 0.
    const Domain worst = worst_case_domain(g.instance, bayes, g.loss);
    CHECK(worst.x1_marginal == vec({"1", "0"}));
    for (std::size_t i1 = 0; i1 < 2; ++i1) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(worst.x2_given_x1y[i1][j] == vec({"1", "0"}));
        }
    }
    CHECK(validate_domain(g.instance, worst).empty());
}

TEST_CASE("attainment and domination over random predictors and domains") {
    CounterRng rng(21, 0);
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 6) continue;
        for (int i = 0; i < 40; ++i) {
            const Predictor p = oracle::random_predictor(g.instance, g.loss, rng);
            const ExactScalar bound = ood_risk(g.instance, p, g.loss);
            const Domain random = oracle::random_domain(g.instance, rng);
            CHECK(risk(g.instance, random, p, g.loss) <= bound);
            const Domain worst = worst_case_domain(g.instance, p, g.loss);
            CHECK(validate_domain(g.instance, worst).empty());
            CHECK(risk(g.instance, worst, p, g.loss) == bound);
        }
    }
}

TEST_CASE("closed-form o.o.d. risk matches the enumeration oracle") {
    CounterRng rng(22, 0);
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 6) continue;
        for (int i = 0; i < 10; ++i) {
            const Predictor p = oracle::random_predictor(g.instance, g.loss, rng);
            CHECK(ood_risk(g.instance, p, g.loss) ==
                  oracle::ood_by_enumeration(g.instance, p, g.loss));
        }
    }
}

TEST_CASE("risk is affine in the x1 marginal") {
    const auto& g = canonical_reg();
    CounterRng rng(23, 0);
    for (int i = 0; i < 30; ++i) {
        Domain a = oracle::random_domain(g.instance, rng);
        Domain b = a;   // shared X2 kernels
        b.x1_marginal = rng.simplex(g.instance.x1_size(), 16);
        const Rational alpha = rng.rational_in(0, 1, 16);

        Domain mix = a;
        for (std::size_t i1 = 0; i1 < g.instance.x1_size(); ++i1) {
            mix.x1_marginal[i1] =
                alpha * a.x1_marginal[i1] + (1 - alpha) * b.x1_marginal[i1];
        }
        const Predictor p = oracle::random_predictor(g.instance, g.loss, rng);
        const ExactScalar blended = risk(g.instance, a, p, g.loss).scaled(alpha) +
                                    risk(g.instance, b, p, g.loss).scaled(1 - alpha);
        CHECK(risk(g.instance, mix, p, g.loss) == blended);
    }
}

TEST_CASE("float risk tracks the exact value") {
    CounterRng rng(24, 0);
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 6) continue;
        const Predictor p = oracle::random_predictor(g.instance, g.loss, rng);
        const Domain d = oracle::random_domain(g.instance, rng);
        const ExactScalar exact = risk(g.instance, d, p, g.loss);
        const double approx = risk_float(g.instance, d, p, g.loss);
        if (exact.is_infinite()) {
            CHECK(std::isinf(approx));
        } else {
            CHECK(approx == doctest::Approx(exact.to_double()).epsilon(1e-11));
        }
    }
}
