#include "irmlab/errors.hpp"
#include "irmlab/io.hpp"
#include "irmlab/verify.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace irmlab;
using golden::make_classification;
using golden::make_instance;

namespace {

const golden::Golden& canonical_reg() { return golden::suite()[0]; }

} // namespace

TEST_CASE("conditions hold on the canonical instance") {
    const auto& g = canonical_reg();
    const ConditionReport report =
        check_conditions(g.instance, g.training, g.instance.task);
    CHECK(report.cond_i.status == ConditionStatus::holds);
    CHECK(report.cond_ii.status == ConditionStatus::holds);
    CHECK(report.cond_iii.status == ConditionStatus::holds);
    CHECK(report.cond_iv.status == ConditionStatus::vacuous);
    CHECK(report.cond_v.status == ConditionStatus::vacuous);
    CHECK(report.all_applicable_hold());
}

TEST_CASE("marginal-matched training domains break condition (i)") {
    const auto& g = canonical_reg();
    const std::vector<Domain> matched = {g.training[0], g.training[1]};
    const ConditionReport report =
        check_conditions(g.instance, matched, g.instance.task);
    CHECK(report.cond_i.status == ConditionStatus::fails);
    // The constant map is the offending member of the training-side set.
    CHECK(report.cond_i.evidence.find("[0,0,0,0]") != std::string::npos);
    CHECK(report.cond_ii.status == ConditionStatus::holds);
}

TEST_CASE("a support gap breaks condition (ii) and the inclusion") {
    const auto& g = canonical_reg();
    std::vector<Domain> gapped = {g.training[0], g.training[1]};
    for (auto& d : gapped) d.x1_marginal = golden::vec({"1", "0"});
    const ConditionReport report =
        check_conditions(g.instance, gapped, g.instance.task);
    CHECK(report.cond_ii.status == ConditionStatus::fails);
    CHECK(report.cond_ii.evidence.find("x1 point 1") != std::string::npos);

    const TheoremVerdict verdict = verify_theorem(g.instance, gapped, g.loss);
    CHECK_FALSE(verdict.inclusion_holds);
    REQUIRE(verdict.offending_minimizer.has_value());
    CHECK(verdict.offending_minimizer->second > verdict.min_ood_risk);
    CHECK(verdict.min_ood_risk == ExactScalar::from_rational(parse_rational("4/25")));
}

TEST_CASE("condition (iii) fails when the feature budget is too small") {
    auto inst = canonical_reg().instance;
    inst.h_size = 1;
    const ConditionReport report =
        check_conditions(inst, canonical_reg().training, inst.task);
    CHECK(report.cond_iii.status == ConditionStatus::fails);
}

TEST_CASE("condition (v) fails on a deterministic kernel row") {
    const Instance inst = make_classification(2, 2, 2, 2, {{"1", "0"}, {"1/2", "1/2"}});
    const std::vector<Domain> training = {
        golden::copy_domain(inst, {"1/2", "1/2"}),
        golden::uniform_x2_domain(inst, {"3/4", "1/4"}),
    };
    const ConditionReport report = check_conditions(inst, training, inst.task);
    CHECK(report.cond_v.status == ConditionStatus::fails);
    CHECK(report.cond_v.evidence.find("row 0") != std::string::npos);
}

TEST_CASE("capacity overflow caps condition (i) but reports the rest") {
    const Instance inst = make_instance(TaskKind::regression, 3, 4, {{"0"}, {"1"}}, 3,
                                        {{"1/2", "1/2"}, {"1/4", "3/4"}, {"3/4", "1/4"}});
    const std::vector<Domain> training = {
        golden::uniform_x2_domain(inst, {"1/3", "1/3", "1/3"}),
        golden::copy_domain(inst, {"1/2", "1/4", "1/4"}),
    };
    const ConditionReport report = check_conditions(inst, training, inst.task);
    CHECK(report.cond_i.status == ConditionStatus::capped);
    CHECK(report.cond_ii.status == ConditionStatus::holds);
    CHECK(report.cond_iii.status == ConditionStatus::holds);
    CHECK_FALSE(report.all_applicable_hold());

    CHECK_THROWS_AS(verify_theorem(inst, training, LossKind::least_square), CapacityError);
    CHECK_NOTHROW(verify_theorem(inst, training, LossKind::least_square, /*cap=*/12));
}

TEST_CASE("theorem consistency: conditions imply the inclusion on every golden") {
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 8) continue;
        const TheoremVerdict verdict = verify_theorem(g.instance, g.training, g.loss);
        if (verdict.conditions.all_applicable_hold()) {
            CHECK(verdict.inclusion_holds);
        }
        // The Bayes value is a lower bound for every minimizer regardless.
        for (const auto& m : verdict.irm_solution.minimizers) {
            CHECK(ood_risk(g.instance, m, g.loss) >= verdict.min_ood_risk);
        }
    }
}

TEST_CASE("min_ood_risk matches the grid brute force where the grid can express it") {
    for (const auto& g : golden::suite()) {
        // Equality needs the bayes head on the grid; off-grid kernels keep
        // the sound >= direction only.
        if (g.instance.x_size() > (g.grid8 ? 6 : 4)) continue;
        const TheoremVerdict verdict = verify_theorem(g.instance, g.training, g.loss);
        const ExactScalar grid_min = oracle::grid_min_ood(g.instance, g.loss);
        CHECK(grid_min >= verdict.min_ood_risk);
        if (g.grid8) CHECK(grid_min == verdict.min_ood_risk);
    }
}

TEST_CASE("mining zero trials yields nothing") {
    CHECK(mine_counterexamples(7, 0, BreakTarget::cond_ii).empty());
}

TEST_CASE("mining is deterministic for a fixed seed") {
    const auto a = mine_counterexamples(123, 150, BreakTarget::cond_ii);
    const auto b = mine_counterexamples(123, 150, BreakTarget::cond_ii);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].trial == b[i].trial);
        CHECK(a[i].instance == b[i].instance);
        CHECK(a[i].training_domains == b[i].training_domains);
        CHECK(a[i].verdict.min_ood_risk == b[i].verdict.min_ood_risk);
    }
}

TEST_CASE("the worker count does not change mining results") {
    setenv("IRL_THREADS", "1", 1);
    const auto serial = mine_counterexamples(9, 120, BreakTarget::cond_ii);
    setenv("IRL_THREADS", "3", 1);
    const auto threaded = mine_counterexamples(9, 120, BreakTarget::cond_ii);
    unsetenv("IRL_THREADS");
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].trial == threaded[i].trial);
        CHECK(serial[i].instance == threaded[i].instance);
    }
}

TEST_CASE("mining support gaps finds inclusion failures quickly") {
    const auto found = mine_counterexamples(7, 200, BreakTarget::cond_ii);
    CHECK(found.size() >= 1);
    for (const auto& c : found) {
        CHECK(c.verdict.conditions.cond_ii.status == ConditionStatus::fails);
        CHECK_FALSE(c.verdict.inclusion_holds);
    }
}

TEST_CASE("mining with every condition holding finds nothing") {
    CHECK(mine_counterexamples(0, 300, BreakTarget::none).empty());
}

TEST_CASE("mining marginal-matched domains breaks condition (i)") {
    const auto found = mine_counterexamples(5, 200, BreakTarget::cond_i);
    for (const auto& c : found) {
        CHECK(c.verdict.conditions.cond_i.status == ConditionStatus::fails);
        CHECK_FALSE(c.verdict.inclusion_holds);
    }
}

TEST_CASE("mined cases replay identically from their serialized documents") {
    const auto found = mine_counterexamples(7, 120, BreakTarget::cond_ii);
    REQUIRE(!found.empty());
    std::size_t replayed = 0;
    for (const auto& c : found) {
        if (++replayed > 5) break;
        InstanceDocument doc;
        doc.instance = c.instance;
        for (std::size_t e = 0; e < c.training_domains.size(); ++e) {
            doc.domains.emplace_back("e" + std::to_string(e), c.training_domains[e]);
            doc.training.push_back("e" + std::to_string(e));
        }
        const InstanceDocument parsed =
            parse_instance_document(serialize_instance_document(doc), "replay");
        CHECK(parsed.instance == c.instance);
        const LossKind loss = c.instance.task == TaskKind::classification
                                  ? LossKind::cross_entropy
                                  : LossKind::least_square;
        const TheoremVerdict replay =
            verify_theorem(parsed.instance, parsed.training_domains(), loss);
        CHECK(replay.inclusion_holds == c.verdict.inclusion_holds);
        CHECK(replay.min_ood_risk == c.verdict.min_ood_risk);
        CHECK(replay.conditions.cond_ii.status == c.verdict.conditions.cond_ii.status);
    }
}
