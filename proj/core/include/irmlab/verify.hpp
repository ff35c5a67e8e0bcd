#pragma once

#include "irmlab/irm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace irmlab {

/// `capped` marks a check that could not run because the instance exceeds the
/// enumeration cap; the remaining conditions are still reported.
enum class ConditionStatus { holds, fails, vacuous, capped };

std::string to_string(ConditionStatus status);

struct ConditionFinding {
    ConditionStatus status = ConditionStatus::vacuous;
    std::string evidence;
};

/// The theorem hypotheses, checked extensionally on the instance:
///   (i)   invariances over the training domains == invariances over the
///         whole family (set equality of the two enumerations, with the
///         closed form cross-checked against the point-mass battery),
///   (ii)  the training marginals jointly cover X1,
///   (iii) h_size >= |X1| (the finite reading of the dimension condition),
///   (iv)  density continuity — vacuous on finite spaces,
///   (v)   every kernel row has at least two positive entries
///         (classification only).
struct ConditionReport {
    ConditionFinding cond_i;
    ConditionFinding cond_ii;
    ConditionFinding cond_iii;
    ConditionFinding cond_iv;
    ConditionFinding cond_v;

    bool all_applicable_hold() const;
};

struct TheoremVerdict {
    ConditionReport conditions;
    IrmSolution irm_solution;
    ExactScalar min_ood_risk;
    bool inclusion_holds = false;
    // Populated when inclusion_holds is false: a minimizer whose o.o.d. risk
    // exceeds min_ood_risk, with that risk.
    std::optional<std::pair<Predictor, ExactScalar>> offending_minimizer;
};

ConditionReport check_conditions(const Instance& instance,
                                 const std::vector<Domain>& training_domains, TaskKind task,
                                 std::size_t cap = kDefaultEnumerationCap);

/// Runs the condition checks, solves the bi-level problem, and tests the
/// inclusion: every minimizer's o.o.d. risk must equal the o.o.d. risk of the
/// Bayes-optimal predictor exactly. Conditions may fail; the verdict records
/// both the report and whether the inclusion empirically held.
TheoremVerdict verify_theorem(const Instance& instance,
                              const std::vector<Domain>& training_domains, LossKind loss,
                              std::size_t cap = kDefaultEnumerationCap);

enum class BreakTarget { cond_i, cond_ii, cond_v, none };

std::string to_string(BreakTarget target);

struct MinedCase {
    std::uint64_t trial = 0;
    Instance instance;
    std::vector<Domain> training_domains;
    TheoremVerdict verdict;
};

/// Random search for theorem violations over small instances (|X1|, |X2|,
/// |Y| <= 3, probabilities with denominator <= 16). The generator constructs
/// the named condition breakage (support gap for ii, shared marginals for i,
/// a deterministic kernel row for v); with BreakTarget::none only instances
/// where every applicable condition holds are examined — a falsification run
/// that is expected to return nothing. Trials are independent streams of a
/// counter-based generator, so results do not depend on the worker count
/// (capped by the IRL_THREADS environment variable).
std::vector<MinedCase> mine_counterexamples(std::uint64_t seed, std::uint64_t trials,
                                            BreakTarget target);

} // namespace irmlab
