#include "irmlab/verify.hpp"

#include "irmlab/errors.hpp"
#include "irmlab/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace irmlab {

std::string to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::holds: return "holds";
        case ConditionStatus::fails: return "fails";
        case ConditionStatus::vacuous: return "vacuous";
        case ConditionStatus::capped: return "capped";
    }
    return "?";
}

std::string to_string(BreakTarget target) {
    switch (target) {
        case BreakTarget::cond_i: return "i";
        case BreakTarget::cond_ii: return "ii";
        case BreakTarget::cond_v: return "v";
        case BreakTarget::none: return "none";
    }
    return "?";
}

bool ConditionReport::all_applicable_hold() const {
    const auto ok = [](const ConditionFinding& f) {
        return f.status == ConditionStatus::holds || f.status == ConditionStatus::vacuous;
    };
    return ok(cond_i) && ok(cond_ii) && ok(cond_iii) && ok(cond_iv) && ok(cond_v);
}

namespace {

ConditionFinding check_cond_i(const Instance& instance,
                              const std::vector<Domain>& training_domains,
                              const std::vector<FeaturePartition>* enumerated,
                              std::size_t cap) {
    if (instance.x_size() > cap) {
        return {ConditionStatus::capped,
                "|X| = " + std::to_string(instance.x_size()) +
                    " exceeds the enumeration cap " + std::to_string(cap)};
    }
    std::vector<FeaturePartition> train_set;
    if (enumerated) {
        train_set = *enumerated;
    } else {
        train_set = enumerate_invariant_partitions(instance, training_domains,
                                                   instance.h_size, cap);
    }
    const auto full_set = characterize_full_invariances(instance);

    // Cross-check the closed form against the point-mass battery before
    // trusting it as the ground truth for the family-wide set.
    {
        const auto battery = delta_domain_battery(instance);
        std::vector<JointTable> joints;
        joints.reserve(battery.size());
        for (const auto& d : battery) joints.push_back(joint_distribution(instance, d));
        for (const auto& phi : full_set) {
            if (!detail::invariant_over(joints, phi)) {
                return {ConditionStatus::fails,
                        "closed-form partition [" + format_cells(phi) +
                            "] rejected by the point-mass battery"};
            }
        }
    }

    for (const auto& phi : train_set) {
        if (!std::binary_search(full_set.begin(), full_set.end(), phi)) {
            return {ConditionStatus::fails,
                    "partition [" + format_cells(phi) +
                        "] is invariant over the training domains but not over the family"};
        }
    }
    for (const auto& phi : full_set) {
        if (!std::binary_search(train_set.begin(), train_set.end(), phi)) {
            return {ConditionStatus::fails,
                    "family invariance [" + format_cells(phi) +
                        "] is not invariant over the training domains"};
        }
    }
    return {ConditionStatus::holds,
            std::to_string(train_set.size()) + " invariant partition(s) on both sides"};
}

ConditionFinding check_cond_ii(const Instance& instance,
                               const std::vector<Domain>& training_domains) {
    std::vector<bool> covered(instance.x1_size(), false);
    for (const auto& domain : training_domains) {
        for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
            if (domain.x1_marginal[i1] > 0) covered[i1] = true;
        }
    }
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        if (!covered[i1]) {
            return {ConditionStatus::fails,
                    "x1 point " + std::to_string(i1) +
                        " has zero marginal mass in every training domain"};
        }
    }
    return {ConditionStatus::holds, "training supports cover X1"};
}

ConditionReport check_conditions_impl(const Instance& instance,
                                      const std::vector<Domain>& training_domains,
                                      TaskKind task, std::size_t cap,
                                      const std::vector<FeaturePartition>* enumerated) {
    if (training_domains.empty()) {
        throw StructuralError("check_conditions requires at least one training domain");
    }
    ConditionReport report;
    report.cond_i = check_cond_i(instance, training_domains, enumerated, cap);
    report.cond_ii = check_cond_ii(instance, training_domains);

    if (instance.h_size >= static_cast<int>(instance.x1_size())) {
        report.cond_iii = {ConditionStatus::holds,
                           "h_size = " + std::to_string(instance.h_size) +
                               " >= |X1| = " + std::to_string(instance.x1_size())};
    } else {
        report.cond_iii = {ConditionStatus::fails,
                           "h_size = " + std::to_string(instance.h_size) +
                               " < |X1| = " + std::to_string(instance.x1_size())};
    }

    report.cond_iv = {ConditionStatus::vacuous,
                      "density continuity is vacuous on finite spaces"};

    if (task != TaskKind::classification) {
        report.cond_v = {ConditionStatus::vacuous, "regression task"};
    } else {
        report.cond_v = {ConditionStatus::holds, "every kernel row has >= 2 positive entries"};
        for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
            int positive = 0;
            for (const auto& p : instance.kernel.table[i1]) positive += p > 0 ? 1 : 0;
            if (positive < 2) {
                report.cond_v = {ConditionStatus::fails,
                                 "kernel row " + std::to_string(i1) + " has " +
                                     std::to_string(positive) + " positive entry(ies)"};
                break;
            }
        }
    }
    return report;
}

} // namespace

ConditionReport check_conditions(const Instance& instance,
                                 const std::vector<Domain>& training_domains, TaskKind task,
                                 std::size_t cap) {
    return check_conditions_impl(instance, training_domains, task, cap, nullptr);
}

TheoremVerdict verify_theorem(const Instance& instance,
                              const std::vector<Domain>& training_domains, LossKind loss,
                              std::size_t cap) {
    const auto enumerated = enumerate_invariant_partitions(instance, training_domains,
                                                           instance.h_size, cap);
    TheoremVerdict verdict;
    verdict.conditions =
        check_conditions_impl(instance, training_domains, instance.task, cap, &enumerated);
    verdict.irm_solution = detail::irm_solve_over(instance, training_domains, loss, enumerated);
    verdict.min_ood_risk = ood_risk(instance, bayes_ood_predictor(instance, loss), loss);
    verdict.inclusion_holds = true;
    for (const auto& minimizer : verdict.irm_solution.minimizers) {
        ExactScalar value = ood_risk(instance, minimizer, loss);
        if (value != verdict.min_ood_risk) {
            verdict.inclusion_holds = false;
            verdict.offending_minimizer = {minimizer, std::move(value)};
            break;
        }
    }
    return verdict;
}

namespace {

struct TrialSetup {
    Instance instance;
    std::vector<Domain> training;
    LossKind loss = LossKind::least_square;
};

std::vector<RationalVec> grid_points(CounterRng& rng, std::size_t count) {
    const std::int64_t den = rng.range(1, 2);
    std::vector<RationalVec> points(count);
    for (std::size_t i = 0; i < count; ++i) {
        points[i] = {Rational(static_cast<int>(i), static_cast<int>(den))};
    }
    return points;
}

RationalVec rich_simplex(CounterRng& rng, std::size_t n, std::uint64_t max_den) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RationalVec row = rng.simplex(n, max_den);
        int positive = 0;
        for (const auto& p : row) positive += p > 0 ? 1 : 0;
        if (positive >= 2) return row;
    }
    return RationalVec(n, Rational(1, static_cast<int>(n)));
}

RationalVec positive_simplex(CounterRng& rng, std::size_t n, std::uint64_t max_den) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RationalVec row = rng.simplex(n, max_den);
        bool all_positive = true;
        for (const auto& p : row) all_positive = all_positive && p > 0;
        if (all_positive) return row;
    }
    return RationalVec(n, Rational(1, static_cast<int>(n)));
}

std::vector<std::vector<RationalVec>> random_x2_kernel(CounterRng& rng, std::size_t n1,
                                                       std::size_t ny, std::size_t n2) {
    std::vector<std::vector<RationalVec>> kernel(n1, std::vector<RationalVec>(ny));
    const bool deterministic = rng.below(2) == 0;
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        for (std::size_t j = 0; j < ny; ++j) {
            if (deterministic) {
                RationalVec row(n2, Rational(0));
                row[rng.below(n2)] = 1;
                kernel[i1][j] = std::move(row);
            } else {
                kernel[i1][j] = rng.simplex(n2, 16);
            }
        }
    }
    return kernel;
}

TrialSetup generate_trial(std::uint64_t seed, std::uint64_t trial, BreakTarget target) {
    CounterRng rng(seed, trial);
    TrialSetup setup;
    Instance& inst = setup.instance;

    const bool classification =
        target == BreakTarget::cond_v ? true : rng.below(2) == 0;
    inst.task = classification ? TaskKind::classification : TaskKind::regression;

    const bool need_two_x1 = target == BreakTarget::cond_ii || target == BreakTarget::cond_i;
    const std::size_t n1 = static_cast<std::size_t>(rng.range(need_two_x1 ? 2 : 1, 3));
    const std::size_t n2 = static_cast<std::size_t>(rng.range(1, 3));
    const std::size_t ny = static_cast<std::size_t>(rng.range(2, 3));

    inst.x1_points.resize(n1);
    for (std::size_t i = 0; i < n1; ++i) inst.x1_points[i] = {Rational(static_cast<int>(i))};
    inst.x2_points.resize(n2);
    for (std::size_t i = 0; i < n2; ++i) inst.x2_points[i] = {Rational(static_cast<int>(i))};
    inst.y_points = classification ? class_labels(ny) : grid_points(rng, ny);
    inst.h_size = static_cast<int>(n1);

    inst.kernel.table.resize(n1);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        inst.kernel.table[i1] = rich_simplex(rng, ny, 16);
    }
    if (target == BreakTarget::cond_v) {
        RationalVec row(ny, Rational(0));
        row[rng.below(ny)] = 1;
        inst.kernel.table[rng.below(n1)] = std::move(row);
    }

    const std::size_t domain_count = static_cast<std::size_t>(rng.range(2, 3));
    setup.training.resize(domain_count);

    RationalVec shared_marginal;
    std::vector<bool> support_mask(n1, true);
    if (target == BreakTarget::cond_i) {
        // Identical marginals across training domains leave the coarse
        // label marginal unchanged, so partitions that only see it stay
        // invariant over the training set without being family invariances.
        shared_marginal = positive_simplex(rng, n1, 16);
    }
    if (target == BreakTarget::cond_ii) {
        const std::size_t uncovered = rng.below(n1);
        support_mask.assign(n1, true);
        support_mask[uncovered] = false;
    }

    for (auto& domain : setup.training) {
        if (target == BreakTarget::cond_i) {
            domain.x1_marginal = shared_marginal;
        } else if (target == BreakTarget::cond_ii) {
            std::size_t covered = 0;
            for (bool b : support_mask) covered += b ? 1 : 0;
            RationalVec sub = positive_simplex(rng, covered, 16);
            domain.x1_marginal.assign(n1, Rational(0));
            std::size_t k = 0;
            for (std::size_t i1 = 0; i1 < n1; ++i1) {
                if (support_mask[i1]) domain.x1_marginal[i1] = sub[k++];
            }
        } else {
            domain.x1_marginal = positive_simplex(rng, n1, 16);
        }
        domain.x2_given_x1y = random_x2_kernel(rng, n1, ny, n2);
    }

    setup.loss = classification ? LossKind::cross_entropy : LossKind::least_square;
    return setup;
}

bool trial_matches_target(const ConditionReport& report, BreakTarget target) {
    switch (target) {
        case BreakTarget::cond_i: return report.cond_i.status == ConditionStatus::fails;
        case BreakTarget::cond_ii: return report.cond_ii.status == ConditionStatus::fails;
        case BreakTarget::cond_v: return report.cond_v.status == ConditionStatus::fails;
        case BreakTarget::none: return report.all_applicable_hold();
    }
    return false;
}

std::size_t worker_count(std::uint64_t trials) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("IRL_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
    }
    return std::max<std::size_t>(1, std::min<std::size_t>(n, trials == 0 ? 1 : trials));
}

} // namespace

std::vector<MinedCase> mine_counterexamples(std::uint64_t seed, std::uint64_t trials,
                                            BreakTarget target) {
    const std::size_t workers = worker_count(trials);
    std::vector<std::vector<MinedCase>> found(workers);

    const auto run_range = [&](std::size_t w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            TrialSetup setup = generate_trial(seed, t, target);
            TheoremVerdict verdict =
                verify_theorem(setup.instance, setup.training, setup.loss);
            if (!trial_matches_target(verdict.conditions, target)) continue;
            if (verdict.inclusion_holds) continue;
            found[w].push_back({t, std::move(setup.instance), std::move(setup.training),
                                std::move(verdict)});
        }
    };

    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    run_range(w, lo, hi);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& error : errors) {
            if (error) std::rethrow_exception(error);
        }
    }

    std::vector<MinedCase> out;
    for (auto& part : found) {
        for (auto& c : part) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const MinedCase& a, const MinedCase& b) { return a.trial < b.trial; });
    return out;
}

} // namespace irmlab
