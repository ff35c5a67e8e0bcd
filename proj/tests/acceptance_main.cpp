// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria marked with a runtime budget also fail when they
// exceed it.

#include "irmlab/io.hpp"
#include "irmlab/verify.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef IRMLAB_CLI_PATH
#error "IRMLAB_CLI_PATH must be defined"
#endif
#ifndef IRMLAB_DATA_DIR
#error "IRMLAB_DATA_DIR must be defined"
#endif

using namespace irmlab;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::string data_path(const std::string& name) {
    return std::string(IRMLAB_DATA_DIR) + "/" + name;
}

// --- criterion 1: regression optimality at desk scale ----------------------

void criterion_1() {
    const InstanceDocument doc = load_instance_document(data_path("canonical.toml"));
    const auto training = doc.training_domains();
    const ConditionReport conditions =
        check_conditions(doc.instance, training, doc.instance.task);
    require(conditions.cond_i.status == ConditionStatus::holds, "condition (i) must hold");
    require(conditions.cond_ii.status == ConditionStatus::holds, "condition (ii) must hold");
    require(conditions.cond_iii.status == ConditionStatus::holds, "condition (iii) must hold");

    const ExactScalar target = ExactScalar::from_rational(parse_rational("4/25"));
    const ExactScalar bayes_value = ood_risk(
        doc.instance, bayes_ood_predictor(doc.instance, LossKind::least_square),
        LossKind::least_square);
    require(bayes_value == target, "bayes o.o.d. risk must equal 4/25 exactly");

    const IrmSolution solution =
        irm_solve(doc.instance, training, LossKind::least_square);
    require(!solution.minimizers.empty(), "the bi-level problem must have minimizers");
    for (const auto& m : solution.minimizers) {
        require(ood_risk(doc.instance, m, LossKind::least_square) == target,
                "every minimizer must attain o.o.d. risk 4/25 exactly");
    }
}

// --- criterion 2: classification optimality at desk scale ------------------

void criterion_2() {
    const InstanceDocument doc =
        load_instance_document(data_path("canonical_classification.toml"));
    const auto training = doc.training_domains();
    const ConditionReport conditions =
        check_conditions(doc.instance, training, doc.instance.task);
    require(conditions.cond_v.status == ConditionStatus::holds, "condition (v) must hold");
    require(conditions.cond_i.status == ConditionStatus::holds, "condition (i) must hold");

    // Symbolic oracle: the maximum kernel-row entropy.
    ExactScalar max_entropy;
    bool first = true;
    for (const auto& row : doc.instance.kernel.table) {
        ExactScalar entropy;
        for (const auto& p : row) entropy += ExactScalar::neg_log(p).scaled(p);
        if (first || entropy > max_entropy) {
            max_entropy = entropy;
            first = false;
        }
    }

    const double analytic = -(0.2 * std::log(0.2) + 0.8 * std::log(0.8));
    const IrmSolution solution =
        irm_solve(doc.instance, training, LossKind::cross_entropy);
    for (const auto& m : solution.minimizers) {
        require(ood_risk(doc.instance, m, LossKind::cross_entropy) == max_entropy,
                "exact mode: minimizer o.o.d. risk must equal the max row entropy");
        const double value = ood_risk_float(doc.instance, m, LossKind::cross_entropy);
        require(std::abs(value - analytic) <= 1e-12,
                "float mode: minimizer o.o.d. risk must match the entropy within 1e-12");
    }
}

// --- criterion 3: witness reproduction --------------------------------------

void criterion_3() {
    for (const std::string file : {"canonical.toml", "canonical_classification.toml"}) {
        const InstanceDocument doc = load_instance_document(data_path(file));
        const WitnessResult result =
            construct_witness(doc.instance, x2_projection(doc.instance));
        require(result.kind == WitnessResult::Kind::witness,
                "the X2-projection must admit a witness");
        require(result.pair->conditional_a == 1, "conditional_a must be exactly 1");
        require(result.pair->conditional_b == 0, "conditional_b must be exactly 0");
        require(validate_domain(doc.instance, result.pair->domain_a).empty(),
                "domain_a must be a valid family member");
        require(validate_domain(doc.instance, result.pair->domain_b).empty(),
                "domain_b must be a valid family member");
    }
}

// --- criterion 4: grid brute force never beats the bayes predictor ---------

void criterion_4() {
    std::size_t desk_scale = 0;
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 6) continue;
        ++desk_scale;
        const ExactScalar bayes_value =
            ood_risk(g.instance, bayes_ood_predictor(g.instance, g.loss), g.loss);
        const ExactScalar grid_min = oracle::grid_min_ood(g.instance, g.loss);
        require(grid_min >= bayes_value,
                g.name + ": grid search found a predictor below the bayes value");
    }
    require(desk_scale >= 20, "the golden suite must contain at least 20 desk-scale instances");
}

// --- criterion 5: o.o.d. attainment and domination --------------------------

void criterion_5() {
    for (const auto& g : golden::suite()) {
        CounterRng rng(2025, 5);
        for (int i = 0; i < 1000; ++i) {
            const Predictor p = oracle::random_predictor(g.instance, g.loss, rng);
            const Domain d = oracle::random_domain(g.instance, rng);
            const ExactScalar bound = ood_risk(g.instance, p, g.loss);
            require(risk(g.instance, d, p, g.loss) <= bound,
                    g.name + ": sampled domain risk exceeded the o.o.d. value");
            require(risk(g.instance, worst_case_domain(g.instance, p, g.loss), p, g.loss) ==
                        bound,
                    g.name + ": the worst-case domain did not attain the o.o.d. value");
        }
    }
}

// --- criterion 6: invariance characterization equivalence -------------------

void criterion_6() {
    CounterRng rng(2025, 6);
    for (const auto& g : golden::suite()) {
        if (g.instance.x_size() > 8) continue;
        auto battery = delta_domain_battery(g.instance);
        for (int i = 0; i < 100; ++i) {
            battery.push_back(oracle::random_domain(g.instance, rng));
        }
        const auto closed = characterize_full_invariances(g.instance);
        for (const auto& phi : closed) {
            require(is_invariant(g.instance, phi, battery).invariant,
                    g.name + ": a closed-form partition failed the battery");
        }
        const auto brute =
            enumerate_invariant_partitions(g.instance, battery, g.instance.h_size);
        require(brute == closed,
                g.name + ": battery survivors differ from the closed form");
    }
}

// --- criterion 7: necessity of condition (ii), theorem falsification -------

void criterion_7() {
    const auto broken = mine_counterexamples(7, 10000, BreakTarget::cond_ii);
    require(broken.size() >= 1,
            "mining with condition (ii) broken must find at least one violation");
    const auto clean = mine_counterexamples(7, 10000, BreakTarget::none);
    require(clean.empty(),
            "mining with every condition holding found a theorem violation: trial " +
                (clean.empty() ? std::string("-") : std::to_string(clean.front().trial)));
}

// --- criterion 8: CLI determinism -------------------------------------------

std::pair<int, std::string> run_cli(const std::string& args) {
    const std::string command = std::string(IRMLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    require(pipe != nullptr, "popen failed");
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

void criterion_8() {
    const std::string reg = data_path("canonical.toml");
    const std::string cls = data_path("canonical_classification.toml");
    const std::vector<std::string> commands = {
        "validate --instance " + reg,
        "risk --instance " + reg + " --domain e1 --loss least-square --bayes",
        "risk --instance " + reg + " --domain e3 --loss least-square --phi constant --head 1/2",
        "ood-risk --instance " + reg + " --loss least-square --bayes",
        "ood-risk --instance " + cls + " --loss cross-entropy --bayes",
        "invariances --instance " + reg,
        "characterize --instance " + reg,
        "witness --instance " + reg + " --phi x2-projection",
        "witness --instance " + cls + " --phi x2-projection",
        "solve-irm --instance " + reg + " --loss least-square",
        "solve-irm --instance " + cls + " --loss cross-entropy",
        "check-conditions --instance " + reg,
        "verify --instance " + reg + " --loss least-square --expect-holds",
        "verify --instance " + cls + " --loss cross-entropy --expect-holds",
        "mine --seed 7 --trials 120 --break ii --limit 4",
        "mine --seed 3 --trials 120 --break none",
    };
    for (const auto& command : commands) {
        const auto first = run_cli(command);
        const auto second = run_cli(command);
        require(!first.second.empty(), "no report produced by: " + command);
        require(first.first == second.first, "exit codes differ for: " + command);
        require(first.second == second.second, "reports differ for: " + command);
    }
}

struct Criterion {
    int number;
    std::string description;
    double budget_seconds;   // <= 0 means no budget
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "regression optimality on the canonical instance (exact 4/25)", 1.0,
         criterion_1},
        {2, "classification optimality on the canonical instance (max row entropy)", 1.0,
         criterion_2},
        {3, "witness domains reproduce conditionals 1 and 0", 0.0, criterion_3},
        {4, "grid brute force never beats the bayes predictor (>= 20 instances)", 60.0,
         criterion_4},
        {5, "o.o.d. attainment and domination over 1000 random pairs per instance", 0.0,
         criterion_5},
        {6, "closed-form invariances equal the battery survivors (|X| <= 8)", 120.0,
         criterion_6},
        {7, "support-gap mining finds violations; clean mining finds none (10^4 trials)",
         600.0, criterion_7},
        {8, "repeated CLI runs produce byte-identical reports", 0.0, criterion_8},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const Failure& f) {
            error = f.message;
        } catch (const std::exception& e) {
            error = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && c.budget_seconds > 0 && seconds > c.budget_seconds) {
            std::ostringstream os;
            os << "runtime " << seconds << " s exceeded the " << c.budget_seconds
               << " s budget";
            error = os.str();
        }
        char timing[48];
        std::snprintf(timing, sizeof(timing), "(%.2f s)", seconds);
        if (error.empty()) {
            std::cout << "[PASS] criterion " << c.number << ": " << c.description << " "
                      << timing << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << c.number << ": " << c.description << " "
                      << timing << " -- " << error << "\n";
        }
    }
    if (failures == 0) {
        std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
    } else {
        std::cout << failures << " acceptance criterion(s) failed\n";
    }
    return failures == 0 ? 0 : 1;
}
