#include "report.hpp"

#include "irmlab/errors.hpp"
#include "irmlab/io.hpp"
#include "irmlab/irm.hpp"
#include "irmlab/verify.hpp"
#include "irmlab/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace irmlab;
using cli::ReportWriter;

struct LoadedDocument {
    InstanceDocument doc;
    std::string digest;
};

LoadedDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    return {parse_instance_document(bytes, path), content_digest(bytes)};
}

std::vector<std::string> document_problems(const InstanceDocument& doc) {
    std::vector<std::string> problems = validate_instance(doc.instance).violations;
    for (const auto& [name, domain] : doc.domains) {
        for (const auto& p : validate_domain(doc.instance, domain)) {
            problems.push_back("domain '" + name + "': " + p);
        }
    }
    return problems;
}

void ensure_valid(const InstanceDocument& doc) {
    const auto problems = document_problems(doc);
    if (!problems.empty()) {
        throw StructuralError("invalid instance document: " + problems.front() +
                              (problems.size() > 1
                                   ? " (+" + std::to_string(problems.size() - 1) + " more)"
                                   : ""));
    }
}

std::vector<Domain> training_or_fail(const InstanceDocument& doc) {
    if (doc.training.empty()) {
        throw StructuralError("the instance document lists no training domains");
    }
    return doc.training_domains();
}

LossKind parse_loss(const std::string& text) {
    if (text == "least-square") return LossKind::least_square;
    if (text == "cross-entropy") return LossKind::cross_entropy;
    throw StructuralError("unknown loss '" + text +
                          "' (use least-square or cross-entropy)");
}

Predictor build_predictor(const Instance& instance, LossKind loss, bool bayes,
                          const std::string& phi_spec, const std::string& head_spec) {
    if (bayes) {
        if (!phi_spec.empty() || !head_spec.empty()) {
            throw StructuralError("--bayes cannot be combined with --phi/--head");
        }
        return bayes_ood_predictor(instance, loss);
    }
    if (phi_spec.empty() || head_spec.empty()) {
        throw StructuralError("either --bayes or both --phi and --head are required");
    }
    Predictor p{cli::parse_phi_spec(instance, phi_spec), cli::parse_head_spec(head_spec)};
    check_predictor(instance, p, loss);
    return p;
}

void write_predictor(ReportWriter& w, const Predictor& p) {
    w.kv_partition("phi", p.phi);
    w.kv_rational_matrix("head", p.head.cell_values);
}

void write_domain(ReportWriter& w, const std::string& prefix, const Domain& d) {
    w.kv_rational_vec(prefix + "_x1_marginal", d.x1_marginal);
    std::string out = "[";
    for (std::size_t i1 = 0; i1 < d.x2_given_x1y.size(); ++i1) {
        if (i1 > 0) out += ", ";
        out += cli::rational_matrix_array(d.x2_given_x1y[i1]);
    }
    out += "]";
    w.kv_raw(prefix + "_x2_given_x1y", out);
}

void write_conditions(ReportWriter& w, const ConditionReport& report) {
    const auto put = [&w](const std::string& key, const ConditionFinding& f) {
        w.kv_string(key, to_string(f.status));
        w.kv_string(key + "_evidence", f.evidence);
    };
    put("cond_i", report.cond_i);
    put("cond_ii", report.cond_ii);
    put("cond_iii", report.cond_iii);
    put("cond_iv", report.cond_iv);
    put("cond_v", report.cond_v);
}

void write_exact_list(ReportWriter& w, const std::string& key,
                      const std::vector<ExactScalar>& values) {
    std::vector<std::string> exact, decimal;
    for (const auto& v : values) {
        exact.push_back(v.to_string());
        decimal.push_back(format_decimal(v.to_double()));
    }
    w.kv_string_list(key, exact);
    w.kv_string_list(key + "_decimal", decimal);
}

int run_validate(const std::string& echo, const std::string& path, bool expect_valid) {
    const LoadedDocument loaded = load_document(path);
    const auto problems = document_problems(loaded.doc);
    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_bool("valid", problems.empty());
    w.kv_string_list("violations", problems);
    std::cout << w.str();
    return (expect_valid && !problems.empty()) ? 1 : 0;
}

int run_risk(const std::string& echo, const std::string& path, const std::string& domain_name,
             const std::string& loss_text, bool bayes, const std::string& phi_spec,
             const std::string& head_spec, bool float_mode) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const LossKind loss = parse_loss(loss_text);
    const Domain* domain = loaded.doc.find_domain(domain_name);
    if (!domain) throw StructuralError("unknown domain '" + domain_name + "'");
    const Predictor predictor =
        build_predictor(loaded.doc.instance, loss, bayes, phi_spec, head_spec);

    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_string("loss", loss_text);
    w.kv_string("domain", domain_name);
    write_predictor(w, predictor);
    w.kv_string("mode", float_mode ? "float" : "exact");
    if (float_mode) {
        w.kv_string("risk_decimal",
                    format_decimal(risk_float(loaded.doc.instance, *domain, predictor, loss)));
    } else {
        w.kv_exact("risk", risk(loaded.doc.instance, *domain, predictor, loss));
    }
    std::cout << w.str();
    return 0;
}

int run_ood_risk(const std::string& echo, const std::string& path,
                 const std::string& loss_text, bool bayes, const std::string& phi_spec,
                 const std::string& head_spec, bool float_mode) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const LossKind loss = parse_loss(loss_text);
    const Predictor predictor =
        build_predictor(loaded.doc.instance, loss, bayes, phi_spec, head_spec);

    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_string("loss", loss_text);
    write_predictor(w, predictor);
    w.kv_string("mode", float_mode ? "float" : "exact");
    if (float_mode) {
        w.kv_string("ood_risk_decimal",
                    format_decimal(ood_risk_float(loaded.doc.instance, predictor, loss)));
    } else {
        w.kv_exact("ood_risk", ood_risk(loaded.doc.instance, predictor, loss));
    }
    write_domain(w, "worst_domain", worst_case_domain(loaded.doc.instance, predictor, loss));
    std::cout << w.str();
    return 0;
}

int run_invariances(const std::string& echo, const std::string& path, int max_cells,
                    std::size_t cap, bool float_mode, double tol) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const auto training = training_or_fail(loaded.doc);
    const int cells = max_cells > 0 ? max_cells : loaded.doc.instance.h_size;
    const CompareMode mode =
        float_mode ? CompareMode::float_mode(tol) : CompareMode::exact_mode();
    const auto partitions = enumerate_invariant_partitions(loaded.doc.instance, training,
                                                           cells, cap, mode);
    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_string("mode", float_mode ? "float" : "exact");
    w.kv_int("max_cells", cells);
    w.kv_int("count", static_cast<long long>(partitions.size()));
    w.kv_partitions("partitions", partitions);
    std::cout << w.str();
    return 0;
}

int run_characterize(const std::string& echo, const std::string& path) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const auto partitions = characterize_full_invariances(loaded.doc.instance);
    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_int("count", static_cast<long long>(partitions.size()));
    w.kv_partitions("partitions", partitions);
    std::cout << w.str();
    return 0;
}

int run_witness(const std::string& echo, const std::string& path,
                const std::string& phi_spec) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const FeaturePartition phi = cli::parse_phi_spec(loaded.doc.instance, phi_spec);
    const WitnessResult result = construct_witness(loaded.doc.instance, phi);

    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_partition("phi", phi);
    switch (result.kind) {
        case WitnessResult::Kind::factors:
            w.kv_string("outcome", "factors");
            w.kv_string("detail", result.detail);
            break;
        case WitnessResult::Kind::no_witness_available:
            w.kv_string("outcome", "no-witness-available");
            w.kv_string("detail", result.detail);
            break;
        case WitnessResult::Kind::witness: {
            const WitnessPair& pair = *result.pair;
            w.kv_string("outcome", "witness");
            w.kv_int("x1_star", static_cast<long long>(pair.x1_star));
            w.kv_int("x2_star", static_cast<long long>(pair.x2_star));
            w.kv_int("x2_star_alt", static_cast<long long>(pair.x2_star_alt));
            w.kv_int("y_star", static_cast<long long>(pair.y_star));
            w.kv_int("target_cell", pair.target_cell);
            std::string labels = "[";
            for (std::size_t i = 0; i < pair.target_label_set.size(); ++i) {
                if (i > 0) labels += ", ";
                labels += std::to_string(pair.target_label_set[i]);
            }
            w.kv_raw("target_label_set", labels + "]");
            w.kv_rational("conditional_a", pair.conditional_a);
            w.kv_rational("conditional_b", pair.conditional_b);
            write_domain(w, "domain_a", pair.domain_a);
            write_domain(w, "domain_b", pair.domain_b);
            break;
        }
    }
    std::cout << w.str();
    return 0;
}

int run_solve_irm(const std::string& echo, const std::string& path,
                  const std::string& loss_text, std::size_t cap) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const LossKind loss = parse_loss(loss_text);
    const auto training = training_or_fail(loaded.doc);
    const IrmSolution solution = irm_solve(loaded.doc.instance, training, loss, cap);

    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_string("loss", loss_text);
    w.kv_exact("pooled_risk", solution.pooled_risk);
    w.kv_int("minimizer_count", static_cast<long long>(solution.minimizers.size()));
    for (std::size_t m = 0; m < solution.minimizers.size(); ++m) {
        w.section_entry("minimizer");
        write_predictor(w, solution.minimizers[m]);
        write_exact_list(w, "per_domain_risks", solution.per_domain_risks[m]);
    }
    std::cout << w.str();
    return 0;
}

int run_check_conditions(const std::string& echo, const std::string& path, std::size_t cap) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const auto training = training_or_fail(loaded.doc);
    const ConditionReport report =
        check_conditions(loaded.doc.instance, training, loaded.doc.instance.task, cap);
    ReportWriter w(echo, loaded.digest);
    w.section("result");
    write_conditions(w, report);
    std::cout << w.str();
    return 0;
}

int run_verify(const std::string& echo, const std::string& path,
               const std::string& loss_text, std::size_t cap, bool expect_holds) {
    const LoadedDocument loaded = load_document(path);
    ensure_valid(loaded.doc);
    const LossKind loss = parse_loss(loss_text);
    const auto training = training_or_fail(loaded.doc);
    const TheoremVerdict verdict = verify_theorem(loaded.doc.instance, training, loss, cap);

    ReportWriter w(echo, loaded.digest);
    w.section("result");
    w.kv_string("loss", loss_text);
    write_conditions(w, verdict.conditions);
    w.kv_exact("pooled_risk", verdict.irm_solution.pooled_risk);
    w.kv_int("minimizer_count",
             static_cast<long long>(verdict.irm_solution.minimizers.size()));
    w.kv_exact("min_ood_risk", verdict.min_ood_risk);
    w.kv_bool("inclusion_holds", verdict.inclusion_holds);
    if (verdict.offending_minimizer) {
        w.section("offending_minimizer");
        write_predictor(w, verdict.offending_minimizer->first);
        w.kv_exact("ood_risk", verdict.offending_minimizer->second);
    }
    std::cout << w.str();
    return (expect_holds && !verdict.inclusion_holds) ? 1 : 0;
}

int run_mine(const std::string& echo, std::uint64_t seed, std::uint64_t trials,
             const std::string& break_text, std::uint64_t limit, bool expect_found,
             bool expect_empty) {
    BreakTarget target;
    if (break_text == "i") {
        target = BreakTarget::cond_i;
    } else if (break_text == "ii") {
        target = BreakTarget::cond_ii;
    } else if (break_text == "v") {
        target = BreakTarget::cond_v;
    } else if (break_text == "none") {
        target = BreakTarget::none;
    } else {
        throw StructuralError("unknown --break '" + break_text + "' (use i, ii, v or none)");
    }
    const auto found = mine_counterexamples(seed, trials, target);

    ReportWriter w(echo, "(none)");
    w.section("result");
    w.kv_int("seed", static_cast<long long>(seed));
    w.kv_int("trials", static_cast<long long>(trials));
    w.kv_string("condition_to_break", break_text);
    w.kv_int("found", static_cast<long long>(found.size()));
    w.kv_int("reported", static_cast<long long>(std::min<std::uint64_t>(limit, found.size())));
    std::uint64_t reported = 0;
    for (const auto& item : found) {
        if (reported++ >= limit) break;
        w.section_entry("violation");
        w.kv_int("trial", static_cast<long long>(item.trial));
        w.kv_string("task", to_string(item.instance.task));
        w.kv_int("h_size", item.instance.h_size);
        w.kv_rational_matrix("x1", item.instance.x1_points);
        w.kv_rational_matrix("x2", item.instance.x2_points);
        if (item.instance.task == TaskKind::classification) {
            w.kv_int("y_labels", static_cast<long long>(item.instance.y_size()));
        } else {
            w.kv_rational_matrix("y", item.instance.y_points);
        }
        w.kv_rational_matrix("kernel_rows", item.instance.kernel.table);
        std::string marginals = "[";
        std::string kernels = "[";
        for (std::size_t e = 0; e < item.training_domains.size(); ++e) {
            if (e > 0) {
                marginals += ", ";
                kernels += ", ";
            }
            marginals += cli::rational_array(item.training_domains[e].x1_marginal);
            kernels += "[";
            for (std::size_t i1 = 0; i1 < item.training_domains[e].x2_given_x1y.size(); ++i1) {
                if (i1 > 0) kernels += ", ";
                kernels +=
                    cli::rational_matrix_array(item.training_domains[e].x2_given_x1y[i1]);
            }
            kernels += "]";
        }
        w.kv_raw("training_marginals", marginals + "]");
        w.kv_raw("training_x2_kernels", kernels + "]");
        write_conditions(w, item.verdict.conditions);
        w.kv_exact("min_ood_risk", item.verdict.min_ood_risk);
        if (item.verdict.offending_minimizer) {
            w.kv_exact("offending_ood_risk", item.verdict.offending_minimizer->second);
            w.kv_partition("offending_phi", item.verdict.offending_minimizer->first.phi);
            w.kv_rational_matrix("offending_head",
                                 item.verdict.offending_minimizer->first.head.cell_values);
        }
    }
    std::cout << w.str();
    if (expect_found && found.empty()) return 1;
    if (expect_empty && !found.empty()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::string echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) echo += " ";
        echo += argv[i];
    }

    CLI::App app{"Exact finite-instance laboratory for invariant-feature risk "
                 "minimization and worst-case (o.o.d.) risk analysis"};
    app.require_subcommand(1);

    std::string path, loss_text, phi_spec, head_spec, domain_name, break_text;
    bool bayes = false, float_mode = false, expect_holds = false, expect_valid = false;
    bool expect_found = false, expect_empty = false;
    double tol = 1e-9;
    std::size_t cap = kDefaultEnumerationCap;
    int max_cells = 0;
    std::uint64_t seed = 0, trials = 1000, limit = 25;

    auto* validate = app.add_subcommand("validate", "Report every violated instance invariant");
    validate->add_option("--instance", path, "instance document")->required();
    validate->add_flag("--expect-valid", expect_valid, "exit 1 when violations exist");

    auto* risk_cmd = app.add_subcommand("risk", "Expected loss on one named domain");
    risk_cmd->add_option("--instance", path)->required();
    risk_cmd->add_option("--domain", domain_name, "domain name from the document")->required();
    risk_cmd->add_option("--loss", loss_text, "least-square or cross-entropy")->required();
    risk_cmd->add_option("--phi", phi_spec, "feature partition spec");
    risk_cmd->add_option("--head", head_spec, "head values, cells '|'-separated");
    risk_cmd->add_flag("--bayes", bayes, "use the o.o.d.-optimal predictor");
    risk_cmd->add_flag("--float", float_mode, "float mode");

    auto* ood_cmd = app.add_subcommand("ood-risk", "Worst-case risk over the whole family");
    ood_cmd->add_option("--instance", path)->required();
    ood_cmd->add_option("--loss", loss_text)->required();
    ood_cmd->add_option("--phi", phi_spec);
    ood_cmd->add_option("--head", head_spec);
    ood_cmd->add_flag("--bayes", bayes);
    ood_cmd->add_flag("--float", float_mode);

    auto* inv_cmd = app.add_subcommand("invariances",
                                       "Enumerate invariant partitions over the training domains");
    inv_cmd->add_option("--instance", path)->required();
    inv_cmd->add_option("--max-cells", max_cells, "cell cap (default h_size)");
    inv_cmd->add_option("--cap", cap, "enumeration cap on |X| (default 10)");
    inv_cmd->add_flag("--float", float_mode);
    inv_cmd->add_option("--tol", tol, "float-mode tolerance (default 1e-9)");

    auto* chr_cmd = app.add_subcommand("characterize",
                                       "Closed-form invariances over the whole family");
    chr_cmd->add_option("--instance", path)->required();

    auto* wit_cmd = app.add_subcommand("witness",
                                       "Construct non-invariance witness domains for a partition");
    wit_cmd->add_option("--instance", path)->required();
    wit_cmd->add_option("--phi", phi_spec)->required();

    auto* irm_cmd = app.add_subcommand("solve-irm", "Solve the bi-level problem exactly");
    irm_cmd->add_option("--instance", path)->required();
    irm_cmd->add_option("--loss", loss_text)->required();
    irm_cmd->add_option("--cap", cap);

    auto* cond_cmd = app.add_subcommand("check-conditions", "Check theorem conditions (i)-(v)");
    cond_cmd->add_option("--instance", path)->required();
    cond_cmd->add_option("--cap", cap);

    auto* verify_cmd = app.add_subcommand("verify",
                                          "Check the optimality inclusion on this instance");
    verify_cmd->add_option("--instance", path)->required();
    verify_cmd->add_option("--loss", loss_text)->required();
    verify_cmd->add_option("--cap", cap);
    verify_cmd->add_flag("--expect-holds", expect_holds, "exit 1 when the inclusion fails");

    auto* mine_cmd = app.add_subcommand("mine", "Random search for theorem violations");
    mine_cmd->add_option("--seed", seed, "RNG seed (default 0)");
    mine_cmd->add_option("--trials", trials, "number of trials")->required();
    mine_cmd->add_option("--break", break_text, "condition to break: i, ii, v or none")
        ->required();
    mine_cmd->add_option("--limit", limit, "violations to include in the report (default 25)");
    mine_cmd->add_flag("--expect-found", expect_found, "exit 1 when nothing is found");
    mine_cmd->add_flag("--expect-empty", expect_empty, "exit 1 when anything is found");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(echo, path, expect_valid);
        if (risk_cmd->parsed())
            return run_risk(echo, path, domain_name, loss_text, bayes, phi_spec, head_spec,
                            float_mode);
        if (ood_cmd->parsed())
            return run_ood_risk(echo, path, loss_text, bayes, phi_spec, head_spec, float_mode);
        if (inv_cmd->parsed())
            return run_invariances(echo, path, max_cells, cap, float_mode, tol);
        if (chr_cmd->parsed()) return run_characterize(echo, path);
        if (wit_cmd->parsed()) return run_witness(echo, path, phi_spec);
        if (irm_cmd->parsed()) return run_solve_irm(echo, path, loss_text, cap);
        if (cond_cmd->parsed()) return run_check_conditions(echo, path, cap);
        if (verify_cmd->parsed())
            return run_verify(echo, path, loss_text, cap, expect_holds);
        if (mine_cmd->parsed())
            return run_mine(echo, seed, trials, break_text, limit, expect_found, expect_empty);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 2;
}
