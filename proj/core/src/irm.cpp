#include "irmlab/irm.hpp"

#include "irmlab/errors.hpp"

namespace irmlab {

Head optimal_head(const Instance& instance, const FeaturePartition& phi,
                  const std::vector<Domain>& training_domains, LossKind loss) {
    if (training_domains.empty()) {
        throw StructuralError("optimal_head requires at least one training domain");
    }
    if (phi.cell_of.size() != instance.x_size()) {
        throw StructuralError("partition does not cover the instance's X");
    }
    // Equal-weight pooled joint. The 1/n factor cancels in every conditional,
    // so the plain sum of joints is pooled mass up to scale.
    const std::size_t y_size = instance.y_size();
    std::vector<RationalVec> label_mass(phi.cell_count, RationalVec(y_size, Rational(0)));
    RationalVec cell_mass(phi.cell_count, Rational(0));
    for (const auto& domain : training_domains) {
        const JointTable joint = joint_distribution(instance, domain);
        for (std::size_t x = 0; x < joint.p.size(); ++x) {
            const int c = phi.cell_of[x];
            for (std::size_t j = 0; j < y_size; ++j) {
                if (joint.p[x][j] == 0) continue;
                label_mass[c][j] += joint.p[x][j];
                cell_mass[c] += joint.p[x][j];
            }
        }
    }

    const std::size_t dim = loss == LossKind::least_square
                                ? instance.y_points.front().size()
                                : y_size;
    Head head;
    head.cell_values.assign(phi.cell_count, RationalVec(dim, Rational(0)));
    for (int c = 0; c < phi.cell_count; ++c) {
        if (cell_mass[c] == 0) {
            if (loss == LossKind::cross_entropy) {
                head.cell_values[c].assign(y_size, Rational(1, static_cast<int>(y_size)));
            }
            continue;
        }
        if (loss == LossKind::least_square) {
            for (std::size_t j = 0; j < y_size; ++j) {
                if (label_mass[c][j] == 0) continue;
                const Rational w = label_mass[c][j] / cell_mass[c];
                for (std::size_t d = 0; d < dim; ++d) {
                    head.cell_values[c][d] += w * instance.y_points[j][d];
                }
            }
        } else {
            for (std::size_t j = 0; j < y_size; ++j) {
                head.cell_values[c][j] = label_mass[c][j] / cell_mass[c];
            }
        }
    }
    return head;
}

namespace detail {

IrmSolution irm_solve_over(const Instance& instance,
                           const std::vector<Domain>& training_domains, LossKind loss,
                           const std::vector<FeaturePartition>& candidates) {
    if (candidates.empty()) {
        throw StructuralError(
            "the bi-level problem is infeasible: no partition within h_size = " +
            std::to_string(instance.h_size) + " cells is invariant over the training domains");
    }
    IrmSolution solution;
    bool have_min = false;
    for (const auto& phi : candidates) {
        Predictor candidate{phi, optimal_head(instance, phi, training_domains, loss)};
        std::vector<ExactScalar> risks;
        risks.reserve(training_domains.size());
        ExactScalar pooled;
        for (const auto& domain : training_domains) {
            risks.push_back(risk(instance, domain, candidate, loss));
            pooled += risks.back();
        }
        const int cmp = have_min ? pooled.compare(solution.pooled_risk) : -1;
        if (cmp < 0) {
            solution.pooled_risk = pooled;
            solution.minimizers.clear();
            solution.per_domain_risks.clear();
            have_min = true;
        }
        if (cmp <= 0) {
            solution.minimizers.push_back(std::move(candidate));
            solution.per_domain_risks.push_back(std::move(risks));
        }
    }
    return solution;
}

} // namespace detail

IrmSolution irm_solve(const Instance& instance, const std::vector<Domain>& training_domains,
                      LossKind loss, std::size_t cap) {
    const auto candidates = enumerate_invariant_partitions(
        instance, training_domains, instance.h_size, cap);
    return detail::irm_solve_over(instance, training_domains, loss, candidates);
}

} // namespace irmlab
