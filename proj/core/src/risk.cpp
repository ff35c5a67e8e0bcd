#include "irmlab/risk.hpp"

#include "irmlab/errors.hpp"

#include <cmath>
#include <limits>

namespace irmlab {

std::string to_string(LossKind loss) {
    return loss == LossKind::least_square ? "least-square" : "cross-entropy";
}

void check_predictor(const Instance& instance, const Predictor& predictor, LossKind loss) {
    if (instance.x1_points.empty() || instance.x2_points.empty() || instance.y_points.empty()) {
        throw StructuralError("instance has an empty point set");
    }
    if (loss == LossKind::least_square && instance.task != TaskKind::regression) {
        throw StructuralError("least-square loss requires a regression task");
    }
    if (loss == LossKind::cross_entropy && instance.task != TaskKind::classification) {
        throw StructuralError("cross-entropy loss requires a classification task");
    }
    if (predictor.phi.cell_of.size() != instance.x_size()) {
        throw StructuralError("feature partition covers " +
                              std::to_string(predictor.phi.cell_of.size()) +
                              " atoms, instance has " + std::to_string(instance.x_size()));
    }
    if (predictor.head.cell_values.size() !=
        static_cast<std::size_t>(predictor.phi.cell_count)) {
        throw StructuralError("head has " + std::to_string(predictor.head.cell_values.size()) +
                              " cells, partition has " +
                              std::to_string(predictor.phi.cell_count));
    }
    const std::size_t want = loss == LossKind::least_square
                                 ? instance.y_points.front().size()
                                 : instance.y_size();
    for (std::size_t c = 0; c < predictor.head.cell_values.size(); ++c) {
        const auto& v = predictor.head.cell_values[c];
        if (v.size() != want) {
            throw StructuralError("head cell " + std::to_string(c) + " has dimension " +
                                  std::to_string(v.size()) + ", expected " +
                                  std::to_string(want));
        }
        if (loss == LossKind::cross_entropy && !is_probability_vector(v)) {
            throw StructuralError("head cell " + std::to_string(c) +
                                  " is not on the probability simplex");
        }
    }
}

namespace {

ExactScalar exact_loss(const Instance& instance, const RationalVec& head_value,
                       std::size_t y, LossKind loss) {
    if (loss == LossKind::least_square) {
        return ExactScalar::from_rational(squared_distance(head_value, instance.y_points[y]));
    }
    return ExactScalar::neg_log(head_value[y]);
}

double float_loss(const Instance& instance, const RationalVec& head_value,
                  std::size_t y, LossKind loss) {
    if (loss == LossKind::least_square) {
        double s = 0;
        for (std::size_t k = 0; k < head_value.size(); ++k) {
            const double d = to_double(head_value[k]) - to_double(instance.y_points[y][k]);
            s += d * d;
        }
        return s;
    }
    const auto& p = head_value[y];
    if (p == 0) return std::numeric_limits<double>::infinity();
    return -std::log(to_double(p));
}

} // namespace

ExactScalar risk(const Instance& instance, const Domain& domain,
                 const Predictor& predictor, LossKind loss) {
    check_predictor(instance, predictor, loss);
    const JointTable joint = joint_distribution(instance, domain);
    ExactScalar total;
    for (std::size_t x = 0; x < joint.p.size(); ++x) {
        const auto& head_value = predictor.head.cell_values[predictor.phi.cell_of[x]];
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const Rational& mass = joint.p[x][j];
            if (mass == 0) continue;
            const ExactScalar l = exact_loss(instance, head_value, j, loss);
            if (l.is_infinite()) return ExactScalar::infinity();
            total += l.scaled(mass);
        }
    }
    return total;
}

double risk_float(const Instance& instance, const Domain& domain,
                  const Predictor& predictor, LossKind loss) {
    check_predictor(instance, predictor, loss);
    const JointTable joint = joint_distribution(instance, domain);
    double total = 0;
    for (std::size_t x = 0; x < joint.p.size(); ++x) {
        const auto& head_value = predictor.head.cell_values[predictor.phi.cell_of[x]];
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const Rational& mass = joint.p[x][j];
            if (mass == 0) continue;
            const double l = float_loss(instance, head_value, j, loss);
            if (std::isinf(l)) return l;
            total += to_double(mass) * l;
        }
    }
    return total;
}

ExactScalar ood_risk(const Instance& instance, const Predictor& predictor, LossKind loss) {
    check_predictor(instance, predictor, loss);
    ExactScalar best;
    bool have_best = false;
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        ExactScalar acc;
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const Rational& k = instance.kernel_at(i1, j);
            if (k == 0) continue;
            ExactScalar worst;
            bool have_worst = false;
            for (std::size_t i2 = 0; i2 < instance.x2_size(); ++i2) {
                const auto& head_value =
                    predictor.head.cell_values[predictor.phi.cell_of[instance.x_index(i1, i2)]];
                ExactScalar l = exact_loss(instance, head_value, j, loss);
                if (!have_worst || l > worst) {
                    worst = std::move(l);
                    have_worst = true;
                }
            }
            acc += worst.scaled(k);
        }
        if (!have_best || acc > best) {
            best = std::move(acc);
            have_best = true;
        }
    }
    return best;
}

double ood_risk_float(const Instance& instance, const Predictor& predictor, LossKind loss) {
    check_predictor(instance, predictor, loss);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        double acc = 0;
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const Rational& k = instance.kernel_at(i1, j);
            if (k == 0) continue;
            double worst = -std::numeric_limits<double>::infinity();
            for (std::size_t i2 = 0; i2 < instance.x2_size(); ++i2) {
                const auto& head_value =
                    predictor.head.cell_values[predictor.phi.cell_of[instance.x_index(i1, i2)]];
                worst = std::max(worst, float_loss(instance, head_value, j, loss));
            }
            if (std::isinf(worst)) return worst;
            acc += to_double(k) * worst;
        }
        best = std::max(best, acc);
    }
    return best;
}

Domain worst_case_domain(const Instance& instance, const Predictor& predictor, LossKind loss) {
    check_predictor(instance, predictor, loss);
    std::vector<std::vector<std::size_t>> choice(
        instance.x1_size(), std::vector<std::size_t>(instance.y_size(), 0));
    ExactScalar best;
    std::size_t best_x1 = 0;
    bool have_best = false;
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        ExactScalar acc;
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            ExactScalar worst;
            std::size_t worst_x2 = 0;
            bool have_worst = false;
            for (std::size_t i2 = 0; i2 < instance.x2_size(); ++i2) {
                const auto& head_value =
                    predictor.head.cell_values[predictor.phi.cell_of[instance.x_index(i1, i2)]];
                ExactScalar l = exact_loss(instance, head_value, j, loss);
                if (!have_worst || l > worst) {
                    worst = std::move(l);
                    worst_x2 = i2;
                    have_worst = true;
                }
            }
            choice[i1][j] = worst_x2;
            const Rational& k = instance.kernel_at(i1, j);
            if (k != 0) acc += worst.scaled(k);
        }
        if (!have_best || acc > best) {
            best = std::move(acc);
            best_x1 = i1;
            have_best = true;
        }
    }
    return delta_domain(instance, best_x1, choice);
}

Predictor bayes_ood_predictor(const Instance& instance, LossKind loss) {
    Predictor p;
    p.phi = x1_projection(instance);
    p.head.cell_values.resize(instance.x1_size());
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        if (loss == LossKind::least_square) {
            RationalVec mean(instance.y_points.front().size(), Rational(0));
            for (std::size_t j = 0; j < instance.y_size(); ++j) {
                const Rational& k = instance.kernel_at(i1, j);
                if (k == 0) continue;
                for (std::size_t d = 0; d < mean.size(); ++d) {
                    mean[d] += k * instance.y_points[j][d];
                }
            }
            p.head.cell_values[i1] = std::move(mean);
        } else {
            p.head.cell_values[i1] = instance.kernel.table[i1];
        }
    }
    check_predictor(instance, p, loss);
    return p;
}

} // namespace irmlab
