#pragma once

#include "irmlab/exact_scalar.hpp"
#include "irmlab/feature_partition.hpp"

#include <vector>

namespace irmlab {

enum class LossKind { least_square, cross_entropy };

std::string to_string(LossKind loss);

/// Predictor head: one value vector per feature cell. Regression: a point in
/// Y-space. Classification: a probability vector over the labels.
struct Head {
    std::vector<RationalVec> cell_values;

    bool operator==(const Head&) const = default;
};

struct Predictor {
    FeaturePartition phi;
    Head head;

    bool operator==(const Predictor&) const = default;
};

/// Throws StructuralError when the predictor does not fit the instance or the
/// loss does not match the task (least-square <-> regression, cross-entropy
/// <-> classification; classification heads must lie on the simplex).
void check_predictor(const Instance& instance, const Predictor& predictor, LossKind loss);

/// Expected loss of the predictor under one domain. Cross-entropy risk is
/// +infinity (an ordinary ExactScalar value, not an exception) when the head
/// gives probability zero to a label carrying positive joint mass.
ExactScalar risk(const Instance& instance, const Domain& domain,
                 const Predictor& predictor, LossKind loss);
double risk_float(const Instance& instance, const Domain& domain,
                  const Predictor& predictor, LossKind loss);

/// Worst-case risk over the whole domain family, in closed form:
///   max_{x1} sum_y p(y|x1) * max_{x2} loss(head(phi(x1, x2)), y).
/// Every family member's risk is a mixture of these per-(x1, y) worst cases,
/// and the maximizing point-mass domain attains the value.
ExactScalar ood_risk(const Instance& instance, const Predictor& predictor, LossKind loss);
double ood_risk_float(const Instance& instance, const Predictor& predictor, LossKind loss);

/// A family member attaining ood_risk exactly: point-mass marginal at the
/// outer argmax, point-mass X2 kernels at each inner argmax. Ties break to the
/// lowest index so the returned domain is reproducible.
Domain worst_case_domain(const Instance& instance, const Predictor& predictor, LossKind loss);

/// The o.o.d.-optimal predictor: the X1-projection composed with the
/// conditional mean of the kernel (least-square) or the kernel row itself
/// (cross-entropy).
Predictor bayes_ood_predictor(const Instance& instance, LossKind loss);

} // namespace irmlab
