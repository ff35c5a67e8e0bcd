#pragma once

#include "irmlab/invariance.hpp"
#include "irmlab/risk.hpp"

#include <vector>

namespace irmlab {

/// Exact solution of the bi-level problem: minimize the summed training-domain
/// risks over (invariant partition, head). All exact ties are kept.
struct IrmSolution {
    std::vector<Predictor> minimizers;
    ExactScalar pooled_risk;
    // per_domain_risks[m][e]: risk of minimizer m on training domain e.
    std::vector<std::vector<ExactScalar>> per_domain_risks;
};

/// The head minimizing the summed training risks for a fixed partition, under
/// equal-weight pooling: the pooled conditional mean (least-square) or pooled
/// conditional distribution (cross-entropy) per cell. Cells with zero pooled
/// mass get a default head: the zero vector (regression) or the uniform
/// distribution (classification).
Head optimal_head(const Instance& instance, const FeaturePartition& phi,
                  const std::vector<Domain>& training_domains, LossKind loss);

/// Enumerates the invariant partitions, pairs each with its optimal head, and
/// returns every pair attaining the minimum pooled risk. Throws CapacityError
/// above the enumeration cap and StructuralError when no partition within
/// h_size cells is invariant.
IrmSolution irm_solve(const Instance& instance, const std::vector<Domain>& training_domains,
                      LossKind loss, std::size_t cap = kDefaultEnumerationCap);

namespace detail {

/// irm_solve over a precomputed candidate set (shared with the verify module
/// so the enumeration runs once per verdict).
IrmSolution irm_solve_over(const Instance& instance,
                           const std::vector<Domain>& training_domains, LossKind loss,
                           const std::vector<FeaturePartition>& candidates);

} // namespace detail

} // namespace irmlab
