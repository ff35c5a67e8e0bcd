#pragma once

#include "irmlab/feature_partition.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace irmlab {

inline constexpr std::size_t kDefaultEnumerationCap = 10;

/// Exact comparison by default; float mode compares conditionals within tol.
struct CompareMode {
    bool exact = true;
    double tol = 1e-9;

    static CompareMode exact_mode() { return {}; }
    static CompareMode float_mode(double tol = 1e-9) { return {false, tol}; }
};

struct InvarianceViolation {
    std::size_t domain_a = 0;
    std::size_t domain_b = 0;
    int cell = 0;
    RationalVec conditional_a;
    RationalVec conditional_b;
};

struct InvarianceReport {
    bool invariant = true;
    std::vector<InvarianceViolation> violations;
};

/// A partition is invariant over the domain list when, on every cell with
/// positive mass in two domains, the conditional label distributions agree.
/// Cells with zero mass in a domain impose no constraint there.
InvarianceReport is_invariant(const Instance& instance, const FeaturePartition& phi,
                              const std::vector<Domain>& domains,
                              CompareMode mode = CompareMode::exact_mode());

/// All partitions of X into at most min(max_cells, h_size) cells that are
/// invariant over the given domains, in canonical (restricted-growth-string
/// lexicographic) order. Throws CapacityError when |X| exceeds cap.
std::vector<FeaturePartition> enumerate_invariant_partitions(
    const Instance& instance, const std::vector<Domain>& domains, int max_cells,
    std::size_t cap = kDefaultEnumerationCap,
    CompareMode mode = CompareMode::exact_mode());

/// Closed-form candidate for the invariance set over the whole family: the
/// partitions that are constant in x2 and merge x1 points only when their
/// kernel rows are identical, capped at h_size cells. Canonical order.
std::vector<FeaturePartition> characterize_full_invariances(const Instance& instance);

/// Two explicitly constructed family members certifying that phi is not
/// invariant: point-mass marginal at x1_star, X2 placed by g1/g2 depending on
/// whether y is the target label. P(target | cell) is 1 in domain_a and 0 in
/// domain_b.
struct WitnessPair {
    Domain domain_a;
    Domain domain_b;
    int target_cell = 0;
    std::vector<std::size_t> target_label_set;
    Rational conditional_a;
    Rational conditional_b;
    std::size_t x1_star = 0;
    std::size_t x2_star = 0;
    std::size_t x2_star_alt = 0;
    std::size_t y_star = 0;
};

struct WitnessResult {
    enum class Kind { witness, factors, no_witness_available };

    Kind kind = Kind::factors;
    std::optional<WitnessPair> pair;
    std::string detail;
};

/// Searches lexicographically over (x1, x2-pair, y). Returns "factors" when
/// phi is constant in x2; "no-witness-available" when a split exists but no
/// label has kernel mass strictly between 0 and 1 at any split point.
WitnessResult construct_witness(const Instance& instance, const FeaturePartition& phi);

/// Every point-mass-marginal domain with every label-dependent point-mass X2
/// kernel: |X1| * |X2|^|Y| members. The strongest finite discriminating set.
std::vector<Domain> delta_domain_battery(const Instance& instance);

namespace detail {

/// Early-exit boolean invariance check over precomputed joint tables.
bool invariant_over(const std::vector<JointTable>& joints, const FeaturePartition& phi,
                    const CompareMode& mode = CompareMode::exact_mode());

} // namespace detail

} // namespace irmlab
