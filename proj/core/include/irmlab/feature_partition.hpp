#pragma once

#include "irmlab/domain.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace irmlab {

/// A feature map X -> H up to relabeling of H: only the fibers matter for
/// conditionals and risks, so the canonical form is a partition of X.
/// Canonical labeling: cell ids appear in first-occurrence order over the
/// row-major enumeration of X (a restricted growth string).
struct FeaturePartition {
    std::vector<int> cell_of;   // one entry per x in row-major order
    int cell_count = 0;

    bool operator==(const FeaturePartition&) const = default;
    bool operator<(const FeaturePartition& o) const { return cell_of < o.cell_of; }
};

/// Relabels an arbitrary cell assignment into canonical form.
FeaturePartition canonical_partition(const std::vector<int>& raw);

FeaturePartition x1_projection(const Instance& instance);
FeaturePartition x2_projection(const Instance& instance);
FeaturePartition constant_partition(const Instance& instance);
FeaturePartition singleton_partition(const Instance& instance);

/// Cells are unions of {x1} x X2 slabs, i.e. the map factors through the
/// X1-projection.
bool constant_in_x2(const Instance& instance, const FeaturePartition& phi);

/// P(Y | Phi(X) = cell) under the joint, or nullopt when the cell has zero
/// probability.
std::optional<RationalVec> conditional_given_feature(const JointTable& joint,
                                                     const FeaturePartition& phi,
                                                     int cell);

/// Visits every canonical partition of n atoms into at most max_cells cells,
/// in lexicographic restricted-growth-string order.
void for_each_partition(std::size_t n, int max_cells,
                        const std::function<void(const FeaturePartition&)>& visit);

/// "0,1,0,1" cell-assignment rendering.
std::string format_cells(const FeaturePartition& phi);

} // namespace irmlab
