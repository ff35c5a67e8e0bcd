#pragma once

#include "irmlab/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace irmlab {

enum class TaskKind { regression, classification };

std::string to_string(TaskKind task);

/// The fixed conditional label distribution shared by every domain of the
/// family: table[i][j] = P(y = y_points[j] | x1 = x1_points[i]).
struct InvariantKernel {
    std::vector<RationalVec> table;

    bool operator==(const InvariantKernel&) const = default;
};

/// A finite problem instance: the spaces, the label task, the feature-space
/// cardinality budget and the invariant kernel. Immutable after construction;
/// every operation in the library is a pure function over it.
struct Instance {
    std::vector<RationalVec> x1_points;
    std::vector<RationalVec> x2_points;
    // Regression: label grid points in Y-space. Classification: labels are
    // the indices 1..m, stored as 1-dim points for uniform handling.
    std::vector<RationalVec> y_points;
    int h_size = 1;
    InvariantKernel kernel;
    TaskKind task = TaskKind::regression;

    std::size_t x1_size() const { return x1_points.size(); }
    std::size_t x2_size() const { return x2_points.size(); }
    std::size_t y_size() const { return y_points.size(); }
    std::size_t x_size() const { return x1_size() * x2_size(); }

    // Row-major enumeration of X = X1 x X2.
    std::size_t x_index(std::size_t i1, std::size_t i2) const {
        return i1 * x2_size() + i2;
    }
    std::size_t x1_of(std::size_t x) const { return x / x2_size(); }
    std::size_t x2_of(std::size_t x) const { return x % x2_size(); }

    const Rational& kernel_at(std::size_t i1, std::size_t j) const {
        return kernel.table[i1][j];
    }

    bool operator==(const Instance&) const = default;
};

/// Classification labels 1..m as 1-dim points.
std::vector<RationalVec> class_labels(std::size_t m);

struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

/// Reports every violated invariant of Instance / InvariantKernel. Never
/// throws; an empty list means the instance is valid.
ValidationReport validate_instance(const Instance& instance);

} // namespace irmlab
