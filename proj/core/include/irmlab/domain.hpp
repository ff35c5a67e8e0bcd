#pragma once

#include "irmlab/instance.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace irmlab {

/// One member of the domain family, stored factored so that the fixed
/// conditional P(Y | X1) holds by construction:
///   P(x1, x2, y) = x1_marginal(x1) * kernel(y | x1) * x2_given_x1y(x2 | x1, y).
struct Domain {
    RationalVec x1_marginal;                              // over X1
    std::vector<std::vector<RationalVec>> x2_given_x1y;   // [x1][y] -> vector over X2

    bool operator==(const Domain&) const = default;
};

/// Structural + stochasticity checks of a domain against an instance
/// (dimensions, marginal sums to 1, every X2 row sums to 1, no negatives).
std::vector<std::string> validate_domain(const Instance& instance, const Domain& domain);

/// Dense materialization of the induced joint distribution.
/// p[x][j] = P(x1(x), x2(x), y_j), with x in row-major X enumeration.
struct JointTable {
    std::size_t x2_size = 0;
    std::vector<RationalVec> p;

    Rational total() const;
    /// Marginal over X1 (sums out x2 and y).
    RationalVec x1_marginal() const;
};

/// Materializes the product formula. Throws StructuralError when the domain's
/// dimensions do not match the instance.
JointTable joint_distribution(const Instance& instance, const Domain& domain);

/// Point-mass domain: marginal concentrated at x1_star, X2 kernel a point mass
/// at x2_choice[x1][y] for every pair.
Domain delta_domain(const Instance& instance, std::size_t x1_star,
                    const std::vector<std::vector<std::size_t>>& x2_choice);

/// Point-mass domain whose X2 placement depends on the label only (the
/// witness-style construction): x2 = y_to_x2[y] under every x1.
Domain delta_domain_y(const Instance& instance, std::size_t x1_star,
                      const std::vector<std::size_t>& y_to_x2);

/// Uniform marginal, uniform X2 kernels.
Domain uniform_domain(const Instance& instance);

} // namespace irmlab
