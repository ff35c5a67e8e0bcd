#include "irmlab/domain.hpp"

#include "irmlab/errors.hpp"

namespace irmlab {

std::vector<std::string> validate_domain(const Instance& instance, const Domain& domain) {
    std::vector<std::string> v;
    if (domain.x1_marginal.size() != instance.x1_size()) {
        v.push_back("x1_marginal has " + std::to_string(domain.x1_marginal.size()) +
                    " entries, expected " + std::to_string(instance.x1_size()));
        return v;
    }
    if (!is_probability_vector(domain.x1_marginal)) {
        v.push_back("x1_marginal is not a probability vector (sums to " +
                    format_rational(vec_sum(domain.x1_marginal)) + ")");
    }
    if (domain.x2_given_x1y.size() != instance.x1_size()) {
        v.push_back("x2_given_x1y has " + std::to_string(domain.x2_given_x1y.size()) +
                    " x1 slices, expected " + std::to_string(instance.x1_size()));
        return v;
    }
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        if (domain.x2_given_x1y[i1].size() != instance.y_size()) {
            v.push_back("x2_given_x1y[" + std::to_string(i1) + "] has " +
                        std::to_string(domain.x2_given_x1y[i1].size()) +
                        " label rows, expected " + std::to_string(instance.y_size()));
            continue;
        }
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const auto& row = domain.x2_given_x1y[i1][j];
            if (row.size() != instance.x2_size()) {
                v.push_back("x2_given_x1y[" + std::to_string(i1) + "][" + std::to_string(j) +
                            "] has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(instance.x2_size()));
            } else if (!is_probability_vector(row)) {
                v.push_back("x2_given_x1y[" + std::to_string(i1) + "][" + std::to_string(j) +
                            "] is not a probability vector (sums to " +
                            format_rational(vec_sum(row)) + ")");
            }
        }
    }
    return v;
}

Rational JointTable::total() const {
    Rational s = 0;
    for (const auto& row : p) s += vec_sum(row);
    return s;
}

RationalVec JointTable::x1_marginal() const {
    if (x2_size == 0) return {};
    RationalVec out(p.size() / x2_size, Rational(0));
    for (std::size_t x = 0; x < p.size(); ++x) out[x / x2_size] += vec_sum(p[x]);
    return out;
}

JointTable joint_distribution(const Instance& instance, const Domain& domain) {
    const auto problems = validate_domain(instance, domain);
    if (!problems.empty()) {
        throw StructuralError("domain does not match instance: " + problems.front());
    }
    JointTable joint;
    joint.x2_size = instance.x2_size();
    joint.p.assign(instance.x_size(), RationalVec(instance.y_size(), Rational(0)));
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        const Rational& m = domain.x1_marginal[i1];
        if (m == 0) continue;
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            const Rational base = m * instance.kernel_at(i1, j);
            if (base == 0) continue;
            const auto& row = domain.x2_given_x1y[i1][j];
            for (std::size_t i2 = 0; i2 < instance.x2_size(); ++i2) {
                if (row[i2] == 0) continue;
                joint.p[instance.x_index(i1, i2)][j] = base * row[i2];
            }
        }
    }
    return joint;
}

namespace {

RationalVec delta_vec(std::size_t size, std::size_t at) {
    RationalVec v(size, Rational(0));
    v[at] = 1;
    return v;
}

} // namespace

Domain delta_domain(const Instance& instance, std::size_t x1_star,
                    const std::vector<std::vector<std::size_t>>& x2_choice) {
    Domain d;
    d.x1_marginal = delta_vec(instance.x1_size(), x1_star);
    d.x2_given_x1y.resize(instance.x1_size());
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        d.x2_given_x1y[i1].resize(instance.y_size());
        for (std::size_t j = 0; j < instance.y_size(); ++j) {
            d.x2_given_x1y[i1][j] = delta_vec(instance.x2_size(), x2_choice[i1][j]);
        }
    }
    return d;
}

Domain delta_domain_y(const Instance& instance, std::size_t x1_star,
                      const std::vector<std::size_t>& y_to_x2) {
    std::vector<std::vector<std::size_t>> choice(
        instance.x1_size(), std::vector<std::size_t>(instance.y_size(), 0));
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        for (std::size_t j = 0; j < instance.y_size(); ++j) choice[i1][j] = y_to_x2[j];
    }
    return delta_domain(instance, x1_star, choice);
}

Domain uniform_domain(const Instance& instance) {
    Domain d;
    d.x1_marginal.assign(instance.x1_size(),
                         Rational(1, static_cast<int>(instance.x1_size())));
    d.x2_given_x1y.assign(
        instance.x1_size(),
        std::vector<RationalVec>(
            instance.y_size(),
            RationalVec(instance.x2_size(),
                        Rational(1, static_cast<int>(instance.x2_size())))));
    return d;
}

} // namespace irmlab
