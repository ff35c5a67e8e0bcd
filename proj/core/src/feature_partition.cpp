#include "irmlab/feature_partition.hpp"

#include "irmlab/errors.hpp"

#include <algorithm>

namespace irmlab {

FeaturePartition canonical_partition(const std::vector<int>& raw) {
    FeaturePartition phi;
    phi.cell_of.resize(raw.size());
    std::vector<int> relabel;
    for (std::size_t x = 0; x < raw.size(); ++x) {
        const int old_id = raw[x];
        int found = -1;
        for (std::size_t k = 0; k < relabel.size(); ++k) {
            if (relabel[k] == old_id) {
                found = static_cast<int>(k);
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(relabel.size());
            relabel.push_back(old_id);
        }
        phi.cell_of[x] = found;
    }
    phi.cell_count = static_cast<int>(relabel.size());
    return phi;
}

FeaturePartition x1_projection(const Instance& instance) {
    std::vector<int> cells(instance.x_size());
    for (std::size_t x = 0; x < instance.x_size(); ++x) {
        cells[x] = static_cast<int>(instance.x1_of(x));
    }
    return canonical_partition(cells);
}

FeaturePartition x2_projection(const Instance& instance) {
    std::vector<int> cells(instance.x_size());
    for (std::size_t x = 0; x < instance.x_size(); ++x) {
        cells[x] = static_cast<int>(instance.x2_of(x));
    }
    return canonical_partition(cells);
}

FeaturePartition constant_partition(const Instance& instance) {
    return canonical_partition(std::vector<int>(instance.x_size(), 0));
}

FeaturePartition singleton_partition(const Instance& instance) {
    std::vector<int> cells(instance.x_size());
    for (std::size_t x = 0; x < instance.x_size(); ++x) cells[x] = static_cast<int>(x);
    return canonical_partition(cells);
}

bool constant_in_x2(const Instance& instance, const FeaturePartition& phi) {
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        const int first = phi.cell_of[instance.x_index(i1, 0)];
        for (std::size_t i2 = 1; i2 < instance.x2_size(); ++i2) {
            if (phi.cell_of[instance.x_index(i1, i2)] != first) return false;
        }
    }
    return true;
}

std::optional<RationalVec> conditional_given_feature(const JointTable& joint,
                                                     const FeaturePartition& phi,
                                                     int cell) {
    if (cell < 0 || cell >= phi.cell_count) {
        throw StructuralError("cell " + std::to_string(cell) + " is not a cell of phi");
    }
    if (phi.cell_of.size() != joint.p.size()) {
        throw StructuralError("partition size does not match joint table");
    }
    const std::size_t y_size = joint.p.empty() ? 0 : joint.p.front().size();
    RationalVec mass_y(y_size, Rational(0));
    Rational mass = 0;
    for (std::size_t x = 0; x < joint.p.size(); ++x) {
        if (phi.cell_of[x] != cell) continue;
        for (std::size_t j = 0; j < y_size; ++j) {
            mass_y[j] += joint.p[x][j];
            mass += joint.p[x][j];
        }
    }
    if (mass == 0) return std::nullopt;
    for (auto& q : mass_y) q /= mass;
    return mass_y;
}

void for_each_partition(std::size_t n, int max_cells,
                        const std::function<void(const FeaturePartition&)>& visit) {
    if (n == 0 || max_cells < 1) return;
    // Iterative restricted-growth-string enumeration in lexicographic order.
    FeaturePartition phi;
    phi.cell_of.assign(n, 0);
    std::vector<int> prefix_max(n, 0);   // max cell id over positions 0..i
    while (true) {
        phi.cell_count = prefix_max[n - 1] + 1;
        visit(phi);
        // Advance to the next RGS with at most max_cells cells.
        std::size_t i = n - 1;
        while (true) {
            const int limit = i == 0 ? 0 : std::min(prefix_max[i - 1] + 1, max_cells - 1);
            if (phi.cell_of[i] < limit) {
                ++phi.cell_of[i];
                prefix_max[i] = i == 0 ? phi.cell_of[0]
                                       : std::max(prefix_max[i - 1], phi.cell_of[i]);
                for (std::size_t k = i + 1; k < n; ++k) {
                    phi.cell_of[k] = 0;
                    prefix_max[k] = prefix_max[k - 1];
                }
                break;
            }
            if (i == 0) return;
            --i;
        }
    }
}

std::string format_cells(const FeaturePartition& phi) {
    std::string out;
    for (std::size_t x = 0; x < phi.cell_of.size(); ++x) {
        if (x > 0) out += ",";
        out += std::to_string(phi.cell_of[x]);
    }
    return out;
}

} // namespace irmlab
