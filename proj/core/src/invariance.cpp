#include "irmlab/invariance.hpp"

#include "irmlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace irmlab {

namespace {

struct CellStats {
    Rational mass;
    RationalVec label_mass;
};

std::vector<CellStats> cell_stats(const JointTable& joint, const FeaturePartition& phi) {
    const std::size_t y_size = joint.p.empty() ? 0 : joint.p.front().size();
    std::vector<CellStats> stats(phi.cell_count);
    for (auto& s : stats) {
        s.mass = 0;
        s.label_mass.assign(y_size, Rational(0));
    }
    for (std::size_t x = 0; x < joint.p.size(); ++x) {
        auto& s = stats[phi.cell_of[x]];
        for (std::size_t j = 0; j < y_size; ++j) {
            if (joint.p[x][j] == 0) continue;
            s.label_mass[j] += joint.p[x][j];
            s.mass += joint.p[x][j];
        }
    }
    return stats;
}

bool stats_agree(const CellStats& a, const CellStats& b, const CompareMode& mode) {
    if (mode.exact) {
        // a.label_mass / a.mass == b.label_mass / b.mass, cross-multiplied.
        for (std::size_t j = 0; j < a.label_mass.size(); ++j) {
            if (a.label_mass[j] * b.mass != b.label_mass[j] * a.mass) return false;
        }
        return true;
    }
    for (std::size_t j = 0; j < a.label_mass.size(); ++j) {
        const double pa = to_double(a.label_mass[j]) / to_double(a.mass);
        const double pb = to_double(b.label_mass[j]) / to_double(b.mass);
        if (std::abs(pa - pb) > mode.tol) return false;
    }
    return true;
}

} // namespace

namespace detail {

// In exact mode each cell is compared against its first positive-mass domain
// (equality is transitive); in float mode all pairs are compared, matching
// the report semantics.
bool invariant_over(const std::vector<JointTable>& joints, const FeaturePartition& phi,
                    const CompareMode& mode) {
    std::vector<std::vector<CellStats>> all;
    all.reserve(joints.size());
    std::vector<std::vector<const CellStats*>> defined(phi.cell_count);
    for (const auto& joint : joints) {
        all.push_back(cell_stats(joint, phi));
        const auto& stats = all.back();
        for (int c = 0; c < phi.cell_count; ++c) {
            if (stats[c].mass == 0) continue;
            for (const CellStats* prev : defined[c]) {
                if (!stats_agree(*prev, stats[c], mode)) return false;
            }
            if (mode.exact && !defined[c].empty()) continue;
            defined[c].push_back(&stats[c]);
        }
    }
    return true;
}

} // namespace detail

InvarianceReport is_invariant(const Instance& instance, const FeaturePartition& phi,
                              const std::vector<Domain>& domains, CompareMode mode) {
    if (domains.empty()) throw StructuralError("is_invariant requires at least one domain");
    if (phi.cell_of.size() != instance.x_size()) {
        throw StructuralError("partition does not cover the instance's X");
    }
    std::vector<std::vector<std::optional<RationalVec>>> conditionals(domains.size());
    for (std::size_t d = 0; d < domains.size(); ++d) {
        const JointTable joint = joint_distribution(instance, domains[d]);
        conditionals[d].resize(phi.cell_count);
        for (int c = 0; c < phi.cell_count; ++c) {
            conditionals[d][c] = conditional_given_feature(joint, phi, c);
        }
    }
    InvarianceReport report;
    for (int c = 0; c < phi.cell_count; ++c) {
        for (std::size_t a = 0; a < domains.size(); ++a) {
            if (!conditionals[a][c]) continue;
            for (std::size_t b = a + 1; b < domains.size(); ++b) {
                if (!conditionals[b][c]) continue;
                const auto& va = *conditionals[a][c];
                const auto& vb = *conditionals[b][c];
                bool agree = true;
                if (mode.exact) {
                    agree = va == vb;
                } else {
                    for (std::size_t j = 0; j < va.size() && agree; ++j) {
                        agree = std::abs(to_double(va[j]) - to_double(vb[j])) <= mode.tol;
                    }
                }
                if (!agree) {
                    report.violations.push_back({a, b, c, va, vb});
                }
            }
        }
    }
    report.invariant = report.violations.empty();
    return report;
}

std::vector<FeaturePartition> enumerate_invariant_partitions(
    const Instance& instance, const std::vector<Domain>& domains, int max_cells,
    std::size_t cap, CompareMode mode) {
    if (domains.empty()) {
        throw StructuralError("enumeration requires at least one training domain");
    }
    if (instance.x_size() > cap) {
        throw CapacityError("instance has " + std::to_string(instance.x_size()) +
                            " atoms; the enumeration cap is |X| <= " + std::to_string(cap));
    }
    std::vector<JointTable> joints;
    joints.reserve(domains.size());
    for (const auto& d : domains) joints.push_back(joint_distribution(instance, d));

    const int cells = std::min(max_cells, instance.h_size);
    std::vector<FeaturePartition> out;
    if (cells < 1) return out;
    for_each_partition(instance.x_size(), cells, [&](const FeaturePartition& phi) {
        if (detail::invariant_over(joints, phi, mode)) out.push_back(phi);
    });
    return out;
}

std::vector<FeaturePartition> characterize_full_invariances(const Instance& instance) {
    // Group x1 points by identical kernel rows; a partition of X1 lifts to a
    // family-wide invariance iff every block stays inside one group.
    const std::size_t n1 = instance.x1_size();
    std::vector<int> row_group(n1, -1);
    {
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t r = 0; r < reps.size(); ++r) {
                if (instance.kernel.table[i] == instance.kernel.table[reps[r]]) {
                    row_group[i] = static_cast<int>(r);
                    break;
                }
            }
            if (row_group[i] < 0) {
                row_group[i] = static_cast<int>(reps.size());
                reps.push_back(i);
            }
        }
    }

    const int max_cells = std::min<int>(instance.h_size, static_cast<int>(n1));
    std::vector<FeaturePartition> out;
    std::vector<int> assign(n1, 0);
    std::vector<int> cell_group;   // row group of each open cell

    const auto lift = [&]() {
        std::vector<int> cells(instance.x_size());
        for (std::size_t x = 0; x < instance.x_size(); ++x) {
            cells[x] = assign[instance.x1_of(x)];
        }
        FeaturePartition phi;
        phi.cell_of = std::move(cells);
        phi.cell_count = static_cast<int>(cell_group.size());
        out.push_back(std::move(phi));
    };

    const std::function<void(std::size_t)> recurse = [&](std::size_t i) {
        if (i == n1) {
            lift();
            return;
        }
        for (std::size_t c = 0; c < cell_group.size(); ++c) {
            if (cell_group[c] != row_group[i]) continue;
            assign[i] = static_cast<int>(c);
            recurse(i + 1);
        }
        if (static_cast<int>(cell_group.size()) < max_cells) {
            assign[i] = static_cast<int>(cell_group.size());
            cell_group.push_back(row_group[i]);
            recurse(i + 1);
            cell_group.pop_back();
        }
    };
    if (max_cells >= 1) recurse(0);
    std::sort(out.begin(), out.end());
    return out;
}

WitnessResult construct_witness(const Instance& instance, const FeaturePartition& phi) {
    if (phi.cell_of.size() != instance.x_size()) {
        throw StructuralError("partition does not cover the instance's X");
    }
    if (constant_in_x2(instance, phi)) {
        return {WitnessResult::Kind::factors, std::nullopt,
                "phi is constant in x2 and factors through the X1-projection"};
    }
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        for (std::size_t a = 0; a < instance.x2_size(); ++a) {
            for (std::size_t b = a + 1; b < instance.x2_size(); ++b) {
                const int cell_a = phi.cell_of[instance.x_index(i1, a)];
                const int cell_b = phi.cell_of[instance.x_index(i1, b)];
                if (cell_a == cell_b) continue;
                for (std::size_t j = 0; j < instance.y_size(); ++j) {
                    const Rational& p = instance.kernel_at(i1, j);
                    if (p <= 0 || p >= 1) continue;
                    // g1 sends the target label to x2=a, everything else to b;
                    // g2 swaps the two placements.
                    std::vector<std::size_t> g1(instance.y_size(), b);
                    std::vector<std::size_t> g2(instance.y_size(), a);
                    g1[j] = a;
                    g2[j] = b;
                    WitnessPair pair;
                    pair.domain_a = delta_domain_y(instance, i1, g1);
                    pair.domain_b = delta_domain_y(instance, i1, g2);
                    pair.target_cell = cell_a;
                    pair.target_label_set = {j};
                    pair.conditional_a = 1;
                    pair.conditional_b = 0;
                    pair.x1_star = i1;
                    pair.x2_star = a;
                    pair.x2_star_alt = b;
                    pair.y_star = j;
                    return {WitnessResult::Kind::witness, std::move(pair), ""};
                }
            }
        }
    }
    return {WitnessResult::Kind::no_witness_available, std::nullopt,
            "no label has kernel mass strictly between 0 and 1 at any x2-split "
            "point (the richness condition fails)"};
}

std::vector<Domain> delta_domain_battery(const Instance& instance) {
    double combos = 1;
    for (std::size_t j = 0; j < instance.y_size(); ++j) {
        combos *= static_cast<double>(instance.x2_size());
    }
    if (combos * static_cast<double>(instance.x1_size()) > 4096) {
        throw CapacityError("delta-domain battery would exceed 4096 members");
    }
    std::vector<Domain> battery;
    std::vector<std::size_t> g(instance.y_size(), 0);
    for (std::size_t i1 = 0; i1 < instance.x1_size(); ++i1) {
        std::fill(g.begin(), g.end(), 0);
        while (true) {
            battery.push_back(delta_domain_y(instance, i1, g));
            std::size_t k = g.size();
            while (k > 0 && g[k - 1] + 1 == instance.x2_size()) g[--k] = 0;
            if (k == 0) break;
            ++g[k - 1];
        }
    }
    return battery;
}

} // namespace irmlab
