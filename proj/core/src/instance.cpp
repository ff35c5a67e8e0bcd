#include "irmlab/instance.hpp"

#include <set>

namespace irmlab {

std::string to_string(TaskKind task) {
    return task == TaskKind::regression ? "regression" : "classification";
}

std::vector<RationalVec> class_labels(std::size_t m) {
    std::vector<RationalVec> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = {Rational(static_cast<int>(i) + 1)};
    return out;
}

namespace {

void check_point_set(const std::vector<RationalVec>& points, const std::string& name,
                     std::vector<std::string>& out) {
    if (points.empty()) {
        out.push_back(name + " empty");
        return;
    }
    const std::size_t dim = points.front().size();
    std::set<std::vector<Rational>> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) {
            out.push_back(name + " point " + std::to_string(i) + " has dimension " +
                          std::to_string(points[i].size()) + ", expected " +
                          std::to_string(dim));
        }
        if (!seen.insert(points[i]).second) {
            out.push_back(name + " point " + std::to_string(i) + " duplicates an earlier point");
        }
    }
    if (dim == 0) out.push_back(name + " points have dimension 0");
}

} // namespace

ValidationReport validate_instance(const Instance& instance) {
    ValidationReport report;
    auto& v = report.violations;

    check_point_set(instance.x1_points, "X1", v);
    check_point_set(instance.x2_points, "X2", v);
    check_point_set(instance.y_points, "Y", v);

    if (instance.h_size < 1) {
        v.push_back("h_size is " + std::to_string(instance.h_size) + ", expected >= 1");
    }

    const auto& table = instance.kernel.table;
    if (table.size() != instance.x1_size()) {
        v.push_back("kernel has " + std::to_string(table.size()) + " rows, expected " +
                    std::to_string(instance.x1_size()));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].size() != instance.y_size()) {
            v.push_back("kernel row " + std::to_string(i) + " has " +
                        std::to_string(table[i].size()) + " entries, expected " +
                        std::to_string(instance.y_size()));
            continue;
        }
        bool in_range = true;
        for (const auto& p : table[i]) {
            if (p < 0 || p > 1) {
                v.push_back("kernel row " + std::to_string(i) + " entry " +
                            format_rational(p) + " outside [0, 1]");
                in_range = false;
            }
        }
        const Rational s = vec_sum(table[i]);
        if (in_range && s != 1) {
            v.push_back("kernel row " + std::to_string(i) + " sums to " +
                        format_rational(s) + ", expected 1/1");
        }
    }
    return report;
}

} // namespace irmlab
