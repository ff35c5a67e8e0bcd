#pragma once

#include "irmlab/domain.hpp"

#include <string>
#include <utility>
#include <vector>

namespace irmlab {

/// The on-disk form of an instance: the spaces, task, h_size and kernel, plus
/// a list of named domains and the subset of names used as training domains.
///
/// Format: a TOML subset —
///
///   task = "regression"            # or "classification"
///   h_size = 2
///   training = ["e1", "e2"]
///
///   [spaces]
///   x1 = [["0/1"], ["1/1"]]        # points as rational coordinate lists
///   x2 = [["0/1"], ["1/1"]]
///   y  = [["0/1"], ["1/1"]]        # regression only
///   # y = 2                        # classification: the number of labels
///
///   [kernel]
///   rows = [["1/5", "4/5"], ["4/5", "1/5"]]   # rows[i][j] = P(y_j | x1_i)
///
///   [[domain]]
///   name = "e1"
///   x1_marginal = ["1/2", "1/2"]
///   x2_given_x1y = [[["0/1","1/1"], ...], ...]  # [x1][y] -> row over X2
///
/// Rationals are "num/den" or integer strings. Arrays may span lines;
/// comments start with '#'. Parse problems raise ParseError with a position.
struct InstanceDocument {
    Instance instance;
    std::vector<std::pair<std::string, Domain>> domains;
    std::vector<std::string> training;

    const Domain* find_domain(const std::string& name) const;
    /// Training domains resolved in the order listed. Throws StructuralError
    /// on an unknown name.
    std::vector<Domain> training_domains() const;
};

InstanceDocument parse_instance_document(const std::string& text, const std::string& origin);
InstanceDocument load_instance_document(const std::string& path);

/// Canonical serialization; parse(serialize(doc)) reproduces doc exactly.
std::string serialize_instance_document(const InstanceDocument& doc);

/// FNV-1a 64-bit content hash, rendered as 16 hex digits.
std::string content_digest(const std::string& bytes);

} // namespace irmlab
