#pragma once

#include "irmlab/exact_scalar.hpp"
#include "irmlab/feature_partition.hpp"
#include "irmlab/risk.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace irmlab::cli {

/// Deterministic structured-text report builder. Keys are emitted in call
/// order, so identical inputs yield byte-identical documents.
class ReportWriter {
public:
    ReportWriter(const std::string& command, const std::string& digest);

    void section(const std::string& name);
    void section_entry(const std::string& name);   // [[name]]
    void blank();

    void kv_raw(const std::string& key, const std::string& value);
    void kv_string(const std::string& key, const std::string& value);
    void kv_int(const std::string& key, long long value);
    void kv_bool(const std::string& key, bool value);

    /// Exact value plus advisory decimal: key = "4/25", key_decimal = "0.16".
    void kv_exact(const std::string& key, const ExactScalar& value);
    void kv_rational(const std::string& key, const Rational& value);

    void kv_partition(const std::string& key, const FeaturePartition& phi);
    void kv_partitions(const std::string& key, const std::vector<FeaturePartition>& phis);
    void kv_rational_vec(const std::string& key, const RationalVec& v);
    void kv_rational_matrix(const std::string& key, const std::vector<RationalVec>& m);
    void kv_string_list(const std::string& key, const std::vector<std::string>& items);

    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

std::string quoted(const std::string& s);
std::string partition_array(const FeaturePartition& phi);
std::string rational_array(const RationalVec& v);
std::string rational_matrix_array(const std::vector<RationalVec>& m);

/// "--head 4/5|1/5" / "--head 0,1|1,0": cells separated by '|', coordinates
/// by ','.
Head parse_head_spec(const std::string& spec);

/// "x1-projection" | "x2-projection" | "constant" | "singletons" |
/// "cells:0,1,0,1".
FeaturePartition parse_phi_spec(const Instance& instance, const std::string& spec);

} // namespace irmlab::cli
