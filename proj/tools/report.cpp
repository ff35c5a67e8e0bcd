#include "report.hpp"

#include "irmlab/errors.hpp"
#include "irmlab/version.hpp"

namespace irmlab::cli {

ReportWriter::ReportWriter(const std::string& command, const std::string& digest) {
    kv_string("version", kVersion);
    kv_string("command", command);
    kv_string("instance_digest", digest);
}

void ReportWriter::section(const std::string& name) {
    os_ << "\n[" << name << "]\n";
}

void ReportWriter::section_entry(const std::string& name) {
    os_ << "\n[[" << name << "]]\n";
}

void ReportWriter::blank() { os_ << "\n"; }

void ReportWriter::kv_raw(const std::string& key, const std::string& value) {
    os_ << key << " = " << value << "\n";
}

void ReportWriter::kv_string(const std::string& key, const std::string& value) {
    kv_raw(key, quoted(value));
}

void ReportWriter::kv_int(const std::string& key, long long value) {
    kv_raw(key, std::to_string(value));
}

void ReportWriter::kv_bool(const std::string& key, bool value) {
    kv_raw(key, value ? "true" : "false");
}

void ReportWriter::kv_exact(const std::string& key, const ExactScalar& value) {
    kv_string(key, value.to_string());
    kv_string(key + "_decimal", format_decimal(value.to_double()));
}

void ReportWriter::kv_rational(const std::string& key, const Rational& value) {
    kv_string(key, format_rational(value));
    kv_string(key + "_decimal", format_decimal(to_double(value)));
}

void ReportWriter::kv_partition(const std::string& key, const FeaturePartition& phi) {
    kv_raw(key, partition_array(phi));
}

void ReportWriter::kv_partitions(const std::string& key,
                                 const std::vector<FeaturePartition>& phis) {
    std::string out = "[";
    for (std::size_t i = 0; i < phis.size(); ++i) {
        if (i > 0) out += ", ";
        out += partition_array(phis[i]);
    }
    out += "]";
    kv_raw(key, out);
}

void ReportWriter::kv_rational_vec(const std::string& key, const RationalVec& v) {
    kv_raw(key, rational_array(v));
}

void ReportWriter::kv_rational_matrix(const std::string& key,
                                      const std::vector<RationalVec>& m) {
    kv_raw(key, rational_matrix_array(m));
}

void ReportWriter::kv_string_list(const std::string& key,
                                  const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += quoted(items[i]);
    }
    out += "]";
    kv_raw(key, out);
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string partition_array(const FeaturePartition& phi) {
    std::string out = "[";
    for (std::size_t x = 0; x < phi.cell_of.size(); ++x) {
        if (x > 0) out += ", ";
        out += std::to_string(phi.cell_of[x]);
    }
    return out + "]";
}

std::string rational_array(const RationalVec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += quoted(format_rational(v[i]));
    }
    return out + "]";
}

std::string rational_matrix_array(const std::vector<RationalVec>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) out += ", ";
        out += rational_array(m[i]);
    }
    return out + "]";
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (const char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

} // namespace

Head parse_head_spec(const std::string& spec) {
    Head head;
    for (const std::string& cell : split(spec, '|')) {
        RationalVec values;
        for (const std::string& coord : split(cell, ',')) {
            values.push_back(parse_rational(coord));
        }
        head.cell_values.push_back(std::move(values));
    }
    return head;
}

FeaturePartition parse_phi_spec(const Instance& instance, const std::string& spec) {
    if (spec == "x1-projection") return x1_projection(instance);
    if (spec == "x2-projection") return x2_projection(instance);
    if (spec == "constant") return constant_partition(instance);
    if (spec == "singletons") return singleton_partition(instance);
    if (spec.rfind("cells:", 0) == 0) {
        std::vector<int> cells;
        for (const std::string& item : split(spec.substr(6), ',')) {
            try {
                cells.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw StructuralError("bad cell id '" + item + "' in --phi");
            }
        }
        if (cells.size() != instance.x_size()) {
            throw StructuralError("--phi cells list has " + std::to_string(cells.size()) +
                                  " entries, instance has " +
                                  std::to_string(instance.x_size()) + " atoms");
        }
        return canonical_partition(cells);
    }
    throw StructuralError("unknown --phi spec '" + spec +
                          "' (use x1-projection, x2-projection, constant, singletons "
                          "or cells:...)");
}

} // namespace irmlab::cli
