#include "irmlab/io.hpp"

#include "irmlab/errors.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace irmlab {

namespace {

// ---------------------------------------------------------------------------
// Minimal TOML-subset reader: [table] / [[table-array]] headers, key = value,
// values are strings, integers, booleans or (nested, possibly multi-line)
// arrays. Enough for the documented instance schema, with positioned errors.
// ---------------------------------------------------------------------------

struct TomlValue {
    enum class Kind { string, integer, boolean, array };

    Kind kind = Kind::string;
    std::string str;
    long long integer = 0;
    bool boolean = false;
    std::vector<TomlValue> array;
    int line = 0;
};

struct TomlTable {
    std::map<std::string, TomlValue> entries;
    int line = 0;
};

struct TomlDocument {
    TomlTable root;
    std::map<std::string, TomlTable> tables;
    std::map<std::string, std::vector<TomlTable>> table_arrays;
};

class TomlParser {
public:
    TomlParser(const std::string& text, std::string origin)
        : text_(text), origin_(std::move(origin)) {}

    TomlDocument parse() {
        TomlDocument doc;
        doc.root.line = 1;
        TomlTable* current = &doc.root;
        while (!at_end()) {
            skip_blank();
            if (at_end()) break;
            if (peek() == '[') {
                current = parse_header(doc);
                continue;
            }
            parse_entry(*current);
        }
        return doc;
    }

private:
    const std::string& text_;
    std::string origin_;
    std::size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(origin_, line_, what);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_spaces() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
    }

    void skip_comment() {
        while (!at_end() && peek() != '\n') advance();
    }

    // Skips whitespace, newlines and comments.
    void skip_blank() {
        while (!at_end()) {
            skip_spaces();
            if (at_end()) return;
            if (peek() == '\n') {
                advance();
            } else if (peek() == '#') {
                skip_comment();
            } else {
                return;
            }
        }
    }

    void expect_line_end() {
        skip_spaces();
        if (at_end()) return;
        if (peek() == '#') skip_comment();
        if (at_end()) return;
        if (peek() != '\n') fail("unexpected trailing characters");
        advance();
    }

    std::string parse_bare_key() {
        std::string key;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                peek() == '-')) {
            key += advance();
        }
        if (key.empty()) fail("expected a key");
        return key;
    }

    TomlTable* parse_header(TomlDocument& doc) {
        const int header_line = line_;
        advance();   // consume '['
        const bool is_array = !at_end() && peek() == '[';
        if (is_array) advance();
        skip_spaces();
        const std::string name = parse_bare_key();
        skip_spaces();
        if (at_end() || peek() != ']') fail("expected ']' in table header");
        advance();
        if (is_array) {
            if (at_end() || peek() != ']') fail("expected ']]' in table-array header");
            advance();
        }
        expect_line_end();
        if (is_array) {
            doc.table_arrays[name].push_back(TomlTable{{}, header_line});
            return &doc.table_arrays[name].back();
        }
        if (doc.tables.count(name)) fail("table [" + name + "] defined twice");
        doc.tables[name] = TomlTable{{}, header_line};
        return &doc.tables[name];
    }

    void parse_entry(TomlTable& table) {
        const int entry_line = line_;
        const std::string key = parse_bare_key();
        skip_spaces();
        if (at_end() || peek() != '=') fail("expected '=' after key '" + key + "'");
        advance();
        skip_spaces();
        TomlValue value = parse_value();
        expect_line_end();
        if (!table.entries.emplace(key, std::move(value)).second) {
            throw ParseError(origin_, entry_line, "key '" + key + "' defined twice");
        }
    }

    TomlValue parse_value() {
        if (at_end()) fail("expected a value");
        TomlValue v;
        v.line = line_;
        const char c = peek();
        if (c == '"') {
            v.kind = TomlValue::Kind::string;
            v.str = parse_string();
        } else if (c == '[') {
            v.kind = TomlValue::Kind::array;
            v.array = parse_array();
        } else if (c == 't' || c == 'f') {
            v.kind = TomlValue::Kind::boolean;
            v.boolean = parse_boolean();
        } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            v.kind = TomlValue::Kind::integer;
            v.integer = parse_integer();
        } else {
            fail("unsupported value");
        }
        return v;
    }

    std::string parse_string() {
        advance();   // consume '"'
        std::string out;
        while (!at_end() && peek() != '"') {
            const char c = advance();
            if (c == '\n' || c == '\\') fail("unsupported character in string");
            out += c;
        }
        if (at_end()) fail("unterminated string");
        advance();
        return out;
    }

    bool parse_boolean() {
        if (text_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            return true;
        }
        if (text_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            return false;
        }
        fail("expected 'true' or 'false'");
    }

    long long parse_integer() {
        std::string digits;
        if (peek() == '-' || peek() == '+') digits += advance();
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits += advance();
        }
        if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
        try {
            return std::stoll(digits);
        } catch (const std::exception&) {
            fail("integer out of range");
        }
    }

    std::vector<TomlValue> parse_array() {
        advance();   // consume '['
        std::vector<TomlValue> items;
        while (true) {
            skip_blank();
            if (at_end()) fail("unterminated array");
            if (peek() == ']') {
                advance();
                return items;
            }
            items.push_back(parse_value());
            skip_blank();
            if (at_end()) fail("unterminated array");
            if (peek() == ',') {
                advance();
            } else if (peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// Schema mapping
// ---------------------------------------------------------------------------

[[noreturn]] void schema_fail(const std::string& origin, int line, const std::string& what) {
    throw ParseError(origin, line, what);
}

const TomlValue& require(const TomlTable& table, const std::string& key,
                         const std::string& where, const std::string& origin) {
    const auto it = table.entries.find(key);
    if (it == table.entries.end()) {
        schema_fail(origin, table.line, where + " is missing key '" + key + "'");
    }
    return it->second;
}

std::string as_string(const TomlValue& v, const std::string& what, const std::string& origin) {
    if (v.kind != TomlValue::Kind::string) schema_fail(origin, v.line, what + " must be a string");
    return v.str;
}

long long as_integer(const TomlValue& v, const std::string& what, const std::string& origin) {
    if (v.kind != TomlValue::Kind::integer) {
        schema_fail(origin, v.line, what + " must be an integer");
    }
    return v.integer;
}

Rational as_rational(const TomlValue& v, const std::string& what, const std::string& origin) {
    if (v.kind != TomlValue::Kind::string) {
        schema_fail(origin, v.line, what + " must be a rational string like \"3/4\"");
    }
    try {
        return parse_rational(v.str);
    } catch (const StructuralError& e) {
        schema_fail(origin, v.line, what + ": " + e.what());
    }
}

const std::vector<TomlValue>& as_array(const TomlValue& v, const std::string& what,
                                       const std::string& origin) {
    if (v.kind != TomlValue::Kind::array) schema_fail(origin, v.line, what + " must be an array");
    return v.array;
}

RationalVec rational_vector(const TomlValue& v, const std::string& what,
                            const std::string& origin) {
    RationalVec out;
    for (const auto& item : as_array(v, what, origin)) {
        out.push_back(as_rational(item, what + " entry", origin));
    }
    return out;
}

std::vector<RationalVec> rational_matrix(const TomlValue& v, const std::string& what,
                                         const std::string& origin) {
    std::vector<RationalVec> out;
    for (const auto& row : as_array(v, what, origin)) {
        out.push_back(rational_vector(row, what + " row", origin));
    }
    return out;
}

} // namespace

const Domain* InstanceDocument::find_domain(const std::string& name) const {
    for (const auto& [n, d] : domains) {
        if (n == name) return &d;
    }
    return nullptr;
}

std::vector<Domain> InstanceDocument::training_domains() const {
    std::vector<Domain> out;
    out.reserve(training.size());
    for (const auto& name : training) {
        const Domain* d = find_domain(name);
        if (!d) throw StructuralError("training list names unknown domain '" + name + "'");
        out.push_back(*d);
    }
    return out;
}

InstanceDocument parse_instance_document(const std::string& text, const std::string& origin) {
    const TomlDocument doc = TomlParser(text, origin).parse();
    InstanceDocument out;
    Instance& inst = out.instance;

    const TomlValue& task_value = require(doc.root, "task", "document", origin);
    const std::string task = as_string(task_value, "task", origin);
    if (task == "regression") {
        inst.task = TaskKind::regression;
    } else if (task == "classification") {
        inst.task = TaskKind::classification;
    } else {
        schema_fail(origin, task_value.line, "task must be \"regression\" or \"classification\"");
    }
    inst.h_size = static_cast<int>(
        as_integer(require(doc.root, "h_size", "document", origin), "h_size", origin));

    const auto spaces_it = doc.tables.find("spaces");
    if (spaces_it == doc.tables.end()) schema_fail(origin, 1, "missing [spaces] table");
    const TomlTable& spaces = spaces_it->second;
    inst.x1_points = rational_matrix(require(spaces, "x1", "[spaces]", origin), "x1", origin);
    inst.x2_points = rational_matrix(require(spaces, "x2", "[spaces]", origin), "x2", origin);
    const TomlValue& y = require(spaces, "y", "[spaces]", origin);
    if (inst.task == TaskKind::classification) {
        const long long m = as_integer(y, "y (label count)", origin);
        if (m < 1) schema_fail(origin, y.line, "y label count must be >= 1");
        inst.y_points = class_labels(static_cast<std::size_t>(m));
    } else {
        inst.y_points = rational_matrix(y, "y", origin);
    }

    const auto kernel_it = doc.tables.find("kernel");
    if (kernel_it == doc.tables.end()) schema_fail(origin, 1, "missing [kernel] table");
    inst.kernel.table = rational_matrix(
        require(kernel_it->second, "rows", "[kernel]", origin), "kernel rows", origin);

    const auto domains_it = doc.table_arrays.find("domain");
    if (domains_it != doc.table_arrays.end()) {
        for (const TomlTable& dt : domains_it->second) {
            const std::string name =
                as_string(require(dt, "name", "[[domain]]", origin), "domain name", origin);
            if (out.find_domain(name)) {
                schema_fail(origin, dt.line, "domain '" + name + "' defined twice");
            }
            Domain domain;
            domain.x1_marginal = rational_vector(
                require(dt, "x1_marginal", "[[domain]]", origin), "x1_marginal", origin);
            const auto& kernel3 =
                as_array(require(dt, "x2_given_x1y", "[[domain]]", origin),
                         "x2_given_x1y", origin);
            for (const auto& slice : kernel3) {
                domain.x2_given_x1y.push_back(
                    rational_matrix(slice, "x2_given_x1y slice", origin));
            }
            out.domains.emplace_back(name, std::move(domain));
        }
    }

    if (const auto it = doc.root.entries.find("training"); it != doc.root.entries.end()) {
        for (const auto& item : as_array(it->second, "training", origin)) {
            const std::string name = as_string(item, "training entry", origin);
            if (!out.find_domain(name)) {
                schema_fail(origin, item.line, "training names unknown domain '" + name + "'");
            }
            out.training.push_back(name);
        }
    }
    return out;
}

InstanceDocument load_instance_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance_document(buffer.str(), path);
}

namespace {

void write_rational_vector(std::ostream& os, const RationalVec& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) os << ", ";
        os << '"' << format_rational(v[i]) << '"';
    }
    os << "]";
}

void write_rational_matrix(std::ostream& os, const std::vector<RationalVec>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0) os << ", ";
        write_rational_vector(os, m[i]);
    }
    os << "]";
}

} // namespace

std::string serialize_instance_document(const InstanceDocument& doc) {
    const Instance& inst = doc.instance;
    std::ostringstream os;
    os << "task = \"" << to_string(inst.task) << "\"\n";
    os << "h_size = " << inst.h_size << "\n";
    os << "training = [";
    for (std::size_t i = 0; i < doc.training.size(); ++i) {
        if (i > 0) os << ", ";
        os << '"' << doc.training[i] << '"';
    }
    os << "]\n\n[spaces]\nx1 = ";
    write_rational_matrix(os, inst.x1_points);
    os << "\nx2 = ";
    write_rational_matrix(os, inst.x2_points);
    os << "\ny = ";
    if (inst.task == TaskKind::classification) {
        os << inst.y_size();
    } else {
        write_rational_matrix(os, inst.y_points);
    }
    os << "\n\n[kernel]\nrows = ";
    write_rational_matrix(os, inst.kernel.table);
    os << "\n";
    for (const auto& [name, domain] : doc.domains) {
        os << "\n[[domain]]\nname = \"" << name << "\"\nx1_marginal = ";
        write_rational_vector(os, domain.x1_marginal);
        os << "\nx2_given_x1y = [";
        for (std::size_t i1 = 0; i1 < domain.x2_given_x1y.size(); ++i1) {
            if (i1 > 0) os << ", ";
            write_rational_matrix(os, domain.x2_given_x1y[i1]);
        }
        os << "]\n";
    }
    return os.str();
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

} // namespace irmlab
