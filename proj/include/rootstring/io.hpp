#ifndef ROOTSTRING_IO_HPP
#define ROOTSTRING_IO_HPP

// Cartan files and JSON report fragments.
//
// A Cartan file is YAML (JSON documents are accepted too):
//
//     characteristic: 2
//     extension:
//       degree: 2
//       modulus: [1, 1, 1]     # t^2 + t + 1, constant term first
//     matrix:
//       - [[0, 1], 1]          # coefficient lists or plain integers
//       - [1, 0]
//     parities: [ev, od]
//
// For characteristic 0 the entries are integers or "numerator/denominator" strings.
// Every rejection carries a diagnostic code and the line/column of the offending node.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "cartan.hpp"
#include "error.hpp"
#include "field.hpp"
#include "reflection.hpp"

namespace rootstring {

using json = nlohmann::ordered_json;

enum class diag {
    malformed_document,
    missing_key,
    unknown_key,
    bad_characteristic,
    bad_extension,
    reducible_modulus,
    ragged_matrix,
    parity_mismatch,
    bad_parity,
    bad_entry,
    unreduced_entry,
};

constexpr std::string_view diag_code(diag d) noexcept {
    switch (d) {
    case diag::malformed_document: return "E01";
    case diag::missing_key: return "E02";
    case diag::unknown_key: return "E03";
    case diag::bad_characteristic: return "E04";
    case diag::bad_extension: return "E05";
    case diag::reducible_modulus: return "E06";
    case diag::ragged_matrix: return "E07";
    case diag::parity_mismatch: return "E08";
    case diag::bad_parity: return "E09";
    case diag::bad_entry: return "E10";
    case diag::unreduced_entry: return "E11";
    }
    return "E??";
}

/// Rejection of a Cartan file. line and column are 1-based.
class parse_error : public error {
public:
    parse_error(diag kind, std::size_t line, std::size_t column, const std::string& message)
        : error(errc::validation, format(kind, line, column, message)), kind_(kind), line_(line), column_(column) {}

    diag kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(diag kind, std::size_t line, std::size_t column, const std::string& message) {
        std::ostringstream os;
        os << diag_code(kind) << " at line " << line << ", column " << column << ": " << message;
        return os.str();
    }

    diag kind_;
    std::size_t line_;
    std::size_t column_;
};

struct parse_options {
    /// Reject entries that are not already in canonical form (unreduced residues,
    /// short coefficient lists, rationals not in lowest terms).
    bool strict = false;
};

namespace detail {

[[noreturn]] inline void fail(diag kind, const YAML::Node& node, const std::string& message) {
    const auto mark = node.Mark();
    const auto line = mark.line < 0 ? 0 : static_cast<std::size_t>(mark.line) + 1;
    const auto column = mark.column < 0 ? 0 : static_cast<std::size_t>(mark.column) + 1;
    throw parse_error(kind, line, column, message);
}

inline std::optional<big_int> scalar_integer(const YAML::Node& node) {
    if (!node.IsScalar()) return std::nullopt;
    static const std::regex pattern(R"([+-]?[0-9]+)");
    const auto& text = node.Scalar();
    if (!std::regex_match(text, pattern)) return std::nullopt;
    return big_int(text.front() == '+' ? text.substr(1) : text);
}

inline std::uint64_t small_integer(const YAML::Node& node, diag kind, std::string_view what, std::uint64_t max) {
    const auto value = scalar_integer(node);
    if (!value || *value < 0 || *value > max) fail(kind, node, std::string(what) + " must be an integer in [0, " + std::to_string(max) + "]");
    return static_cast<std::uint64_t>(*value);
}

inline field_element parse_rational_entry(const field& f, const YAML::Node& node, const parse_options& options) {
    if (const auto n = scalar_integer(node)) return f.integer(*n);
    if (node.IsScalar()) {
        static const std::regex pattern(R"(([+-]?[0-9]+)/([+-]?[0-9]+))");
        std::smatch m;
        const auto& text = node.Scalar();
        if (std::regex_match(text, m, pattern)) {
            auto strip = [](std::string s) { return s.front() == '+' ? s.substr(1) : s; };
            const big_int num(strip(m[1].str())), den(strip(m[2].str()));
            if (den == 0) fail(diag::bad_entry, node, "zero denominator");
            const rational q = rational(num) / rational(den);
            if (options.strict && (den < 0 || numerator(q) != num))
                fail(diag::unreduced_entry, node, "rational entry not in lowest terms with positive denominator");
            return f.from_rational(q);
        }
    }
    fail(diag::bad_entry, node, "expected an integer or a \"numerator/denominator\" string");
}

inline field_element parse_residue_entry(const field& f, const YAML::Node& node, const parse_options& options) {
    const std::uint64_t p = f.characteristic();
    const std::size_t k = f.degree();
    if (const auto n = scalar_integer(node)) {
        if (options.strict && (*n < 0 || *n >= p))
            fail(diag::unreduced_entry, node, "entry not reduced mod " + std::to_string(p));
        return f.integer(*n);
    }
    if (node.IsSequence()) {
        if (k == 1 && options.strict) fail(diag::bad_entry, node, "coefficient list given over a prime field");
        if (node.size() > k) fail(diag::bad_entry, node, "more coefficients than the extension degree");
        if (options.strict && node.size() != k)
            fail(diag::unreduced_entry, node, "expected exactly " + std::to_string(k) + " coefficients");
        std::vector<residue> coeffs(k, 0);
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto c = scalar_integer(node[i]);
            if (!c) fail(diag::bad_entry, node[i], "coefficient is not an integer");
            if (options.strict && (*c < 0 || *c >= p))
                fail(diag::unreduced_entry, node[i], "coefficient not reduced mod " + std::to_string(p));
            big_int r = *c % p;
            if (r < 0) r += p;
            coeffs[i] = static_cast<residue>(r);
        }
        return f.element(std::move(coeffs));
    }
    fail(diag::bad_entry, node, "expected an integer or a coefficient list");
}

inline field parse_field(const YAML::Node& root) {
    const auto& char_node = root["characteristic"];
    const std::uint64_t p = small_integer(char_node, diag::bad_characteristic, "characteristic", max_characteristic);
    if (p != 0 && !is_prime(p)) fail(diag::bad_characteristic, char_node, "characteristic must be 0 or prime");

    const auto ext = root["extension"];
    if (!ext) return field(p == 0 ? field_spec::rationals() : field_spec::prime_field(p));
    if (!ext.IsMap()) fail(diag::bad_extension, ext, "extension must be a mapping with degree and modulus");
    if (p == 0) fail(diag::bad_extension, ext, "characteristic 0 admits no extension");
    for (const auto& kv : ext) {
        const auto key = kv.first.as<std::string>();
        if (key != "degree" && key != "modulus") fail(diag::unknown_key, kv.first, "unknown extension key '" + key + "'");
    }
    if (!ext["degree"]) fail(diag::missing_key, ext, "extension needs 'degree'");
    if (!ext["modulus"]) fail(diag::missing_key, ext, "extension needs 'modulus'");

    const auto degree = small_integer(ext["degree"], diag::bad_extension, "degree", max_extension_degree);
    if (degree < 2) fail(diag::bad_extension, ext["degree"], "extension degree must be at least 2");
    const auto& mod_node = ext["modulus"];
    if (!mod_node.IsSequence() || mod_node.size() != degree + 1)
        fail(diag::bad_extension, mod_node, "modulus must list degree+1 coefficients, constant term first");
    std::vector<residue> modulus;
    for (const auto& c : mod_node) modulus.push_back(small_integer(c, diag::bad_extension, "modulus coefficient", p - 1));
    if (modulus.back() != 1) fail(diag::bad_extension, mod_node, "modulus must be monic");
    if (!check_irreducible(modulus, p)) fail(diag::reducible_modulus, mod_node, "modulus is reducible over F_" + std::to_string(p));
    return field(field_spec::extension(p, std::move(modulus)));
}

} // namespace detail

/// Parses and validates a Cartan file.
inline cartan_datum parse_cartan(std::string_view text, const parse_options& options = {}) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw parse_error(diag::malformed_document, static_cast<std::size_t>(e.mark.line) + 1,
                          static_cast<std::size_t>(e.mark.column) + 1, e.msg);
    }
    if (!root.IsMap()) detail::fail(diag::malformed_document, root, "document must be a mapping");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (key != "characteristic" && key != "extension" && key != "matrix" && key != "parities")
            detail::fail(diag::unknown_key, kv.first, "unknown key '" + key + "'");
    }
    for (const char* key : {"characteristic", "matrix", "parities"})
        if (!root[key]) detail::fail(diag::missing_key, root, std::string("missing key '") + key + "'");

    const field f = detail::parse_field(root);

    const auto& matrix = root["matrix"];
    if (!matrix.IsSequence() || matrix.size() == 0)
        detail::fail(diag::ragged_matrix, matrix, "matrix must be a non-empty list of rows");
    const std::size_t n = matrix.size();
    std::vector<field_element> entries;
    entries.reserve(n * n);
    for (const auto& row : matrix) {
        if (!row.IsSequence() || row.size() != n)
            detail::fail(diag::ragged_matrix, row, "row must have " + std::to_string(n) + " entries");
        for (const auto& node : row)
            entries.push_back(f.spec().is_rational() ? detail::parse_rational_entry(f, node, options)
                                                     : detail::parse_residue_entry(f, node, options));
    }

    const auto& par = root["parities"];
    if (!par.IsSequence()) detail::fail(diag::bad_parity, par, "parities must be a list of \"ev\"/\"od\"");
    if (par.size() != n)
        detail::fail(diag::parity_mismatch, par, "expected " + std::to_string(n) + " parities, got " + std::to_string(par.size()));
    std::vector<parity> parities;
    for (const auto& node : par) {
        const std::string value = node.IsScalar() ? node.Scalar() : std::string();
        if (value == "ev") parities.push_back(parity::even);
        else if (value == "od") parities.push_back(parity::odd);
        else detail::fail(diag::bad_parity, node, "parity must be \"ev\" or \"od\"");
    }
    return cartan_datum(f, std::move(entries), std::move(parities));
}

inline cartan_datum load_cartan(const std::filesystem::path& path, const parse_options& options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::validation, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_cartan(buffer.str(), options);
}

/// Entry text as it appears in a Cartan file.
inline std::string format_entry(const field_element& e) {
    if (e.spec().is_rational()) {
        const auto& q = e.as_rational();
        if (denominator(q) == 1) return numerator(q).str();
        return "\"" + numerator(q).str() + "/" + denominator(q).str() + "\"";
    }
    const auto& c = e.coeffs();
    if (c.size() == 1) return std::to_string(c[0]);
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + std::to_string(c[i]);
    return out + "]";
}

/// Canonical Cartan-file text; parse_cartan(serialize_cartan(d), {.strict = true}) == d.
inline std::string serialize_cartan(const cartan_datum& datum) {
    const auto& spec = datum.ground().spec();
    std::ostringstream os;
    os << "characteristic: " << spec.characteristic() << "\n";
    if (spec.degree() > 1) {
        os << "extension:\n  degree: " << spec.degree() << "\n  modulus: [";
        for (std::size_t i = 0; i < spec.modulus().size(); ++i) os << (i ? ", " : "") << spec.modulus()[i];
        os << "]\n";
    }
    os << "matrix:\n";
    for (std::size_t k = 0; k < datum.rank(); ++k) {
        os << "  - [";
        for (std::size_t j = 0; j < datum.rank(); ++j) os << (j ? ", " : "") << format_entry(datum.entry(k, j));
        os << "]\n";
    }
    os << "parities: [";
    for (std::size_t k = 0; k < datum.rank(); ++k) os << (k ? ", " : "") << to_string(datum.parity_of(k));
    os << "]\n";
    return os.str();
}

// JSON fragments used by the reports.

inline json to_json(const field_element& e) {
    if (e.spec().is_rational()) {
        const auto& q = e.as_rational();
        if (denominator(q) == 1 && numerator(q) >= std::numeric_limits<std::int64_t>::min() &&
            numerator(q) <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(numerator(q));
        return denominator(q) == 1 ? numerator(q).str() : numerator(q).str() + "/" + denominator(q).str();
    }
    const auto& c = e.coeffs();
    if (c.size() == 1) return c[0];
    return json(c);
}

inline json to_json(const b_value& b) {
    if (b.is_infinite()) return "inf";
    return b.value();
}

inline json to_json(const std::optional<b_value>& b) { return b ? to_json(*b) : json(nullptr); }

inline json to_json(const field_spec& spec) {
    json out;
    out["characteristic"] = spec.characteristic();
    out["degree"] = spec.degree();
    if (spec.degree() > 1) out["modulus"] = spec.modulus();
    return out;
}

inline json to_json(const root_vector& r) { return json(r.coords); }

} // namespace rootstring

#endif // ROOTSTRING_IO_HPP
