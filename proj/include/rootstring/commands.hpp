#ifndef ROOTSTRING_COMMANDS_HPP
#define ROOTSTRING_COMMANDS_HPP

// The command layer behind the rootstring CLI. Each command returns a JSON report and the
// process exit status. Indices here are 1-based, as typed by the user.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <set>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "error.hpp"
#include "field.hpp"
#include "io.hpp"
#include "reflection.hpp"

namespace rootstring {

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int validation = 1;
inline constexpr int internal_consistency = 2;
inline constexpr int reflection_undefined = 3;
} // namespace exit_code

inline int exit_status_for(errc code) noexcept {
    switch (code) {
    case errc::internal_consistency: return exit_code::internal_consistency;
    case errc::reflection_undefined: return exit_code::reflection_undefined;
    default: return exit_code::validation;
    }
}

struct command_result {
    json report;
    int status = exit_code::success;

    /// Two-space indented JSON plus a trailing newline; byte-stable for identical input.
    std::string text() const { return report.dump(2) + "\n"; }
};

namespace detail {

inline std::size_t to_index(const cartan_datum& datum, std::int64_t one_based, const char* name) {
    if (one_based < 1 || static_cast<std::uint64_t>(one_based) > datum.rank())
        throw error(errc::invalid_index, std::string(name) + " must lie in [1, " + std::to_string(datum.rank()) + "]");
    return static_cast<std::size_t>(one_based - 1);
}

inline json header(const char* command, const cartan_datum& datum) {
    json out;
    out["command"] = command;
    out["field"] = to_json(datum.ground().spec());
    out["rank"] = datum.rank();
    return out;
}

} // namespace detail

/// B_kj by both routes; disagreement is reported and exits with the consistency status.
inline command_result cmd_bkj(const cartan_datum& datum, std::int64_t k1, std::int64_t j1,
                              std::int64_t rational_cap = default_rational_scan_cap) {
    const auto k = detail::to_index(datum, k1, "k");
    const auto j = detail::to_index(datum, j1, "j");
    if (k == j) throw error(errc::invalid_index, "k and j must differ");

    const b_value closed = b_closed(datum, k, j);
    const b_value recursive = b_recursive(datum, k, j, rational_cap);
    const bool agree = closed == recursive;

    command_result result;
    result.report = detail::header("bkj", datum);
    result.report["k"] = k1;
    result.report["j"] = j1;
    result.report["parity_k"] = to_string(datum.parity_of(k));
    result.report["a_kj"] = to_json(datum.entry(k, j));
    result.report["a_kk"] = to_json(datum.entry(k, k));
    result.report["closed"] = to_json(closed);
    result.report["recursive"] = to_json(recursive);
    result.report["agree"] = agree;
    result.status = agree ? exit_code::success : exit_code::internal_consistency;
    return result;
}

inline command_result cmd_dseq(const cartan_datum& datum, std::int64_t k1, std::int64_t j1, std::int64_t max_m) {
    const auto k = detail::to_index(datum, k1, "k");
    const auto j = detail::to_index(datum, j1, "j");
    const d_sequence_t seq = d_sequence(datum, k, j, max_m);

    command_result result;
    result.report = detail::header("dseq", datum);
    result.report["k"] = k1;
    result.report["j"] = j1;
    result.report["parity_k"] = to_string(datum.parity_of(k));
    result.report["a_kj"] = to_json(datum.entry(k, j));
    result.report["a_kk"] = to_json(datum.entry(k, k));
    result.report["max_m"] = max_m;
    result.report["first_index"] = -1;
    json values = json::array();
    for (const auto& d : seq.values) values.push_back(to_json(d));
    result.report["values"] = std::move(values);
    const auto zero = seq.first_zero();
    result.report["first_zero"] = zero ? json(*zero) : json(nullptr);
    return result;
}

inline command_result cmd_table(const cartan_datum& datum) {
    const b_table_t table = b_table(datum);

    command_result result;
    result.report = detail::header("table", datum);
    json parities = json::array();
    for (const parity p : datum.parities()) parities.push_back(to_string(p));
    result.report["parities"] = std::move(parities);
    json rows = json::array();
    for (const auto& row : table) {
        json r = json::array();
        for (const auto& b : row) r.push_back(to_json(b));
        rows.push_back(std::move(r));
    }
    result.report["b_table"] = std::move(rows);
    return result;
}

/// Throws error(errc::reflection_undefined) when some B_kj is infinite.
inline command_result cmd_reflect(const cartan_datum& datum, std::int64_t k1) {
    const auto k = detail::to_index(datum, k1, "k");
    const reflection_result r = reflect(datum, k);
    const big_int det = determinant(r.basis_matrix);

    command_result result;
    result.report = detail::header("reflect", datum);
    result.report["k"] = k1;
    json b_row = json::array();
    for (const auto& b : r.b_row) b_row.push_back(to_json(b));
    result.report["b_row"] = std::move(b_row);
    json sigma = json::array();
    for (const auto& s : r.sigma) sigma.push_back(to_json(s));
    result.report["sigma"] = std::move(sigma);
    result.report["basis_matrix"] = r.basis_matrix;
    result.report["determinant"] = static_cast<std::int64_t>(det);
    result.report["unimodular"] = det == -1;
    result.status = det == -1 ? exit_code::success : exit_code::internal_consistency;
    return result;
}

/// Outcome of the exhaustive closed-vs-recursive comparison over one finite field.
struct selfcheck_summary {
    field_spec spec;
    std::uint64_t cases = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t bound_violations = 0;
    std::uint64_t missing_zeros = 0;
    std::set<std::uint64_t> b_values;

    bool ok() const noexcept { return mismatches == 0 && bound_violations == 0 && missing_zeros == 0; }
};

/// Largest field order the self-check will enumerate (it visits 2 q^2 cases).
inline constexpr std::uint64_t max_selfcheck_order = 1024;

/// Runs every (parity, A_kk, A_kj) over the field and checks b_closed == b_recursive, the
/// upper bounds on B, and the zeros of the d-sequence that are guaranteed to exist.
inline selfcheck_summary selfcheck_field(const field& f) {
    const std::uint64_t p = f.characteristic();
    selfcheck_summary summary{f.spec(), 0, 0, 0, 0, {}};
    const auto elements = f.elements();
    for (const parity i_k : {parity::even, parity::odd}) {
        for (const auto& a_kk : elements) {
            for (const auto& a_kj : elements) {
                ++summary.cases;
                const b_value closed = b_closed(a_kj, a_kk, i_k);
                b_value recursive = b_value::infinity();
                try {
                    recursive = b_recursive(a_kj, a_kk, i_k);
                } catch (const error& e) {
                    if (e.code() != errc::internal_consistency) throw;
                }
                if (!(closed == recursive)) ++summary.mismatches;
                if (closed.is_infinite()) {
                    ++summary.bound_violations;
                    continue;
                }
                const std::uint64_t b = closed.value();
                summary.b_values.insert(b);
                std::uint64_t bound = 2 * p - 1;
                if (i_k == parity::even) bound = p == 2 ? 3 : p - 1;
                if (b > bound) ++summary.bound_violations;

                if (!a_kk.is_zero()) {
                    const auto seq = d_values(a_kj, a_kk, i_k, static_cast<std::int64_t>(2 * p - 1));
                    std::uint64_t guaranteed = 2 * p - 1;
                    if (i_k == parity::even) guaranteed = p == 2 ? 3 : p - 1;
                    if (!seq[guaranteed + 1].is_zero()) ++summary.missing_zeros;
                }
            }
        }
    }
    return summary;
}

/// Exhaustive self-check over F_{p^d} for every requested prime p and degree d. Extension
/// fields use the first monic irreducible modulus in base-p digit order.
inline command_result cmd_selfcheck(const std::vector<std::uint64_t>& primes, const std::vector<std::size_t>& degrees) {
    if (primes.empty() || degrees.empty()) throw error(errc::validation, "selfcheck needs at least one prime and one degree");
    std::vector<field> fields;
    for (const auto p : primes) {
        if (!is_prime(p)) throw error(errc::validation, "selfcheck prime list contains " + std::to_string(p));
        for (const auto d : degrees) {
            if (d < 1 || d > max_extension_degree)
                throw error(errc::validation, "extension degree must lie in [1, " + std::to_string(max_extension_degree) + "]");
            std::uint64_t order = 1;
            for (std::size_t i = 0; i < d; ++i) {
                order *= p;
                if (order > max_selfcheck_order)
                    throw error(errc::validation, "F_" + std::to_string(p) + "^" + std::to_string(d) +
                                                      " is too large to enumerate (order cap " +
                                                      std::to_string(max_selfcheck_order) + ")");
            }
            fields.emplace_back(d == 1 ? field_spec::prime_field(p) : field_spec::extension(p, first_irreducible(p, d)));
        }
    }

    // one task per field; aggregation keeps the request order
    std::vector<std::future<selfcheck_summary>> tasks;
    for (const auto& f : fields) tasks.push_back(std::async(std::launch::async, [f] { return selfcheck_field(f); }));

    command_result result;
    result.report["command"] = "selfcheck";
    json per_field = json::array();
    std::uint64_t total_cases = 0, total_mismatches = 0;
    bool ok = true;
    for (auto& task : tasks) {
        const selfcheck_summary s = task.get();
        json entry = to_json(s.spec);
        entry["cases"] = s.cases;
        entry["mismatches"] = s.mismatches;
        entry["bound_violations"] = s.bound_violations;
        entry["missing_guaranteed_zeros"] = s.missing_zeros;
        entry["b_values"] = s.b_values;
        per_field.push_back(std::move(entry));
        total_cases += s.cases;
        total_mismatches += s.mismatches;
        ok = ok && s.ok();
    }
    result.report["fields"] = std::move(per_field);
    result.report["total_cases"] = total_cases;
    result.report["total_mismatches"] = total_mismatches;
    result.report["ok"] = ok;
    result.status = ok ? exit_code::success : exit_code::internal_consistency;
    return result;
}

} // namespace rootstring

#endif // ROOTSTRING_COMMANDS_HPP
