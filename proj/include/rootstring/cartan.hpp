#ifndef ROOTSTRING_CARTAN_HPP
#define ROOTSTRING_CARTAN_HPP

// Root-string bounds B_kj = sup{ m >= 0 : alpha_j + m alpha_k is a root } for a Cartan
// datum (A, I), computed two independent ways:
//
//   * b_recursive scans the scalar sequence d_{-1} = 0,
//     d_m = (-1)^{i_k} (d_{m-1} - A_kj - m A_kk), for its first zero;
//   * b_closed evaluates the closed-form case ladder directly from A_kj, A_kk, i_k and p.
//
// Indices are 0-based throughout the library; the command-line front end is 1-based.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace rootstring {

enum class parity { even, odd };

constexpr std::string_view to_string(parity p) noexcept { return p == parity::even ? "ev" : "od"; }

inline std::ostream& operator<<(std::ostream& os, parity p) { return os << to_string(p); }

/// Default scan length for the characteristic-0 cross-check.
inline constexpr std::int64_t default_rational_scan_cap = 1000;

/// An element of Z_{>=0} u {+inf}.
class b_value {
public:
    static constexpr b_value finite(std::uint64_t m) noexcept { return b_value(m); }
    static constexpr b_value infinity() noexcept { return b_value(); }

    constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
    constexpr bool is_finite() const noexcept { return value_.has_value(); }

    std::uint64_t value() const {
        if (!value_) throw error(errc::unsupported_operation, "B is infinite");
        return *value_;
    }

    friend constexpr bool operator==(const b_value&, const b_value&) = default;

    friend std::ostream& operator<<(std::ostream& os, const b_value& b) {
        return b.is_infinite() ? os << "inf" : os << *b.value_;
    }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

private:
    constexpr b_value() noexcept = default;
    constexpr explicit b_value(std::uint64_t m) noexcept : value_(m) {}

    std::optional<std::uint64_t> value_;
};

/// The pair (A, I): an n x n matrix over one field plus the parities of the Chevalley generators.
class cartan_datum {
public:
    /// entries are row-major, n*n of them.
    cartan_datum(field ground, std::vector<field_element> entries, std::vector<parity> parities)
        : field_(std::move(ground)), entries_(std::move(entries)), parities_(std::move(parities)) {
        const std::size_t n = parities_.size();
        if (n == 0) throw error(errc::validation, "Cartan datum must have positive rank");
        if (entries_.size() != n * n)
            throw error(errc::validation, "matrix has " + std::to_string(entries_.size()) + " entries, expected " +
                                              std::to_string(n * n));
        for (const auto& e : entries_)
            if (!(e.ambient() == field_)) throw error(errc::spec_mismatch, "matrix entry from a different field");
    }

    cartan_datum(field ground, const std::vector<std::vector<field_element>>& rows, std::vector<parity> parities)
        : cartan_datum(ground, flatten(rows), std::move(parities)) {}

    std::size_t rank() const noexcept { return parities_.size(); }
    const field& ground() const noexcept { return field_; }
    const field_element& entry(std::size_t k, std::size_t j) const { return entries_.at(k * rank() + j); }
    parity parity_of(std::size_t k) const { return parities_.at(k); }
    const std::vector<parity>& parities() const noexcept { return parities_; }

    friend bool operator==(const cartan_datum& a, const cartan_datum& b) {
        return a.field_ == b.field_ && a.entries_ == b.entries_ && a.parities_ == b.parities_;
    }

private:
    static std::vector<field_element> flatten(const std::vector<std::vector<field_element>>& rows) {
        std::vector<field_element> out;
        for (const auto& row : rows) {
            if (row.size() != rows.size()) throw error(errc::validation, "matrix is not square");
            out.insert(out.end(), row.begin(), row.end());
        }
        return out;
    }

    field field_;
    std::vector<field_element> entries_;
    std::vector<parity> parities_;
};

/// Prefix d_{-1}, d_0, ..., d_M of the recursion for the pair (k, j).
struct d_sequence_t {
    std::size_t k;
    std::size_t j;
    std::vector<field_element> values; // values[m + 1] holds d_m

    std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(values.size()) - 2; }

    const field_element& at(std::int64_t m) const {
        if (m < -1 || m > max_index()) throw error(errc::invalid_index, "d-sequence index out of range");
        return values[static_cast<std::size_t>(m + 1)];
    }

    /// Smallest m >= 0 with d_m = 0 within the stored prefix.
    std::optional<std::uint64_t> first_zero() const {
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i].is_zero()) return i - 1;
        return std::nullopt;
    }
};

namespace detail {

inline void check_pair(const cartan_datum& datum, std::size_t k, std::size_t j) {
    const std::size_t n = datum.rank();
    if (k >= n || j >= n)
        throw error(errc::invalid_index, "index out of range for rank " + std::to_string(n));
    if (k == j) throw error(errc::invalid_index, "B_kj needs k != j");
}

inline void check_same_field(const field_element& a, const field_element& b) {
    if (!(a.ambient() == b.ambient())) throw error(errc::spec_mismatch, "A_kj and A_kk live in different fields");
}

} // namespace detail

/// One step of the recursion: (-1)^{i_k} (d_prev - A_kj - m A_kk).
inline field_element d_next(const field_element& d_prev, const field_element& a_kj, const field_element& a_kk,
                            std::int64_t m, parity i_k) {
    const auto step = d_prev - a_kj - a_kj.ambient().integer(m) * a_kk;
    return i_k == parity::even ? step : -step;
}

/// Iterates d_next from d_{-1} = 0 through d_{max_m} for the entries A_kj, A_kk.
inline std::vector<field_element> d_values(const field_element& a_kj, const field_element& a_kk, parity i_k,
                                           std::int64_t max_m) {
    detail::check_same_field(a_kj, a_kk);
    if (max_m < -1) throw error(errc::invalid_index, "d-sequence length must be at least -1");
    std::vector<field_element> values{a_kj.ambient().zero()};
    values.reserve(static_cast<std::size_t>(max_m + 2));
    for (std::int64_t m = 0; m <= max_m; ++m) values.push_back(d_next(values.back(), a_kj, a_kk, m, i_k));
    return values;
}

inline d_sequence_t d_sequence(const cartan_datum& datum, std::size_t k, std::size_t j, std::int64_t max_m) {
    detail::check_pair(datum, k, j);
    return {k, j, d_values(datum.entry(k, j), datum.entry(k, k), datum.parity_of(k), max_m)};
}

/// Even parity: d_m = -(m+1) A_kj - binom(m+1, 2) A_kk.
inline field_element d_closed_even(const field_element& a_kj, const field_element& a_kk, std::int64_t m) {
    detail::check_same_field(a_kj, a_kk);
    if (m < -1) throw error(errc::invalid_index, "closed form defined for m >= -1");
    const auto& f = a_kj.ambient();
    const big_int n = big_int(m) + 1;
    return -(f.integer(n) * a_kj) - f.integer(n * (n - 1) / 2) * a_kk;
}

/// Odd parity: d_{2l} = A_kj + l A_kk and d_{2l-1} = l A_kk.
inline field_element d_closed_odd(const field_element& a_kj, const field_element& a_kk, std::int64_t m) {
    detail::check_same_field(a_kj, a_kk);
    if (m < -1) throw error(errc::invalid_index, "closed form defined for m >= -1");
    const auto& f = a_kj.ambient();
    if (m % 2 == 0) return a_kj + f.integer(m / 2) * a_kk;
    return f.integer((m + 1) / 2) * a_kk;
}

/// Closed-form B from the three scalars that determine it. Branches are tried in a fixed order.
inline b_value b_closed(const field_element& a_kj, const field_element& a_kk, parity i_k) {
    detail::check_same_field(a_kj, a_kk);
    if (a_kj.is_zero()) return b_value::finite(0);

    const auto& f = a_kj.ambient();
    if (f.spec().is_rational()) {
        // zero of d_m at m = -2 A_kj / A_kk (even) or m = 2l with l = -A_kj / A_kk (odd)
        if (a_kk.is_zero()) return i_k == parity::even ? b_value::infinity() : b_value::finite(1);
        const rational ratio = a_kj.as_rational() / a_kk.as_rational();
        const rational x = i_k == parity::even ? rational(-2 * ratio) : rational(-ratio);
        if (denominator(x) != 1 || x < 0) return b_value::infinity();
        const big_int m = i_k == parity::even ? big_int(numerator(x)) : big_int(2 * numerator(x));
        if (m > std::numeric_limits<std::uint64_t>::max())
            throw error(errc::unsupported_operation, "B exceeds the 64-bit range");
        return b_value::finite(static_cast<std::uint64_t>(m));
    }

    const std::uint64_t p = f.characteristic();
    if (i_k == parity::even) {
        if (a_kk.is_zero()) return b_value::finite(p - 1);
        if (p == 2) return b_value::finite(a_kj == a_kk ? 2 : 3);
        if (const auto r = (a_kj / a_kk).in_prime_subfield()) {
            // -2 r computed on residues in [0, p)
            return b_value::finite((2 * (p - *r)) % p);
        }
        return b_value::finite(p - 1);
    }
    if (a_kk.is_zero()) return b_value::finite(1);
    if (const auto r = (a_kj / a_kk).in_prime_subfield()) return b_value::finite(2 * ((p - *r) % p));
    return b_value::finite(2 * p - 1);
}

/// First zero of the d-sequence. For p > 0 the scan stops at 2p - 1, where a zero is
/// guaranteed; missing it is an internal error. For p = 0 the scan runs to rational_cap and
/// an infinite answer is only reported when the closed form agrees.
inline b_value b_recursive(const field_element& a_kj, const field_element& a_kk, parity i_k,
                           std::int64_t rational_cap = default_rational_scan_cap) {
    detail::check_same_field(a_kj, a_kk);
    const auto& f = a_kj.ambient();
    const std::uint64_t p = f.characteristic();
    const std::uint64_t bound = p > 0 ? 2 * p - 1 : static_cast<std::uint64_t>(std::max<std::int64_t>(rational_cap, 0));

    field_element d = f.zero();
    for (std::uint64_t m = 0; m <= bound; ++m) {
        d = d_next(d, a_kj, a_kk, static_cast<std::int64_t>(m), i_k);
        if (d.is_zero()) return b_value::finite(m);
    }
    if (p > 0)
        throw error(errc::internal_consistency,
                    "d-sequence has no zero up to 2p-1 = " + std::to_string(bound) + " (arithmetic bug)");

    const b_value closed = b_closed(a_kj, a_kk, i_k);
    if (closed.is_infinite()) return closed;
    throw error(errc::internal_consistency, "d-sequence has no zero up to m = " + std::to_string(bound) +
                                                " but the closed form gives B = " + closed.to_string() +
                                                "; raise the scan cap");
}

inline b_value b_closed(const cartan_datum& datum, std::size_t k, std::size_t j) {
    detail::check_pair(datum, k, j);
    return b_closed(datum.entry(k, j), datum.entry(k, k), datum.parity_of(k));
}

inline b_value b_recursive(const cartan_datum& datum, std::size_t k, std::size_t j,
                           std::int64_t rational_cap = default_rational_scan_cap) {
    detail::check_pair(datum, k, j);
    return b_recursive(datum.entry(k, j), datum.entry(k, k), datum.parity_of(k), rational_cap);
}

/// b_closed for every ordered pair k != j; the diagonal is empty.
using b_table_t = std::vector<std::vector<std::optional<b_value>>>;

inline b_table_t b_table(const cartan_datum& datum) {
    const std::size_t n = datum.rank();
    b_table_t table(n, std::vector<std::optional<b_value>>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            if (k != j) table[k][j] = b_closed(datum, k, j);
    return table;
}

} // namespace rootstring

#endif // ROOTSTRING_CARTAN_HPP
