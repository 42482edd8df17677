#ifndef ROOTSTRING_REFLECTION_HPP
#define ROOTSTRING_REFLECTION_HPP

// Reflection of the standard simple-root system in alpha_k:
//   alpha_k -> -alpha_k,   alpha_j -> alpha_j + B_kj alpha_k  (j != k).
// Only the images of the simple roots are produced; odd reflections are not linear maps of
// the root lattice in general, and the Cartan matrix of the new system is not derived.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartan.hpp"
#include "error.hpp"

namespace rootstring {

/// Integer coordinates in the basis alpha_1, ..., alpha_n.
struct root_vector {
    std::vector<std::int64_t> coords;

    static root_vector simple(std::size_t n, std::size_t i) {
        root_vector r{std::vector<std::int64_t>(n, 0)};
        r.coords.at(i) = 1;
        return r;
    }

    friend bool operator==(const root_vector&, const root_vector&) = default;
};

struct reflection_result {
    std::size_t k;
    std::vector<std::optional<b_value>> b_row; // b_row[k] is empty
    std::vector<root_vector> sigma;
    std::vector<std::vector<std::int64_t>> basis_matrix; // column j is sigma[j]
};

/// Exact determinant of a square integer matrix (fraction-free Bareiss elimination).
inline big_int determinant(const std::vector<std::vector<std::int64_t>>& matrix) {
    const std::size_t n = matrix.size();
    std::vector<std::vector<big_int>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n) throw error(errc::validation, "determinant of a non-square matrix");
        a[i].assign(matrix[i].begin(), matrix[i].end());
    }
    big_int sign = 1, prev = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    return n == 0 ? big_int(1) : sign * a[n - 1][n - 1];
}

inline reflection_result reflect(const cartan_datum& datum, std::size_t k) {
    const std::size_t n = datum.rank();
    if (k >= n) throw error(errc::invalid_index, "reflection index out of range for rank " + std::to_string(n));

    reflection_result result{k, std::vector<std::optional<b_value>>(n), {}, {}};
    result.sigma.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        root_vector s = root_vector::simple(n, j);
        if (j == k) {
            s.coords[k] = -1;
        } else {
            const b_value b = b_closed(datum, k, j);
            if (b.is_infinite())
                throw error(errc::reflection_undefined, "B is infinite at j=" + std::to_string(j + 1) +
                                                            "; the reflection in alpha_" + std::to_string(k + 1) +
                                                            " is undefined");
            if (b.value() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
                throw error(errc::unsupported_operation, "B exceeds the 64-bit coordinate range");
            result.b_row[j] = b;
            s.coords[k] = static_cast<std::int64_t>(b.value());
        }
        result.sigma.push_back(std::move(s));
    }

    result.basis_matrix.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) result.basis_matrix[i][j] = result.sigma[j].coords[i];
    return result;
}

/// True iff det(basis_matrix) = -1.
inline bool unimodularity_check(const reflection_result& result) {
    return determinant(result.basis_matrix) == -1;
}

} // namespace rootstring

#endif // ROOTSTRING_REFLECTION_HPP
