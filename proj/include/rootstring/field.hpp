#ifndef ROOTSTRING_FIELD_HPP
#define ROOTSTRING_FIELD_HPP

// Exact arithmetic in F_p, in F_{p^k} = F_p[t]/(f) with f monic irreducible, and in Q.
//
// Extension elements are stored in the power basis 1, t, ..., t^{k-1}, so the
// prime subfield is exactly the set of elements whose non-constant coordinates
// vanish. Characteristic zero is modeled by arbitrary-precision rationals.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace rootstring {

using residue = std::uint64_t;
using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// Largest supported extension degree. Irreducibility is checked by trial division,
/// which is only cheap for small degrees.
inline constexpr std::size_t max_extension_degree = 8;

/// Characteristics are kept below 2^32 so that a product of two residues fits in 64 bits.
inline constexpr std::uint64_t max_characteristic = std::numeric_limits<std::uint32_t>::max();

inline bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// The minimal non-negative integer congruent to x modulo p.
inline std::uint64_t lift(std::int64_t x, std::uint64_t p) {
    if (p == 0) throw error(errc::unsupported_operation, "lift requires positive characteristic");
    const auto modulus = static_cast<std::int64_t>(p);
    auto r = x % modulus;
    if (r < 0) r += modulus;
    return static_cast<std::uint64_t>(r);
}

namespace detail {

inline residue mod_inverse(residue a, std::uint64_t p) {
    // extended Euclid on (a, p); p is prime so gcd is 1 whenever a != 0
    std::int64_t old_r = static_cast<std::int64_t>(p), r = static_cast<std::int64_t>(a % p);
    std::int64_t old_s = 0, s = 1;
    if (r == 0) throw error(errc::division_by_zero, "inverse of zero");
    while (r != 0) {
        const auto q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return lift(old_s, p);
}

/// Polynomials over F_p, coefficients low degree first. The empty vector is zero.
namespace poly {

using coeffs = std::vector<residue>;

inline void trim(coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline coeffs sub(coeffs a, const coeffs& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline coeffs mul(const coeffs& a, const coeffs& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j] % p) % p;
    trim(out);
    return out;
}

/// Quotient and remainder of a by b (b nonzero, trimmed).
inline std::pair<coeffs, coeffs> divmod(coeffs a, const coeffs& b, std::uint64_t p) {
    trim(a);
    if (a.size() < b.size()) return {{}, std::move(a)};
    const residue lead_inv = mod_inverse(b.back(), p);
    coeffs q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const residue c = a.back() * lead_inv % p;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
        trim(a);
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

} // namespace poly
} // namespace detail

/// True iff the monic polynomial has no monic factor of degree 1..deg/2 over F_p.
/// Decided by trial division, so only intended for small degrees.
inline bool check_irreducible(std::span<const residue> modulus, std::uint64_t p) {
    if (!is_prime(p)) throw error(errc::validation, "irreducibility test needs a prime characteristic");
    if (modulus.size() < 3)
        throw error(errc::validation, "irreducibility test needs degree >= 2");
    for (const residue c : modulus)
        if (c >= p) throw error(errc::validation, "modulus coefficient not reduced mod p");
    if (modulus.back() != 1) throw error(errc::validation, "modulus must be monic");

    const detail::poly::coeffs target(modulus.begin(), modulus.end());
    const std::size_t degree = modulus.size() - 1;
    for (std::size_t d = 1; d <= degree / 2; ++d) {
        // walk every monic polynomial of degree d, lower coefficients as base-p digits
        detail::poly::coeffs divisor(d + 1, 0);
        divisor[d] = 1;
        for (;;) {
            if (detail::poly::divmod(target, divisor, p).second.empty()) return false;
            std::size_t i = 0;
            while (i < d && divisor[i] == p - 1) divisor[i++] = 0;
            if (i == d) break;
            ++divisor[i];
        }
    }
    return true;
}

/// The ground field: Q (characteristic 0), F_p, or F_p[t]/(modulus).
class field_spec {
public:
    static field_spec rationals() { return field_spec(0, 1, {}); }

    static field_spec prime_field(std::uint64_t p) {
        if (p > max_characteristic || !is_prime(p))
            throw error(errc::validation, "characteristic must be 0 or prime (got " + std::to_string(p) + ")");
        return field_spec(p, 1, {});
    }

    /// modulus holds degree+1 coefficients, constant term first; it must be monic and irreducible.
    static field_spec extension(std::uint64_t p, std::vector<residue> modulus) {
        if (p == 0) throw error(errc::validation, "characteristic 0 admits no extension");
        prime_field(p);
        if (modulus.size() < 2) throw error(errc::validation, "modulus must have degree >= 1");
        const std::size_t degree = modulus.size() - 1;
        if (degree > max_extension_degree)
            throw error(errc::validation, "extension degree " + std::to_string(degree) + " exceeds cap " +
                                              std::to_string(max_extension_degree));
        if (degree == 1) return prime_field(p);
        if (!check_irreducible(modulus, p)) throw error(errc::validation, "modulus is reducible over F_p");
        return field_spec(p, degree, std::move(modulus));
    }

    std::uint64_t characteristic() const noexcept { return characteristic_; }
    std::size_t degree() const noexcept { return degree_; }
    const std::vector<residue>& modulus() const noexcept { return modulus_; }
    bool is_rational() const noexcept { return characteristic_ == 0; }

    friend bool operator==(const field_spec&, const field_spec&) = default;

private:
    field_spec(std::uint64_t p, std::size_t degree, std::vector<residue> modulus)
        : characteristic_(p), degree_(degree), modulus_(std::move(modulus)) {}

    std::uint64_t characteristic_;
    std::size_t degree_;
    std::vector<residue> modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const field_spec& spec) {
    if (spec.is_rational()) return os << "Q";
    os << "F_" << spec.characteristic();
    if (spec.degree() > 1) os << "^" << spec.degree();
    return os;
}

class field_element;

/// Shared handle to an immutable field_spec; the factory for its elements.
class field {
public:
    explicit field(field_spec spec) : spec_(std::make_shared<const field_spec>(std::move(spec))) {}

    const field_spec& spec() const noexcept { return *spec_; }
    std::uint64_t characteristic() const noexcept { return spec_->characteristic(); }
    std::size_t degree() const noexcept { return spec_->degree(); }

    friend bool operator==(const field& a, const field& b) noexcept {
        return a.spec_ == b.spec_ || *a.spec_ == *b.spec_;
    }

    field_element zero() const;
    field_element one() const;
    /// Canonical image n*1 of an integer.
    field_element integer(const big_int& n) const;
    field_element integer(std::int64_t n) const;
    /// Power-basis coordinates; fewer than degree() entries are zero-padded.
    field_element element(std::vector<residue> coeffs) const;
    field_element from_rational(const rational& q) const;
    /// The class of t in F_p[t]/(modulus).
    field_element generator() const;
    /// Every element of a finite field in a fixed order (0 first). Throws for Q or huge fields.
    std::vector<field_element> elements() const;

private:
    std::shared_ptr<const field_spec> spec_;
};

class field_element {
public:
    const field& ambient() const noexcept { return field_; }
    const field_spec& spec() const noexcept { return field_.spec(); }

    bool is_zero() const {
        if (const auto* q = std::get_if<rational>(&value_)) return q->is_zero();
        for (const residue c : coeffs()) if (c != 0) return false;
        return true;
    }

    /// Power-basis coordinates (positive characteristic only).
    const std::vector<residue>& coeffs() const {
        if (const auto* c = std::get_if<std::vector<residue>>(&value_)) return *c;
        throw error(errc::unsupported_operation, "rational element has no residue coordinates");
    }

    const rational& as_rational() const {
        if (const auto* q = std::get_if<rational>(&value_)) return *q;
        throw error(errc::unsupported_operation, "finite-field element is not a rational");
    }

    /// The residue when this element lies in the prime subfield F_p, empty otherwise.
    std::optional<residue> in_prime_subfield() const {
        if (spec().is_rational())
            throw error(errc::unsupported_operation, "prime-subfield membership is undefined in characteristic 0");
        const auto& c = coeffs();
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) return std::nullopt;
        return c[0];
    }

    field_element pow(std::uint64_t e) const {
        field_element result = field_.one();
        field_element base = *this;
        while (e != 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    field_element inv() const {
        if (is_zero()) throw error(errc::division_by_zero, "inverse of zero");
        if (const auto* q = std::get_if<rational>(&value_)) return make(field_, rational(1) / *q);
        const std::uint64_t p = spec().characteristic();
        const auto& c = coeffs();
        if (spec().degree() == 1) return make(field_, std::vector<residue>{detail::mod_inverse(c[0], p)});

        // extended Euclid in F_p[t]: track s with s*a == r (mod modulus)
        namespace poly = detail::poly;
        poly::coeffs old_r(spec().modulus()), r(c);
        poly::trim(r);
        poly::coeffs old_s, s{1};
        while (!r.empty()) {
            auto [q, rem] = poly::divmod(old_r, r, p);
            old_r = std::exchange(r, std::move(rem));
            old_s = std::exchange(s, poly::sub(old_s, poly::mul(q, s, p), p));
        }
        // old_r is a nonzero constant because the modulus is irreducible
        const residue scale = detail::mod_inverse(old_r[0], p);
        poly::coeffs out(spec().degree(), 0);
        for (std::size_t i = 0; i < old_s.size(); ++i) out[i] = old_s[i] * scale % p;
        return make(field_, std::move(out));
    }

    friend field_element operator+(const field_element& a, const field_element& b) {
        check_same(a, b);
        if (a.spec().is_rational()) return make(a.field_, a.as_rational() + b.as_rational());
        const std::uint64_t p = a.spec().characteristic();
        auto out = a.coeffs();
        const auto& rhs = b.coeffs();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] + rhs[i]) % p;
        return make(a.field_, std::move(out));
    }

    friend field_element operator-(const field_element& a) {
        if (a.spec().is_rational()) return make(a.field_, rational(-a.as_rational()));
        const std::uint64_t p = a.spec().characteristic();
        auto out = a.coeffs();
        for (auto& c : out) c = (p - c) % p;
        return make(a.field_, std::move(out));
    }

    friend field_element operator-(const field_element& a, const field_element& b) { return a + (-b); }

    friend field_element operator*(const field_element& a, const field_element& b) {
        check_same(a, b);
        if (a.spec().is_rational()) return make(a.field_, a.as_rational() * b.as_rational());
        const std::uint64_t p = a.spec().characteristic();
        const std::size_t k = a.spec().degree();
        auto product = detail::poly::mul(a.coeffs(), b.coeffs(), p);
        if (k > 1) product = detail::poly::divmod(std::move(product), a.spec().modulus(), p).second;
        product.resize(k, 0);
        return make(a.field_, std::move(product));
    }

    friend field_element operator/(const field_element& a, const field_element& b) {
        check_same(a, b);
        return a * b.inv();
    }

    friend bool operator==(const field_element& a, const field_element& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const field_element& a) {
        if (a.spec().is_rational()) return os << a.as_rational();
        const auto& c = a.coeffs();
        if (c.size() == 1) return os << c[0];
        os << '[';
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        return os << ']';
    }

    std::string to_string() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

private:
    friend class field;
    using value_type = std::variant<std::vector<residue>, rational>;

    field_element(field f, value_type v) : field_(std::move(f)), value_(std::move(v)) {}

    static field_element make(const field& f, value_type v) { return field_element(f, std::move(v)); }

    static void check_same(const field_element& a, const field_element& b) {
        if (!(a.field_ == b.field_)) {
            std::ostringstream os;
            os << "operands live in different fields (" << a.spec() << " vs " << b.spec() << ")";
            throw error(errc::spec_mismatch, os.str());
        }
    }

    field field_;
    value_type value_;
};

inline field_element field::zero() const { return integer(0); }

inline field_element field::one() const { return integer(1); }

inline field_element field::integer(const big_int& n) const {
    if (spec_->is_rational()) return field_element(*this, rational(n));
    const big_int p(spec_->characteristic());
    big_int r = n % p;
    if (r < 0) r += p;
    std::vector<residue> c(spec_->degree(), 0);
    c[0] = static_cast<residue>(r);
    return field_element(*this, std::move(c));
}

inline field_element field::integer(std::int64_t n) const { return integer(big_int(n)); }

inline field_element field::element(std::vector<residue> coeffs) const {
    if (spec_->is_rational()) throw error(errc::unsupported_operation, "use from_rational in characteristic 0");
    if (coeffs.size() > spec_->degree())
        throw error(errc::validation, "element has more coordinates than the extension degree");
    for (const residue c : coeffs)
        if (c >= spec_->characteristic()) throw error(errc::validation, "coordinate not reduced mod p");
    coeffs.resize(spec_->degree(), 0);
    return field_element(*this, std::move(coeffs));
}

inline field_element field::from_rational(const rational& q) const {
    if (spec_->is_rational()) return field_element(*this, q);
    return integer(numerator(q)) / integer(denominator(q));
}

inline field_element field::generator() const {
    if (spec_->degree() < 2) throw error(errc::unsupported_operation, "prime fields have no generator t");
    std::vector<residue> c(spec_->degree(), 0);
    c[1] = 1;
    return field_element(*this, std::move(c));
}

inline std::vector<field_element> field::elements() const {
    if (spec_->is_rational()) throw error(errc::unsupported_operation, "Q is infinite");
    const std::uint64_t p = spec_->characteristic();
    const std::size_t k = spec_->degree();
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (order > (std::uint64_t{1} << 24) / p)
            throw error(errc::unsupported_operation, "field too large to enumerate");
        order *= p;
    }
    std::vector<field_element> out;
    out.reserve(order);
    std::vector<residue> c(k, 0);
    for (std::uint64_t n = 0; n < order; ++n) {
        out.push_back(field_element(*this, c));
        std::size_t i = 0;
        while (i < k && c[i] == p - 1) c[i++] = 0;
        if (i < k) ++c[i];
    }
    return out;
}

/// First monic irreducible of the given degree, ordering lower coefficients as base-p digits.
inline std::vector<residue> first_irreducible(std::uint64_t p, std::size_t degree) {
    if (degree < 2 || degree > max_extension_degree)
        throw error(errc::validation, "extension degree must lie in [2, " + std::to_string(max_extension_degree) + "]");
    std::vector<residue> f(degree + 1, 0);
    f[degree] = 1;
    for (;;) {
        if (check_irreducible(f, p)) return f;
        std::size_t i = 0;
        while (i < degree && f[i] == p - 1) f[i++] = 0;
        if (i == degree) break;
        ++f[i];
    }
    throw error(errc::internal_consistency, "no irreducible polynomial found");
}

} // namespace rootstring

#endif // ROOTSTRING_FIELD_HPP
