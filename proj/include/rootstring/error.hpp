#ifndef ROOTSTRING_ERROR_HPP
#define ROOTSTRING_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootstring {

enum class errc {
    spec_mismatch,
    division_by_zero,
    unsupported_operation,
    validation,
    invalid_index,
    internal_consistency,
    reflection_undefined,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::spec_mismatch: return "spec-mismatch";
    case errc::division_by_zero: return "division-by-zero";
    case errc::unsupported_operation: return "unsupported-operation";
    case errc::validation: return "validation";
    case errc::invalid_index: return "invalid-index";
    case errc::internal_consistency: return "internal-consistency";
    case errc::reflection_undefined: return "reflection-undefined";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace rootstring

#endif // ROOTSTRING_ERROR_HPP
