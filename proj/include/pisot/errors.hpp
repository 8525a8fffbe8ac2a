#pragma once

#include <stdexcept>
#include <string>

namespace pisot {

// Failure classes surfaced by the library. CLI maps search-guard failures
// (cap_exhausted, boundary_undecided) to exit code 3, everything else to 2.
enum class errc {
    zero_polynomial,
    not_squarefree,
    bad_interval,
    zero_constant_term,
    not_monic,
    reducible,
    not_real_field,
    irreducibility_unknown,
    field_mismatch,
    unbounded_box,
    boundary_undecided,
    not_salem_trace,
    not_in_ek,
    cap_exhausted,
    not_applicable,
    insufficient_range,
    unsupported,
    parse_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::not_squarefree: return "NotSquarefree";
        case errc::bad_interval: return "BadInterval";
        case errc::zero_constant_term: return "ZeroConstantTerm";
        case errc::not_monic: return "NotMonic";
        case errc::reducible: return "Reducible";
        case errc::not_real_field: return "NotRealField";
        case errc::irreducibility_unknown: return "IrreducibilityUnknown";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::unbounded_box: return "Unbounded";
        case errc::boundary_undecided: return "BoundaryUndecided";
        case errc::not_salem_trace: return "NotSalemTrace";
        case errc::not_in_ek: return "NotInEK";
        case errc::cap_exhausted: return "CapExhausted";
        case errc::not_applicable: return "NotApplicable";
        case errc::insufficient_range: return "InsufficientRange";
        case errc::unsupported: return "Unsupported";
        case errc::parse_error: return "ParseError";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class atlas_error : public std::runtime_error {
  public:
    atlas_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

    // Guard failures are recoverable-by-configuration, not domain errors.
    bool is_guard_failure() const noexcept {
        return code_ == errc::cap_exhausted || code_ == errc::boundary_undecided;
    }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw atlas_error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace pisot
