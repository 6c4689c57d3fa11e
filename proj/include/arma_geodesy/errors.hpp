// Error taxonomy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace arma_geodesy {

enum class errc {
    non_positive_gain,
    unstable_point,
    root_outside_disk,
    no_convergence,
    tolerance_unreachable,
    method_scheme_mismatch,
    step_out_of_disk,
    invalid_argument,
    parse_error,
    internal_inconsistency,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_positive_gain: return "NonPositiveGain";
        case errc::unstable_point: return "UnstablePoint";
        case errc::root_outside_disk: return "RootOutsideDisk";
        case errc::no_convergence: return "NoConvergence";
        case errc::tolerance_unreachable: return "ToleranceUnreachable";
        case errc::method_scheme_mismatch: return "MethodSchemeMismatch";
        case errc::step_out_of_disk: return "StepOutOfDisk";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::parse_error: return "ParseError";
        case errc::internal_inconsistency: return "InternalInconsistency";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code),
          message_(message) {}

    errc code() const noexcept { return code_; }

    // Message without the error-name prefix, for rethrows that add context.
    const std::string& message() const noexcept { return message_; }

    // Process exit codes: 2 validation, 3 parse, 4 internal inconsistency.
    int exit_code() const noexcept {
        switch (code_) {
            case errc::parse_error: return 3;
            case errc::internal_inconsistency: return 4;
            default: return 2;
        }
    }

private:
    errc code_;
    std::string message_;
};

} // namespace arma_geodesy
