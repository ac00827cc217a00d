// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_ERRORS_HPP
#define DELTAWV_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace deltawv {

enum class ErrorCode {
    kInvalidArgument = 1,
    kUnknownName = 2,
    kParseError = 3,
    kValidationError = 4,
    kNonConvergence = 5,
    kPrecisionExhausted = 6,
    kDivisionAtZero = 7,
    kInsufficientData = 8,
    kNeedsMoreTerms = 9,
    kMinimalSolutionNotFound = 10,
    kDataError = 11,
    kIoError = 12,
    kInternal = 13,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace deltawv

#endif
