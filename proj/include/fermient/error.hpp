// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fermient {

enum class ErrorCode {
    InvalidShape,
    DimensionCapExceeded,
    ModeOutOfRange,
    NumberNonconserving,
    UnboundSpace,
    UnbalancedBipartition,
    LengthMismatch,
    PatternOutOfRange,
    NotNormalized,
    ShapeMismatch,
    InvalidState,
    ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this exception; `code()` is stable,
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fermient
