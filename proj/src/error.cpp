// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/error.hpp"

namespace fermient {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidShape: return "InvalidShape";
        case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
        case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
        case ErrorCode::NumberNonconserving: return "NumberNonconserving";
        case ErrorCode::UnboundSpace: return "UnboundSpace";
        case ErrorCode::UnbalancedBipartition: return "UnbalancedBipartition";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::PatternOutOfRange: return "PatternOutOfRange";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace fermient
