// Copyright 2026 The provent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "provent/error.hpp"

namespace provent {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Truncated: return "truncated";
        case ErrorCode::Overlong: return "overlong varint";
        case ErrorCode::UnknownWireType: return "unknown wire type";
        case ErrorCode::InvalidTag: return "invalid tag";
        case ErrorCode::WireTypeMismatch: return "wire type mismatch";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::NonFinite: return "non-finite value";
        case ErrorCode::InvariantViolation: return "invariant violation";
        case ErrorCode::UnsupportedVersion: return "unsupported version";
        case ErrorCode::UsageError: return "usage error";
        case ErrorCode::LimitExceeded: return "limit exceeded";
        case ErrorCode::NotAnArchive: return "not an archive";
        case ErrorCode::MissingHeader: return "missing header";
        case ErrorCode::MissingIndex: return "missing index";
        case ErrorCode::OutOfRange: return "out of range";
        case ErrorCode::ChecksumMismatch: return "checksum mismatch";
        case ErrorCode::Io: return "i/o error";
        case ErrorCode::SyntaxError: return "syntax error";
        case ErrorCode::DuplicateField: return "duplicate field";
        case ErrorCode::UnknownMessage: return "unknown message";
        case ErrorCode::MalformedLine: return "malformed line";
        case ErrorCode::DanglingReference: return "dangling reference";
        case ErrorCode::UnsupportedUnits: return "unsupported units";
    }
    return "error";
}

}  // namespace provent
