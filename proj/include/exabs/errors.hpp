// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exabs {

enum class ErrorKind {
    GridTooCoarse,
    PacketTruncated,
    GridMismatch,
    WrapAround,
    ZeroAmplitude,
    PauliViolation,
    DegenerateBaseline,
    IndistinguishableFinals,
    FermionEqualState,
    TooLarge,
    DimensionMismatch,
    NonpositiveTemperature,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::PacketTruncated: return "PacketTruncated";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::WrapAround: return "WrapAround";
    case ErrorKind::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorKind::PauliViolation: return "PauliViolation";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorKind::IndistinguishableFinals: return "IndistinguishableFinals";
    case ErrorKind::FermionEqualState: return "FermionEqualState";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonpositiveTemperature: return "NonpositiveTemperature";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library. The kind is stable and is what the
/// command-line front end prints on the diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::string_view name() const noexcept { return to_string(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string &what) {
    if (!cond) {
        raise(kind, what);
    }
}

} // namespace exabs
