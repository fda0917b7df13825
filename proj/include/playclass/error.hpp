// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace playclass {

enum class ErrorCode {
    Io,
    Schema,
    DegenerateCorpus,
    DegenerateFeatures,
    Contract,
    Stratification,
    Format,
    VocabularyMismatch,
    Usage,
};

/// Stable, greppable identifier for an error code, e.g. "E_SCHEMA".
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Throws ErrorCode::Contract with `message` unless `condition` holds.
inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw Error(ErrorCode::Contract, message);
    }
}

}  // namespace playclass
