// SPDX-License-Identifier: Apache-2.0
#include "playclass/error.hpp"

namespace playclass {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Io: return "E_IO";
        case ErrorCode::Schema: return "E_SCHEMA";
        case ErrorCode::DegenerateCorpus: return "E_EMPTY_CORPUS";
        case ErrorCode::DegenerateFeatures: return "E_EMPTY_FEATURES";
        case ErrorCode::Contract: return "E_CONTRACT";
        case ErrorCode::Stratification: return "E_STRATIFICATION";
        case ErrorCode::Format: return "E_FORMAT";
        case ErrorCode::VocabularyMismatch: return "E_VOCAB_MISMATCH";
        case ErrorCode::Usage: return "E_USAGE";
    }
    return "E_UNKNOWN";
}

}  // namespace playclass
