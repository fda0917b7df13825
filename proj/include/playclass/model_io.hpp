// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "playclass/classifier.hpp"
#include "playclass/features.hpp"
#include "playclass/textproc.hpp"

namespace playclass {

inline constexpr int kModelFormatVersion = 1;

/// Everything needed to score raw text: the model, the vocabulary it was
/// trained over, the weighting and the stop-word list identity.
struct ModelBundle {
    NBModel model;
    Vocabulary vocab;
    WeightMode weighting = WeightMode::TfIdf;
    std::string stop_words_name;
    std::uint64_t stop_words_fingerprint = 0;
};

/// Text format: tab-separated key/value lines, vocabulary as
/// "token TAB index TAB df", one line of per-feature reals per class.
/// Reals carry 17 significant digits so a reload scores bit-identically.
void save_model(const ModelBundle& bundle, std::ostream& out);
void save_model(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_model(std::istream& in);
ModelBundle load_model(const std::filesystem::path& path);

/// Throws VocabularyMismatch if `stops` differs from the list the model was trained with.
void check_tokenizer(const ModelBundle& bundle, const StopWordList& stops);

/// Tokenizes and vectorizes `text` exactly as training did, then predicts.
Prediction predict_text(const ModelBundle& bundle, std::string_view text, const StopWordList& stops);

}  // namespace playclass
