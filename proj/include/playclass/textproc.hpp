// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace playclass {

using TokenStream = std::vector<std::string>;

class StopWordList {
public:
    StopWordList() = default;
    StopWordList(std::unordered_set<std::string> words, std::string source_name);

    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return words_.size(); }
    const std::string& source_name() const noexcept { return source_name_; }
    const std::unordered_set<std::string>& words() const noexcept { return words_; }

    /// Order-independent FNV-1a digest of the word set. Models record it so
    /// prediction can detect a different tokenizer configuration.
    std::uint64_t fingerprint() const noexcept;

    StopWordList without(std::string_view word) const;

private:
    std::unordered_set<std::string> words_;
    std::string source_name_;
};

/// The embedded English list (data/stopwords_en.txt).
const StopWordList& default_stop_words();

/// One word per line; '#' comment lines and blank lines ignored; entries lowercased.
StopWordList parse_stop_words(std::istream& in, std::string source_name);
StopWordList load_stop_words(const std::filesystem::path& path);

inline constexpr std::size_t kMinTokenLength = 2;

/// Splits on every byte that is not an ASCII letter, lowercases, and drops stop
/// words and tokens shorter than kMinTokenLength. Order and multiplicity are kept.
TokenStream tokenize(std::string_view text, const StopWordList& stops);

}  // namespace playclass
