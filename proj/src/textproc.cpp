// SPDX-License-Identifier: Apache-2.0
#include "playclass/textproc.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "playclass/error.hpp"

namespace playclass {
namespace detail {
extern const std::string_view kEnglishStopWords;
}

namespace {

bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower(unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); }

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

StopWordList::StopWordList(std::unordered_set<std::string> words, std::string source_name)
    : words_(std::move(words)), source_name_(std::move(source_name)) {
    for (const auto& w : words_) {
        require(!w.empty(), "stop word list '" + source_name_ + "' has an empty entry");
        require(std::none_of(w.begin(), w.end(), [](unsigned char c) { return c >= 'A' && c <= 'Z'; }),
                "stop word '" + w + "' is not lowercase");
    }
}

bool StopWordList::contains(std::string_view word) const {
    return words_.find(std::string(word)) != words_.end();
}

std::uint64_t StopWordList::fingerprint() const noexcept {
    std::vector<std::string_view> sorted(words_.begin(), words_.end());
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t h = 14695981039346656037ull;
    for (auto w : sorted) {
        h ^= fnv1a(w);
        h *= 1099511628211ull;
    }
    return h;
}

StopWordList StopWordList::without(std::string_view word) const {
    auto copy = words_;
    copy.erase(std::string(word));
    return StopWordList(std::move(copy), source_name_);
}

StopWordList parse_stop_words(std::istream& in, std::string source_name) {
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t");
        std::string word = line.substr(first, last - first + 1);
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return to_lower(c); });
        words.insert(std::move(word));
    }
    return StopWordList(std::move(words), std::move(source_name));
}

StopWordList load_stop_words(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open stop-word file " + path.string());
    return parse_stop_words(in, path.filename().string());
}

const StopWordList& default_stop_words() {
    static const StopWordList list = [] {
        std::istringstream in{std::string(detail::kEnglishStopWords)};
        return parse_stop_words(in, "english-318-v1");
    }();
    return list;
}

TokenStream tokenize(std::string_view text, const StopWordList& stops) {
    TokenStream tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= kMinTokenLength && !stops.contains(current)) {
            tokens.push_back(current);
        }
        current.clear();
    };
    for (unsigned char c : text) {
        if (is_alpha(c)) {
            current.push_back(to_lower(c));
        } else if (!current.empty()) {
            flush();
        }
    }
    if (!current.empty()) flush();
    return tokens;
}

}  // namespace playclass
