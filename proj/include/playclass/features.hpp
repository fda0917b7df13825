// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "playclass/textproc.hpp"

namespace playclass {

inline constexpr double kDefaultMinDf = 0.0005;
inline constexpr double kDefaultMaxDf = 0.70;

/// Token -> feature index, with the document frequencies it was built from.
/// Indices follow lexicographic token order.
class Vocabulary {
public:
    Vocabulary() = default;
    /// `tokens` must be strictly increasing; `document_frequency` parallel to it.
    Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency,
               std::size_t n_documents);

    std::size_t size() const noexcept { return tokens_.size(); }
    std::size_t n_documents() const noexcept { return n_documents_; }
    std::optional<std::size_t> index_of(const std::string& token) const;
    const std::string& token(std::size_t index) const { return tokens_.at(index); }
    std::size_t document_frequency(std::size_t index) const { return df_.at(index); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    const std::vector<std::size_t>& document_frequencies() const noexcept { return df_; }

    /// FNV-1a over the token list; binds matrices to the vocabulary they came from.
    std::uint64_t id() const noexcept { return id_; }

private:
    std::vector<std::string> tokens_;
    std::vector<std::size_t> df_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t n_documents_ = 0;
    std::uint64_t id_ = 0;
};

/// Keeps tokens with min_df <= df/n <= max_df. Throws DegenerateFeatures if
/// nothing survives and Contract unless 0 <= min_df < max_df <= 1.
Vocabulary build_vocabulary(std::span<const TokenStream> documents, double min_df = kDefaultMinDf,
                            double max_df = kDefaultMaxDf);

/// tf * ln(n_documents / df).
double tfidf_weight(double tf, std::size_t df, std::size_t n_documents);

enum class WeightMode { TfIdf, Binary, Count };

struct Entry {
    std::uint32_t index;
    double weight;

    friend bool operator==(const Entry&, const Entry&) = default;
};

using SparseRow = std::vector<Entry>;

struct DocTermMatrix {
    std::vector<SparseRow> rows;
    WeightMode mode = WeightMode::TfIdf;
    std::uint64_t vocab_id = 0;
    std::size_t n_features = 0;

    std::size_t size() const noexcept { return rows.size(); }
};

SparseRow vectorize_one(const TokenStream& tokens, const Vocabulary& vocab, WeightMode mode);
DocTermMatrix vectorize(std::span<const TokenStream> documents, const Vocabulary& vocab,
                        WeightMode mode);

/// Keeps only the listed feature columns, renumbered 0..k-1 in the given order
/// (which must be strictly increasing).
DocTermMatrix select_features(const DocTermMatrix& matrix, std::span<const std::uint32_t> keep);

std::string_view weight_mode_name(WeightMode mode) noexcept;
WeightMode parse_weight_mode(std::string_view name);

// "token TAB index TAB df" lines, preceded by a "# n_documents=N" header.
void write_vocabulary(const Vocabulary& vocab, std::ostream& out);
Vocabulary read_vocabulary(std::istream& in);

// "doc_id TAB feature_index TAB weight" triplets, weights with 17 significant digits.
void write_matrix(const DocTermMatrix& matrix, std::ostream& out);

}  // namespace playclass
