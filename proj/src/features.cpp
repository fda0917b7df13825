// SPDX-License-Identifier: Apache-2.0
#include "playclass/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "playclass/error.hpp"
#include "playclass/numfmt.hpp"

namespace playclass {
namespace {

std::uint64_t hash_tokens(const std::vector<std::string>& tokens) {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& t : tokens) {
        for (unsigned char c : t) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xFF;  // separator outside the token alphabet
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency,
                       std::size_t n_documents)
    : tokens_(std::move(tokens)), df_(std::move(document_frequency)), n_documents_(n_documents) {
    require(tokens_.size() == df_.size(), "vocabulary token and df lists differ in length");
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        require(i == 0 || tokens_[i - 1] < tokens_[i], "vocabulary tokens must be strictly sorted");
        require(df_[i] >= 1 && df_[i] <= n_documents_,
                "document frequency of '" + tokens_[i] + "' out of range");
        index_.emplace(tokens_[i], i);
    }
    id_ = hash_tokens(tokens_);
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenStream> documents, double min_df, double max_df) {
    require(0.0 <= min_df && min_df < max_df && max_df <= 1.0,
            "document-frequency bounds must satisfy 0 <= min_df < max_df <= 1");
    if (documents.empty()) throw Error(ErrorCode::DegenerateCorpus, "empty corpus");

    std::map<std::string, std::size_t> df;
    std::vector<std::string_view> seen;
    for (const auto& doc : documents) {
        seen.assign(doc.begin(), doc.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto token : seen) ++df[std::string(token)];
    }

    const auto n = static_cast<double>(documents.size());
    std::vector<std::string> tokens;
    std::vector<std::size_t> counts;
    for (const auto& [token, count] : df) {
        const double ratio = static_cast<double>(count) / n;
        if (ratio >= min_df && ratio <= max_df) {
            tokens.push_back(token);
            counts.push_back(count);
        }
    }
    if (tokens.empty()) {
        throw Error(ErrorCode::DegenerateFeatures, "no tokens survive document-frequency pruning");
    }
    return Vocabulary(std::move(tokens), std::move(counts), documents.size());
}

double tfidf_weight(double tf, std::size_t df, std::size_t n_documents) {
    require(df >= 1 && df <= n_documents, "tfidf_weight requires 1 <= df <= n_documents");
    require(tf >= 0.0, "tfidf_weight requires tf >= 0");
    if (tf == 0.0 || df == n_documents) return 0.0;
    return tf * std::log(static_cast<double>(n_documents) / static_cast<double>(df));
}

SparseRow vectorize_one(const TokenStream& tokens, const Vocabulary& vocab, WeightMode mode) {
    std::map<std::uint32_t, std::size_t> counts;
    for (const auto& t : tokens) {
        if (auto idx = vocab.index_of(t)) ++counts[static_cast<std::uint32_t>(*idx)];
    }
    SparseRow row;
    row.reserve(counts.size());
    for (const auto& [idx, tf] : counts) {
        double w = 0.0;
        switch (mode) {
            case WeightMode::TfIdf:
                w = tfidf_weight(static_cast<double>(tf), vocab.document_frequency(idx),
                                 vocab.n_documents());
                break;
            case WeightMode::Binary: w = 1.0; break;
            case WeightMode::Count: w = static_cast<double>(tf); break;
        }
        row.push_back({idx, w});
    }
    return row;
}

DocTermMatrix vectorize(std::span<const TokenStream> documents, const Vocabulary& vocab,
                        WeightMode mode) {
    DocTermMatrix m;
    m.mode = mode;
    m.vocab_id = vocab.id();
    m.n_features = vocab.size();
    m.rows.reserve(documents.size());
    for (const auto& doc : documents) m.rows.push_back(vectorize_one(doc, vocab, mode));
    return m;
}

DocTermMatrix select_features(const DocTermMatrix& matrix, std::span<const std::uint32_t> keep) {
    std::vector<std::int64_t> remap(matrix.n_features, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        require(keep[i] < matrix.n_features, "selected feature out of range");
        require(i == 0 || keep[i - 1] < keep[i], "selected features must be strictly increasing");
        remap[keep[i]] = static_cast<std::int64_t>(i);
    }
    DocTermMatrix out;
    out.mode = matrix.mode;
    out.vocab_id = matrix.vocab_id ^ hash_tokens({std::to_string(keep.size())});
    out.n_features = keep.size();
    out.rows.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        SparseRow r;
        for (const auto& e : row) {
            if (remap[e.index] >= 0) r.push_back({static_cast<std::uint32_t>(remap[e.index]), e.weight});
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string_view weight_mode_name(WeightMode mode) noexcept {
    switch (mode) {
        case WeightMode::TfIdf: return "tfidf";
        case WeightMode::Binary: return "binary";
        case WeightMode::Count: return "count";
    }
    return "tfidf";
}

WeightMode parse_weight_mode(std::string_view name) {
    if (name == "tfidf") return WeightMode::TfIdf;
    if (name == "binary") return WeightMode::Binary;
    if (name == "count") return WeightMode::Count;
    throw Error(ErrorCode::Format, "unknown weight mode '" + std::string(name) + "'");
}

void write_vocabulary(const Vocabulary& vocab, std::ostream& out) {
    out << "# n_documents=" << vocab.n_documents() << '\n';
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        out << vocab.token(i) << '\t' << i << '\t' << vocab.document_frequency(i) << '\n';
    }
}

Vocabulary read_vocabulary(std::istream& in) {
    std::string line;
    std::optional<std::size_t> n_docs;
    std::vector<std::string> tokens;
    std::vector<std::size_t> dfs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view key = "# n_documents=";
            if (line.starts_with(key)) n_docs = parse_int<std::size_t>(std::string_view(line).substr(key.size()));
            continue;
        }
        std::istringstream fields(line);
        std::string token, index, df;
        if (!std::getline(fields, token, '\t') || !std::getline(fields, index, '\t') ||
            !std::getline(fields, df)) {
            throw Error(ErrorCode::Format, "malformed vocabulary line: " + line);
        }
        const auto idx = parse_int<std::size_t>(index);
        const auto freq = parse_int<std::size_t>(df);
        if (!idx || *idx != tokens.size() || !freq) {
            throw Error(ErrorCode::Format, "malformed vocabulary line: " + line);
        }
        tokens.push_back(token);
        dfs.push_back(*freq);
    }
    if (!n_docs) throw Error(ErrorCode::Format, "vocabulary file lacks '# n_documents=' header");
    return Vocabulary(std::move(tokens), std::move(dfs), *n_docs);
}

void write_matrix(const DocTermMatrix& matrix, std::ostream& out) {
    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        for (const auto& e : matrix.rows[d]) {
            out << d << '\t' << e.index << '\t' << format_real(e.weight) << '\n';
        }
    }
}

}  // namespace playclass
