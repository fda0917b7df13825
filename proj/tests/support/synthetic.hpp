// SPDX-License-Identifier: Apache-2.0
// Seeded synthetic corpora for tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bayes_oracle.hpp"
#include "playclass/evaluation.hpp"

namespace playclass::testing {

/// Token for an integer id: "q" followed by the id in base 26 (at least two
/// letters). Injective, and never a stop word.
inline std::string word(std::size_t id) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('a' + id % 26));
        id /= 26;
    } while (id > 0);
    while (s.size() < 2) s.insert(s.begin(), 'a');
    return "q" + s;
}

inline std::string label_for(std::size_t c) { return "CLASS_" + std::string(1, static_cast<char>('A' + c)); }

/// Random corpus with at most `max_docs` documents, `max_vocab` token types
/// and `max_classes` classes. Every class has at least one document.
inline OracleCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_vocab,
                                  std::size_t max_classes) {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t n_classes = uniform(1, max_classes);
    const std::size_t n_docs = uniform(n_classes, max_docs);
    const std::size_t n_vocab = uniform(1, max_vocab);
    OracleCorpus corpus;
    for (std::size_t d = 0; d < n_docs; ++d) {
        const std::size_t c = d < n_classes ? d : uniform(0, n_classes - 1);
        std::vector<std::string> doc;
        const std::size_t len = uniform(0, 12);
        for (std::size_t i = 0; i < len; ++i) {
            // Skew token choice per class so classes are distinguishable.
            const std::size_t id = (uniform(0, n_vocab - 1) + (uniform(0, 1) ? c : 0)) % n_vocab;
            doc.push_back(word(id));
        }
        corpus.docs.push_back(std::move(doc));
        corpus.labels.push_back(label_for(c));
    }
    return corpus;
}

/// Documents drawn from per-class vocabularies. `class_vocab[c]` lists the
/// token ids class c draws from, uniformly.
inline Dataset sample_dataset(std::mt19937_64& rng, const std::vector<std::vector<std::size_t>>& class_vocab,
                              const std::vector<std::string>& labels, std::size_t docs_per_class,
                              std::size_t doc_length) {
    Dataset data;
    for (std::size_t c = 0; c < class_vocab.size(); ++c) {
        std::uniform_int_distribution<std::size_t> pick(0, class_vocab[c].size() - 1);
        for (std::size_t d = 0; d < docs_per_class; ++d) {
            TokenStream doc;
            for (std::size_t i = 0; i < doc_length; ++i) doc.push_back(word(class_vocab[c][pick(rng)]));
            data.tokens.push_back(std::move(doc));
            data.labels.push_back(labels[c]);
        }
    }
    return data;
}

/// `n_classes` classes with disjoint vocabularies of `words_per_class` ids.
inline Dataset separable_dataset(std::mt19937_64& rng, std::size_t n_classes, std::size_t words_per_class,
                                 std::size_t docs_per_class, std::size_t doc_length) {
    std::vector<std::vector<std::size_t>> vocab(n_classes);
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t w = 0; w < words_per_class; ++w) vocab[c].push_back(c * words_per_class + w);
        labels.push_back(label_for(c));
    }
    return sample_dataset(rng, vocab, labels, docs_per_class, doc_length);
}

/// 8 "GAME_*" classes whose generative vocabularies share 60% of their words,
/// plus 8 classes with disjoint vocabularies.
inline Dataset game_like_dataset(std::mt19937_64& rng, std::size_t docs_per_class, std::size_t doc_length = 20) {
    constexpr std::size_t kWords = 50;
    constexpr std::size_t kShared = 30;  // 60% of kWords
    std::vector<std::vector<std::size_t>> vocab;
    std::vector<std::string> labels;
    std::size_t next = 0;
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < kShared; ++i) shared.push_back(next++);
    for (std::size_t g = 0; g < 8; ++g) {
        auto v = shared;
        for (std::size_t i = kShared; i < kWords; ++i) v.push_back(next++);
        vocab.push_back(std::move(v));
        labels.push_back("GAME_" + std::string(1, static_cast<char>('A' + g)));
    }
    for (std::size_t o = 0; o < 8; ++o) {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < kWords; ++i) v.push_back(next++);
        vocab.push_back(std::move(v));
        labels.push_back("OTHER_" + std::string(1, static_cast<char>('A' + o)));
    }
    return sample_dataset(rng, vocab, labels, docs_per_class, doc_length);
}

}  // namespace playclass::testing
