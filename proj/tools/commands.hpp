// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "playclass/corpus.hpp"
#include "playclass/evaluation.hpp"

namespace playclass::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct RunConfig {
    std::string input;
    std::string output;
    std::string model;
    std::optional<std::string> text;
    std::optional<std::string> stop_words;

    FilterProfile profile;
    PipelineSettings settings;

    std::string eval = "holdout";
    std::vector<std::size_t> k;
    double test_fraction = 0.2;
    double step_fraction = 0.2;
    std::size_t iterations = 10;
    std::uint64_t seed = kDefaultSeed;
    std::size_t top_k = 3;
};

/// Each command writes its human-readable summary to `out` and per-item
/// warnings to `err`. Failures are thrown as playclass::Error.
void cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
void cmd_train(const RunConfig& config, std::ostream& out);
void cmd_predict(const RunConfig& config, std::ostream& out);
void cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Seed from the command line, else PLAYCLASS_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

}  // namespace playclass::cli
