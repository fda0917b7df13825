// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "playclass/features.hpp"

namespace playclass {

enum class Variant { Multinomial, Bernoulli };

std::string_view variant_name(Variant v) noexcept;
Variant parse_variant(std::string_view name);

/// Trained Naive Bayes parameters. Immutable after training; safe to share
/// across threads for prediction.
struct NBModel {
    Variant variant = Variant::Multinomial;
    std::vector<std::string> classes;  // sorted
    std::vector<double> log_prior;
    /// cond_log_prob[c][t] = ln P(t|c).
    std::vector<std::vector<double>> cond_log_prob;
    /// Bernoulli only: ln(1 - P(t|c)).
    std::vector<std::vector<double>> cond_log_absent;
    std::size_t vocab_size = 0;
    double alpha = 1.0;

    /// Bernoulli only: sum over t of cond_log_absent[c][t]. Rebuilt by finalize().
    std::vector<double> absent_total;

    void finalize();
    std::size_t n_classes() const noexcept { return classes.size(); }
};

struct Prediction {
    /// (label, joint log score), best first; ties ordered by label.
    std::vector<std::pair<std::string, double>> ranking;

    const std::string& top() const { return ranking.front().first; }
    /// Normalized posteriors via log-sum-exp, aligned with `ranking`.
    std::vector<double> posteriors() const;
};

/// Sorted distinct labels.
std::vector<std::string> class_list(std::span<const std::string> labels);

NBModel train_multinomial(const DocTermMatrix& matrix, std::span<const std::string> labels,
                          double alpha = 1.0);
NBModel train_bernoulli(const DocTermMatrix& matrix, std::span<const std::string> labels,
                        double alpha = 1.0);
NBModel train(Variant variant, const DocTermMatrix& matrix, std::span<const std::string> labels,
              double alpha = 1.0);

/// Joint log score per class, in model.classes order.
std::vector<double> joint_log_scores(const NBModel& model, const SparseRow& row);

/// Scores closer than this (relative, floored at 1) count as tied. Classes
/// with mathematically equal scores can differ by rounding when their sums
/// run over features in a different order.
inline constexpr double kTieTolerance = 1e-12;
bool same_score(double a, double b);

Prediction predict(const NBModel& model, const SparseRow& row);
std::vector<Prediction> predict_batch(const NBModel& model, const DocTermMatrix& matrix);

/// Label of the best class only; skips building the full ranking.
const std::string& predict_label(const NBModel& model, const SparseRow& row);

}  // namespace playclass
