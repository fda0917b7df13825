// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "playclass/classifier.hpp"
#include "playclass/corpus.hpp"
#include "playclass/features.hpp"
#include "playclass/textproc.hpp"

namespace playclass {

// ---------------------------------------------------------------------------
// Splitting

enum class SplitKind { HoldOut, KFold, StratifiedKFold, ShuffleSplit };

struct SplitPlan {
    SplitKind kind = SplitKind::HoldOut;
    double test_fraction = 0.2;      // HoldOut, ShuffleSplit
    std::size_t k = 10;              // KFold, StratifiedKFold
    std::size_t n_iterations = 10;   // ShuffleSplit
    std::uint64_t seed = 42;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Index splits over `n` items. `labels` is only consulted for stratification
/// and may be empty otherwise. Train indices of HoldOut/ShuffleSplit keep the
/// seeded shuffle order, so a prefix of them is itself a random subset.
std::vector<Split> make_splits(std::size_t n, std::span<const std::string> labels,
                               const SplitPlan& plan);

// ---------------------------------------------------------------------------
// Pipeline: tokenize -> vocabulary -> vectorize -> Naive Bayes

struct Dataset {
    std::vector<TokenStream> tokens;
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return labels.size(); }
};

Dataset prepare(const Corpus& corpus, const StopWordList& stops);

struct PipelineSettings {
    Variant variant = Variant::Multinomial;
    double alpha = 1.0;
    double min_df = kDefaultMinDf;
    double max_df = kDefaultMaxDf;
    /// Multinomial weighting (TfIdf or Count). Bernoulli always uses Binary.
    WeightMode multinomial_weighting = WeightMode::TfIdf;

    WeightMode weighting() const noexcept {
        return variant == Variant::Bernoulli ? WeightMode::Binary : multinomial_weighting;
    }
};

struct FittedPipeline {
    Vocabulary vocab;
    WeightMode weighting = WeightMode::TfIdf;
    NBModel model;
};

/// Fits vocabulary and model on `rows` of `data` only.
FittedPipeline fit_pipeline(const Dataset& data, std::span<const std::size_t> rows,
                            const PipelineSettings& settings);

std::vector<std::string> predict_rows(const FittedPipeline& fitted, const Dataset& data,
                                      std::span<const std::size_t> rows);

double accuracy(std::span<const std::string> truth, std::span<const std::string> predicted);

// ---------------------------------------------------------------------------
// Metrics

struct ConfusionMatrix {
    std::vector<std::string> labels;                 // sorted
    std::vector<std::vector<std::size_t>> counts;    // [true][predicted]

    std::size_t total() const;
    std::size_t trace() const;
};

/// Label order is the sorted `labels`. Throws Contract for labels outside it.
ConfusionMatrix confusion(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                          std::span<const std::string> labels);

struct ClassMetrics {
    std::string label;
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    double tpr = 0, fnr = 0, precision = 0, recall = 0, f1 = 0;
    std::size_t support = 0;
};

/// Rates from raw per-class counts; zero denominators give 0 (FNR is 1 - TPR
/// only when the class has support).
ClassMetrics metrics_from_counts(std::string label, std::size_t tp, std::size_t tn, std::size_t fp,
                                 std::size_t fn);

struct ClassReport {
    std::vector<ClassMetrics> classes;
    std::size_t total = 0;
    double accuracy = 0;
    double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
};

ClassReport class_report(const ConfusionMatrix& cm);

// ---------------------------------------------------------------------------
// Evaluations

struct HoldoutResult {
    double accuracy = 0;
    std::vector<std::string> y_true;
    std::vector<std::string> y_pred;
    ConfusionMatrix confusion;
    ClassReport report;
    std::size_t train_size = 0;
};

HoldoutResult evaluate_holdout(const Dataset& data, const PipelineSettings& settings,
                               const SplitPlan& plan);

struct CvResult {
    double mean = 0;
    std::vector<double> fold_scores;
};

/// Plan must be KFold or StratifiedKFold. Each fold refits the vocabulary on
/// its training part.
CvResult cross_validate(const Dataset& data, const PipelineSettings& settings, const SplitPlan& plan);

struct CurvePoint {
    std::size_t x = 0;
    double mean = 0;
    double lo = 0;
    double hi = 0;
    double stddev = 0;
};

/// Feature counts visited by elimination: n, n - ceil(step*n), ... , 1.
std::vector<std::size_t> rfe_schedule(std::size_t n_features, double step_fraction);

/// Recursive feature elimination scored by cross-validated accuracy. Features
/// are ranked by sum over classes of cond_log_prob^2; each step drops the
/// ceil(step_fraction * current) lowest.
std::vector<CurvePoint> rfe_cv(const Dataset& data, const PipelineSettings& settings,
                               double step_fraction, const SplitPlan& plan);

struct LearningCurve {
    std::vector<CurvePoint> train;
    std::vector<CurvePoint> test;
    std::vector<std::string> warnings;
};

std::vector<double> default_train_sizes();

/// Plan must be ShuffleSplit. For each split and size s, trains on the first
/// floor(s * |pool|) shuffled training items and scores both that subset and
/// the held-out test set.
LearningCurve learning_curve(const Dataset& data, const PipelineSettings& settings,
                             const SplitPlan& plan,
                             std::span<const double> train_sizes = default_train_sizes());

CurvePoint summarize(std::size_t x, std::span<const double> scores);

}  // namespace playclass
