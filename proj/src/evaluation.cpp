// SPDX-License-Identifier: Apache-2.0
#include "playclass/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "playclass/error.hpp"
#include "playclass/rng.hpp"

namespace playclass {
namespace {

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span(perm));
    return perm;
}

Split holdout_split(std::size_t n, double test_fraction, Rng& rng) {
    const auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(n) * test_fraction));
    require(n_test >= 1 && n_test < n,
            "holdout of " + std::to_string(n) + " items leaves an empty train or test set");
    const auto perm = permutation(n, rng);
    Split s;
    s.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    return s;
}

std::vector<Split> splits_from_folds(const std::vector<std::size_t>& fold_of, std::size_t k) {
    std::vector<Split> splits(k);
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        for (std::size_t f = 0; f < k; ++f) {
            (fold_of[i] == f ? splits[f].test : splits[f].train).push_back(i);
        }
    }
    return splits;
}

// Class-by-fold counts where each cell is floor or ceil of n_c * size_f / n
// and rows and columns sum to the class and fold sizes. Cells start at the
// floor; the remainders are placed one unit at a time along augmenting paths
// over the fractional cells.
class StratumCounts {
public:
    StratumCounts(const std::vector<std::size_t>& class_sizes, const std::vector<std::size_t>& fold_sizes)
        : n_classes_(class_sizes.size()), n_folds_(fold_sizes.size()),
          counts_(n_classes_, std::vector<std::size_t>(n_folds_)),
          fractional_(n_classes_, std::vector<bool>(n_folds_)),
          raised_(n_classes_, std::vector<bool>(n_folds_)),
          fold_need_(fold_sizes) {
        const std::size_t n = std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0});
        std::vector<std::size_t> class_need(n_classes_);
        for (std::size_t c = 0; c < n_classes_; ++c) {
            std::size_t placed = 0;
            for (std::size_t f = 0; f < n_folds_; ++f) {
                const std::size_t scaled = class_sizes[c] * fold_sizes[f];
                counts_[c][f] = scaled / n;
                fractional_[c][f] = scaled % n != 0;
                placed += counts_[c][f];
                fold_need_[f] -= counts_[c][f];
            }
            class_need[c] = class_sizes[c] - placed;
        }
        for (std::size_t c = 0; c < n_classes_; ++c) {
            for (std::size_t unit = 0; unit < class_need[c]; ++unit) {
                visited_.assign(n_folds_, false);
                require(augment(c), "stratified fold allocation failed");
            }
        }
        for (std::size_t c = 0; c < n_classes_; ++c) {
            for (std::size_t f = 0; f < n_folds_; ++f) counts_[c][f] += raised_[c][f] ? 1 : 0;
        }
    }

    std::size_t operator()(std::size_t c, std::size_t f) const { return counts_[c][f]; }

private:
    bool augment(std::size_t c) {
        for (std::size_t f = 0; f < n_folds_; ++f) {
            if (visited_[f] || !fractional_[c][f] || raised_[c][f]) continue;
            visited_[f] = true;
            if (fold_need_[f] > 0) {
                raised_[c][f] = true;
                --fold_need_[f];
                return true;
            }
            for (std::size_t other = 0; other < n_classes_; ++other) {
                if (raised_[other][f] && augment(other)) {
                    raised_[other][f] = false;
                    raised_[c][f] = true;
                    return true;
                }
            }
        }
        return false;
    }

    std::size_t n_classes_, n_folds_;
    std::vector<std::vector<std::size_t>> counts_;
    std::vector<std::vector<bool>> fractional_;
    std::vector<std::vector<bool>> raised_;
    std::vector<std::size_t> fold_need_;
    std::vector<bool> visited_;
};

std::vector<std::size_t> fold_sizes(std::size_t n, std::size_t k) {
    std::vector<std::size_t> sizes(k);
    for (std::size_t f = 0; f < k; ++f) sizes[f] = n / k + (f < n % k ? 1 : 0);
    return sizes;
}

std::vector<Split> kfold(std::size_t n, std::size_t k, Rng& rng) {
    const auto perm = permutation(n, rng);
    std::vector<Split> splits(k);
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        for (std::size_t p = 0; p < n; ++p) {
            (p >= start && p < start + size ? splits[f].test : splits[f].train).push_back(perm[p]);
        }
        start += size;
    }
    return splits;
}

std::vector<Split> stratified_kfold(std::span<const std::string> labels, std::size_t k, Rng& rng) {
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    std::vector<std::size_t> class_sizes;
    for (auto& [label, members] : by_class) {
        if (members.size() < k) {
            throw Error(ErrorCode::Stratification,
                        "class '" + label + "' has " + std::to_string(members.size()) +
                            " member(s), fewer than k=" + std::to_string(k));
        }
        class_sizes.push_back(members.size());
    }
    const StratumCounts counts(class_sizes, fold_sizes(labels.size(), k));
    std::vector<std::size_t> fold_of(labels.size());
    std::size_t c = 0;
    for (auto& [label, members] : by_class) {
        rng.shuffle(std::span(members));
        std::size_t next = 0;
        for (std::size_t f = 0; f < k; ++f) {
            for (std::size_t i = 0; i < counts(c, f); ++i) fold_of[members[next++]] = f;
        }
        ++c;
    }
    return splits_from_folds(fold_of, k);
}

WeightMode checked_weighting(const PipelineSettings& settings) {
    const auto mode = settings.weighting();
    require(settings.variant == Variant::Bernoulli || mode != WeightMode::Binary,
            "multinomial weighting must be tfidf or count");
    return mode;
}

std::vector<std::string> pick(std::span<const std::string> labels, std::span<const std::size_t> rows) {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(labels[r]);
    return out;
}

double score_rows(const NBModel& model, const DocTermMatrix& matrix,
                  std::span<const std::string> labels, std::span<const std::size_t> rows) {
    if (rows.empty()) return 0.0;
    std::size_t correct = 0;
    for (auto r : rows) {
        if (predict_label(model, matrix.rows[r]) == labels[r]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(rows.size());
}

DocTermMatrix take_rows(const DocTermMatrix& m, std::span<const std::size_t> rows) {
    DocTermMatrix out;
    out.mode = m.mode;
    out.vocab_id = m.vocab_id;
    out.n_features = m.n_features;
    out.rows.reserve(rows.size());
    for (auto r : rows) out.rows.push_back(m.rows[r]);
    return out;
}

}  // namespace

std::vector<Split> make_splits(std::size_t n, std::span<const std::string> labels,
                               const SplitPlan& plan) {
    Rng rng(plan.seed);
    switch (plan.kind) {
        case SplitKind::HoldOut:
            require(plan.test_fraction > 0.0 && plan.test_fraction < 1.0, "test_fraction must be in (0,1)");
            return {holdout_split(n, plan.test_fraction, rng)};
        case SplitKind::ShuffleSplit: {
            require(plan.test_fraction > 0.0 && plan.test_fraction < 1.0, "test_fraction must be in (0,1)");
            require(plan.n_iterations >= 1, "ShuffleSplit needs at least one iteration");
            std::vector<Split> out;
            for (std::size_t i = 0; i < plan.n_iterations; ++i) {
                out.push_back(holdout_split(n, plan.test_fraction, rng));
            }
            return out;
        }
        case SplitKind::KFold:
            require(plan.k >= 2, "k must be >= 2");
            require(n >= plan.k, "k-fold needs at least k items");
            return kfold(n, plan.k, rng);
        case SplitKind::StratifiedKFold:
            require(plan.k >= 2, "k must be >= 2");
            require(labels.size() == n, "stratification needs one label per item");
            return stratified_kfold(labels, plan.k, rng);
    }
    return {};
}

Dataset prepare(const Corpus& corpus, const StopWordList& stops) {
    Dataset d;
    d.tokens.reserve(corpus.size());
    d.labels.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
        d.tokens.push_back(tokenize(doc.text, stops));
        d.labels.push_back(doc.label);
    }
    return d;
}

FittedPipeline fit_pipeline(const Dataset& data, std::span<const std::size_t> rows,
                            const PipelineSettings& settings) {
    FittedPipeline fit;
    fit.weighting = checked_weighting(settings);
    std::vector<TokenStream> docs;
    docs.reserve(rows.size());
    for (auto r : rows) docs.push_back(data.tokens[r]);
    fit.vocab = build_vocabulary(docs, settings.min_df, settings.max_df);
    const auto matrix = vectorize(docs, fit.vocab, fit.weighting);
    fit.model = train(settings.variant, matrix, pick(data.labels, rows), settings.alpha);
    return fit;
}

std::vector<std::string> predict_rows(const FittedPipeline& fitted, const Dataset& data,
                                      std::span<const std::size_t> rows) {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (auto r : rows) {
        out.push_back(predict_label(fitted.model, vectorize_one(data.tokens[r], fitted.vocab, fitted.weighting)));
    }
    return out;
}

double accuracy(std::span<const std::string> truth, std::span<const std::string> predicted) {
    require(truth.size() == predicted.size(), "accuracy needs equal-length label lists");
    if (truth.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == predicted[i];
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

std::size_t ConfusionMatrix::total() const {
    std::size_t t = 0;
    for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
    return t;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

ConfusionMatrix confusion(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                          std::span<const std::string> labels) {
    require(y_true.size() == y_pred.size(), "confusion needs equal-length label lists");
    ConfusionMatrix cm;
    cm.labels = class_list(labels);
    const std::size_t L = cm.labels.size();
    cm.counts.assign(L, std::vector<std::size_t>(L, 0));
    auto index = [&](const std::string& label) {
        const auto it = std::lower_bound(cm.labels.begin(), cm.labels.end(), label);
        require(it != cm.labels.end() && *it == label, "label '" + label + "' not in the label set");
        return static_cast<std::size_t>(it - cm.labels.begin());
    };
    for (std::size_t i = 0; i < y_true.size(); ++i) ++cm.counts[index(y_true[i])][index(y_pred[i])];
    return cm;
}

ClassMetrics metrics_from_counts(std::string label, std::size_t tp, std::size_t tn, std::size_t fp,
                                 std::size_t fn) {
    ClassMetrics m;
    m.label = std::move(label);
    m.tp = tp;
    m.tn = tn;
    m.fp = fp;
    m.fn = fn;
    m.support = tp + fn;
    auto ratio = [](std::size_t a, std::size_t b) {
        return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
    };
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.tpr = m.recall;
    m.fnr = m.support > 0 ? ratio(fn, tp + fn) : 0.0;
    const double pr = m.precision + m.recall;
    m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
    return m;
}

ClassReport class_report(const ConfusionMatrix& cm) {
    ClassReport report;
    report.total = cm.total();
    const std::size_t L = cm.labels.size();
    for (std::size_t c = 0; c < L; ++c) {
        const std::size_t tp = cm.counts[c][c];
        std::size_t row = 0, col = 0;
        for (std::size_t j = 0; j < L; ++j) {
            row += cm.counts[c][j];
            col += cm.counts[j][c];
        }
        const std::size_t fp = col - tp, fn = row - tp;
        report.classes.push_back(
            metrics_from_counts(cm.labels[c], tp, report.total - tp - fp - fn, fp, fn));
    }
    if (report.total > 0) {
        report.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(report.total);
    }
    if (L > 0) {
        for (const auto& m : report.classes) {
            report.macro_precision += m.precision;
            report.macro_recall += m.recall;
            report.macro_f1 += m.f1;
        }
        report.macro_precision /= static_cast<double>(L);
        report.macro_recall /= static_cast<double>(L);
        report.macro_f1 /= static_cast<double>(L);
    }
    return report;
}

HoldoutResult evaluate_holdout(const Dataset& data, const PipelineSettings& settings,
                               const SplitPlan& plan) {
    require(plan.kind == SplitKind::HoldOut, "holdout evaluation needs a HoldOut plan");
    const auto split = make_splits(data.size(), data.labels, plan).front();
    const auto fitted = fit_pipeline(data, split.train, settings);

    HoldoutResult r;
    r.train_size = split.train.size();
    r.y_true = pick(data.labels, split.test);
    r.y_pred = predict_rows(fitted, data, split.test);
    r.accuracy = accuracy(r.y_true, r.y_pred);
    r.confusion = confusion(r.y_true, r.y_pred, data.labels);
    r.report = class_report(r.confusion);
    return r;
}

CvResult cross_validate(const Dataset& data, const PipelineSettings& settings, const SplitPlan& plan) {
    require(plan.kind == SplitKind::KFold || plan.kind == SplitKind::StratifiedKFold,
            "cross-validation needs a KFold or StratifiedKFold plan");
    CvResult r;
    for (const auto& split : make_splits(data.size(), data.labels, plan)) {
        const auto fitted = fit_pipeline(data, split.train, settings);
        const auto predicted = predict_rows(fitted, data, split.test);
        r.fold_scores.push_back(accuracy(pick(data.labels, split.test), predicted));
    }
    r.mean = std::accumulate(r.fold_scores.begin(), r.fold_scores.end(), 0.0) /
             static_cast<double>(r.fold_scores.size());
    return r;
}

CurvePoint summarize(std::size_t x, std::span<const double> scores) {
    CurvePoint p;
    p.x = x;
    if (scores.empty()) return p;
    const double n = static_cast<double>(scores.size());
    p.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    p.lo = *lo;
    p.hi = *hi;
    double ss = 0.0;
    for (double s : scores) ss += (s - p.mean) * (s - p.mean);
    p.stddev = std::sqrt(ss / n);
    return p;
}

std::vector<std::size_t> rfe_schedule(std::size_t n_features, double step_fraction) {
    require(step_fraction > 0.0 && step_fraction < 1.0, "step_fraction must be in (0,1)");
    require(n_features >= 1, "RFE needs at least one feature");
    std::vector<std::size_t> counts{n_features};
    while (counts.back() > 1) {
        const std::size_t current = counts.back();
        auto drop = static_cast<std::size_t>(std::ceil(step_fraction * static_cast<double>(current)));
        drop = std::clamp<std::size_t>(drop, 1, current - 1);
        counts.push_back(current - drop);
    }
    return counts;
}

std::vector<CurvePoint> rfe_cv(const Dataset& data, const PipelineSettings& settings,
                               double step_fraction, const SplitPlan& plan) {
    require(plan.kind == SplitKind::StratifiedKFold || plan.kind == SplitKind::KFold,
            "RFE needs a folded plan");
    // One vocabulary over the whole corpus so every fold eliminates from the
    // same feature space and the feature counts line up across folds.
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), 0);
    const auto mode = checked_weighting(settings);
    const auto vocab = build_vocabulary(data.tokens, settings.min_df, settings.max_df);
    const auto matrix = vectorize(data.tokens, vocab, mode);
    const auto schedule = rfe_schedule(vocab.size(), step_fraction);

    std::vector<std::vector<double>> scores(schedule.size());
    for (const auto& split : make_splits(data.size(), data.labels, plan)) {
        const auto train_labels = pick(data.labels, split.train);
        const auto train_all = take_rows(matrix, split.train);
        const auto test_all = take_rows(matrix, split.test);
        const auto test_labels = pick(data.labels, split.test);
        std::vector<std::size_t> test_idx(split.test.size());
        std::iota(test_idx.begin(), test_idx.end(), 0);

        std::vector<std::uint32_t> active(vocab.size());
        std::iota(active.begin(), active.end(), 0u);
        for (std::size_t step = 0; step < schedule.size(); ++step) {
            const auto train_m = select_features(train_all, active);
            const auto model = train(settings.variant, train_m, train_labels, settings.alpha);
            scores[step].push_back(score_rows(model, select_features(test_all, active), test_labels, test_idx));
            if (step + 1 == schedule.size()) break;

            std::vector<std::pair<double, std::uint32_t>> ranked;
            ranked.reserve(active.size());
            for (std::size_t j = 0; j < active.size(); ++j) {
                double importance = 0.0;
                for (const auto& row : model.cond_log_prob) importance += row[j] * row[j];
                ranked.emplace_back(importance, active[j]);
            }
            std::sort(ranked.begin(), ranked.end());
            const std::size_t keep = schedule[step + 1];
            active.clear();
            for (std::size_t j = ranked.size() - keep; j < ranked.size(); ++j) active.push_back(ranked[j].second);
            std::sort(active.begin(), active.end());
        }
    }

    std::vector<CurvePoint> curve;
    for (std::size_t step = 0; step < schedule.size(); ++step) curve.push_back(summarize(schedule[step], scores[step]));
    return curve;
}

std::vector<double> default_train_sizes() {
    std::vector<double> sizes;
    for (int i = 1; i <= 10; ++i) sizes.push_back(i / 10.0);
    return sizes;
}

LearningCurve learning_curve(const Dataset& data, const PipelineSettings& settings,
                             const SplitPlan& plan, std::span<const double> train_sizes) {
    require(plan.kind == SplitKind::ShuffleSplit, "learning curves need a ShuffleSplit plan");
    require(!train_sizes.empty(), "learning curve needs at least one training size");
    for (std::size_t i = 0; i < train_sizes.size(); ++i) {
        require(train_sizes[i] > 0.0 && train_sizes[i] <= 1.0, "training sizes must lie in (0,1]");
        require(i == 0 || train_sizes[i - 1] < train_sizes[i], "training sizes must be ascending");
    }
    const std::size_t n_classes = class_list(data.labels).size();
    const auto splits = make_splits(data.size(), data.labels, plan);

    LearningCurve curve;
    for (double size : train_sizes) {
        std::vector<double> train_scores, test_scores;
        std::size_t x = 0;
        for (std::size_t s = 0; s < splits.size(); ++s) {
            const auto& split = splits[s];
            const double exact = size * static_cast<double>(split.train.size());
            x = static_cast<std::size_t>(std::floor(exact + 1e-9));
            if (x < n_classes) {
                curve.warnings.push_back("training size " + std::to_string(x) + " is below one document per class (" +
                                         std::to_string(n_classes) + " classes); point skipped");
                break;
            }
            const std::span<const std::size_t> subset(split.train.data(), x);
            FittedPipeline fitted;
            try {
                fitted = fit_pipeline(data, subset, settings);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DegenerateFeatures) throw;
                curve.warnings.push_back("training size " + std::to_string(x) + ", split " +
                                         std::to_string(s) + ": " + e.what() + "; skipped");
                continue;
            }
            train_scores.push_back(accuracy(pick(data.labels, subset), predict_rows(fitted, data, subset)));
            test_scores.push_back(accuracy(pick(data.labels, split.test), predict_rows(fitted, data, split.test)));
        }
        if (test_scores.empty()) continue;
        curve.train.push_back(summarize(x, train_scores));
        curve.test.push_back(summarize(x, test_scores));
    }
    return curve;
}

}  // namespace playclass
