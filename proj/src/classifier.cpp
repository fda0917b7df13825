// SPDX-License-Identifier: Apache-2.0
#include "playclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "playclass/error.hpp"

namespace playclass {
namespace {

struct ClassIndex {
    std::vector<std::string> classes;
    std::vector<std::size_t> of_doc;
    std::vector<std::size_t> doc_count;
};

ClassIndex index_classes(const DocTermMatrix& matrix, std::span<const std::string> labels,
                         double alpha) {
    require(matrix.rows.size() == labels.size(), "matrix rows and labels differ in length");
    require(!labels.empty(), "training requires at least one document");
    require(alpha > 0.0, "smoothing alpha must be > 0");
    if (matrix.n_features == 0) {
        throw Error(ErrorCode::DegenerateFeatures, "cannot train on an empty vocabulary");
    }
    ClassIndex idx;
    idx.classes = class_list(labels);
    idx.doc_count.assign(idx.classes.size(), 0);
    idx.of_doc.reserve(labels.size());
    for (const auto& label : labels) {
        const auto c = static_cast<std::size_t>(
            std::lower_bound(idx.classes.begin(), idx.classes.end(), label) - idx.classes.begin());
        idx.of_doc.push_back(c);
        ++idx.doc_count[c];
    }
    return idx;
}

std::vector<double> log_priors(const ClassIndex& idx) {
    const auto n = static_cast<double>(idx.of_doc.size());
    std::vector<double> out;
    for (auto count : idx.doc_count) out.push_back(std::log(static_cast<double>(count) / n));
    return out;
}

}  // namespace

std::string_view variant_name(Variant v) noexcept {
    return v == Variant::Multinomial ? "multinomial" : "bernoulli";
}

Variant parse_variant(std::string_view name) {
    if (name == "multinomial") return Variant::Multinomial;
    if (name == "bernoulli") return Variant::Bernoulli;
    throw Error(ErrorCode::Format, "unknown variant '" + std::string(name) + "'");
}

std::vector<std::string> class_list(std::span<const std::string> labels) {
    std::vector<std::string> classes(labels.begin(), labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

void NBModel::finalize() {
    absent_total.clear();
    if (variant != Variant::Bernoulli) return;
    for (const auto& row : cond_log_absent) {
        absent_total.push_back(std::accumulate(row.begin(), row.end(), 0.0));
    }
}

NBModel train_multinomial(const DocTermMatrix& matrix, std::span<const std::string> labels,
                          double alpha) {
    const auto idx = index_classes(matrix, labels, alpha);
    const std::size_t V = matrix.n_features;

    std::vector<std::vector<double>> weight(idx.classes.size(), std::vector<double>(V, 0.0));
    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        auto& w = weight[idx.of_doc[d]];
        for (const auto& e : matrix.rows[d]) {
            require(e.index < V, "feature index out of range");
            w[e.index] += e.weight;
        }
    }

    NBModel model;
    model.variant = Variant::Multinomial;
    model.classes = idx.classes;
    model.log_prior = log_priors(idx);
    model.vocab_size = V;
    model.alpha = alpha;
    for (auto& w : weight) {
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        const double log_denominator = std::log(total + alpha * static_cast<double>(V));
        for (auto& x : w) x = std::log(x + alpha) - log_denominator;
        model.cond_log_prob.push_back(std::move(w));
    }
    model.finalize();
    return model;
}

NBModel train_bernoulli(const DocTermMatrix& matrix, std::span<const std::string> labels,
                        double alpha) {
    require(matrix.mode == WeightMode::Binary, "Bernoulli training requires a binary matrix");
    const auto idx = index_classes(matrix, labels, alpha);
    const std::size_t V = matrix.n_features;

    std::vector<std::vector<double>> present(idx.classes.size(), std::vector<double>(V, 0.0));
    for (std::size_t d = 0; d < matrix.rows.size(); ++d) {
        auto& p = present[idx.of_doc[d]];
        for (const auto& e : matrix.rows[d]) {
            require(e.index < V, "feature index out of range");
            if (e.weight > 0.0) p[e.index] += 1.0;
        }
    }

    NBModel model;
    model.variant = Variant::Bernoulli;
    model.classes = idx.classes;
    model.log_prior = log_priors(idx);
    model.vocab_size = V;
    model.alpha = alpha;
    for (std::size_t c = 0; c < idx.classes.size(); ++c) {
        const double denominator = static_cast<double>(idx.doc_count[c]) + 2.0 * alpha;
        std::vector<double> log_p(V), log_q(V);
        for (std::size_t t = 0; t < V; ++t) {
            const double p = (present[c][t] + alpha) / denominator;
            log_p[t] = std::log(p);
            log_q[t] = std::log1p(-p);
        }
        model.cond_log_prob.push_back(std::move(log_p));
        model.cond_log_absent.push_back(std::move(log_q));
    }
    model.finalize();
    return model;
}

NBModel train(Variant variant, const DocTermMatrix& matrix, std::span<const std::string> labels,
              double alpha) {
    return variant == Variant::Multinomial ? train_multinomial(matrix, labels, alpha)
                                           : train_bernoulli(matrix, labels, alpha);
}

std::vector<double> joint_log_scores(const NBModel& model, const SparseRow& row) {
    const bool bernoulli = model.variant == Variant::Bernoulli;
    std::vector<double> scores(model.log_prior);
    for (std::size_t c = 0; c < scores.size(); ++c) {
        const auto& log_p = model.cond_log_prob[c];
        if (bernoulli) {
            const auto& log_q = model.cond_log_absent[c];
            double s = model.absent_total[c];
            for (const auto& e : row) {
                require(e.index < model.vocab_size, "feature index out of range");
                require(e.weight == 0.0 || e.weight == 1.0,
                        "Bernoulli model requires binary rows");
                if (e.weight > 0.0) s += log_p[e.index] - log_q[e.index];
            }
            scores[c] += s;
        } else {
            double s = 0.0;
            for (const auto& e : row) {
                require(e.index < model.vocab_size, "feature index out of range");
                s += e.weight * log_p[e.index];
            }
            scores[c] += s;
        }
    }
    return scores;
}

bool same_score(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

Prediction predict(const NBModel& model, const SparseRow& row) {
    const auto scores = joint_log_scores(model, row);
    Prediction p;
    p.ranking.reserve(scores.size());
    for (std::size_t c = 0; c < scores.size(); ++c) p.ranking.emplace_back(model.classes[c], scores[c]);
    std::stable_sort(p.ranking.begin(), p.ranking.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    // Runs of equal scores (up to rounding) are ordered by label.
    for (std::size_t i = 0; i < p.ranking.size();) {
        std::size_t j = i + 1;
        while (j < p.ranking.size() && same_score(p.ranking[i].second, p.ranking[j].second)) ++j;
        std::sort(p.ranking.begin() + static_cast<std::ptrdiff_t>(i), p.ranking.begin() + static_cast<std::ptrdiff_t>(j),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        i = j;
    }
    return p;
}

const std::string& predict_label(const NBModel& model, const SparseRow& row) {
    const auto scores = joint_log_scores(model, row);
    const double best = *std::max_element(scores.begin(), scores.end());
    // Classes are sorted, so the first class tied with the maximum wins.
    std::size_t c = 0;
    while (!same_score(scores[c], best)) ++c;
    return model.classes[c];
}

std::vector<Prediction> predict_batch(const NBModel& model, const DocTermMatrix& matrix) {
    std::vector<Prediction> out;
    out.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) out.push_back(predict(model, row));
    return out;
}

std::vector<double> Prediction::posteriors() const {
    std::vector<double> out;
    if (ranking.empty()) return out;
    const double max = ranking.front().second;
    double sum = 0.0;
    for (const auto& [label, s] : ranking) sum += std::exp(s - max);
    const double log_norm = max + std::log(sum);
    for (const auto& [label, s] : ranking) out.push_back(std::exp(s - log_norm));
    return out;
}

}  // namespace playclass
