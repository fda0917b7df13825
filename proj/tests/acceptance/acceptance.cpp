// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bayes_oracle.hpp"
#include "playclass/classifier.hpp"
#include "playclass/corpus.hpp"
#include "playclass/error.hpp"
#include "playclass/evaluation.hpp"
#include "playclass/features.hpp"
#include "store_fixtures.hpp"
#include "synthetic.hpp"

using namespace playclass;

namespace {

constexpr double kOracleTol = 1e-9;
constexpr double kTfidfTol = 1e-12;
constexpr double kIdentityTol = 1e-12;
constexpr double kReportTol = 0.01;
constexpr double kOracleBudgetSeconds = 30.0;
constexpr double kFullRunTol = 0.05;

enum class Outcome { Pass, Fail, Skip };

struct Result {
    Outcome outcome;
    std::string detail;
};

Result pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Result fail(std::string d) { return {Outcome::Fail, std::move(d)}; }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1 ---------------------------------------------------------------------------

Result oracle_equivalence() {
    constexpr int kCorpora = 250;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20150601);
    double worst = 0.0;
    std::size_t docs_checked = 0, argmax_mismatch = 0;
    for (int trial = 0; trial < kCorpora; ++trial) {
        testing::OracleCorpus corpus;
        do {
            corpus = testing::random_corpus(rng, 50, 30, 5);
        } while (std::all_of(corpus.docs.begin(), corpus.docs.end(), [](const auto& d) { return d.empty(); }));
        const std::vector<TokenStream> docs(corpus.docs.begin(), corpus.docs.end());
        const auto vocab = build_vocabulary(docs, 0.0, 1.0);
        const auto multi = train_multinomial(vectorize(docs, vocab, WeightMode::Count), corpus.labels);
        const auto bern = train_bernoulli(vectorize(docs, vocab, WeightMode::Binary), corpus.labels);
        const testing::BayesOracle oracle(corpus, 1.0);

        // Queries: the training documents plus fresh ones drawn from the same vocabulary.
        auto queries = corpus.docs;
        const std::vector<std::string> tokens(oracle.vocabulary().begin(), oracle.vocabulary().end());
        for (int q = 0; q < 5; ++q) {
            std::vector<std::string> doc;
            const std::size_t len = rng() % 10;
            for (std::size_t i = 0; i < len; ++i) doc.push_back(tokens[rng() % tokens.size()]);
            queries.push_back(std::move(doc));
        }
        for (const auto& doc : queries) {
            const auto m = predict(multi, vectorize_one(doc, vocab, WeightMode::Count));
            const auto b = predict(bern, vectorize_one(doc, vocab, WeightMode::Binary));
            for (const auto& [label, score] : m.ranking)
                worst = std::max(worst, std::abs(score - oracle.multinomial_log_score(label, doc)));
            for (const auto& [label, score] : b.ranking)
                worst = std::max(worst, std::abs(score - oracle.bernoulli_log_score(label, doc)));
            const auto m_best = oracle.argmax(
                [&](const std::string& c) { return oracle.multinomial_log_score(c, doc); }, kTieTolerance);
            const auto b_best = oracle.argmax(
                [&](const std::string& c) { return oracle.bernoulli_log_score(c, doc); }, kTieTolerance);
            argmax_mismatch += (m.top() != m_best) + (b.top() != b_best);
            ++docs_checked;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto detail = fmt("%d corpora, %zu documents, max |dlog| = %.3g (tol %.0e), argmax mismatches = %zu, %.2f s",
                            kCorpora, docs_checked, worst, kOracleTol, argmax_mismatch, secs);
    return worst <= kOracleTol && argmax_mismatch == 0 && secs < kOracleBudgetSeconds ? pass(detail) : fail(detail);
}

// 2 ---------------------------------------------------------------------------

struct TfidfCase {
    double tf;
    std::size_t df, n;
    double expected;
};

// Reference values computed with 50-digit arithmetic.
constexpr TfidfCase kTfidfTable[] = {
    {2, 1, 2, 1.3862943611198906188},
    {5, 7, 7, 0},
    {0, 1, 2, 0},
    {0, 3, 10, 0},
    {1, 1, 10, 2.302585092994045684},
    {3, 2, 10, 4.8283137373023011238},
    {1, 1, 10369, 9.2465758645582781577},
    {7, 158, 10369, 29.287865820719179479},
    {4, 5174, 10369, 2.7806980072492148672},
    {1, 10368, 10369, 0.000096445966222226168998},
    {12, 1, 1, 0},
    {2, 9, 10, 0.21072103131565260246},
    {10, 1, 1000, 69.077552789821370521},
    {3, 333, 1000, 3.2988383670050796747},
    {1, 999, 1000, 0.0010005003335835335001},
    {6, 2, 3, 2.4327906486489862919},
    {1, 7, 8, 0.13353139262452262315},
    {25, 4, 16, 34.657359027997265471},
    {2.5, 3, 9, 2.7465307216702742285},
    {0.5, 1, 4, 0.69314718055994530942},
};

Result tfidf_table() {
    double worst = 0.0;
    std::size_t bad = 0;
    for (const auto& c : kTfidfTable) {
        const double err = std::abs(tfidf_weight(c.tf, c.df, c.n) - c.expected);
        worst = std::max(worst, err);
        bad += err > kTfidfTol;
    }
    const auto detail = fmt("%zu cases, max error %.3g (tol %.0e)", std::size(kTfidfTable), worst, kTfidfTol);
    return bad == 0 ? pass(detail) : fail(detail);
}

// 3 ---------------------------------------------------------------------------

Result metric_identities() {
    std::mt19937_64 rng(3);
    std::size_t matrices = 0, violations = 0;
    double worst_f1 = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = 1 + rng() % 8;
        const std::size_t n = 1 + rng() % 200;
        std::vector<std::string> labels;
        for (std::size_t c = 0; c < k; ++c) labels.push_back(testing::label_for(c));
        std::vector<std::string> y, p;
        const double noise = static_cast<double>(rng() % 100) / 100.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Some classes are left without support on purpose.
            y.push_back(labels[rng() % std::max<std::size_t>(1, k - (trial % 2))]);
            p.push_back(std::uniform_real_distribution<double>(0, 1)(rng) < noise ? labels[rng() % k] : y.back());
        }
        const auto report = class_report(confusion(y, p, labels));
        ++matrices;
        for (const auto& m : report.classes) {
            violations += m.tp + m.tn + m.fp + m.fn != n;
            violations += m.support != m.tp + m.fn;
            const double hm = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
            worst_f1 = std::max(worst_f1, std::abs(m.f1 - hm));
        }
        const auto perfect = class_report(confusion(y, y, labels));
        for (const auto& m : perfect.classes) {
            if (m.support == 0) continue;
            violations += m.precision != 1.0 || m.recall != 1.0 || m.f1 != 1.0 || m.tpr != 1.0 || m.fnr != 0.0;
        }
        violations += perfect.accuracy != 1.0;
    }
    const auto detail = fmt("%zu confusion matrices, %zu identity violations, max |f1 - hm(P,R)| = %.3g (tol %.0e)",
                            matrices, violations, worst_f1, kIdentityTol);
    return violations == 0 && worst_f1 <= kIdentityTol ? pass(detail) : fail(detail);
}

// 4 ---------------------------------------------------------------------------

Result published_report() {
    std::vector<std::string> off;
    std::size_t rows = 0;
    for (const auto& r : testing::reference_report_rows()) {
        if (r.label == testing::kInconsistentReportRow) continue;
        ++rows;
        const auto m = metrics_from_counts(std::string(r.label), r.tp, r.tn, r.fp, r.fn);
        const std::pair<const char*, std::pair<double, double>> fields[] = {
            {"precision", {m.precision, r.precision}}, {"recall", {m.recall, r.recall}},
            {"f1", {m.f1, r.f1}}, {"TPR", {m.tpr, r.tpr}}, {"FNR", {m.fnr, r.fnr}}};
        for (const auto& [name, v] : fields) {
            if (std::abs(v.first - v.second) > kReportTol + 1e-12) {
                off.push_back(fmt("%s %s=%.4f published %.2f", std::string(r.label).c_str(), name, v.first,
                                  v.second));
            }
        }
    }
    std::string detail = fmt("%zu rows checked at +/-%.2f", rows, kReportTol);
    if (!off.empty()) {
        detail += "; mismatches:";
        for (const auto& s : off) detail += " [" + s + "]";
    }
    return off.empty() ? pass(detail) : fail(detail);
}

// 5 ---------------------------------------------------------------------------

Result split_invariants() {
    constexpr int kTrials = 10000;
    std::mt19937_64 rng(5);
    std::size_t violations = 0;
    std::string first;
    auto flag = [&](bool bad, const std::string& what) {
        if (bad && violations++ == 0) first = what;
    };
    for (int trial = 0; trial < kTrials; ++trial) {
        SplitPlan plan;
        plan.kind = static_cast<SplitKind>(trial % 4);
        plan.seed = rng();
        plan.k = 2 + rng() % 9;
        plan.n_iterations = 1 + rng() % 5;
        plan.test_fraction = 0.1 + 0.05 * static_cast<double>(rng() % 13);

        const std::size_t n_classes = 1 + rng() % 6;
        std::vector<std::string> labels;
        for (std::size_t c = 0; c < n_classes; ++c) {
            const std::size_t n_c = plan.k + rng() % 40;
            for (std::size_t i = 0; i < n_c; ++i) labels.push_back(testing::label_for(c));
        }
        std::shuffle(labels.begin(), labels.end(), rng);
        const std::size_t n = labels.size();
        if (n * plan.test_fraction < 1.0) plan.test_fraction = 0.5;

        const auto splits = make_splits(n, labels, plan);
        const auto again = make_splits(n, labels, plan);
        for (std::size_t s = 0; s < splits.size(); ++s)
            flag(splits[s].train != again[s].train || splits[s].test != again[s].test, "determinism");

        std::vector<std::size_t> seen_in_test(n, 0);
        for (const auto& s : splits) {
            std::vector<int> mark(n, 0);
            for (auto i : s.train) flag(i >= n || mark[i]++ != 0, "train index");
            for (auto i : s.test) flag(i >= n || mark[i]++ != 0, "train/test overlap");
            flag(std::any_of(mark.begin(), mark.end(), [](int m) { return m != 1; }), "train+test cover");
            for (auto i : s.test) ++seen_in_test[i];
        }

        const bool folds = plan.kind == SplitKind::KFold || plan.kind == SplitKind::StratifiedKFold;
        if (folds) {
            flag(splits.size() != plan.k, "fold count");
            flag(std::any_of(seen_in_test.begin(), seen_in_test.end(), [](std::size_t c) { return c != 1; }),
                 "folds partition");
            std::size_t lo = n, hi = 0;
            for (const auto& s : splits) {
                lo = std::min(lo, s.test.size());
                hi = std::max(hi, s.test.size());
            }
            flag(hi - lo > 1, "fold size balance");
        } else {
            const auto expected = static_cast<std::size_t>(std::floor(static_cast<double>(n) * plan.test_fraction));
            for (const auto& s : splits) flag(s.test.size() != expected, "holdout size");
        }

        if (plan.kind == SplitKind::StratifiedKFold) {
            std::map<std::string, double> totals;
            for (const auto& l : labels) ++totals[l];
            for (const auto& s : splits) {
                std::map<std::string, double> in_fold;
                for (auto i : s.test) ++in_fold[labels[i]];
                for (const auto& [l, n_c] : totals) {
                    const double ideal = n_c * static_cast<double>(s.test.size()) / static_cast<double>(n);
                    flag(std::abs(in_fold[l] - ideal) > 1.0 + 1e-9,
                         fmt("stratified proportion (trial %d, %s)", trial, l.c_str()));
                }
            }
        }
    }
    auto detail = fmt("%d trials, %zu violations", kTrials, violations);
    if (violations) detail += ", first: " + first;
    return violations == 0 ? pass(detail) : fail(detail);
}

// 6 ---------------------------------------------------------------------------

Result rfe_shape() {
    constexpr std::size_t kFeatures = 500;
    std::mt19937_64 rng(6);
    // 5 classes x 100 words; each document draws 30 tokens, every word is
    // also forced into one document so the vocabulary is complete.
    auto data = testing::separable_dataset(rng, 5, 100, 30, 30);
    for (std::size_t w = 0; w < kFeatures; ++w) data.tokens[(w / 100) * 30 + w % 30].push_back(testing::word(w));

    PipelineSettings settings;
    settings.min_df = 0.0;
    settings.max_df = 1.0;
    SplitPlan plan;
    plan.kind = SplitKind::StratifiedKFold;
    plan.k = 5;
    const auto curve = rfe_cv(data, settings, 0.2, plan);

    std::vector<std::size_t> expected{kFeatures};
    while (expected.back() > 1) {
        const std::size_t n = expected.back();
        expected.push_back(n - (n + 4) / 5);  // n - ceil(n / 5)
    }
    bool shape = curve.size() == expected.size();
    bool bounded = true;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        shape = shape && curve[i].x == expected[i];
        bounded = bounded && curve[i].lo >= 0.0 && curve[i].hi <= 1.0 && curve[i].mean >= 0.0 && curve[i].mean <= 1.0;
    }
    std::string seq;
    for (const auto& p : curve) seq += (seq.empty() ? "" : ",") + std::to_string(p.x);
    const auto detail = fmt("%zu points (expected %zu), ends at %zu, scores in [0,1]: %s; counts %s", curve.size(),
                            expected.size(), curve.empty() ? 0 : curve.back().x, bounded ? "yes" : "no",
                            seq.c_str());
    return shape && bounded && !curve.empty() && curve.back().x == 1 ? pass(detail) : fail(detail);
}

// 7 ---------------------------------------------------------------------------

Result learning_curve_shape() {
    std::mt19937_64 rng(7);
    // Separable classes with a shared noise vocabulary.
    std::vector<std::vector<std::size_t>> vocab(4);
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t w = 0; w < 15; ++w) vocab[c].push_back(c * 15 + w);
        for (std::size_t w = 0; w < 15; ++w) vocab[c].push_back(100 + w);
        labels.push_back(testing::label_for(c));
    }
    const auto data = testing::sample_dataset(rng, vocab, labels, 100, 6);
    PipelineSettings settings;
    settings.min_df = 0.0;
    SplitPlan plan;
    plan.kind = SplitKind::ShuffleSplit;
    plan.n_iterations = 10;
    const auto curve = learning_curve(data, settings, plan);
    if (curve.test.empty()) return fail("no curve points");
    const auto& small_test = curve.test.front();
    const auto& small_train = curve.train.front();
    const auto& large_test = curve.test.back();
    const auto detail = fmt("sizes %zu..%zu: test %.4f -> %.4f, train at smallest %.4f", small_test.x, large_test.x,
                            small_test.mean, large_test.mean, small_train.mean);
    return large_test.mean >= small_test.mean && small_train.mean >= small_test.mean ? pass(detail) : fail(detail);
}

// 8 ---------------------------------------------------------------------------

Result grouping_effect() {
    std::string detail;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        const auto separate = testing::game_like_dataset(rng, 40, 6);
        auto merged = separate;
        for (auto& l : merged.labels) l = scoped_label(l, CategoryScope::GroupedGameApps);
        PipelineSettings settings;
        settings.min_df = 0.0;
        SplitPlan plan;
        plan.seed = seed;
        const double a_sep = evaluate_holdout(separate, settings, plan).accuracy;
        const double a_mrg = evaluate_holdout(merged, settings, plan).accuracy;
        ok = ok && a_mrg > a_sep;
        detail += fmt("%sseed %llu: grouped %.4f vs separate %.4f", detail.empty() ? "" : "; ",
                      static_cast<unsigned long long>(seed), a_mrg, a_sep);
    }
    return ok ? pass(detail) : fail(detail);
}

// 9 ---------------------------------------------------------------------------

Result full_reproduction() {
    const char* path = std::getenv("PLAYCLASS_DATASET_CSV");
    if (path == nullptr || *path == '\0') return {Outcome::Skip, "set PLAYCLASS_DATASET_CSV to the crawl CSV to run"};
    const auto top = filter_top_developers(load_raw_csv(path).records);
    auto run = [&](CategoryScope scope) {
        FilterProfile profile;
        profile.app_filter = AppFilter::AllApps;
        profile.category_scope = scope;
        const auto data = prepare(apply_filter_profile(top, profile), default_stop_words());
        return evaluate_holdout(data, PipelineSettings{}, SplitPlan{}).accuracy;
    };
    const double all = run(CategoryScope::AllCategories);
    const double grouped = run(CategoryScope::GroupedGameApps);
    const auto detail = fmt("AllCategories %.4f (target 0.706), GroupedGameApps %.4f (target 0.856), tol %.2f", all,
                            grouped, kFullRunTol);
    return std::abs(all - 0.706) <= kFullRunTol && std::abs(grouped - 0.856) <= kFullRunTol ? pass(detail)
                                                                                              : fail(detail);
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
        {"1 oracle-equivalence", oracle_equivalence},
        {"2 tfidf-table", tfidf_table},
        {"3 metric-identities", metric_identities},
        {"4 published-report-counts", published_report},
        {"5 split-invariants", split_invariants},
        {"6 rfe-shape", rfe_shape},
        {"7 learning-curve", learning_curve_shape},
        {"8 grouping-effect", grouping_effect},
        {"9 full-reproduction", full_reproduction},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Result r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = fail(std::string("exception: ") + e.what());
        }
        const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIP";
        failures += r.outcome == Outcome::Fail;
        std::printf("%s %s: %s\n", tag, name, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
