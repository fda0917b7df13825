// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "playclass/csv.hpp"
#include "playclass/error.hpp"
#include "playclass/model_io.hpp"
#include "playclass/numfmt.hpp"
#include "playclass/reports.hpp"

namespace playclass::cli {
namespace {

StopWordList stop_words_for(const RunConfig& config) {
    return config.stop_words ? load_stop_words(*config.stop_words) : default_stop_words();
}

void require_path(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(ErrorCode::Usage, std::string(flag) + " is required");
}

void check_settings(const PipelineSettings& s) {
    require(s.alpha > 0.0 && std::isfinite(s.alpha), "alpha must be > 0");
    require(0.0 <= s.min_df && s.min_df < s.max_df && s.max_df <= 1.0,
            "document-frequency bounds must satisfy 0 <= min-df < max-df <= 1");
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

std::string settings_line(const RunConfig& c) {
    std::ostringstream s;
    s << "variant=" << variant_name(c.settings.variant)
      << " weighting=" << weight_mode_name(c.settings.weighting())
      << " alpha=" << format_real(c.settings.alpha) << " min_df=" << format_real(c.settings.min_df)
      << " max_df=" << format_real(c.settings.max_df);
    return s.str();
}

}  // namespace

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("PLAYCLASS_SEED"); env && *env) {
        const auto v = parse_int<std::uint64_t>(env);
        if (!v) throw Error(ErrorCode::Usage, std::string("PLAYCLASS_SEED is not an integer: ") + env);
        return *v;
    }
    return kDefaultSeed;
}

void cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_path(config.input, "--input");
    require_path(config.output, "--output");
    validate(config.profile);

    const auto loaded = load_raw_csv(config.input);
    std::map<std::string, std::size_t> reasons;
    for (const auto& s : loaded.skipped) {
        err << "warning: row " << s.row << " skipped: " << s.reason << '\n';
        ++reasons[s.reason];
    }
    const auto top = filter_top_developers(loaded.records);
    const auto corpus = apply_filter_profile(top, config.profile);
    write_corpus(corpus, config.output);

    out << "rows read: " << loaded.rows_read << '\n';
    out << "rows skipped: " << loaded.skipped.size() << '\n';
    for (const auto& [reason, n] : reasons) out << "  " << reason << ": " << n << '\n';
    out << "usable records: " << loaded.records.size() << '\n';
    out << "top-developer apps: " << top.size() << '\n';
    out << "apps retained: " << corpus.size() << '\n';
    out << "categories: " << corpus.categories.size() << '\n';
    out << "category,apps\n";
    for (const auto& [label, n] : corpus.category_counts()) out << label << ',' << n << '\n';
}

void cmd_train(const RunConfig& config, std::ostream& out) {
    require_path(config.input, "--input");
    require_path(config.output, "--output");
    check_settings(config.settings);

    const auto stops = stop_words_for(config);
    const auto corpus = read_corpus(config.input);
    const auto data = prepare(corpus, stops);
    std::vector<std::size_t> all(data.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto fitted = fit_pipeline(data, all, config.settings);

    ModelBundle bundle{std::move(fitted.model), std::move(fitted.vocab), fitted.weighting,
                       stops.source_name(), stops.fingerprint()};
    save_model(bundle, config.output);

    const auto counts = corpus.category_counts();
    out << settings_line(config) << '\n';
    out << "documents: " << corpus.size() << '\n';
    out << "classes: " << bundle.model.n_classes() << '\n';
    out << "vocabulary: " << bundle.vocab.size() << '\n';
    out << "category,apps,prior\n";
    for (std::size_t c = 0; c < bundle.model.n_classes(); ++c) {
        const auto& label = bundle.model.classes[c];
        out << label << ',' << counts.at(label) << ','
            << format_fixed(std::exp(bundle.model.log_prior[c]), 6) << '\n';
    }
}

void cmd_predict(const RunConfig& config, std::ostream& out) {
    require_path(config.model, "--model");
    if (config.input.empty() == !config.text.has_value()) {
        throw Error(ErrorCode::Usage, "predict needs exactly one of --input or --text");
    }
    require(config.top_k >= 1, "top-k must be >= 1");

    const auto bundle = load_model(config.model);
    const auto stops = stop_words_for(config);
    check_tokenizer(bundle, stops);

    std::vector<std::pair<std::string, std::string>> apps;  // (name, composed text)
    if (config.text) {
        apps.emplace_back("", *config.text);
    } else {
        for (const auto& rec : load_raw_csv(config.input).records) {
            apps.emplace_back(rec.app_name, compose_document(rec));
        }
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output.empty()) {
        file = open_out(config.output);
        sink = &file;
    }
    *sink << "app_index,app_name,rank,label,log_score,posterior\n";
    for (std::size_t i = 0; i < apps.size(); ++i) {
        const auto prediction = predict_text(bundle, apps[i].second, stops);
        const auto posteriors = prediction.posteriors();
        const std::size_t shown = std::min(config.top_k, prediction.ranking.size());
        for (std::size_t r = 0; r < shown; ++r) {
            *sink << i << ',' << csv::escape(apps[i].first) << ',' << r + 1 << ','
                  << prediction.ranking[r].first << ',' << format_real(prediction.ranking[r].second)
                  << ',' << format_real(posteriors[r]) << '\n';
        }
    }
}

void cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_path(config.input, "--input");
    require_path(config.output, "--output");
    check_settings(config.settings);

    const std::filesystem::path dir(config.output);
    std::filesystem::create_directories(dir);
    const auto data = prepare(read_corpus(config.input), stop_words_for(config));

    out << "seed=" << config.seed << ' ' << settings_line(config) << '\n';
    SplitPlan plan;
    plan.seed = config.seed;
    plan.test_fraction = config.test_fraction;

    if (config.eval == "holdout") {
        plan.kind = SplitKind::HoldOut;
        const auto r = evaluate_holdout(data, config.settings, plan);
        auto cm = open_out(dir / "confusion.csv");
        write_report_header(cm, "confusion matrix (rows: true, columns: predicted)", config.seed);
        write_confusion_csv(r.confusion, cm);
        auto rep = open_out(dir / "report.csv");
        write_report_header(rep, "classification report", config.seed);
        write_class_report_csv(r.report, rep);
        out << "train=" << r.train_size << " test=" << r.y_true.size() << '\n';
        out << "accuracy=" << format_fixed(r.accuracy, 4) << '\n';
    } else if (config.eval == "kfold") {
        plan.kind = SplitKind::KFold;
        const std::vector<std::size_t> ks = config.k.empty() ? std::vector<std::size_t>{2, 10} : config.k;
        auto csv = open_out(dir / "kfold.csv");
        write_report_header(csv, "k-fold cross-validation accuracy", config.seed);
        csv << "k,mean,fold_scores\n";
        for (auto k : ks) {
            plan.k = k;
            const auto r = cross_validate(data, config.settings, plan);
            csv << k << ',' << format_real(r.mean) << ',';
            for (std::size_t f = 0; f < r.fold_scores.size(); ++f) {
                csv << (f ? ";" : "") << format_real(r.fold_scores[f]);
            }
            csv << '\n';
            out << "k=" << k << " mean_accuracy=" << format_fixed(r.mean, 4) << '\n';
        }
    } else if (config.eval == "rfe") {
        plan.kind = SplitKind::StratifiedKFold;
        plan.k = config.k.empty() ? 5 : config.k.front();
        const auto curve = rfe_cv(data, config.settings, config.step_fraction, plan);
        auto csv = open_out(dir / "rfe.csv");
        write_report_header(csv, "recursive feature elimination, stratified k=" + std::to_string(plan.k),
                            config.seed);
        write_curve_csv(curve, csv);
        const auto best = std::max_element(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
            return a.mean < b.mean;
        });
        out << "points=" << curve.size() << " best_features=" << best->x
            << " best_accuracy=" << format_fixed(best->mean, 4) << '\n';
    } else if (config.eval == "curve") {
        plan.kind = SplitKind::ShuffleSplit;
        plan.n_iterations = config.iterations;
        const auto curve = learning_curve(data, config.settings, plan);
        for (const auto& w : curve.warnings) err << "warning: " << w << '\n';
        auto train_csv = open_out(dir / "curve_train.csv");
        write_report_header(train_csv, "learning curve, training-subset accuracy", config.seed);
        write_curve_csv(curve.train, train_csv);
        auto test_csv = open_out(dir / "curve_test.csv");
        write_report_header(test_csv, "learning curve, held-out accuracy", config.seed);
        write_curve_csv(curve.test, test_csv);
        if (!curve.test.empty()) {
            out << "largest_train=" << curve.test.back().x
                << " test_accuracy=" << format_fixed(curve.test.back().mean, 4)
                << " train_accuracy=" << format_fixed(curve.train.back().mean, 4) << '\n';
        }
    } else {
        throw Error(ErrorCode::Usage, "unknown evaluation '" + config.eval + "'");
    }
}

}  // namespace playclass::cli
