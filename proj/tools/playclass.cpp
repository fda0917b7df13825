// SPDX-License-Identifier: Apache-2.0
// playclass: ingest app metadata, train Naive Bayes category models, predict
// and evaluate.

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "commands.hpp"
#include "playclass/error.hpp"

namespace {

using playclass::AppFilter;
using playclass::CategoryScope;
using playclass::Variant;
using playclass::WeightMode;
using playclass::cli::RunConfig;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

void add_profile_flags(CLI::App& cmd, RunConfig& c, std::vector<std::string>& drops) {
    const std::map<std::string, AppFilter> filters{{"all", AppFilter::AllApps},
                                                  {"filtered", AppFilter::FilteredApps}};
    const std::map<std::string, CategoryScope> scopes{
        {"all", CategoryScope::AllCategories},
        {"games", CategoryScope::OnlyGameApps},
        {"grouped", CategoryScope::GroupedGameApps},
        {"other", CategoryScope::OnlyOtherCategories}};
    cmd.add_option("--profile", c.profile.app_filter, "App filter")
        ->transform(CLI::CheckedTransformer(filters, CLI::ignore_case))
        ->option_text("all|filtered");
    cmd.add_option("--scope", c.profile.category_scope, "Category scope")
        ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case))
        ->option_text("all|games|grouped|other");
    cmd.add_option("--min-desc-words", c.profile.min_description_words,
                   "Minimum description words under --profile filtered");
    cmd.add_option("--drop-category", drops,
                   "Category dropped under --profile filtered (repeatable; replaces the default list)");
}

void add_model_flags(CLI::App& cmd, RunConfig& c) {
    const std::map<std::string, Variant> variants{{"multinomial", Variant::Multinomial},
                                                 {"bernoulli", Variant::Bernoulli}};
    const std::map<std::string, WeightMode> weightings{{"tfidf", WeightMode::TfIdf},
                                                      {"count", WeightMode::Count}};
    cmd.add_option("--variant", c.settings.variant, "Naive Bayes variant")
        ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case))
        ->option_text("multinomial|bernoulli");
    cmd.add_option("--weighting", c.settings.multinomial_weighting,
                   "Multinomial feature weighting")
        ->transform(CLI::CheckedTransformer(weightings, CLI::ignore_case))
        ->option_text("tfidf|count");
    cmd.add_option("--alpha", c.settings.alpha, "Laplace smoothing constant");
    cmd.add_option("--min-df", c.settings.min_df, "Minimum document-frequency fraction");
    cmd.add_option("--max-df", c.settings.max_df, "Maximum document-frequency fraction");
    cmd.add_option("--stop-words", c.stop_words, "Stop-word file (one word per line)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"App-store category classification with Naive Bayes"};
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> drops;
    std::optional<std::uint64_t> seed;

    auto* ingest = app.add_subcommand("ingest", "Filter a metadata CSV into a corpus file");
    ingest->add_option("--input", config.input, "Raw metadata CSV")->required();
    ingest->add_option("--output", config.output, "Corpus file to write")->required();
    add_profile_flags(*ingest, config, drops);

    auto* train = app.add_subcommand("train", "Train a model from a corpus file");
    train->add_option("--input", config.input, "Corpus file")->required();
    train->add_option("--output", config.output, "Model file to write")->required();
    add_model_flags(*train, config);

    auto* predict = app.add_subcommand("predict", "Suggest categories for apps");
    predict->add_option("--model", config.model, "Model file")->required();
    predict->add_option("--input", config.input, "Metadata CSV of apps to categorize");
    predict->add_option("--text", config.text, "A single composed app text");
    predict->add_option("--output", config.output, "CSV file for suggestions (default stdout)");
    predict->add_option("--top-k", config.top_k, "Suggestions per app");
    predict->add_option("--stop-words", config.stop_words, "Stop-word file used at training time");

    auto* evaluate = app.add_subcommand("evaluate", "Run an evaluation on a corpus file");
    evaluate->add_option("--input", config.input, "Corpus file")->required();
    evaluate->add_option("--output", config.output, "Directory for report files")->required();
    evaluate->add_option("--eval", config.eval, "Evaluation to run")
        ->check(CLI::IsMember({"holdout", "kfold", "rfe", "curve"}));
    evaluate->add_option("--k", config.k, "Fold count (repeatable for kfold)");
    evaluate->add_option("--test-fraction", config.test_fraction, "Held-out fraction");
    evaluate->add_option("--step-fraction", config.step_fraction, "RFE elimination fraction per step");
    evaluate->add_option("--iterations", config.iterations, "Shuffle splits for learning curves");
    evaluate->add_option("--seed", seed, "Random seed (default: $PLAYCLASS_SEED, else 42)");
    add_model_flags(*evaluate, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[E_USAGE]: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (!drops.empty()) config.profile.dropped_categories = {drops.begin(), drops.end()};
        config.seed = playclass::cli::resolve_seed(seed);
        if (*ingest) playclass::cli::cmd_ingest(config, std::cout, std::cerr);
        if (*train) playclass::cli::cmd_train(config, std::cout);
        if (*predict) playclass::cli::cmd_predict(config, std::cout);
        if (*evaluate) playclass::cli::cmd_evaluate(config, std::cout, std::cerr);
    } catch (const playclass::Error& e) {
        std::cerr << "error[" << playclass::error_code_name(e.code()) << "]: " << e.what() << '\n';
        return e.code() == playclass::ErrorCode::Usage ? kExitUsage : kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error[E_INTERNAL]: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
