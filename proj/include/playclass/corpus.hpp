// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace playclass {

/// One app's metadata row.
struct AppRecord {
    std::string app_name;
    std::string developer;
    bool is_top_developer = false;
    std::string category;
    bool is_free = false;
    double price = 0.0;
    std::string content_rating;
    bool have_in_app_purchases = false;
    std::string description;
    std::map<std::string, std::string> extra;
};

struct SkippedRow {
    std::size_t row;  // 1-based data row (header excluded)
    std::string reason;
};

struct LoadResult {
    std::vector<AppRecord> records;
    std::vector<SkippedRow> skipped;
    std::size_t rows_read = 0;
};

/// Parses a crawler metadata CSV. Header names are matched case-insensitively.
/// Rows with a missing category or an unparseable boolean are skipped and
/// reported in LoadResult::skipped.
LoadResult load_raw_csv(const std::filesystem::path& path);
LoadResult load_raw_csv(std::istream& in);

std::vector<AppRecord> filter_top_developers(std::span<const AppRecord> records);

/// name, rating, isfree_{yes,no}, iap_{yes,no}, description joined by single
/// spaces; empty parts are omitted and tab/CR/LF become spaces.
std::string compose_document(const AppRecord& record);

enum class AppFilter { AllApps, FilteredApps };
enum class CategoryScope { AllCategories, OnlyGameApps, GroupedGameApps, OnlyOtherCategories };

inline constexpr std::string_view kGamePrefix = "GAME_";
inline constexpr std::string_view kGroupedGameLabel = "GAMES";

struct FilterProfile {
    AppFilter app_filter = AppFilter::AllApps;
    CategoryScope category_scope = CategoryScope::AllCategories;
    std::size_t min_description_words = 100;
    std::set<std::string> dropped_categories = {"COMICS", "LIBRARIES_AND_DEMO", "GAME_MUSIC",
                                                "GAME_WORD"};
};

/// Throws Contract if a dropped category is not an upper-case label.
void validate(const FilterProfile& profile);

struct Document {
    std::size_t doc_id = 0;
    std::string text;
    std::string label;
};

struct Corpus {
    std::vector<Document> documents;
    std::set<std::string> categories;

    std::size_t size() const noexcept { return documents.size(); }
    std::vector<std::string> labels() const;
    std::vector<std::string> texts() const;
    std::map<std::string, std::size_t> category_counts() const;
};

/// Builds a Corpus from `documents` (re-assigning dense ids). Throws
/// DegenerateCorpus when empty.
Corpus make_corpus(std::vector<Document> documents);

/// Applies quality filtering and category scoping to top-developer records.
Corpus apply_filter_profile(std::span<const AppRecord> records, const FilterProfile& profile);

/// Label under `scope`, or an empty string when the scope excludes it.
std::string scoped_label(const std::string& label, CategoryScope scope);

std::size_t count_words(std::string_view text);

// Canonical corpus file: "doc_id TAB category TAB text" per line, LF endings.
void write_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus read_corpus(std::istream& in);
Corpus read_corpus(const std::filesystem::path& path);

bool is_valid_label(std::string_view label) noexcept;

}  // namespace playclass
