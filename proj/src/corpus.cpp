// SPDX-License-Identifier: Apache-2.0
#include "playclass/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "playclass/csv.hpp"
#include "playclass/error.hpp"

namespace playclass {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<bool> parse_bool(std::string_view raw) {
    const std::string v = lower(trim(raw));
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    return std::nullopt;
}

double parse_price(std::string_view raw) {
    std::string v(trim(raw));
    std::erase_if(v, [](char c) { return !(std::isdigit(static_cast<unsigned char>(c)) || c == '.'); });
    double value = 0.0;
    std::from_chars(v.data(), v.data() + v.size(), value);
    return value;
}

enum Column : std::size_t {
    kAppName,
    kDeveloper,
    kIsTopDeveloper,
    kCategory,
    kIsFree,
    kPrice,
    kContentRating,
    kHaveInAppPurchases,
    kDescription,
    kColumnCount
};

constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
    "AppName", "Developer", "IsTopDeveloper", "Category", "IsFree",
    "Price", "ContentRating", "HaveInAppPurchases", "Description"};

constexpr std::array<bool, kColumnCount> kRequired = {true, false, true, true, true,
                                                      false, true, true, true};

}  // namespace

LoadResult load_raw_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return load_raw_csv(in);
}

LoadResult load_raw_csv(std::istream& in) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) throw Error(ErrorCode::Schema, "missing header row");

    if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
        header->front().erase(0, 3);
    }

    std::array<std::optional<std::size_t>, kColumnCount> position;
    std::vector<bool> known(header->size(), false);
    for (std::size_t i = 0; i < header->size(); ++i) {
        const std::string name = lower(trim((*header)[i]));
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            if (!position[c] && name == lower(kColumnNames[c])) {
                position[c] = i;
                known[i] = true;
            }
        }
    }
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        if (kRequired[c] && !position[c]) {
            throw Error(ErrorCode::Schema, "missing required column " + std::string(kColumnNames[c]));
        }
    }

    LoadResult result;
    while (auto row = reader.next()) {
        if (row->size() == 1 && trim(row->front()).empty()) continue;
        ++result.rows_read;
        const std::size_t row_no = result.rows_read;

        auto field = [&](Column c) -> std::string_view {
            if (!position[c] || *position[c] >= row->size()) return {};
            return (*row)[*position[c]];
        };

        AppRecord rec;
        rec.category = std::string(trim(field(kCategory)));
        if (rec.category.empty()) {
            result.skipped.push_back({row_no, "missing Category"});
            continue;
        }
        const auto top = parse_bool(field(kIsTopDeveloper));
        const auto free = parse_bool(field(kIsFree));
        const auto iap = parse_bool(field(kHaveInAppPurchases));
        if (!top || !free || !iap) {
            const char* which = !top ? "IsTopDeveloper" : !free ? "IsFree" : "HaveInAppPurchases";
            result.skipped.push_back({row_no, std::string("malformed boolean in ") + which});
            continue;
        }
        rec.is_top_developer = *top;
        rec.is_free = *free;
        rec.have_in_app_purchases = *iap;
        rec.app_name = std::string(field(kAppName));
        rec.developer = std::string(field(kDeveloper));
        rec.price = parse_price(field(kPrice));
        rec.content_rating = std::string(field(kContentRating));
        rec.description = std::string(field(kDescription));
        for (std::size_t i = 0; i < header->size() && i < row->size(); ++i) {
            if (!known[i]) rec.extra.emplace((*header)[i], (*row)[i]);
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

std::vector<AppRecord> filter_top_developers(std::span<const AppRecord> records) {
    std::vector<AppRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [](const AppRecord& r) { return r.is_top_developer; });
    return out;
}

std::string compose_document(const AppRecord& record) {
    const std::array<std::string_view, 5> parts = {
        record.app_name,
        record.content_rating,
        record.is_free ? "isfree_yes" : "isfree_no",
        record.have_in_app_purchases ? "iap_yes" : "iap_no",
        record.description,
    };
    std::string text;
    for (std::string_view part : parts) {
        if (part.empty()) continue;
        if (!text.empty()) text.push_back(' ');
        text.append(part);
    }
    std::replace_if(text.begin(), text.end(),
                    [](char c) { return c == '\t' || c == '\r' || c == '\n'; }, ' ');
    return text;
}

bool is_valid_label(std::string_view label) noexcept {
    if (label.empty() || !std::isupper(static_cast<unsigned char>(label.front()))) return false;
    return std::all_of(label.begin(), label.end(), [](unsigned char c) {
        return std::isupper(c) || std::isdigit(c) || c == '_';
    });
}

void validate(const FilterProfile& profile) {
    for (const auto& label : profile.dropped_categories) {
        require(is_valid_label(label), "invalid category label in drop list: '" + label + "'");
    }
}

std::size_t count_words(std::string_view text) {
    std::size_t words = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        const bool space = std::isspace(c) != 0;
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

std::string scoped_label(const std::string& label, CategoryScope scope) {
    const bool game = label.starts_with(kGamePrefix);
    switch (scope) {
        case CategoryScope::AllCategories: return label;
        case CategoryScope::OnlyGameApps: return game ? label : std::string();
        case CategoryScope::OnlyOtherCategories: return game ? std::string() : label;
        case CategoryScope::GroupedGameApps: return game ? std::string(kGroupedGameLabel) : label;
    }
    return label;
}

Corpus apply_filter_profile(std::span<const AppRecord> records, const FilterProfile& profile) {
    validate(profile);
    std::vector<Document> docs;
    for (const auto& rec : records) {
        const std::string label = scoped_label(rec.category, profile.category_scope);
        if (label.empty()) continue;
        if (profile.app_filter == AppFilter::FilteredApps) {
            if (count_words(rec.description) < profile.min_description_words) continue;
            // The drop list names original store categories; a grouped label
            // can also be dropped explicitly.
            if (profile.dropped_categories.contains(rec.category) ||
                profile.dropped_categories.contains(label)) {
                continue;
            }
        }
        docs.push_back({0, compose_document(rec), label});
    }
    return make_corpus(std::move(docs));
}

Corpus make_corpus(std::vector<Document> documents) {
    if (documents.empty()) throw Error(ErrorCode::DegenerateCorpus, "empty corpus");
    Corpus corpus;
    for (std::size_t i = 0; i < documents.size(); ++i) {
        documents[i].doc_id = i;
        require(!documents[i].label.empty(), "document " + std::to_string(i) + " has no label");
        corpus.categories.insert(documents[i].label);
    }
    corpus.documents = std::move(documents);
    return corpus;
}

std::vector<std::string> Corpus::labels() const {
    std::vector<std::string> out;
    out.reserve(documents.size());
    for (const auto& d : documents) out.push_back(d.label);
    return out;
}

std::vector<std::string> Corpus::texts() const {
    std::vector<std::string> out;
    out.reserve(documents.size());
    for (const auto& d : documents) out.push_back(d.text);
    return out;
}

std::map<std::string, std::size_t> Corpus::category_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& d : documents) ++counts[d.label];
    return counts;
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& d : corpus.documents) {
        out << d.doc_id << '\t' << d.label << '\t' << d.text << '\n';
    }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_corpus(corpus, out);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Corpus read_corpus(std::istream& in) {
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw Error(ErrorCode::Format, "corpus line " + std::to_string(line_no) +
                                               ": expected doc_id TAB category TAB text");
        }
        std::size_t id = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + t1, id);
        if (ec != std::errc() || ptr != line.data() + t1 || id != docs.size()) {
            throw Error(ErrorCode::Format, "corpus line " + std::to_string(line_no) +
                                               ": doc_id must be dense and ordered");
        }
        docs.push_back({id, line.substr(t2 + 1), line.substr(t1 + 1, t2 - t1 - 1)});
    }
    return make_corpus(std::move(docs));
}

Corpus read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_corpus(in);
}

}  // namespace playclass
