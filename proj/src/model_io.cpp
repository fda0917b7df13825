// SPDX-License-Identifier: Apache-2.0
#include "playclass/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "playclass/error.hpp"
#include "playclass/numfmt.hpp"

namespace playclass {
namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

void write_reals(std::ostream& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ' ';
        out << format_real(values[i]);
    }
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> expect(std::string_view key, std::size_t fields) {
        std::string line;
        if (!std::getline(in_, line)) fail("unexpected end of file, expected '" + std::string(key) + "'");
        ++line_no_;
        auto parts = split_tabs(line);
        if (parts.front() != key || parts.size() != fields + 1) {
            fail("expected '" + std::string(key) + "' with " + std::to_string(fields) + " field(s)");
        }
        parts.erase(parts.begin());
        return parts;
    }

    std::vector<std::string> raw(std::size_t fields) {
        std::string line;
        if (!std::getline(in_, line)) fail("unexpected end of file");
        ++line_no_;
        auto parts = split_tabs(line);
        if (parts.size() != fields) fail("expected " + std::to_string(fields) + " fields");
        return parts;
    }

    template <typename Int>
    Int integer(const std::string& text) {
        auto v = parse_int<Int>(text);
        if (!v) fail("bad integer '" + text + "'");
        return *v;
    }

    double real(std::string_view text) {
        auto v = parse_real(text);
        if (!v) fail("bad real '" + std::string(text) + "'");
        return *v;
    }

    std::vector<double> reals(const std::string& text, std::size_t count) {
        std::vector<double> out;
        out.reserve(count);
        std::size_t start = 0;
        while (start <= text.size() && out.size() < count + 1) {
            auto space = text.find(' ', start);
            if (space == std::string::npos) space = text.size();
            out.push_back(real(std::string_view(text).substr(start, space - start)));
            start = space + 1;
        }
        if (out.size() != count) fail("expected " + std::to_string(count) + " reals");
        return out;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::Format, "model file line " + std::to_string(line_no_) + ": " + what);
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace

void save_model(const ModelBundle& bundle, std::ostream& out) {
    const NBModel& m = bundle.model;
    out << "playclass-model\t" << kModelFormatVersion << '\n';
    out << "variant\t" << variant_name(m.variant) << '\n';
    out << "weighting\t" << weight_mode_name(bundle.weighting) << '\n';
    out << "alpha\t" << format_real(m.alpha) << '\n';
    out << "stop_words\t" << bundle.stop_words_name << '\t' << hex64(bundle.stop_words_fingerprint)
        << '\n';
    out << "classes\t" << m.classes.size() << '\n';
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        out << "class\t" << m.classes[c] << '\t' << format_real(m.log_prior[c]) << '\n';
    }
    out << "vocabulary\t" << bundle.vocab.size() << '\t' << bundle.vocab.n_documents() << '\n';
    for (std::size_t i = 0; i < bundle.vocab.size(); ++i) {
        out << bundle.vocab.token(i) << '\t' << i << '\t' << bundle.vocab.document_frequency(i)
            << '\n';
    }
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        out << "cond_log_prob\t" << m.classes[c] << '\t';
        write_reals(out, m.cond_log_prob[c]);
        out << '\n';
    }
    if (m.variant == Variant::Bernoulli) {
        for (std::size_t c = 0; c < m.classes.size(); ++c) {
            out << "cond_log_absent\t" << m.classes[c] << '\t';
            write_reals(out, m.cond_log_absent[c]);
            out << '\n';
        }
    }
    out << "end\n";
}

void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    save_model(bundle, out);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ModelBundle load_model(std::istream& in) {
    LineReader r(in);
    ModelBundle b;
    NBModel& m = b.model;

    const auto version = r.integer<int>(r.expect("playclass-model", 1)[0]);
    if (version != kModelFormatVersion) r.fail("unsupported format version " + std::to_string(version));
    try {
        m.variant = parse_variant(r.expect("variant", 1)[0]);
        b.weighting = parse_weight_mode(r.expect("weighting", 1)[0]);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    m.alpha = r.real(r.expect("alpha", 1)[0]);
    const auto stops = r.expect("stop_words", 2);
    b.stop_words_name = stops[0];
    {
        const auto& hex = stops[1];
        const auto [ptr, ec] =
            std::from_chars(hex.data(), hex.data() + hex.size(), b.stop_words_fingerprint, 16);
        if (ec != std::errc() || ptr != hex.data() + hex.size()) r.fail("bad stop-word fingerprint");
    }

    const auto n_classes = r.integer<std::size_t>(r.expect("classes", 1)[0]);
    if (n_classes == 0) r.fail("model has no classes");
    for (std::size_t c = 0; c < n_classes; ++c) {
        const auto f = r.expect("class", 2);
        m.classes.push_back(f[0]);
        m.log_prior.push_back(r.real(f[1]));
    }

    const auto voc = r.expect("vocabulary", 2);
    const auto V = r.integer<std::size_t>(voc[0]);
    const auto n_docs = r.integer<std::size_t>(voc[1]);
    std::vector<std::string> tokens;
    std::vector<std::size_t> dfs;
    for (std::size_t i = 0; i < V; ++i) {
        const auto f = r.raw(3);
        if (r.integer<std::size_t>(f[1]) != i) r.fail("vocabulary indices must be dense and ordered");
        tokens.push_back(f[0]);
        dfs.push_back(r.integer<std::size_t>(f[2]));
    }
    try {
        b.vocab = Vocabulary(std::move(tokens), std::move(dfs), n_docs);
    } catch (const Error& e) {
        r.fail(e.what());
    }
    m.vocab_size = V;

    auto read_table = [&](std::string_view key, std::vector<std::vector<double>>& table) {
        for (std::size_t c = 0; c < n_classes; ++c) {
            const auto f = r.expect(key, 2);
            if (f[0] != m.classes[c]) r.fail("class order mismatch in " + std::string(key));
            table.push_back(r.reals(f[1], V));
        }
    };
    read_table("cond_log_prob", m.cond_log_prob);
    if (m.variant == Variant::Bernoulli) read_table("cond_log_absent", m.cond_log_absent);
    r.expect("end", 0);
    m.finalize();
    return b;
}

ModelBundle load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return load_model(in);
}

void check_tokenizer(const ModelBundle& bundle, const StopWordList& stops) {
    if (stops.fingerprint() != bundle.stop_words_fingerprint) {
        throw Error(ErrorCode::VocabularyMismatch,
                    "model was trained with stop-word list '" + bundle.stop_words_name +
                        "' but '" + stops.source_name() + "' was supplied");
    }
}

Prediction predict_text(const ModelBundle& bundle, std::string_view text, const StopWordList& stops) {
    const auto row = vectorize_one(tokenize(text, stops), bundle.vocab, bundle.weighting);
    return predict(bundle.model, row);
}

}  // namespace playclass
