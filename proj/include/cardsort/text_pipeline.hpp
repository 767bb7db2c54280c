#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cardsort/csv.hpp"
#include "cardsort/errors.hpp"
#include "cardsort/porter.hpp"

namespace cardsort {

// One item to be sorted/compared: a short natural-language description.
struct ItemText {
    std::string id;
    std::string text;
};

// Item order is fixed and defines row/column order of every downstream
// matrix.
struct Corpus {
    std::vector<ItemText> items;

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        out.reserve(items.size());
        for (const auto& item : items) out.push_back(item.id);
        return out;
    }
};

enum class Normalization { None, Stem, Lemma };

inline std::string to_string(Normalization n) {
    switch (n) {
        case Normalization::None: return "none";
        case Normalization::Stem: return "stem";
        case Normalization::Lemma: return "lemma";
    }
    return "none";
}

struct PreprocessConfig {
    bool include_stopwords = true;
    Normalization normalization = Normalization::None;
    int ngram_order = 1;
    std::set<std::string> stopwords;
};

using GramSequence = std::vector<std::string>;
using Lemmatizer = std::function<std::string(const std::string&)>;

// Lowercased maximal runs of ASCII alphanumerics, in text order. Explicit
// character classes rather than <cctype> so the result cannot depend on the
// global locale.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            current.push_back(c);
        } else if (c >= 'A' && c <= 'Z') {
            current.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const std::set<std::string>& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens)
        if (!stopwords.count(token)) out.push_back(token);
    return out;
}

// Sliding window of n consecutive tokens joined by single spaces. n=1 is the
// identity; |output| = max(0, |tokens| - n + 1).
inline GramSequence make_ngrams(const std::vector<std::string>& tokens, int n) {
    if (n < 1 || n > 3) throw InputError("ngram order must be 1, 2 or 3");
    if (n == 1) return tokens;
    GramSequence grams;
    if (tokens.size() < static_cast<std::size_t>(n)) return grams;
    grams.reserve(tokens.size() - static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (std::size_t j = 1; j < static_cast<std::size_t>(n); ++j) {
            gram.push_back(' ');
            gram += tokens[i + j];
        }
        grams.push_back(std::move(gram));
    }
    return grams;
}

// tokenize -> stop-word removal (when not included) -> stem/lemma -> n-grams,
// in exactly that order.
inline GramSequence preprocess(const ItemText& item, const PreprocessConfig& cfg,
                               const Lemmatizer* lemmatizer = nullptr) {
    std::vector<std::string> tokens = tokenize(item.text);
    if (!cfg.include_stopwords) tokens = remove_stopwords(tokens, cfg.stopwords);
    switch (cfg.normalization) {
        case Normalization::None:
            break;
        case Normalization::Stem:
            for (auto& token : tokens) token = porter_stem(token);
            break;
        case Normalization::Lemma:
            if (!lemmatizer)
                throw MissingLemmatizer("item '" + item.id +
                                        "': lemma normalization requires a lemmatizer");
            for (auto& token : tokens) token = (*lemmatizer)(token);
            break;
    }
    return make_ngrams(tokens, cfg.ngram_order);
}

// Stop-word file: UTF-8, one lowercase word per line, '#'-prefixed comment
// lines ignored.
inline std::set<std::string> load_stopword_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open stop-word file: " + path.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.insert(line);
    }
    return words;
}

// Corpus CSV: header `id,text`, double-quote escaping.
inline Corpus load_corpus_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "id" || rows[0][1] != "text")
        throw InputError(path.string() + ": expected header 'id,text'");
    Corpus corpus;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
            throw InputError(path.string() + ": row " + std::to_string(i + 1) +
                             ": expected 2 fields, got " + std::to_string(rows[i].size()));
        const std::string& id = rows[i][0];
        const std::string& text = rows[i][1];
        if (id.empty())
            throw InputError(path.string() + ": row " + std::to_string(i + 1) + ": empty item id");
        if (!seen.insert(id).second)
            throw InputError(path.string() + ": row " + std::to_string(i + 1) +
                             ": duplicate item id '" + id + "'");
        bool has_alpha = false;
        for (char c : text)
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) { has_alpha = true; break; }
        if (!has_alpha)
            throw InputError(path.string() + ": row " + std::to_string(i + 1) + ": item '" + id +
                             "' has no alphabetic text");
        corpus.items.push_back({id, text});
    }
    if (corpus.items.empty()) throw InputError(path.string() + ": corpus has no items");
    return corpus;
}

}  // namespace cardsort
