#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/text_pipeline.hpp"

namespace cardsort {

enum class Pos : std::uint8_t { Noun = 0, Verb = 1, Adj = 2, Adv = 3 };

constexpr std::array<Pos, 4> kAllPos{Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv};

inline std::string_view pos_name(Pos pos) {
    switch (pos) {
        case Pos::Noun: return "noun";
        case Pos::Verb: return "verb";
        case Pos::Adj: return "adj";
        case Pos::Adv: return "adv";
    }
    return "noun";
}

struct SynsetId {
    std::uint32_t offset = 0;
    Pos pos = Pos::Noun;

    bool operator==(const SynsetId&) const = default;
};

struct Synset {
    SynsetId id;
    std::vector<std::string> lemmas;           // lowercase, underscores kept
    std::vector<std::uint32_t> hypernyms;      // same-pos offsets (@ and @i pointers)
};

// Parser and similarity engine for the WordNet 3.0 plain-text database
// layout (wndb(5WN)): index.{noun,verb,adj,adv}, data.{...}, {...}.exc.
class WordNetDb {
public:
    static WordNetDb load(const std::filesystem::path& directory);

    const Synset& find(SynsetId id) const {
        const auto& table = synsets_[static_cast<std::size_t>(id.pos)];
        auto it = table.find(id.offset);
        if (it == table.end())
            throw UnknownSynset("unknown synset offset " + std::to_string(id.offset) + " (" +
                                std::string(pos_name(id.pos)) + ")");
        return it->second;
    }

    // Synsets of a word for one part of speech, in index-file sense order.
    std::vector<SynsetId> synsets_of(const std::string& word, Pos pos) const {
        std::vector<SynsetId> out;
        const auto& index = lemma_index_[static_cast<std::size_t>(pos)];
        auto it = index.find(word);
        if (it == index.end()) return out;
        out.reserve(it->second.size());
        for (std::uint32_t offset : it->second) out.push_back({offset, pos});
        return out;
    }

    std::size_t synset_count(Pos pos) const {
        return synsets_[static_cast<std::size_t>(pos)].size();
    }

    const std::unordered_map<std::uint32_t, Synset>& synset_table(Pos pos) const {
        return synsets_[static_cast<std::size_t>(pos)];
    }

    std::vector<std::string> morphy(const std::string& word, Pos pos) const;

    // 1/(d+1) with d the shortest path through the hypernym graph, hypernym
    // edges walked in both directions and a single virtual root adjoined per
    // part of speech. Identical synsets score 1; cross-pos pairs and adj/adv
    // (which have no hypernym hierarchy) are undefined.
    std::optional<double> path_similarity(SynsetId a, SynsetId b) const;

    // Maximum path similarity over all same-pos synset pairs of the two
    // words; words without synsets fall back to exact-match (1 or 0).
    double word_similarity(const std::string& w1, const std::string& w2) const;

    double glao_sentence_similarity(const std::vector<std::string>& s1,
                                    const std::vector<std::string>& s2) const;

    SimilarityMatrix glao_similarity_matrix(const Corpus& corpus, const PreprocessConfig& cfg) const;

    // morphy over noun, verb, adj, adv in that order; unknown words pass
    // through unchanged.
    Lemmatizer lemmatizer() const {
        return [this](const std::string& word) -> std::string {
            for (Pos pos : kAllPos) {
                auto forms = morphy(word, pos);
                if (!forms.empty()) return forms.front();
            }
            return word;
        };
    }

private:
    static constexpr std::uint32_t kVirtualRoot = 0xFFFFFFFFu;

    using SimCache = std::unordered_map<std::string, double>;

    double cached_word_similarity(const std::string& w1, const std::string& w2,
                                  SimCache& cache) const;
    double glao_aligned(const std::vector<std::string>& s1, const std::vector<std::string>& s2,
                        SimCache& cache) const;

    void parse_data_file(const std::filesystem::path& path, Pos pos);
    void parse_index_file(const std::filesystem::path& path, Pos pos);
    void parse_exception_file(const std::filesystem::path& path, Pos pos);
    void build_adjacency(Pos pos);
    void check_acyclic(const std::filesystem::path& directory, Pos pos) const;

    std::array<std::unordered_map<std::uint32_t, Synset>, 4> synsets_;
    std::array<std::unordered_map<std::string, std::vector<std::uint32_t>>, 4> lemma_index_;
    std::array<std::unordered_map<std::string, std::vector<std::string>>, 4> exceptions_;
    std::array<std::unordered_map<std::uint32_t, std::vector<std::uint32_t>>, 4> adjacency_;
};

namespace wordnet_detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline std::string ascii_lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

// Header lines in the distribution start with two spaces.
inline bool is_header_line(const std::string& line) {
    return line.empty() || line[0] == ' ';
}

struct LineError {
    const std::filesystem::path& path;
    std::size_t line_number;

    [[noreturn]] void fail(const std::string& message) const {
        throw MalformedDatabase(path.string() + ":" + std::to_string(line_number) + ": " + message);
    }
};

inline std::uint32_t parse_offset(const std::string& token, const LineError& ctx) {
    if (token.empty() || token.size() > 9) ctx.fail("bad synset offset '" + token + "'");
    std::uint32_t value = 0;
    for (char c : token) {
        if (c < '0' || c > '9') ctx.fail("bad synset offset '" + token + "'");
        value = value * 10 + static_cast<std::uint32_t>(c - '0');
    }
    return value;
}

inline std::size_t parse_decimal(const std::string& token, const LineError& ctx) {
    if (token.empty()) ctx.fail("expected a decimal count");
    std::size_t value = 0;
    for (char c : token) {
        if (c < '0' || c > '9') ctx.fail("bad decimal count '" + token + "'");
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

inline std::size_t parse_hex(const std::string& token, const LineError& ctx) {
    if (token.empty()) ctx.fail("expected a hex count");
    std::size_t value = 0;
    for (char c : token) {
        std::size_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::size_t>(c - '0');
        else if (c >= 'a' && c <= 'f') digit = static_cast<std::size_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') digit = static_cast<std::size_t>(c - 'A' + 10);
        else { ctx.fail("bad hex count '" + token + "'"); return 0; }
        value = value * 16 + digit;
    }
    return value;
}

inline Pos pos_of_sstype(char ss_type, const LineError& ctx) {
    switch (ss_type) {
        case 'n': return Pos::Noun;
        case 'v': return Pos::Verb;
        case 'a': case 's': return Pos::Adj;
        case 'r': return Pos::Adv;
    }
    ctx.fail(std::string("unknown synset type '") + ss_type + "'");
}

struct MorphRule {
    std::string_view suffix;
    std::string_view ending;
};

inline const std::vector<MorphRule>& morph_rules(Pos pos) {
    static const std::vector<MorphRule> noun{{"s", ""},    {"ses", "s"},  {"ves", "f"},
                                             {"xes", "x"}, {"zes", "z"},  {"ches", "ch"},
                                             {"shes", "sh"}, {"men", "man"}, {"ies", "y"}};
    static const std::vector<MorphRule> verb{{"s", ""},   {"ies", "y"}, {"es", "e"}, {"es", ""},
                                             {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
    static const std::vector<MorphRule> adj{{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};
    static const std::vector<MorphRule> adv{};
    switch (pos) {
        case Pos::Noun: return noun;
        case Pos::Verb: return verb;
        case Pos::Adj: return adj;
        case Pos::Adv: return adv;
    }
    return noun;
}

}  // namespace wordnet_detail

inline void WordNetDb::parse_data_file(const std::filesystem::path& path, Pos pos) {
    using namespace wordnet_detail;
    std::ifstream in(path);
    if (!in) throw MissingFile("cannot open " + path.string());
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_header_line(line)) continue;
        const LineError ctx{path, line_number};
        const auto tokens = split_ws(line);
        if (tokens.size() < 5) ctx.fail("truncated synset line");

        Synset synset;
        synset.id.offset = parse_offset(tokens[0], ctx);
        if (tokens[2].size() != 1) ctx.fail("bad synset type field '" + tokens[2] + "'");
        synset.id.pos = pos_of_sstype(tokens[2][0], ctx);
        if (synset.id.pos != pos)
            ctx.fail("synset type '" + tokens[2] + "' does not belong in data." +
                     std::string(pos_name(pos)));

        const std::size_t word_count = parse_hex(tokens[3], ctx);
        if (word_count == 0) ctx.fail("synset has no words");
        std::size_t at = 4;
        for (std::size_t w = 0; w < word_count; ++w) {
            if (at + 1 >= tokens.size()) ctx.fail("truncated word list");
            synset.lemmas.push_back(ascii_lower(tokens[at]));
            at += 2;  // word, lex_id
        }

        if (at >= tokens.size()) ctx.fail("missing pointer count");
        const std::size_t pointer_count = parse_decimal(tokens[at++], ctx);
        for (std::size_t p = 0; p < pointer_count; ++p) {
            if (at + 3 >= tokens.size()) ctx.fail("truncated pointer list");
            const std::string& symbol = tokens[at];
            const std::string& target_offset = tokens[at + 1];
            const std::string& target_pos = tokens[at + 2];
            if (symbol == "@" || symbol == "@i") {
                const LineError ptr_ctx{path, line_number};
                if (target_pos.size() != 1) ptr_ctx.fail("bad pointer pos '" + target_pos + "'");
                if (pos_of_sstype(target_pos[0], ptr_ctx) != pos)
                    ptr_ctx.fail("hypernym pointer leaves part of speech " +
                                 std::string(pos_name(pos)));
                synset.hypernyms.push_back(parse_offset(target_offset, ptr_ctx));
            }
            at += 4;  // symbol, offset, pos, source/target
        }

        auto [it, inserted] =
            synsets_[static_cast<std::size_t>(pos)].emplace(synset.id.offset, std::move(synset));
        if (!inserted) ctx.fail("duplicate synset offset " + tokens[0]);
        (void)it;
    }
}

inline void WordNetDb::parse_index_file(const std::filesystem::path& path, Pos pos) {
    using namespace wordnet_detail;
    std::ifstream in(path);
    if (!in) throw MissingFile("cannot open " + path.string());
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_header_line(line)) continue;
        const LineError ctx{path, line_number};
        const auto tokens = split_ws(line);
        if (tokens.size() < 6) ctx.fail("truncated index line");

        const std::string lemma = ascii_lower(tokens[0]);
        const std::size_t synset_count = parse_decimal(tokens[2], ctx);
        const std::size_t pointer_count = parse_decimal(tokens[3], ctx);
        const std::size_t offsets_start = 4 + pointer_count + 2;  // skip symbols + 2 counts
        if (tokens.size() != offsets_start + synset_count)
            ctx.fail("index entry for '" + lemma + "' has wrong field count");

        std::vector<std::uint32_t> offsets;
        offsets.reserve(synset_count);
        for (std::size_t i = 0; i < synset_count; ++i) {
            const std::uint32_t offset = parse_offset(tokens[offsets_start + i], ctx);
            if (!synsets_[static_cast<std::size_t>(pos)].count(offset))
                ctx.fail("index entry for '" + lemma + "' references unknown offset " +
                         tokens[offsets_start + i]);
            offsets.push_back(offset);
        }
        lemma_index_[static_cast<std::size_t>(pos)][lemma] = std::move(offsets);
    }
}

inline void WordNetDb::parse_exception_file(const std::filesystem::path& path, Pos pos) {
    using namespace wordnet_detail;
    std::ifstream in(path);
    if (!in) throw MissingFile("cannot open " + path.string());
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (is_header_line(line)) continue;
        const auto tokens = split_ws(line);
        if (tokens.size() < 2) {
            const LineError ctx{path, line_number};
            ctx.fail("exception line needs an inflected form and at least one base form");
        }
        std::vector<std::string> bases(tokens.begin() + 1, tokens.end());
        exceptions_[static_cast<std::size_t>(pos)][ascii_lower(tokens[0])] = std::move(bases);
    }
}

inline void WordNetDb::build_adjacency(Pos pos) {
    if (pos != Pos::Noun && pos != Pos::Verb) return;
    auto& adjacency = adjacency_[static_cast<std::size_t>(pos)];
    for (const auto& [offset, synset] : synsets_[static_cast<std::size_t>(pos)]) {
        if (synset.hypernyms.empty()) {
            adjacency[offset].push_back(kVirtualRoot);
            adjacency[kVirtualRoot].push_back(offset);
        }
        for (std::uint32_t parent : synset.hypernyms) {
            adjacency[offset].push_back(parent);
            adjacency[parent].push_back(offset);
        }
    }
}

inline void WordNetDb::check_acyclic(const std::filesystem::path& directory, Pos pos) const {
    if (pos != Pos::Noun && pos != Pos::Verb) return;
    const auto& table = synsets_[static_cast<std::size_t>(pos)];
    // 0 = unseen, 1 = on stack, 2 = done
    std::unordered_map<std::uint32_t, int> state;
    for (const auto& [start, unused] : table) {
        (void)unused;
        if (state[start] == 2) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
        state[start] = 1;
        while (!stack.empty()) {
            auto& [offset, next] = stack.back();
            const auto it = table.find(offset);
            if (it == table.end())
                throw MalformedDatabase(directory.string() + ": hypernym pointer to unknown " +
                                        std::string(pos_name(pos)) + " offset " +
                                        std::to_string(offset));
            if (next < it->second.hypernyms.size()) {
                const std::uint32_t child = it->second.hypernyms[next++];
                const int s = state[child];
                if (s == 1)
                    throw MalformedDatabase(directory.string() + ": hypernym cycle through " +
                                            std::string(pos_name(pos)) + " offset " +
                                            std::to_string(child));
                if (s == 0) {
                    state[child] = 1;
                    stack.emplace_back(child, 0);
                }
            } else {
                state[offset] = 2;
                stack.pop_back();
            }
        }
    }
}

inline WordNetDb WordNetDb::load(const std::filesystem::path& directory) {
    WordNetDb db;
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory))
        throw MissingFile("WordNet directory not found: " + directory.string());
    for (Pos pos : kAllPos) {
        const std::string name(pos_name(pos));
        for (const std::string base : {"index.", "data."}) {
            if (!fs::exists(directory / (base + name)))
                throw MissingFile("missing " + (directory / (base + name)).string());
        }
        if (!fs::exists(directory / (name + ".exc")))
            throw MissingFile("missing " + (directory / (name + ".exc")).string());
    }
    for (Pos pos : kAllPos) {
        const std::string name(pos_name(pos));
        db.parse_data_file(directory / ("data." + name), pos);
        db.parse_index_file(directory / ("index." + name), pos);
        db.parse_exception_file(directory / (name + ".exc"), pos);
        db.check_acyclic(directory, pos);
        db.build_adjacency(pos);
    }
    return db;
}

inline std::vector<std::string> WordNetDb::morphy(const std::string& word, Pos pos) const {
    using namespace wordnet_detail;
    const auto& index = lemma_index_[static_cast<std::size_t>(pos)];
    const auto& exceptions = exceptions_[static_cast<std::size_t>(pos)];
    const auto& rules = morph_rules(pos);

    auto filter_known = [&](const std::vector<std::string>& forms) {
        std::vector<std::string> out;
        std::unordered_set<std::string> seen;
        for (const auto& form : forms)
            if (index.count(form) && seen.insert(form).second) out.push_back(form);
        return out;
    };
    auto apply_rules = [&](const std::vector<std::string>& forms) {
        std::vector<std::string> out;
        for (const auto& form : forms) {
            for (const auto& rule : rules) {
                if (form.size() <= rule.suffix.size()) continue;
                if (form.compare(form.size() - rule.suffix.size(), rule.suffix.size(),
                                 rule.suffix) != 0)
                    continue;
                std::string base = form.substr(0, form.size() - rule.suffix.size());
                base.append(rule.ending);
                out.push_back(std::move(base));
            }
        }
        return out;
    };

    // Exception-file matches take precedence and are returned on their own.
    if (auto exc = exceptions.find(word); exc != exceptions.end()) {
        std::vector<std::string> candidates{word};
        candidates.insert(candidates.end(), exc->second.begin(), exc->second.end());
        return filter_known(candidates);
    }

    std::vector<std::string> forms = apply_rules({word});
    std::vector<std::string> candidates{word};
    candidates.insert(candidates.end(), forms.begin(), forms.end());
    if (auto found = filter_known(candidates); !found.empty()) return found;

    for (int depth = 0; depth < 32 && !forms.empty(); ++depth) {
        forms = apply_rules(forms);
        if (auto found = filter_known(forms); !found.empty()) return found;
    }
    return {};
}

inline std::optional<double> WordNetDb::path_similarity(SynsetId a, SynsetId b) const {
    find(a);
    find(b);
    if (a == b) return 1.0;
    if (a.pos != b.pos) return std::nullopt;
    if (a.pos == Pos::Adj || a.pos == Pos::Adv) return std::nullopt;

    const auto& adjacency = adjacency_[static_cast<std::size_t>(a.pos)];
    std::unordered_map<std::uint32_t, int> dist;
    std::deque<std::uint32_t> queue;
    dist[a.offset] = 0;
    queue.push_back(a.offset);
    while (!queue.empty()) {
        const std::uint32_t node = queue.front();
        queue.pop_front();
        const int d = dist[node];
        auto it = adjacency.find(node);
        if (it == adjacency.end()) continue;
        for (std::uint32_t next : it->second) {
            if (dist.count(next)) continue;
            if (next == b.offset) return 1.0 / (d + 2);
            dist[next] = d + 1;
            queue.push_back(next);
        }
    }
    return std::nullopt;  // unreachable only if the graph is disconnected
}

inline double WordNetDb::word_similarity(const std::string& w1, const std::string& w2) const {
    std::vector<SynsetId> syn1, syn2;
    for (Pos pos : kAllPos) {
        for (SynsetId id : synsets_of(w1, pos)) syn1.push_back(id);
        for (SynsetId id : synsets_of(w2, pos)) syn2.push_back(id);
    }
    if (syn1.empty() || syn2.empty()) return w1 == w2 ? 1.0 : 0.0;
    double best = 0.0;
    for (SynsetId a : syn1) {
        for (SynsetId b : syn2) {
            if (a.pos != b.pos) continue;
            if (auto sim = path_similarity(a, b); sim && *sim > best) best = *sim;
        }
    }
    return best;
}

inline double WordNetDb::cached_word_similarity(const std::string& w1, const std::string& w2,
                                                SimCache& cache) const {
    const bool ordered = w1 <= w2;
    std::string key = ordered ? w1 + '\x1f' + w2 : w2 + '\x1f' + w1;
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double sim = word_similarity(w1, w2);
    cache.emplace(std::move(key), sim);
    return sim;
}

// Greedy one-to-one alignment: repeatedly take the highest-similarity
// unaligned pair, stop when a side is exhausted or the best pair scores 0,
// normalize by the longer sentence. Alignment runs on the canonically
// ordered pair (shorter first, lexicographic on equal length) so the result
// is symmetric in its arguments.
inline double WordNetDb::glao_aligned(const std::vector<std::string>& s1,
                                      const std::vector<std::string>& s2,
                                      SimCache& cache) const {
    const bool swap = s2.size() < s1.size() || (s2.size() == s1.size() && s2 < s1);
    const auto& a = swap ? s2 : s1;
    const auto& b = swap ? s1 : s2;

    std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
    std::size_t remaining_a = a.size(), remaining_b = b.size();
    double total = 0.0;
    while (remaining_a > 0 && remaining_b > 0) {
        double best = 0.0;
        std::size_t best_i = a.size(), best_j = b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (used_a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (used_b[j]) continue;
                const double sim = cached_word_similarity(a[i], b[j], cache);
                if (sim > best) {
                    best = sim;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best <= 0.0) break;
        used_a[best_i] = true;
        used_b[best_j] = true;
        --remaining_a;
        --remaining_b;
        total += best;
    }
    return total / static_cast<double>(std::max(a.size(), b.size()));
}

inline double WordNetDb::glao_sentence_similarity(const std::vector<std::string>& s1,
                                                  const std::vector<std::string>& s2) const {
    if (s1.empty() || s2.empty()) throw EmptySentence("glao: empty sentence");
    SimCache cache;
    return glao_aligned(s1, s2, cache);
}

inline SimilarityMatrix WordNetDb::glao_similarity_matrix(const Corpus& corpus,
                                                          const PreprocessConfig& cfg) const {
    if (cfg.ngram_order != 1)
        throw InputError("wordnet similarity requires unigrams (got n=" +
                         std::to_string(cfg.ngram_order) + ")");
    if (cfg.normalization == Normalization::Stem)
        throw InputError("wordnet similarity cannot use stemming; use lemma or none");

    Lemmatizer lemma = lemmatizer();
    std::vector<std::vector<std::string>> sentences;
    sentences.reserve(corpus.items.size());
    for (const auto& item : corpus.items) {
        auto tokens = preprocess(item, cfg, cfg.normalization == Normalization::Lemma ? &lemma : nullptr);
        if (tokens.empty())
            throw EmptySentence("item '" + item.id + "' has no tokens after preprocessing");
        sentences.push_back(std::move(tokens));
    }

    const std::size_t n = sentences.size();
    SimilarityMatrix sim{corpus.ids(), Matrix(n, n)};
    SimCache cache;
    for (std::size_t i = 0; i < n; ++i) {
        sim.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = glao_aligned(sentences[i], sentences[j], cache);
            sim.values(i, j) = s;
            sim.values(j, i) = s;
        }
    }
    return sim;
}

}  // namespace cardsort
