#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cardsort/cardsort_data.hpp"
#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/stats.hpp"
#include "cardsort/text_pipeline.hpp"
#include "cardsort/vector_models.hpp"
#include "cardsort/wordnet.hpp"

namespace cardsort {

enum class Method { Bow, Tfidf, Lsa, Wordnet };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::Bow: return "bow";
        case Method::Tfidf: return "tfidf";
        case Method::Lsa: return "lsa";
        case Method::Wordnet: return "wordnet";
    }
    return "bow";
}

inline Method method_from_string(const std::string& name) {
    if (name == "bow") return Method::Bow;
    if (name == "tfidf") return Method::Tfidf;
    if (name == "lsa") return Method::Lsa;
    if (name == "wordnet") return Method::Wordnet;
    throw InputError("unknown method '" + name + "'");
}

// One cell of the experiment table. combine_lower_orders widens the feature
// set to all n-gram orders up to preprocess.ngram_order (the appendix-style
// "Uni, Bi, Tri" condition); the default grid never sets it.
struct ExperimentConfig {
    Method method = Method::Bow;
    PreprocessConfig preprocess;
    bool combine_lower_orders = false;
    std::optional<std::size_t> lsa_dims;
};

struct CorrelationRecord {
    ExperimentConfig config;
    double pearson_r = 0.0;
    double r_squared = 0.0;
};

inline void validate_config(const ExperimentConfig& cfg) {
    if ((cfg.method == Method::Lsa) != cfg.lsa_dims.has_value())
        throw InputError("lsa_dims must be present exactly when method = lsa");
    if (cfg.method == Method::Wordnet) {
        if (cfg.preprocess.normalization == Normalization::Stem)
            throw InputError("wordnet configs cannot use stemming");
        if (cfg.preprocess.ngram_order != 1 || cfg.combine_lower_orders)
            throw InputError("wordnet configs require unigrams");
    }
    if (cfg.preprocess.ngram_order < 1 || cfg.preprocess.ngram_order > 3)
        throw InputError("ngram order must be 1, 2 or 3");
}

inline std::vector<GramSequence> grams_for_config(const Corpus& corpus,
                                                  const ExperimentConfig& cfg,
                                                  const WordNetDb* db) {
    Lemmatizer lemma;
    const Lemmatizer* lemma_ptr = nullptr;
    if (cfg.preprocess.normalization == Normalization::Lemma) {
        if (!db) throw MissingLemmatizer("lemma normalization requires a WordNet database");
        lemma = db->lemmatizer();
        lemma_ptr = &lemma;
    }
    std::vector<GramSequence> grams;
    grams.reserve(corpus.items.size());
    for (const auto& item : corpus.items) {
        if (!cfg.combine_lower_orders) {
            grams.push_back(preprocess(item, cfg.preprocess, lemma_ptr));
            continue;
        }
        GramSequence combined;
        for (int order = 1; order <= cfg.preprocess.ngram_order; ++order) {
            PreprocessConfig sub = cfg.preprocess;
            sub.ngram_order = order;
            GramSequence part = preprocess(item, sub, lemma_ptr);
            combined.insert(combined.end(), part.begin(), part.end());
        }
        grams.push_back(std::move(combined));
    }
    return grams;
}

// The method's item-by-item similarity matrix for one configuration. LSA
// dimensions are clamped to the valid range for the corpus at hand (the
// paper-scale default of 10 exceeds the rank of small corpora); the clamped
// value is reported back through the record's config.
inline SimilarityMatrix method_similarity(const Corpus& corpus, ExperimentConfig& cfg,
                                          const WordNetDb* db) {
    validate_config(cfg);
    if (cfg.method == Method::Wordnet) {
        if (!db) throw InputError("wordnet method requires a WordNet database");
        return db->glao_similarity_matrix(corpus, cfg.preprocess);
    }
    const auto grams = grams_for_config(corpus, cfg, db);
    const Vocabulary vocab = build_vocabulary(grams);
    const DocTermMatrix counts = bow_matrix(grams, vocab);
    if (cfg.method == Method::Bow) return cosine_similarity_matrix(counts.values, corpus.ids());
    const DocTermMatrix tfidf = tfidf_matrix(counts);
    if (cfg.method == Method::Tfidf) return cosine_similarity_matrix(tfidf.values, corpus.ids());
    const std::size_t max_k = std::min(tfidf.rows(), tfidf.dims());
    const std::size_t k = std::min(*cfg.lsa_dims, max_k);
    cfg.lsa_dims = k;
    const DocTermMatrix embedding = lsa_reduce(tfidf, k);
    return cosine_similarity_matrix(embedding.values, corpus.ids());
}

inline CorrelationRecord run_config_against(const SimilarityMatrix& participant_sim,
                                            const Corpus& corpus, ExperimentConfig cfg,
                                            const WordNetDb* db) {
    const SimilarityMatrix method_sim = method_similarity(corpus, cfg, db);
    const double r = pearson(upper_triangle(method_sim), upper_triangle(participant_sim));
    return CorrelationRecord{std::move(cfg), r, r * r};
}

// Builds the method's similarity matrix and correlates its upper triangle
// with the participant matrix's upper triangle.
inline CorrelationRecord run_config(const Corpus& corpus, const CardSortStudy& study,
                                    const ExperimentConfig& cfg, const WordNetDb* db = nullptr) {
    return run_config_against(participant_similarity(study), corpus, cfg, db);
}

inline std::vector<CorrelationRecord> sweep(const Corpus& corpus, const CardSortStudy& study,
                                            const std::vector<ExperimentConfig>& grid,
                                            const WordNetDb* db = nullptr) {
    std::vector<CorrelationRecord> records;
    if (grid.empty()) return records;
    const SimilarityMatrix participant_sim = participant_similarity(study);
    records.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            records.push_back(run_config_against(participant_sim, corpus, grid[i], db));
        } catch (const NumericError& e) {
            throw NumericalFailure("config #" + std::to_string(i) + " (" +
                                   to_string(grid[i].method) + "): " + e.what());
        } catch (const InputError& e) {
            throw InputError("config #" + std::to_string(i) + " (" + to_string(grid[i].method) +
                             "): " + e.what());
        }
    }
    return records;
}

// The 40-cell experiment table: 12 preprocessing rows (stop words kept/removed
// x stemming off/on x n in 1..3) for each frequency method, plus the 4
// WordNet rows (stop words x lemmatization).
inline std::vector<ExperimentConfig> default_grid(const std::set<std::string>& stopwords,
                                                  std::size_t lsa_dims = 10) {
    std::vector<ExperimentConfig> grid;
    for (Method method : {Method::Bow, Method::Tfidf, Method::Lsa}) {
        for (bool include_stop : {false, true}) {
            for (Normalization norm : {Normalization::None, Normalization::Stem}) {
                for (int n : {1, 2, 3}) {
                    ExperimentConfig cfg;
                    cfg.method = method;
                    cfg.preprocess = {include_stop, norm, n, stopwords};
                    if (method == Method::Lsa) cfg.lsa_dims = lsa_dims;
                    grid.push_back(std::move(cfg));
                }
            }
        }
    }
    for (bool include_stop : {false, true}) {
        for (Normalization norm : {Normalization::None, Normalization::Lemma}) {
            ExperimentConfig cfg;
            cfg.method = Method::Wordnet;
            cfg.preprocess = {include_stop, norm, 1, stopwords};
            grid.push_back(std::move(cfg));
        }
    }
    return grid;
}

struct LsaDimPoint {
    std::size_t k = 0;
    double pearson_r = 0.0;
};

struct LsaDimSeries {
    std::vector<LsaDimPoint> points;
    double tfidf_r = 0.0;  // the no-SVD reference the series converges to at full rank
};

// Correlation per LSA dimension under the fixed best preprocessing (stop
// words removed, no stemming, unigrams). Out-of-range dimensions propagate
// InvalidDimension rather than being clamped.
inline LsaDimSeries lsa_dimension_sweep(const Corpus& corpus, const CardSortStudy& study,
                                        std::size_t k_min, std::size_t k_max,
                                        const std::set<std::string>& stopwords) {
    if (k_min < 1 || k_min > k_max) throw InputError("lsa dimension range is empty or invalid");
    const SimilarityMatrix participant_sim = participant_similarity(study);

    PreprocessConfig pre{false, Normalization::None, 1, stopwords};
    std::vector<GramSequence> grams;
    grams.reserve(corpus.items.size());
    for (const auto& item : corpus.items) grams.push_back(preprocess(item, pre));
    const Vocabulary vocab = build_vocabulary(grams);
    const DocTermMatrix tfidf = tfidf_matrix(bow_matrix(grams, vocab));

    LsaDimSeries series;
    series.tfidf_r = pearson(upper_triangle(cosine_similarity_matrix(tfidf.values, corpus.ids())),
                             upper_triangle(participant_sim));
    const std::vector<double> participant_triangle = upper_triangle(participant_sim);
    for (std::size_t k = k_min; k <= k_max; ++k) {
        const DocTermMatrix embedding = lsa_reduce(tfidf, k);
        const double r =
            pearson(upper_triangle(cosine_similarity_matrix(embedding.values, corpus.ids())),
                    participant_triangle);
        series.points.push_back({k, r});
    }
    return series;
}

}  // namespace cardsort
