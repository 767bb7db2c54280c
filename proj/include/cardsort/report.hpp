#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cardsort/errors.hpp"
#include "cardsort/experiment.hpp"
#include "cardsort/hash.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/montecarlo.hpp"
#include "cardsort/version.hpp"

namespace cardsort {

// Every report embeds the manifest of its inputs; identical manifest and
// inputs must yield byte-identical reports. Unused fields stay empty strings
// so the key set is stable.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string corpus_path;
    std::string corpus_hash;
    std::string cardsort_path;
    std::string cardsort_hash;
    std::string stopwords_hash;
    std::string wordnet_dir;
    std::string wordnet_hash;
    std::uint64_t seed = 0;
};

inline nlohmann::json manifest_json(const RunManifest& manifest) {
    // nlohmann::json objects serialize with sorted keys, which is what keeps
    // report bytes stable.
    return nlohmann::json{
        {"tool_version", manifest.tool_version},
        {"corpus_path", manifest.corpus_path},
        {"corpus_hash", manifest.corpus_hash},
        {"cardsort_path", manifest.cardsort_path},
        {"cardsort_hash", manifest.cardsort_hash},
        {"stopwords_hash", manifest.stopwords_hash},
        {"wordnet_dir", manifest.wordnet_dir},
        {"wordnet_hash", manifest.wordnet_hash},
        {"seed", manifest.seed},
    };
}

inline nlohmann::json record_json(const CorrelationRecord& record) {
    nlohmann::json j{
        {"method", to_string(record.config.method)},
        {"stopwords_included", record.config.preprocess.include_stopwords},
        {"normalization", to_string(record.config.preprocess.normalization)},
        {"pearson_r", record.pearson_r},
        {"r_squared", record.r_squared},
    };
    if (record.config.combine_lower_orders) {
        std::string combined = "1";
        for (int n = 2; n <= record.config.preprocess.ngram_order; ++n)
            combined += "," + std::to_string(n);
        j["ngram"] = combined;
    } else {
        j["ngram"] = record.config.preprocess.ngram_order;
    }
    if (record.config.lsa_dims) j["lsa_dims"] = *record.config.lsa_dims;
    return j;
}

inline nlohmann::json similarity_json(const SimilarityMatrix& sim) {
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < sim.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < sim.size(); ++j) row.push_back(sim.values(i, j));
        values.push_back(std::move(row));
    }
    return nlohmann::json{{"items", sim.order}, {"values", std::move(values)}};
}

inline nlohmann::json analysis_report_json(const RunManifest& manifest,
                                           const std::vector<CorrelationRecord>& records,
                                           const SimilarityMatrix& participant_sim) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& record : records) recs.push_back(record_json(record));
    return nlohmann::json{
        {"manifest", manifest_json(manifest)},
        {"records", std::move(recs)},
        {"participant_similarity", similarity_json(participant_sim)},
    };
}

inline nlohmann::json simulate_report_json(const RunManifest& manifest, double observed,
                                           const SilhouetteDistribution& dist, std::size_t k,
                                           std::size_t iterations) {
    return nlohmann::json{
        {"manifest", manifest_json(manifest)},
        {"observed", observed},
        {"min", dist.min},
        {"max", dist.max},
        {"mean", dist.mean},
        {"values", dist.values},
        {"k", k},
        {"iterations", iterations},
    };
}

inline nlohmann::json lsadim_report_json(const RunManifest& manifest, const LsaDimSeries& series) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& point : series.points)
        points.push_back(nlohmann::json{{"k", point.k}, {"pearson_r", point.pearson_r}});
    return nlohmann::json{
        {"manifest", manifest_json(manifest)},
        {"points", std::move(points)},
        {"tfidf_pearson_r", series.tfidf_r},
    };
}

inline void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace cardsort
