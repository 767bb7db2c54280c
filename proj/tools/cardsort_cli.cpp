// Command-line front end: loads corpora, card-sort data and the optional
// WordNet database, runs the correlation sweep / Monte Carlo baseline / LSA
// dimension sweep, and writes deterministic JSON reports and SVG figures.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cardsort/cardsort_data.hpp"
#include "cardsort/default_stopwords.hpp"
#include "cardsort/errors.hpp"
#include "cardsort/experiment.hpp"
#include "cardsort/hash.hpp"
#include "cardsort/montecarlo.hpp"
#include "cardsort/report.hpp"
#include "cardsort/svg.hpp"
#include "cardsort/text_pipeline.hpp"
#include "cardsort/version.hpp"
#include "cardsort/wordnet.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonPaths {
    std::string corpus;
    std::string cardsort;
    std::string stopwords;
    std::string wordnet_dir;
    std::string config;
    std::string out_dir;
    std::string lsa_dims = "2..20";
    std::uint64_t seed = 0;
    std::size_t iterations = 100;
    std::size_t k = 7;
};

std::set<std::string> load_stopwords(const std::string& path) {
    if (path.empty()) return cardsort::default_english_stopwords();
    return cardsort::load_stopword_file(path);
}

cardsort::Normalization normalization_from_string(const std::string& name) {
    if (name == "none") return cardsort::Normalization::None;
    if (name == "stem") return cardsort::Normalization::Stem;
    if (name == "lemma") return cardsort::Normalization::Lemma;
    throw cardsort::InputError("unknown normalization '" + name + "'");
}

// Grid file: {"grid": [{"method", "stopwords_included", "normalization",
// "ngram", "lsa_dims"?}, ...]}. "ngram" is 1|2|3 or a combined "1,2"/"1,2,3".
std::vector<cardsort::ExperimentConfig> load_grid_json(const std::string& path,
                                                       const std::set<std::string>& stopwords) {
    std::ifstream in(path);
    if (!in) throw cardsort::InputError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw cardsort::InputError(path + ": " + e.what());
    }
    if (!j.contains("grid") || !j["grid"].is_array())
        throw cardsort::InputError(path + ": expected an object with a 'grid' array");
    std::vector<cardsort::ExperimentConfig> grid;
    for (const auto& entry : j["grid"]) {
        cardsort::ExperimentConfig cfg;
        cfg.method = cardsort::method_from_string(entry.at("method").get<std::string>());
        cfg.preprocess.include_stopwords = entry.at("stopwords_included").get<bool>();
        cfg.preprocess.normalization =
            normalization_from_string(entry.at("normalization").get<std::string>());
        cfg.preprocess.stopwords = stopwords;
        const auto& ngram = entry.at("ngram");
        if (ngram.is_number_integer()) {
            cfg.preprocess.ngram_order = ngram.get<int>();
        } else if (ngram.is_string()) {
            const std::string text = ngram.get<std::string>();
            int expected = 1;
            for (std::size_t i = 0; i < text.size(); i += 2, ++expected) {
                if (text[i] != static_cast<char>('0' + expected) ||
                    (i + 1 < text.size() && text[i + 1] != ','))
                    throw cardsort::InputError(path + ": ngram '" + text +
                                               "' must be \"1,2\" or \"1,2,3\"");
            }
            if (expected < 3)
                throw cardsort::InputError(path + ": combined ngram '" + text + "' is too short");
            cfg.preprocess.ngram_order = expected - 1;
            cfg.combine_lower_orders = true;
        } else {
            throw cardsort::InputError(path + ": ngram must be an integer or a string");
        }
        if (entry.contains("lsa_dims")) cfg.lsa_dims = entry["lsa_dims"].get<std::size_t>();
        cardsort::validate_config(cfg);
        grid.push_back(std::move(cfg));
    }
    if (grid.empty()) throw cardsort::InputError(path + ": grid is empty");
    return grid;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const std::size_t k = std::stoul(text);
            return {k, k};
        }
        return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw cardsort::InputError("bad dimension range '" + text + "' (expected e.g. 2..20)");
    }
}

cardsort::RunManifest make_manifest(const CommonPaths& paths,
                                    const std::set<std::string>& stopwords, bool with_stopwords,
                                    bool with_wordnet) {
    cardsort::RunManifest manifest;
    manifest.seed = paths.seed;
    if (!paths.corpus.empty()) {
        manifest.corpus_path = paths.corpus;
        manifest.corpus_hash = cardsort::file_hash(paths.corpus);
    }
    if (!paths.cardsort.empty()) {
        manifest.cardsort_path = paths.cardsort;
        manifest.cardsort_hash = cardsort::file_hash(paths.cardsort);
    }
    if (with_stopwords)
        manifest.stopwords_hash = cardsort::fnv1a64_hex(cardsort::stopwords_text(stopwords));
    if (with_wordnet) {
        manifest.wordnet_dir = paths.wordnet_dir;
        manifest.wordnet_hash = cardsort::file_hash(fs::path(paths.wordnet_dir) / "index.noun");
    }
    return manifest;
}

std::string config_summary(const cardsort::ExperimentConfig& cfg) {
    std::string ngram = std::to_string(cfg.preprocess.ngram_order);
    if (cfg.combine_lower_orders) ngram = "1.." + ngram;
    std::string s = to_string(cfg.method) +
                    " | stop words " + (cfg.preprocess.include_stopwords ? "kept" : "removed") +
                    " | " + to_string(cfg.preprocess.normalization) + " | n=" + ngram;
    if (cfg.lsa_dims) s += " | k=" + std::to_string(*cfg.lsa_dims);
    return s;
}

int cmd_analyze(const CommonPaths& paths) {
    const auto stopwords = load_stopwords(paths.stopwords);
    const cardsort::Corpus corpus = cardsort::load_corpus_csv(paths.corpus);
    const cardsort::CardSortStudy study =
        cardsort::parse_cardsort_csv(paths.cardsort, corpus.ids());

    std::vector<cardsort::ExperimentConfig> grid =
        paths.config.empty() ? cardsort::default_grid(stopwords)
                             : load_grid_json(paths.config, stopwords);

    bool needs_wordnet = false;
    for (const auto& cfg : grid)
        if (cfg.method == cardsort::Method::Wordnet ||
            cfg.preprocess.normalization == cardsort::Normalization::Lemma)
            needs_wordnet = true;

    std::optional<cardsort::WordNetDb> db;
    if (needs_wordnet) {
        if (paths.wordnet_dir.empty())
            throw cardsort::InputError(
                "the configured grid uses WordNet; pass --wordnet-dir <dictionary directory>");
        db = cardsort::WordNetDb::load(paths.wordnet_dir);
    }

    fs::create_directories(paths.out_dir);
    const cardsort::WordNetDb* db_ptr = db ? &*db : nullptr;
    std::vector<cardsort::CorrelationRecord> records =
        cardsort::sweep(corpus, study, grid, db_ptr);
    const cardsort::SimilarityMatrix participant_sim = cardsort::participant_similarity(study);

    const auto manifest = make_manifest(paths, stopwords, true, needs_wordnet);
    cardsort::write_json_file(
        cardsort::analysis_report_json(manifest, records, participant_sim),
        fs::path(paths.out_dir) / "report.json");

    cardsort::HeatmapOptions heatmap;
    heatmap.title = "participants";
    cardsort::render_heatmap_svg(participant_sim,
                                 fs::path(paths.out_dir) / "heatmap_participants.svg", heatmap);

    std::map<cardsort::Method, std::size_t> best;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto method = records[i].config.method;
        auto it = best.find(method);
        if (it == best.end())
            best.emplace(method, i);
        else if (records[i].pearson_r > records[it->second].pearson_r)
            it->second = i;
    }
    for (const auto& [method, index] : best) {
        cardsort::ExperimentConfig cfg = records[index].config;
        const auto sim = cardsort::method_similarity(corpus, cfg, db_ptr);
        cardsort::HeatmapOptions options;
        options.title = config_summary(records[index].config);
        cardsort::render_heatmap_svg(
            sim, fs::path(paths.out_dir) / ("heatmap_" + to_string(method) + ".svg"), options);
    }

    std::cout << "records: " << records.size() << "\n";
    for (const auto& [method, index] : best)
        std::cout << "best " << to_string(method) << ": r = " << records[index].pearson_r << "  ("
                  << config_summary(records[index].config) << ")\n";
    std::cout << "report: " << (fs::path(paths.out_dir) / "report.json").string() << "\n";
    return 0;
}

int cmd_simulate(const CommonPaths& paths) {
    const cardsort::CardSortStudy study = cardsort::parse_cardsort_csv(paths.cardsort);
    const double observed = cardsort::observed_silhouette(study, paths.k, paths.seed);
    const cardsort::SilhouetteDistribution dist =
        cardsort::simulate(study, paths.iterations, paths.k, paths.seed);

    fs::create_directories(paths.out_dir);
    const auto manifest = make_manifest(paths, {}, false, false);
    cardsort::write_json_file(
        cardsort::simulate_report_json(manifest, observed, dist, paths.k, paths.iterations),
        fs::path(paths.out_dir) / "simulation.json");

    std::cout << "observed silhouette (k=" << paths.k << "): " << observed << "\n";
    std::cout << "random re-sorts (" << paths.iterations << "x): min " << dist.min << ", mean "
              << dist.mean << ", max " << dist.max << "\n";
    return 0;
}

int cmd_lsadim(const CommonPaths& paths) {
    const auto stopwords = load_stopwords(paths.stopwords);
    const cardsort::Corpus corpus = cardsort::load_corpus_csv(paths.corpus);
    const cardsort::CardSortStudy study =
        cardsort::parse_cardsort_csv(paths.cardsort, corpus.ids());
    const auto [k_min, k_max] = parse_range(paths.lsa_dims);

    const cardsort::LsaDimSeries series =
        cardsort::lsa_dimension_sweep(corpus, study, k_min, k_max, stopwords);

    fs::create_directories(paths.out_dir);
    const auto manifest = make_manifest(paths, stopwords, true, false);
    cardsort::write_json_file(cardsort::lsadim_report_json(manifest, series),
                              fs::path(paths.out_dir) / "lsadim.json");

    std::vector<std::pair<std::size_t, double>> points;
    for (const auto& point : series.points) points.emplace_back(point.k, point.pearson_r);
    cardsort::render_line_svg(points, series.tfidf_r, "tf-idf",
                              fs::path(paths.out_dir) / "lsadim.svg");

    std::size_t best = 0;
    for (std::size_t i = 1; i < series.points.size(); ++i)
        if (series.points[i].pearson_r > series.points[best].pearson_r) best = i;
    std::cout << "best k: " << series.points[best].k << " (r = " << series.points[best].pearson_r
              << "), tf-idf r = " << series.tfidf_r << "\n";
    return 0;
}

// Table-style wide CSV (header: participant,group,<item>,<item>,...; 0/1
// cells) -> the long `participant,item,group` format the toolkit reads.
int cmd_convert_wide(const std::string& input, const std::string& output) {
    const auto rows = cardsort::read_csv(input);
    if (rows.empty() || rows[0].size() < 3 || rows[0][0] != "participant" || rows[0][1] != "group")
        throw cardsort::InputError(input + ": expected header 'participant,group,<item>,...'");
    const std::vector<std::string> items(rows[0].begin() + 2, rows[0].end());

    std::ofstream out(output, std::ios::binary);
    if (!out) throw cardsort::InputError("cannot write " + output);
    out << "participant,item,group\n";
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != items.size() + 2)
            throw cardsort::InputError(input + ":" + std::to_string(i + 1) +
                                       ": expected " + std::to_string(items.size() + 2) +
                                       " fields");
        for (std::size_t c = 0; c < items.size(); ++c) {
            const std::string& cell = rows[i][c + 2];
            if (cell == "0" || cell.empty()) continue;
            if (cell != "1")
                throw cardsort::InputError(input + ":" + std::to_string(i + 1) +
                                           ": membership cells must be 0 or 1, got '" + cell +
                                           "'");
            out << cardsort::csv_escape(rows[i][0]) << "," << cardsort::csv_escape(items[c]) << ","
                << cardsort::csv_escape(rows[i][1]) << "\n";
        }
    }
    std::cout << "wrote " << output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"card sorting vs. text similarity analysis"};
    app.set_version_flag("--version", cardsort::kToolVersion);
    app.require_subcommand(1);

    CommonPaths paths;
    std::string wide_input, wide_output;

    auto* analyze = app.add_subcommand(
        "analyze", "correlate NLP similarity matrices with the participant matrix");
    analyze->add_option("--corpus", paths.corpus, "corpus CSV (id,text)")->required();
    analyze->add_option("--cardsort", paths.cardsort, "card-sort CSV (participant,item,group)")
        ->required();
    analyze->add_option("--stopwords", paths.stopwords, "stop-word file (default: built-in list)");
    analyze->add_option("--wordnet-dir", paths.wordnet_dir, "WordNet 3.0 dictionary directory");
    analyze->add_option("--config", paths.config, "JSON grid file (default: the 40-cell grid)");
    analyze->add_option("--seed", paths.seed, "seed recorded in the manifest");
    analyze->add_option("--out", paths.out_dir, "output directory")->required();

    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo baseline: random re-sorts vs. the observed study");
    simulate->add_option("--cardsort", paths.cardsort, "card-sort CSV")->required();
    simulate->add_option("--iterations", paths.iterations, "number of random re-sorts");
    simulate->add_option("--k", paths.k, "k-means cluster count");
    simulate->add_option("--seed", paths.seed, "simulation seed");
    simulate->add_option("--out", paths.out_dir, "output directory")->required();

    auto* lsadim = app.add_subcommand("lsadim", "correlation per LSA dimension");
    lsadim->add_option("--corpus", paths.corpus, "corpus CSV (id,text)")->required();
    lsadim->add_option("--cardsort", paths.cardsort, "card-sort CSV")->required();
    lsadim->add_option("--stopwords", paths.stopwords, "stop-word file (default: built-in list)");
    lsadim->add_option("--lsa-dims", paths.lsa_dims, "dimension range, e.g. 2..20");
    lsadim->add_option("--out", paths.out_dir, "output directory")->required();

    auto* convert = app.add_subcommand("convert-wide", "convert a wide 0/1 table to long format");
    convert->add_option("--input", wide_input, "wide CSV (participant,group,<item>,...)")
        ->required();
    convert->add_option("--out", wide_output, "long CSV to write")->required();

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmd_analyze(paths);
        if (simulate->parsed()) return cmd_simulate(paths);
        if (lsadim->parsed()) return cmd_lsadim(paths);
        if (convert->parsed()) return cmd_convert_wide(wide_input, wide_output);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cardsort::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cardsort::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
