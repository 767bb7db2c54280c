// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cardsort/cardsort_data.hpp"
#include "cardsort/default_stopwords.hpp"
#include "cardsort/experiment.hpp"
#include "cardsort/montecarlo.hpp"
#include "cardsort/porter.hpp"
#include "cardsort/rng.hpp"
#include "cardsort/stats.hpp"
#include "cardsort/svd.hpp"
#include "cardsort/text_pipeline.hpp"
#include "cardsort/vector_models.hpp"
#include "cardsort/wordnet.hpp"
#include "support/cli_runner.hpp"
#include "support/porter_vectors.hpp"
#include "support/synthetic.hpp"
#include "support/wordnet_oracle.hpp"

using namespace cardsort;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- 1. TF-IDF oracle --------------------------------------------------

void criterion_tfidf_oracle() {
    const std::vector<GramSequence> grams{tokenize("a b a"), tokenize("b c")};
    const DocTermMatrix tfidf = tfidf_matrix(bow_matrix(grams, build_vocabulary(grams)));
    const double ln2 = std::log(2.0);
    const double expected[2][3] = {{(2.0 / 3.0) * ln2, 0.0, 0.0}, {0.0, 0.0, 0.5 * ln2}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t t = 0; t < 3; ++t)
            check(std::fabs(tfidf.values(i, t) - expected[i][t]) < 1e-12,
                  "weight(" + std::to_string(i) + "," + std::to_string(t) + ") = " +
                      fmt(tfidf.values(i, t)) + ", expected " + fmt(expected[i][t]));
    const double cos = cosine(tfidf.values.row(0), tfidf.values.row(1));
    check(cos == 0.0, "cosine(D1,D2) = " + fmt(cos) + ", expected exactly 0");
}

// --- 2. Porter conformance ----------------------------------------------

std::string criterion_porter() {
    auto pairs = testsupport::porter_canonical_pairs(testsupport::data_dir());
    std::string source = "canonical vocabulary (" + std::to_string(pairs.size()) + " words)";
    if (pairs.empty()) {
        pairs = testsupport::porter_published_pairs();
        source = "published example pairs (" + std::to_string(pairs.size()) +
                 " words; drop voc.txt/output.txt into data/porter/ for the full vocabulary)";
    }
    std::size_t mismatches = 0;
    std::string first;
    for (const auto& [word, stem] : pairs) {
        if (porter_stem(word) != stem) {
            if (first.empty()) first = word + " -> " + porter_stem(word) + " != " + stem;
            ++mismatches;
        }
    }
    check(mismatches == 0,
          std::to_string(mismatches) + " mismatches over " + source + "; first: " + first);
    return "checked against " + source;
}

// --- 3. SVD properties ---------------------------------------------------

void criterion_svd() {
    SplitMix64 rng(0xACCE55);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix x(20, 40);
        for (auto& v : x.data()) v = rng.next_double() * 2.0 - 1.0;
        const SvdFactors f = svd(x);

        Matrix scaled = f.u;
        for (std::size_t i = 0; i < scaled.rows(); ++i)
            for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= f.s[j];
        const Matrix r = scaled.multiply(f.v.transposed());
        double err = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) {
                const double d = r(i, j) - x(i, j);
                err += d * d;
            }
        const double rel = std::sqrt(err) / x.frobenius_norm();
        check(rel < 1e-6, "trial " + std::to_string(trial) + ": reconstruction error " + fmt(rel));

        for (std::size_t i = 1; i < f.s.size(); ++i)
            check(f.s[i] <= f.s[i - 1], "singular values not sorted");

        for (const Matrix* m : {&f.u, &f.v}) {
            for (std::size_t a = 0; a < m->cols(); ++a)
                for (std::size_t b = a; b < m->cols(); ++b) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < m->rows(); ++i) dot += (*m)(i, a) * (*m)(i, b);
                    check(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-8,
                          "orthonormality violated by " + fmt(dot));
                }
        }
    }
}

// --- 4. LSA angle preservation end-to-end via cmd_lsadim ------------------

void criterion_lsa_angles() {
    const auto data = testsupport::data_dir();
    const auto out = testsupport::fresh_dir("cardsort_accept_lsadim");
    const int rc = testsupport::run_cli(
        "lsadim --corpus '" + (data / "demo" / "corpus.csv").string() + "' --cardsort '" +
        (data / "demo" / "cardsort.csv").string() + "' --lsa-dims 2..6 --out '" + out.string() +
        "'");
    check(rc == 0, "cmd_lsadim exited " + std::to_string(rc));
    const json series = json::parse(testsupport::read_bytes(out / "lsadim.json"));
    const double full_rank_r = series["points"].back()["pearson_r"].get<double>();
    const double tfidf_r = series["tfidf_pearson_r"].get<double>();
    check(std::fabs(full_rank_r - tfidf_r) < 1e-9,
          "lsadim full-rank r " + fmt(full_rank_r) + " vs tfidf r " + fmt(tfidf_r));

    // same statement at matrix level
    const Corpus corpus = load_corpus_csv(data / "demo" / "corpus.csv");
    PreprocessConfig pre{false, Normalization::None, 1, default_english_stopwords()};
    std::vector<GramSequence> grams;
    for (const auto& item : corpus.items) grams.push_back(preprocess(item, pre));
    const DocTermMatrix tfidf = tfidf_matrix(bow_matrix(grams, build_vocabulary(grams)));
    const DocTermMatrix full = lsa_reduce(tfidf, std::min(tfidf.rows(), tfidf.dims()));
    const auto a = cosine_similarity_matrix(tfidf.values, corpus.ids());
    const auto b = cosine_similarity_matrix(full.values, corpus.ids());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            check(std::fabs(a.values(i, j) - b.values(i, j)) < 1e-9,
                  "cosine matrices diverge at (" + std::to_string(i) + "," + std::to_string(j) +
                      ")");
}

// --- 5. WordNet goldens ----------------------------------------------------

void criterion_wordnet_goldens() {
    const WordNetDb db = WordNetDb::load(testsupport::data_dir() / "wordnet-mini");

    const SynsetId dog = db.synsets_of("dog", Pos::Noun).at(0);
    const SynsetId cat = db.synsets_of("cat", Pos::Noun).at(0);
    const auto sim = db.path_similarity(dog, cat);
    check(sim.has_value(), "dog/cat similarity undefined");
    const auto d = testsupport::oracle_synset_distance(db, dog, cat);
    check(d.has_value() && *d == 4, "BFS oracle distance " + std::to_string(d.value_or(-1)));
    check(std::fabs(*sim - 0.2) < 1e-15, "path_similarity(dog,cat) = " + fmt(*sim));
    check(std::fabs(*sim - 1.0 / (*d + 1)) < 1e-15, "similarity does not match oracle distance");

    const auto geese = db.morphy("geese", Pos::Noun);
    check(geese == std::vector<std::string>{"goose"}, "morphy(geese) wrong");

    const double glao = db.glao_sentence_similarity({"dog", "cat"}, {"dog"});
    check(std::fabs(glao - 0.5) < 1e-15, "GLAO([dog,cat],[dog]) = " + fmt(glao));
}

// --- 6. GLAO symmetry and range --------------------------------------------

void criterion_glao_symmetry() {
    const WordNetDb db = WordNetDb::load(testsupport::data_dir() / "wordnet-mini");
    const std::vector<std::string> pool{
        "dog",   "cat",  "goose", "horse", "mouse",  "bird",   "computer", "money",
        "email", "run",  "walk",  "happy", "person", "secret", "password", "quickly",
        "zzaa",  "zzbb", "zzcc",  "zzdd",  "zzee",   "zzff"};
    SplitMix64 rng(0x61A0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::string> s1, s2;
        const std::size_t l1 = 1 + rng.next_below(7), l2 = 1 + rng.next_below(7);
        for (std::size_t i = 0; i < l1; ++i) s1.push_back(pool[rng.next_below(pool.size())]);
        for (std::size_t i = 0; i < l2; ++i) s2.push_back(pool[rng.next_below(pool.size())]);
        const double ab = db.glao_sentence_similarity(s1, s2);
        const double ba = db.glao_sentence_similarity(s2, s1);
        check(std::fabs(ab - ba) < 1e-12, "asymmetric pair at trial " + std::to_string(trial));
        check(ab >= 0.0 && ab <= 1.0, "similarity outside [0,1]");
        const double self1 = db.glao_sentence_similarity(s1, s1);
        check(self1 == 1.0, "self-similarity " + fmt(self1) + " != 1");
    }
}

// --- 7. Spearman/Pearson cross-check ---------------------------------------

// test-side tie-averaged ranking, written independently of the library's
// sort-based implementation: rank = (#smaller) + (#equal + 1) / 2
std::vector<double> oracle_ranks(const std::vector<double>& v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t smaller = 0, equal = 0;
        for (double other : v) {
            if (other < v[i]) ++smaller;
            if (other == v[i]) ++equal;
        }
        ranks[i] = static_cast<double>(smaller) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return ranks;
}

void criterion_spearman_crosscheck() {
    SplitMix64 rng(0x5EA6);
    for (int study_index = 0; study_index < 100; ++study_index) {
        const std::size_t participants = 5 + rng.next_below(6);
        const std::size_t items = 10 + rng.next_below(11);
        const auto study = testsupport::random_study(rng, participants, items);
        const auto sim = participant_similarity(study);
        const auto table = membership_table(study);
        for (std::size_t i = 0; i < items; ++i) {
            for (std::size_t j = i + 1; j < items; ++j) {
                const double via_ranks = pearson(oracle_ranks(table.values.col(i)),
                                                 oracle_ranks(table.values.col(j)));
                check(std::fabs(sim.values(i, j) - via_ranks) < 1e-12,
                      "study " + std::to_string(study_index) + " items " + std::to_string(i) +
                          "," + std::to_string(j) + ": " + fmt(sim.values(i, j)) + " vs " +
                          fmt(via_ranks));
            }
        }
    }
}

// --- 8. Monte Carlo qualitative reproduction -------------------------------

void criterion_montecarlo_separation() {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SplitMix64 rng(seed);
        const auto study = testsupport::planted_study(rng, 33, 50, 7, 0.10);
        const double observed = observed_silhouette(study, 7, seed);
        const auto dist = simulate(study, 100, 7, seed);
        check(observed > dist.max, "seed " + std::to_string(seed) + ": observed " +
                                       fmt(observed) + " <= simulated max " + fmt(dist.max));
    }
}

// --- 9. Keyword sorters: frequency beats semantics --------------------------

void criterion_keyword_sorters() {
    const WordNetDb db = WordNetDb::load(testsupport::data_dir() / "wordnet-mini");
    const auto& stopwords = default_english_stopwords();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SplitMix64 rng(seed * 7919);
        const auto world = testsupport::keyword_world(rng);

        ExperimentConfig bow;
        bow.method = Method::Bow;
        bow.preprocess = {false, Normalization::None, 1, stopwords};
        ExperimentConfig wordnet;
        wordnet.method = Method::Wordnet;
        wordnet.preprocess = {false, Normalization::None, 1, stopwords};

        const auto records = sweep(world.corpus, world.study, {bow, wordnet}, &db);
        check(records[0].pearson_r > records[1].pearson_r,
              "seed " + std::to_string(seed) + ": bow r " + fmt(records[0].pearson_r) +
                  " <= wordnet r " + fmt(records[1].pearson_r));
    }
}

// --- 10. Determinism of the CLI outputs ------------------------------------

void criterion_determinism() {
    const auto data = testsupport::data_dir();
    const auto out1 = testsupport::fresh_dir("cardsort_accept_det1");
    const auto out2 = testsupport::fresh_dir("cardsort_accept_det2");
    const std::string analyze_args =
        "analyze --corpus '" + (data / "demo" / "corpus.csv").string() + "' --cardsort '" +
        (data / "demo" / "cardsort.csv").string() + "' --wordnet-dir '" +
        (data / "wordnet-mini").string() + "' --out ";
    check(testsupport::run_cli(analyze_args + "'" + out1.string() + "'") == 0, "analyze #1");
    check(testsupport::run_cli(analyze_args + "'" + out2.string() + "'") == 0, "analyze #2");
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        const auto name = entry.path().filename();
        check(testsupport::read_bytes(out1 / name) == testsupport::read_bytes(out2 / name),
              name.string() + " differs between reruns");
        ++compared;
    }
    check(compared == 6, "expected 6 outputs, saw " + std::to_string(compared));

    const auto sim1 = testsupport::fresh_dir("cardsort_accept_sim1");
    const auto sim2 = testsupport::fresh_dir("cardsort_accept_sim2");
    const std::string sim_args = "simulate --cardsort '" +
                                 (data / "demo" / "cardsort.csv").string() +
                                 "' --iterations 25 --k 3 --seed 99 --out ";
    check(testsupport::run_cli(sim_args + "'" + sim1.string() + "'") == 0, "simulate #1");
    check(testsupport::run_cli(sim_args + "'" + sim2.string() + "'") == 0, "simulate #2");
    check(testsupport::read_bytes(sim1 / "simulation.json") ==
              testsupport::read_bytes(sim2 / "simulation.json"),
          "simulation.json differs between reruns");
}

// --- 11. Sweep shape ---------------------------------------------------------

void criterion_sweep_shape() {
    const auto data = testsupport::data_dir();
    const auto out = testsupport::fresh_dir("cardsort_accept_shape");
    const int rc = testsupport::run_cli(
        "analyze --corpus '" + (data / "demo" / "corpus.csv").string() + "' --cardsort '" +
        (data / "demo" / "cardsort.csv").string() + "' --wordnet-dir '" +
        (data / "wordnet-mini").string() + "' --out '" + out.string() + "'");
    check(rc == 0, "analyze exited " + std::to_string(rc));
    const json report = json::parse(testsupport::read_bytes(out / "report.json"));
    check(report["records"].size() == 40,
          "expected 40 records, got " + std::to_string(report["records"].size()));

    std::set<std::string> cells;
    for (const auto& record : report["records"]) {
        std::ostringstream key;
        key << record["method"].get<std::string>() << "|" << record["stopwords_included"] << "|"
            << record["normalization"].get<std::string>() << "|" << record["ngram"];
        cells.insert(key.str());
    }
    check(cells.size() == 40, "records do not cover 40 distinct configuration cells");
    std::size_t frequency = 0, wordnet = 0;
    for (const auto& record : report["records"])
        (record["method"] == "wordnet" ? wordnet : frequency) += 1;
    check(frequency == 36 && wordnet == 4,
          "cell split " + std::to_string(frequency) + "+" + std::to_string(wordnet));

    // 19-point dimension series on a corpus with enough rank
    SplitMix64 rng(404);
    const auto world = testsupport::keyword_world(rng);
    const auto tmp = testsupport::fresh_dir("cardsort_accept_lsadim19");
    testsupport::write_corpus_csv(world.corpus, (tmp / "corpus.csv").string());
    testsupport::write_cardsort_csv(world.study, (tmp / "cardsort.csv").string());
    const int rc2 = testsupport::run_cli(
        "lsadim --corpus '" + (tmp / "corpus.csv").string() + "' --cardsort '" +
        (tmp / "cardsort.csv").string() + "' --lsa-dims 2..20 --out '" + tmp.string() + "'");
    check(rc2 == 0, "lsadim exited " + std::to_string(rc2));
    const json series = json::parse(testsupport::read_bytes(tmp / "lsadim.json"));
    check(series["points"].size() == 19,
          "expected 19 points, got " + std::to_string(series["points"].size()));
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<std::string()> run;
};

std::function<std::string()> plain(void (*fn)()) {
    return [fn]() {
        fn();
        return std::string();
    };
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "tfidf-oracle: hand-computed weights within 1e-12, cosine exactly 0", 1.0,
         plain(criterion_tfidf_oracle)},
        {2, "porter-conformance: 100% agreement with the published vocabulary", 5.0,
         criterion_porter},
        {3, "svd-properties: 50 random 20x40 matrices", 10.0, plain(criterion_svd)},
        {4, "lsa-angle-preservation: full rank equals tf-idf through cmd_lsadim", 5.0,
         plain(criterion_lsa_angles)},
        {5, "wordnet-goldens: dog/cat 0.2 via BFS oracle, geese->goose, GLAO 0.5", 30.0,
         plain(criterion_wordnet_goldens)},
        {6, "glao-symmetry: 1000 random pairs symmetric in [0,1], self-sim 1", 60.0,
         plain(criterion_glao_symmetry)},
        {7, "spearman-pearson-crosscheck: 100 random studies within 1e-12", 60.0,
         plain(criterion_spearman_crosscheck)},
        {8, "montecarlo-separation: planted clusters beat 100 random sorts, 10 seeds", 120.0,
         plain(criterion_montecarlo_separation)},
        {9, "keyword-sorters: bow beats wordnet on keyword-grouped data, 10 seeds", 60.0,
         plain(criterion_keyword_sorters)},
        {10, "determinism: byte-identical reports and figures on rerun", 30.0,
         plain(criterion_determinism)},
        {11, "sweep-shape: 40 grid records and a 19-point dimension series", 30.0,
         plain(criterion_sweep_shape)},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        std::string detail;
        try {
            detail = criterion.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && elapsed > criterion.budget_seconds)
            error = "runtime " + fmt(elapsed) + "s exceeds budget " +
                    fmt(criterion.budget_seconds) + "s";
        if (error.empty()) {
            std::printf("[PASS] %2d. %s (%.2fs)\n", criterion.id, criterion.name, elapsed);
            if (!detail.empty()) std::printf("       %s\n", detail.c_str());
        } else {
            std::printf("[FAIL] %2d. %s (%.2fs)\n       %s\n", criterion.id, criterion.name,
                        elapsed, error.c_str());
            ++failures;
        }
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
