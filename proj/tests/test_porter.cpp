#include "doctest.h"

#include <string>

#include "cardsort/porter.hpp"
#include "cardsort/rng.hpp"
#include "support/cli_runner.hpp"
#include "support/porter_vectors.hpp"

using cardsort::porter_stem;

TEST_CASE("porter: named examples") {
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("running") == "run");
    CHECK(porter_stem("sky") == "sky");
}

TEST_CASE("porter: published example pairs stem exactly") {
    for (const auto& [word, stem] : testsupport::porter_published_pairs()) {
        CAPTURE(word);
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("porter: canonical vocabulary file when present") {
    const auto pairs = testsupport::porter_canonical_pairs(testsupport::data_dir());
    if (pairs.empty()) {
        MESSAGE("data/porter/{voc.txt,output.txt} not present; published pairs only");
        return;
    }
    std::size_t mismatches = 0;
    for (const auto& [word, stem] : pairs)
        if (porter_stem(word) != stem) ++mismatches;
    CHECK(mismatches == 0);
    CHECK(pairs.size() > 20000);
}

TEST_CASE("porter: output is non-empty, lowercase, never longer than input") {
    cardsort::SplitMix64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::string word;
        const std::size_t len = 1 + rng.next_below(12);
        for (std::size_t i = 0; i < len; ++i)
            word.push_back(static_cast<char>('a' + rng.next_below(26)));
        const std::string stem = porter_stem(word);
        CAPTURE(word);
        CHECK(!stem.empty());
        CHECK(stem.size() <= word.size());
        for (char c : stem) CHECK((c >= 'a' && c <= 'z'));
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("porter: words of length <= 2 are untouched") {
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("is") == "is");
    CHECK(porter_stem("as") == "as");
}
