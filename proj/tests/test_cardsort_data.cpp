#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cardsort/cardsort_data.hpp"
#include "cardsort/rng.hpp"
#include "cardsort/stats.hpp"
#include "support/cli_runner.hpp"
#include "support/synthetic.hpp"

using namespace cardsort;
namespace fs = std::filesystem;

namespace {

fs::path write_csv(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

}  // namespace

TEST_CASE("parse: complete study") {
    const auto path = write_csv("cardsort_ok.csv",
                                "participant,item,group\n"
                                "p1,i1,a\np1,i2,b\n"
                                "p2,i1,x\np2,i2,x\n");
    const auto study = parse_cardsort_csv(path, {"i1", "i2"});
    REQUIRE(study.participants.size() == 2);
    CHECK(study.participants[0].participant_id == "p1");
    CHECK(study.participants[0].group_count() == 2);
    CHECK(study.participants[1].group_count() == 1);
}

TEST_CASE("parse: named error cases") {
    const auto missing = write_csv("cardsort_missing.csv",
                                   "participant,item,group\np1,i1,a\n");
    CHECK_THROWS_AS(parse_cardsort_csv(missing, {"i1", "i2"}), MissingAssignment);

    const auto duplicate = write_csv("cardsort_dup.csv",
                                     "participant,item,group\np1,i1,a\np1,i1,b\np1,i2,a\n");
    CHECK_THROWS_AS(parse_cardsort_csv(duplicate, {"i1", "i2"}), DuplicateAssignment);

    const auto unknown = write_csv("cardsort_unknown.csv",
                                   "participant,item,group\np1,i9,a\n");
    CHECK_THROWS_AS(parse_cardsort_csv(unknown, {"i1"}), UnknownItem);

    const auto bad_header = write_csv("cardsort_header.csv", "a,b,c\np1,i1,a\n");
    CHECK_THROWS_AS(parse_cardsort_csv(bad_header, {"i1"}), InputError);
}

TEST_CASE("membership table mirrors the published snapshot pattern") {
    // participant 1 of the snapshot: c1,c3 -> group 3; c2 -> group 2;
    // c4..c8 -> group 4 (rows ordered by sorted group label)
    std::string csv = "participant,item,group\n";
    csv += "p1,c1,g3\np1,c2,g2\np1,c3,g3\n";
    for (int i = 4; i <= 8; ++i) csv += "p1,c" + std::to_string(i) + ",g4\n";
    const auto path = write_csv("cardsort_snapshot.csv", csv);
    const std::vector<std::string> items{"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"};
    const auto study = parse_cardsort_csv(path, items);
    const auto table = membership_table(study);

    REQUIRE(table.row_keys.size() == 3);
    CHECK(table.row_keys[0] == std::pair<std::string, std::string>{"p1", "g2"});
    CHECK(table.row_keys[1] == std::pair<std::string, std::string>{"p1", "g3"});
    CHECK(table.row_keys[2] == std::pair<std::string, std::string>{"p1", "g4"});

    const std::vector<std::vector<double>> expected{
        {0, 1, 0, 0, 0, 0, 0, 0},
        {1, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 1, 1, 1, 1},
    };
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < items.size(); ++c)
            CHECK(table.values(r, c) == expected[r][c]);

    // identical columns c1/c3 correlate at 1
    const auto sim = participant_similarity(study);
    CHECK(sim.values(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("membership: one group vs one item per group") {
    CardSortStudy all_in_one;
    all_in_one.item_ids = {"a", "b", "c"};
    all_in_one.participants.push_back({"p", {{"a", "g"}, {"b", "g"}, {"c", "g"}}});
    const auto ones = membership_table(all_in_one);
    REQUIRE(ones.row_keys.size() == 1);
    for (std::size_t c = 0; c < 3; ++c) CHECK(ones.values(0, c) == 1.0);

    CardSortStudy singletons;
    singletons.item_ids = {"a", "b", "c"};
    singletons.participants.push_back({"p", {{"a", "g1"}, {"b", "g2"}, {"c", "g3"}}});
    const auto identity = membership_table(singletons);
    REQUIRE(identity.row_keys.size() == 3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(identity.values(r, c) == (r == c ? 1.0 : 0.0));
}

TEST_CASE("membership column sums equal participant count") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const auto study = testsupport::random_study(rng, 2 + rng.next_below(5),
                                                     3 + rng.next_below(8));
        const auto table = membership_table(study);
        for (std::size_t c = 0; c < study.item_ids.size(); ++c) {
            double sum = 0.0;
            for (std::size_t r = 0; r < table.values.rows(); ++r) sum += table.values(r, c);
            CHECK(sum == static_cast<double>(study.participants.size()));
        }
    }
}

TEST_CASE("participant similarity: co-grouped items, perfect disagreement") {
    CardSortStudy study;
    study.item_ids = {"a", "b", "c"};
    study.participants.push_back({"p1", {{"a", "x"}, {"b", "x"}, {"c", "y"}}});
    study.participants.push_back({"p2", {{"a", "m"}, {"b", "m"}, {"c", "n"}}});
    const auto sim = participant_similarity(study);
    CHECK(sim.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));  // always co-grouped
    CHECK(sim.values(0, 0) == 1.0);
    validate_similarity(sim);

    CardSortStudy opposed;
    opposed.item_ids = {"a", "b"};
    opposed.participants.push_back({"p1", {{"a", "g1"}, {"b", "g2"}}});
    const auto anti = participant_similarity(opposed);
    CHECK(anti.values(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("participant similarity: degenerate inputs are named errors") {
    CardSortStudy one_row;
    one_row.item_ids = {"a", "b"};
    one_row.participants.push_back({"p", {{"a", "g"}, {"b", "g"}}});
    CHECK_THROWS_AS(participant_similarity(one_row), DegenerateColumn);

    CardSortStudy constant;
    constant.item_ids = {"a", "b"};
    constant.participants.push_back({"p1", {{"a", "g"}, {"b", "g"}}});
    constant.participants.push_back({"p2", {{"a", "h"}, {"b", "h"}}});
    CHECK_THROWS_AS(participant_similarity(constant), DegenerateColumn);
}

TEST_CASE("spearman route equals pearson over tie-averaged ranks") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        const auto study =
            testsupport::random_study(rng, 3 + rng.next_below(4), 5 + rng.next_below(6));
        const auto sim = participant_similarity(study);
        const auto table = membership_table(study);
        for (std::size_t i = 0; i < study.item_ids.size(); ++i) {
            for (std::size_t j = i + 1; j < study.item_ids.size(); ++j) {
                const auto ri = tie_averaged_ranks(table.values.col(i));
                const auto rj = tie_averaged_ranks(table.values.col(j));
                CHECK(sim.values(i, j) == doctest::Approx(pearson(ri, rj)).epsilon(1e-12));
            }
        }
    }
}
