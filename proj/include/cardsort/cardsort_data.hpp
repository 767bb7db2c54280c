#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cardsort/csv.hpp"
#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/stats.hpp"

namespace cardsort {

// One participant's grouping: a total function item id -> group label.
// Labels are opaque per-participant identifiers.
struct Partition {
    std::string participant_id;
    std::unordered_map<std::string, std::string> assignment;

    std::size_t group_count() const {
        std::unordered_set<std::string> labels;
        for (const auto& [item, label] : assignment) labels.insert(label);
        return labels.size();
    }
};

struct CardSortStudy {
    std::vector<std::string> item_ids;  // matches the Corpus order
    std::vector<Partition> participants;
};

// One row per (participant, group), one column per item, entries 0/1. Row
// order: participant order, then group labels sorted within a participant.
struct BinaryMembershipTable {
    std::vector<std::pair<std::string, std::string>> row_keys;  // (participant, group)
    Matrix values;
};

// Card-sort CSV: header `participant,item,group`, one row per (participant,
// item). Participants appear in first-occurrence order.
inline CardSortStudy parse_cardsort_csv(const std::filesystem::path& path,
                                        const std::vector<std::string>& item_ids) {
    auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "participant" ||
        rows[0][1] != "item" || rows[0][2] != "group")
        throw InputError(path.string() + ": expected header 'participant,item,group'");

    std::unordered_set<std::string> known(item_ids.begin(), item_ids.end());
    CardSortStudy study;
    study.item_ids = item_ids;
    std::unordered_map<std::string, std::size_t> participant_index;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3)
            throw InputError(path.string() + ":" + std::to_string(i + 1) +
                             ": expected 3 fields, got " + std::to_string(rows[i].size()));
        const std::string& participant = rows[i][0];
        const std::string& item = rows[i][1];
        const std::string& group = rows[i][2];
        if (participant.empty() || item.empty() || group.empty())
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": empty field");
        if (!known.count(item))
            throw UnknownItem(path.string() + ":" + std::to_string(i + 1) + ": unknown item '" +
                              item + "'");
        auto [it, inserted] = participant_index.emplace(participant, study.participants.size());
        if (inserted) study.participants.push_back(Partition{participant, {}});
        Partition& partition = study.participants[it->second];
        if (!partition.assignment.emplace(item, group).second)
            throw DuplicateAssignment(path.string() + ":" + std::to_string(i + 1) +
                                      ": participant '" + participant +
                                      "' assigns item '" + item + "' twice");
    }
    if (study.participants.empty()) throw InputError(path.string() + ": no assignments");
    for (const auto& partition : study.participants)
        for (const auto& id : item_ids)
            if (!partition.assignment.count(id))
                throw MissingAssignment(path.string() + ": participant '" +
                                        partition.participant_id + "' has no group for item '" +
                                        id + "'");
    return study;
}

// Same CSV without a reference corpus: the item set is inferred from the
// file (first-occurrence order). Used by `simulate`, which needs no corpus.
inline CardSortStudy parse_cardsort_csv(const std::filesystem::path& path) {
    auto rows = read_csv(path);
    if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "participant" ||
        rows[0][1] != "item" || rows[0][2] != "group")
        throw InputError(path.string() + ": expected header 'participant,item,group'");
    std::vector<std::string> item_ids;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3) continue;  // full validation happens in the typed pass
        if (seen.insert(rows[i][1]).second) item_ids.push_back(rows[i][1]);
    }
    return parse_cardsort_csv(path, item_ids);
}

inline BinaryMembershipTable membership_table(const CardSortStudy& study) {
    BinaryMembershipTable table;
    std::vector<std::map<std::string, std::size_t>> group_rows(study.participants.size());
    for (std::size_t p = 0; p < study.participants.size(); ++p) {
        for (const auto& [item, label] : study.participants[p].assignment)
            group_rows[p].emplace(label, 0);
        for (auto& [label, row] : group_rows[p]) {
            row = table.row_keys.size();
            table.row_keys.emplace_back(study.participants[p].participant_id, label);
        }
    }
    table.values = Matrix(table.row_keys.size(), study.item_ids.size());
    for (std::size_t p = 0; p < study.participants.size(); ++p) {
        const Partition& partition = study.participants[p];
        for (std::size_t col = 0; col < study.item_ids.size(); ++col) {
            auto it = partition.assignment.find(study.item_ids[col]);
            if (it == partition.assignment.end())
                throw MissingAssignment("participant '" + partition.participant_id +
                                        "' has no group for item '" + study.item_ids[col] + "'");
            table.values(group_rows[p].at(it->second), col) = 1.0;
        }
    }
    return table;
}

// Spearman rank correlation (tie-averaged ranks) between membership columns;
// the ground-truth similarity the NLP methods are correlated against.
inline SimilarityMatrix participant_similarity(const CardSortStudy& study) {
    const BinaryMembershipTable table = membership_table(study);
    const std::size_t n = study.item_ids.size();
    if (table.values.rows() < 2)
        throw DegenerateColumn("participant similarity needs at least 2 membership rows");

    std::vector<std::vector<double>> columns(n);
    for (std::size_t c = 0; c < n; ++c) {
        columns[c] = table.values.col(c);
        if (is_constant(columns[c]))
            throw DegenerateColumn("item '" + study.item_ids[c] +
                                   "': membership column is constant, correlation undefined");
    }

    SimilarityMatrix sim{study.item_ids, Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        sim.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = spearman(columns[i], columns[j]);
            sim.values(i, j) = r;
            sim.values(j, i) = r;
        }
    }
    return sim;
}

}  // namespace cardsort
