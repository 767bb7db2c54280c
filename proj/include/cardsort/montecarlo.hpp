#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cardsort/cardsort_data.hpp"
#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/rng.hpp"

namespace cardsort {

struct KMeansParams {
    std::size_t restarts = 10;
    std::size_t max_iters = 300;
    double tol = 1e-4;
};

struct KMeansResult {
    std::vector<std::size_t> assignments;
    Matrix centroids;
    double inertia = 0.0;
    double silhouette = 0.0;  // 0 when k = 1 (undefined for a single cluster)
};

struct SilhouetteDistribution {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

namespace mc_detail {

inline double squared_distance(const Matrix& points, std::size_t row, const Matrix& centroids,
                               std::size_t centroid) {
    double s = 0.0;
    for (std::size_t d = 0; d < points.cols(); ++d) {
        const double diff = points(row, d) - centroids(centroid, d);
        s += diff * diff;
    }
    return s;
}

inline double point_distance(const Matrix& points, std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t d = 0; d < points.cols(); ++d) {
        const double diff = points(a, d) - points(b, d);
        s += diff * diff;
    }
    return std::sqrt(s);
}

// k-means++ seeding: first centroid uniform, then d^2-weighted sampling.
inline Matrix seed_centroids(const Matrix& points, std::size_t k, SplitMix64& rng) {
    const std::size_t n = points.rows();
    Matrix centroids(k, points.cols());
    std::vector<std::size_t> chosen;
    chosen.push_back(rng.next_below(n));
    std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
    for (std::size_t c = 1; c < k; ++c) {
        const std::size_t last = chosen.back();
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < points.cols(); ++d) {
                const double diff = points(i, d) - points(last, d);
                d2 += diff * diff;
            }
            best_d2[i] = std::min(best_d2[i], d2);
            total += best_d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.next_double() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += best_d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == n) {
            // all remaining points coincide with a centroid: take the first
            // index not yet chosen
            for (std::size_t i = 0; i < n; ++i)
                if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) {
                    pick = i;
                    break;
                }
        }
        chosen.push_back(pick);
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < points.cols(); ++d) centroids(c, d) = points(chosen[c], d);
    return centroids;
}

}  // namespace mc_detail

// Mean over points of (b - a) / max(a, b): a = mean intra-cluster distance
// (excluding self), b = smallest mean distance to another cluster. Points in
// singleton clusters score 0, as does the degenerate a = b = 0 case.
inline double silhouette(const Matrix& points, const std::vector<std::size_t>& assignments) {
    if (points.rows() != assignments.size())
        throw DimensionMismatch("silhouette: one assignment per point required");
    const std::size_t n = points.rows();
    std::size_t k = 0;
    for (std::size_t a : assignments) k = std::max(k, a + 1);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : assignments) ++sizes[a];
    std::size_t non_empty = 0;
    for (std::size_t s : sizes)
        if (s > 0) ++non_empty;
    if (non_empty < 2) throw SingleCluster("silhouette: need at least 2 non-empty clusters");

    double total = 0.0;
    std::vector<double> sum_to_cluster(k);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sum_to_cluster.begin(), sum_to_cluster.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum_to_cluster[assignments[j]] += mc_detail::point_distance(points, i, j);
        }
        const std::size_t own = assignments[i];
        if (sizes[own] == 1) continue;  // singleton scores 0
        const double a = sum_to_cluster[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || sizes[c] == 0) continue;
            b = std::min(b, sum_to_cluster[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        total += denom == 0.0 ? 0.0 : (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

// Lloyd's algorithm with k-means++ seeding; best inertia over restarts.
// Empty clusters are repaired by moving in the point farthest from its
// centroid. Ties everywhere break toward the lowest index, so a fixed rng
// stream reproduces the run exactly.
inline KMeansResult kmeans(const Matrix& points, std::size_t k, SplitMix64& rng,
                           const KMeansParams& params = {}) {
    const std::size_t n = points.rows();
    if (k < 1 || k > n)
        throw InvalidK("kmeans: k = " + std::to_string(k) + " outside [1, " + std::to_string(n) +
                       "]");
    if (points.cols() == 0) throw DimensionMismatch("kmeans: points have no dimensions");

    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();

    for (std::size_t restart = 0; restart < params.restarts; ++restart) {
        Matrix centroids = mc_detail::seed_centroids(points, k, rng);
        std::vector<std::size_t> assignments(n, 0);
        double inertia = std::numeric_limits<double>::infinity();

        for (std::size_t iter = 0; iter < params.max_iters; ++iter) {
            for (std::size_t i = 0; i < n; ++i) {
                double best_d2 = std::numeric_limits<double>::infinity();
                std::size_t best_c = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    const double d2 = mc_detail::squared_distance(points, i, centroids, c);
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best_c = c;
                    }
                }
                assignments[i] = best_c;
            }

            std::vector<std::size_t> sizes(k, 0);
            for (std::size_t a : assignments) ++sizes[a];
            for (std::size_t c = 0; c < k; ++c) {
                if (sizes[c] > 0) continue;
                double worst = -1.0;
                std::size_t worst_i = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (sizes[assignments[i]] <= 1) continue;
                    const double d2 =
                        mc_detail::squared_distance(points, i, centroids, assignments[i]);
                    if (d2 > worst) {
                        worst = d2;
                        worst_i = i;
                    }
                }
                if (worst < 0.0) continue;  // nothing movable
                --sizes[assignments[worst_i]];
                assignments[worst_i] = c;
                ++sizes[c];
            }

            centroids = Matrix(k, points.cols());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < points.cols(); ++d)
                    centroids(assignments[i], d) += points(i, d);
            for (std::size_t c = 0; c < k; ++c) {
                if (sizes[c] == 0) continue;
                for (std::size_t d = 0; d < points.cols(); ++d)
                    centroids(c, d) /= static_cast<double>(sizes[c]);
            }

            double new_inertia = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                new_inertia += mc_detail::squared_distance(points, i, centroids, assignments[i]);
            if (inertia - new_inertia <= params.tol) {
                inertia = new_inertia;
                break;
            }
            inertia = new_inertia;
        }

        if (inertia < best.inertia) {
            best.inertia = inertia;
            best.assignments = assignments;
            best.centroids = centroids;
        }
    }

    std::size_t distinct = 0;
    {
        std::vector<bool> seen(k, false);
        for (std::size_t a : best.assignments)
            if (!seen[a]) {
                seen[a] = true;
                ++distinct;
            }
    }
    best.silhouette = distinct >= 2 ? silhouette(points, best.assignments) : 0.0;
    return best;
}

// Uniform random assignment into `group_count` labelled groups, resampled
// until every group is non-empty (the simulated participant "created" that
// many groups). group_count = item count has a single valid outcome and is
// constructed directly.
inline Partition random_partition(const std::vector<std::string>& item_ids,
                                  std::size_t group_count, SplitMix64& rng) {
    const std::size_t n = item_ids.size();
    if (group_count < 1 || group_count > n)
        throw InvalidGroupCount("random_partition: group count " + std::to_string(group_count) +
                                " outside [1, " + std::to_string(n) + "]");
    Partition partition;
    partition.participant_id = "sim";
    if (group_count == n) {
        for (std::size_t i = 0; i < n; ++i)
            partition.assignment[item_ids[i]] = "g" + std::to_string(i);
        return partition;
    }
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<std::size_t> labels(n);
        std::vector<bool> hit(group_count, false);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng.next_below(group_count);
            hit[labels[i]] = true;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
        for (std::size_t i = 0; i < n; ++i)
            partition.assignment[item_ids[i]] = "g" + std::to_string(labels[i]);
        return partition;
    }
    throw NumericalFailure("random_partition: rejection sampling failed to fill " +
                           std::to_string(group_count) + " groups");
}

// Items represented as their binary membership columns, clustered with
// k-means; the Silhouette of that clustering.
inline double observed_silhouette(const CardSortStudy& study, std::size_t k, SplitMix64& rng,
                                  const KMeansParams& params = {}) {
    const BinaryMembershipTable table = membership_table(study);
    const Matrix points = table.values.transposed();  // one row per item
    return kmeans(points, k, rng, params).silhouette;
}

inline double observed_silhouette(const CardSortStudy& study, std::size_t k, std::uint64_t seed) {
    SplitMix64 rng = substream(seed, UINT64_MAX);  // reserved substream index
    return observed_silhouette(study, k, rng);
}

// The randomness check: each iteration replaces every participant's
// partition with a uniform random one preserving that participant's group
// count, then clusters and scores exactly like the observed study.
inline SilhouetteDistribution simulate(const CardSortStudy& study, std::size_t iterations,
                                       std::size_t k, std::uint64_t seed,
                                       const KMeansParams& params = {}) {
    if (iterations < 1) throw InputError("simulate: need at least 1 iteration");
    std::vector<std::size_t> group_counts;
    group_counts.reserve(study.participants.size());
    for (const auto& partition : study.participants) group_counts.push_back(partition.group_count());

    SilhouetteDistribution dist;
    dist.values.reserve(iterations);
    for (std::size_t iteration = 0; iteration < iterations; ++iteration) {
        SplitMix64 rng = substream(seed, iteration);
        CardSortStudy resampled;
        resampled.item_ids = study.item_ids;
        for (std::size_t p = 0; p < study.participants.size(); ++p) {
            Partition partition = random_partition(study.item_ids, group_counts[p], rng);
            partition.participant_id = study.participants[p].participant_id;
            resampled.participants.push_back(std::move(partition));
        }
        dist.values.push_back(observed_silhouette(resampled, k, rng, params));
    }
    dist.min = *std::min_element(dist.values.begin(), dist.values.end());
    dist.max = *std::max_element(dist.values.begin(), dist.values.end());
    double sum = 0.0;
    for (double v : dist.values) sum += v;
    dist.mean = sum / static_cast<double>(dist.values.size());
    return dist;
}

}  // namespace cardsort
