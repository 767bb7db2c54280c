#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"

namespace cardsort {

inline double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw LengthMismatch("cosine: vectors of length " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

// Pairwise cosines of the matrix rows; diagonal forced to 1 so zero rows
// cannot poison self-similarity.
inline SimilarityMatrix cosine_similarity_matrix(const Matrix& m, std::vector<std::string> order) {
    if (m.rows() != order.size())
        throw DimensionMismatch("cosine_similarity_matrix: row count does not match item order");
    const std::size_t n = m.rows();
    SimilarityMatrix sim{std::move(order), Matrix(n, n)};
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = m.row(i);
    for (std::size_t i = 0; i < n; ++i) {
        sim.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = cosine(rows[i], rows[j]);
            sim.values(i, j) = c;
            sim.values(j, i) = c;
        }
    }
    return sim;
}

// Strictly-above-diagonal entries in row-major order; length n(n-1)/2.
inline std::vector<double> upper_triangle(const SimilarityMatrix& sim) {
    const std::size_t n = sim.size();
    if (n < 2) throw TooSmall("upper_triangle: need at least a 2x2 matrix");
    std::vector<double> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(sim.values(i, j));
    return out;
}

inline bool is_constant(std::span<const double> x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] != x[0]) return false;
    return true;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("pearson: vectors of length " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    if (x.size() < 2) throw TooSmall("pearson: need at least 2 observations");
    if (is_constant(x) || is_constant(y)) throw ConstantInput("pearson: constant input vector");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

// Tie-averaged ranks (1-based); equal values share the mean of the positions
// they occupy.
inline std::vector<double> tie_averaged_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("spearman: vectors of length " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    if (is_constant(x) || is_constant(y)) throw ConstantInput("spearman: constant input vector");
    return pearson(tie_averaged_ranks(x), tie_averaged_ranks(y));
}

}  // namespace cardsort
