#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cardsort/errors.hpp"

namespace cardsort {

// Minimal dense row-major matrix. Everything in this toolkit is desk scale
// (tens of items, a few hundred terms), so no sparsity or lazy evaluation.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> row(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    std::vector<double> col(std::size_t c) const {
        std::vector<double> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    // this (r x c) * other (c x k)
    Matrix multiply(const Matrix& other) const {
        if (cols_ != other.rows()) throw DimensionMismatch("matrix multiply: inner dimensions differ");
        Matrix out(rows_, other.cols());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                const double a = (*this)(i, j);
                if (a == 0.0) continue;
                for (std::size_t k = 0; k < other.cols(); ++k) out(i, k) += a * other(j, k);
            }
        }
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Symmetric item-by-item similarity matrix in a fixed item order. The order
// vector defines row/column meaning for every consumer (reports, heatmaps,
// triangular extraction).
struct SimilarityMatrix {
    std::vector<std::string> order;
    Matrix values;

    std::size_t size() const { return order.size(); }
};

// Symmetry within 1e-12 and unit diagonal; throws on violation.
inline void validate_similarity(const SimilarityMatrix& sim) {
    const std::size_t n = sim.size();
    if (sim.values.rows() != n || sim.values.cols() != n)
        throw DimensionMismatch("similarity matrix dimensions do not match item order");
    for (std::size_t i = 0; i < n; ++i) {
        if (sim.values(i, i) != 1.0) throw NumericalFailure("similarity diagonal must be 1");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(sim.values(i, j) - sim.values(j, i)) > 1e-12)
                throw NumericalFailure("similarity matrix not symmetric");
    }
}

}  // namespace cardsort
