#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"

namespace cardsort {

// Thin SVD X = U diag(S) V^T truncated to numerical rank r: U is rows x r,
// S has length r (non-increasing, positive), V is cols x r.
struct SvdFactors {
    Matrix u;
    std::vector<double> s;
    Matrix v;

    std::size_t rank() const { return s.size(); }
};

namespace svd_detail {

constexpr double kJacobiTolerance = 1e-10;
constexpr int kMaxSweeps = 100;
constexpr double kRankCutoff = 1e-12;

inline double offdiagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

// Cyclic-by-row Jacobi eigendecomposition of a symmetric matrix. Deterministic
// rotation order; converges quadratically for the Gram matrices seen here.
inline void jacobi_eigen(Matrix a, std::vector<double>& eigenvalues, Matrix& eigenvectors) {
    const std::size_t n = a.rows();
    eigenvectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) eigenvectors(i, i) = 1.0;

    const double scale = a.frobenius_norm();
    if (scale == 0.0) {
        eigenvalues.assign(n, 0.0);
        return;
    }

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiagonal_norm(a) <= kJacobiTolerance * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = eigenvectors(i, p);
                    const double viq = eigenvectors(i, q);
                    eigenvectors(i, p) = c * vip - s * viq;
                    eigenvectors(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    if (!converged && offdiagonal_norm(a) > kJacobiTolerance * scale)
        throw NumericalFailure("svd: Jacobi iteration did not converge within 100 sweeps");

    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i);
}

}  // namespace svd_detail

// SVD via eigendecomposition of the smaller Gram matrix (documents x
// documents at this toolkit's scale). Sign convention: each singular pair is
// flipped so the largest-magnitude entry of the V column is positive, which
// makes factors reproducible across runs.
inline SvdFactors svd(const Matrix& x) {
    using namespace svd_detail;
    const std::size_t n = x.rows();
    const std::size_t m = x.cols();
    if (n == 0 || m == 0) throw InputError("svd: empty matrix");

    const bool docs_side = n <= m;
    const Matrix xt = x.transposed();
    const Matrix gram = docs_side ? x.multiply(xt) : xt.multiply(x);

    std::vector<double> eigenvalues;
    Matrix q;
    jacobi_eigen(gram, eigenvalues, q);

    const std::size_t g = gram.rows();
    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });

    std::vector<double> singular;
    singular.reserve(g);
    for (std::size_t i : order) singular.push_back(std::sqrt(std::max(eigenvalues[i], 0.0)));

    const double s0 = singular.empty() ? 0.0 : singular[0];
    std::size_t r = 0;
    while (r < singular.size() && singular[r] >= kRankCutoff * s0 && singular[r] > 0.0) ++r;

    // Primary factor: sorted eigenvector columns. Derived factor: X^T u / s
    // (or X v / s), re-orthonormalized by modified Gram-Schmidt; columns whose
    // projection collapses are numerically null and get dropped with their
    // singular value.
    Matrix primary(g, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < g; ++i) primary(i, j) = q(i, order[j]);

    const std::size_t other_dim = docs_side ? m : n;
    Matrix derived(other_dim, r);
    std::vector<double> kept_s;
    std::vector<std::size_t> kept_cols;
    std::size_t out = 0;
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<double> col(other_dim, 0.0);
        for (std::size_t i = 0; i < other_dim; ++i) {
            double acc = 0.0;
            for (std::size_t kk = 0; kk < g; ++kk)
                acc += (docs_side ? xt(i, kk) : x(i, kk)) * primary(kk, j);
            col[i] = acc / singular[j];
        }
        for (std::size_t prev = 0; prev < out; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < other_dim; ++i) dot += col[i] * derived(i, prev);
            for (std::size_t i = 0; i < other_dim; ++i) col[i] -= dot * derived(i, prev);
        }
        double norm = 0.0;
        for (double v : col) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 0.5) continue;
        for (std::size_t i = 0; i < other_dim; ++i) derived(i, out) = col[i] / norm;
        kept_s.push_back(singular[j]);
        kept_cols.push_back(j);
        ++out;
    }

    SvdFactors f;
    f.s = std::move(kept_s);
    const std::size_t rr = f.s.size();
    f.u = Matrix(n, rr);
    f.v = Matrix(m, rr);
    for (std::size_t j = 0; j < rr; ++j) {
        const std::size_t src = kept_cols[j];
        if (docs_side) {
            for (std::size_t i = 0; i < n; ++i) f.u(i, j) = primary(i, src);
            for (std::size_t i = 0; i < m; ++i) f.v(i, j) = derived(i, j);
        } else {
            for (std::size_t i = 0; i < m; ++i) f.v(i, j) = primary(i, src);
            for (std::size_t i = 0; i < n; ++i) f.u(i, j) = derived(i, j);
        }
    }

    for (std::size_t j = 0; j < rr; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double mag = std::fabs(f.v(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (f.v(arg, j) < 0.0) {
            for (std::size_t i = 0; i < m; ++i) f.v(i, j) = -f.v(i, j);
            for (std::size_t i = 0; i < n; ++i) f.u(i, j) = -f.u(i, j);
        }
    }
    return f;
}

}  // namespace cardsort
