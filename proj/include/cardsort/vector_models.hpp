#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "cardsort/errors.hpp"
#include "cardsort/matrix.hpp"
#include "cardsort/svd.hpp"
#include "cardsort/text_pipeline.hpp"

namespace cardsort {

// Distinct grams in first-occurrence order over the corpus; the order is the
// column order of every document-term matrix built from it.
struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return terms.size(); }
};

enum class MatrixKind { Counts, Tfidf, Lsa };

struct DocTermMatrix {
    MatrixKind kind = MatrixKind::Counts;
    Matrix values;  // rows: corpus order; columns: vocabulary order (or LSA dims)

    std::size_t rows() const { return values.rows(); }
    std::size_t dims() const { return values.cols(); }
};

inline Vocabulary build_vocabulary(const std::vector<GramSequence>& grams_per_item) {
    Vocabulary vocab;
    for (const auto& grams : grams_per_item) {
        for (const auto& gram : grams) {
            if (vocab.index.emplace(gram, vocab.terms.size()).second) vocab.terms.push_back(gram);
        }
    }
    if (vocab.terms.empty())
        throw EmptyCorpus("build_vocabulary: every gram sequence is empty");
    return vocab;
}

// Term-occurrence histogram per item; word order and structure are ignored.
inline DocTermMatrix bow_matrix(const std::vector<GramSequence>& grams_per_item,
                                const Vocabulary& vocab) {
    DocTermMatrix out{MatrixKind::Counts, Matrix(grams_per_item.size(), vocab.size())};
    for (std::size_t i = 0; i < grams_per_item.size(); ++i) {
        for (const auto& gram : grams_per_item[i]) {
            auto it = vocab.index.find(gram);
            if (it == vocab.index.end())
                throw UnknownGram("bow_matrix: gram '" + gram + "' not in vocabulary");
            out.values(i, it->second) += 1.0;
        }
    }
    return out;
}

// weight(i,t) = (count(i,t) / row_sum(i)) * ln(N / df(t)). Natural log; the
// cosine similarities downstream are invariant to the log base. No row
// re-normalization is applied. Terms present in every document get weight 0.
inline DocTermMatrix tfidf_matrix(const DocTermMatrix& counts) {
    if (counts.kind != MatrixKind::Counts)
        throw InputError("tfidf_matrix: input must be a counts matrix");
    const std::size_t n_docs = counts.rows();
    const std::size_t n_terms = counts.dims();

    std::vector<double> row_sums(n_docs, 0.0);
    std::vector<std::size_t> df(n_terms, 0);
    for (std::size_t i = 0; i < n_docs; ++i) {
        for (std::size_t t = 0; t < n_terms; ++t) {
            const double c = counts.values(i, t);
            row_sums[i] += c;
            if (c > 0.0) ++df[t];
        }
        if (row_sums[i] == 0.0)
            throw EmptyDocument("tfidf_matrix: document " + std::to_string(i) +
                                " has no terms (TF undefined)");
    }

    DocTermMatrix out{MatrixKind::Tfidf, Matrix(n_docs, n_terms)};
    for (std::size_t t = 0; t < n_terms; ++t) {
        if (df[t] == 0 || df[t] == n_docs) continue;  // unused column or df = N: weight 0
        const double idf = std::log(static_cast<double>(n_docs) / static_cast<double>(df[t]));
        for (std::size_t i = 0; i < n_docs; ++i) {
            const double c = counts.values(i, t);
            if (c > 0.0) out.values(i, t) = (c / row_sums[i]) * idf;
        }
    }
    return out;
}

// Document embeddings U_k * diag(S_k): scaling by the singular values keeps
// the full-rank cosine matrix equal to the input's. Columns beyond the
// numerical rank contribute nothing and are left zero.
inline DocTermMatrix lsa_reduce(const DocTermMatrix& tfidf, std::size_t k) {
    if (tfidf.kind != MatrixKind::Tfidf)
        throw InputError("lsa_reduce: input must be a TF-IDF matrix");
    const std::size_t max_k = std::min(tfidf.rows(), tfidf.dims());
    if (k < 1 || k > max_k)
        throw InvalidDimension("lsa_reduce: k = " + std::to_string(k) +
                               " outside [1, " + std::to_string(max_k) + "]");
    const SvdFactors f = svd(tfidf.values);
    DocTermMatrix out{MatrixKind::Lsa, Matrix(tfidf.rows(), k)};
    const std::size_t usable = std::min(k, f.rank());
    for (std::size_t i = 0; i < tfidf.rows(); ++i)
        for (std::size_t j = 0; j < usable; ++j) out.values(i, j) = f.u(i, j) * f.s[j];
    return out;
}

}  // namespace cardsort
