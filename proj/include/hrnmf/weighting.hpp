#ifndef HRNMF_WEIGHTING_HPP
#define HRNMF_WEIGHTING_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <string>
#include <utility>
#include <vector>

#include "hrnmf/corpus.hpp"

namespace hrnmf {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using SparseVector = Eigen::SparseVector<double, Eigen::ColMajor, int>;

/// Term-document matrix: one row per vocabulary term, one column per document.
///
/// Stored values are strictly positive and finite. When `weighted` is set the
/// values are TF-IDF weights and every nonzero column has unit Euclidean norm.
struct TermDocMatrix {
  SparseMatrix values;
  bool weighted = false;
  std::vector<std::string> doc_ids;  // column -> document id
  std::vector<std::string> terms;    // row -> term

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

/// Raw occurrence counts. Throws std::logic_error when a token is missing from
/// the vocabulary, which means the documents were not pruned against it.
TermDocMatrix count_matrix(const std::vector<Document>& docs, const Vocabulary& vocab);

/// ln(n / df) per term; terms with df == 0 get 0.
Eigen::VectorXd inverse_document_frequency(const std::vector<std::size_t>& doc_freq,
                                           std::size_t num_documents);

/// Number of columns holding each row, read from the sparsity pattern.
std::vector<std::size_t> row_document_frequency(const SparseMatrix& counts);

/// Weights one column given as (row, count) pairs in increasing row order:
/// multiplies by idf, drops entries that became zero and scales to unit norm.
/// tfidf() and model projection both go through here so a replayed document
/// reproduces its training column bit for bit.
std::vector<std::pair<int, double>> weight_column(const std::vector<std::pair<int, double>>& counts,
                                                  const Eigen::VectorXd& idf);

/// A record mapped onto a fitted vocabulary.
struct ProjectedDocument {
  std::size_t known_tokens = 0;  // tokens found in the vocabulary
  std::vector<std::pair<int, double>> column;  // weighted, increasing rows
};

/// Counts the in-vocabulary tokens (others are dropped) and weights them with
/// weight_column.
ProjectedDocument project_document(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                                   const Eigen::VectorXd& idf);

/// TF-IDF weighting with unit-L2 column normalization. Rejects input that is
/// already weighted (std::invalid_argument).
TermDocMatrix tfidf(const TermDocMatrix& counts);

/// Coordinate-format dump (1-based Matrix Market) plus a sidecar with one term
/// per line in row order.
void write_matrix_market(const TermDocMatrix& matrix, const std::string& matrix_path,
                         const std::string& terms_path);
SparseMatrix read_matrix_market(const std::string& matrix_path);

}  // namespace hrnmf

#endif  // HRNMF_WEIGHTING_HPP
