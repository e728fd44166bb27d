#include "hrnmf/weighting.hpp"

#include <unsupported/Eigen/SparseExtra>

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "hrnmf/csv.hpp"

namespace hrnmf {

TermDocMatrix count_matrix(const std::vector<Document>& docs, const Vocabulary& vocab) {
  TermDocMatrix matrix;
  matrix.terms = vocab.terms;
  matrix.doc_ids.reserve(docs.size());
  std::vector<Eigen::Triplet<double, int>> triplets;
  for (std::size_t col = 0; col < docs.size(); ++col) {
    matrix.doc_ids.push_back(docs[col].id);
    std::map<int, double> column;
    for (const auto& token : docs[col].tokens) {
      const auto row = vocab.find(token);
      if (row == vocab.size()) {
        throw std::logic_error("token '" + token + "' of document '" + docs[col].id +
                               "' is not in the vocabulary");
      }
      column[static_cast<int>(row)] += 1.0;
    }
    for (const auto& [row, count] : column) triplets.emplace_back(row, static_cast<int>(col), count);
  }
  matrix.values.resize(static_cast<Eigen::Index>(vocab.size()), static_cast<Eigen::Index>(docs.size()));
  matrix.values.setFromTriplets(triplets.begin(), triplets.end());
  matrix.values.makeCompressed();
  return matrix;
}

Eigen::VectorXd inverse_document_frequency(const std::vector<std::size_t>& doc_freq,
                                           std::size_t num_documents) {
  Eigen::VectorXd idf(static_cast<Eigen::Index>(doc_freq.size()));
  for (std::size_t i = 0; i < doc_freq.size(); ++i) {
    idf[static_cast<Eigen::Index>(i)] =
        doc_freq[i] == 0 ? 0.0
                         : std::log(static_cast<double>(num_documents) / static_cast<double>(doc_freq[i]));
  }
  return idf;
}

std::vector<std::size_t> row_document_frequency(const SparseMatrix& counts) {
  std::vector<std::size_t> df(static_cast<std::size_t>(counts.rows()), 0);
  for (Eigen::Index col = 0; col < counts.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(counts, col); it; ++it) {
      if (it.value() != 0.0) ++df[static_cast<std::size_t>(it.row())];
    }
  }
  return df;
}

std::vector<std::pair<int, double>> weight_column(const std::vector<std::pair<int, double>>& counts,
                                                  const Eigen::VectorXd& idf) {
  std::vector<std::pair<int, double>> weighted;
  weighted.reserve(counts.size());
  double sum_sq = 0.0;
  for (const auto& [row, tf] : counts) {
    const double value = tf * idf[row];
    if (value > 0.0) {
      weighted.emplace_back(row, value);
      sum_sq += value * value;
    }
  }
  if (sum_sq > 0.0) {
    const double norm = std::sqrt(sum_sq);
    for (auto& entry : weighted) entry.second /= norm;
  }
  return weighted;
}

ProjectedDocument project_document(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                                   const Eigen::VectorXd& idf) {
  ProjectedDocument projected;
  std::map<int, double> counts;
  for (const auto& token : tokens) {
    const auto row = vocab.find(token);
    if (row == vocab.size()) continue;
    ++projected.known_tokens;
    counts[static_cast<int>(row)] += 1.0;
  }
  projected.column = weight_column({counts.begin(), counts.end()}, idf);
  return projected;
}

TermDocMatrix tfidf(const TermDocMatrix& counts) {
  if (counts.weighted) throw std::invalid_argument("tfidf: matrix is already weighted");
  const auto n = static_cast<std::size_t>(counts.cols());
  const Eigen::VectorXd idf = inverse_document_frequency(row_document_frequency(counts.values), n);

  TermDocMatrix weighted;
  weighted.weighted = true;
  weighted.terms = counts.terms;
  weighted.doc_ids = counts.doc_ids;
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(counts.values.nonZeros()));
  std::vector<std::pair<int, double>> column;
  for (Eigen::Index col = 0; col < counts.values.outerSize(); ++col) {
    column.clear();
    for (SparseMatrix::InnerIterator it(counts.values, col); it; ++it) {
      column.emplace_back(static_cast<int>(it.row()), it.value());
    }
    for (const auto& [row, value] : weight_column(column, idf)) {
      triplets.emplace_back(row, static_cast<int>(col), value);
    }
  }
  weighted.values.resize(counts.rows(), counts.cols());
  weighted.values.setFromTriplets(triplets.begin(), triplets.end());
  weighted.values.makeCompressed();
  return weighted;
}

void write_matrix_market(const TermDocMatrix& matrix, const std::string& matrix_path,
                         const std::string& terms_path) {
  if (!Eigen::saveMarket(matrix.values, matrix_path)) {
    throw DataError("cannot write '" + matrix_path + "'");
  }
  std::ofstream terms(terms_path);
  if (!terms) throw DataError("cannot write '" + terms_path + "'");
  for (const auto& term : matrix.terms) terms << term << '\n';
}

SparseMatrix read_matrix_market(const std::string& matrix_path) {
  SparseMatrix matrix;
  if (!Eigen::loadMarket(matrix, matrix_path)) {
    throw DataError("cannot read '" + matrix_path + "'");
  }
  matrix.makeCompressed();
  return matrix;
}

}  // namespace hrnmf
