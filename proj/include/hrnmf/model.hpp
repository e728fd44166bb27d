#ifndef HRNMF_MODEL_HPP
#define HRNMF_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrnmf/analysis.hpp"
#include "hrnmf/corpus.hpp"
#include "hrnmf/hierarchy.hpp"
#include "hrnmf/weighting.hpp"

namespace hrnmf {

struct RunConfig {
  std::string input;
  ColumnNames columns;
  std::vector<std::string> stopword_files;        // replace the built-in list
  std::vector<std::string> extra_stopword_files;  // added to the list in use
  bool stem = true;
  std::size_t min_term_count = 5;
  std::size_t min_doc_len = 3;
  std::size_t max_leaves = 20;
  std::size_t min_leaf_docs = 5;
  std::size_t top_k = 10;
  std::size_t top_labels = 40;      // labels kept for similarity and clustering
  std::size_t display_labels = 30;  // rows of the exported confusion matrix
  std::size_t clusters = 6;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iters = 50;
  double score_threshold = 0.0;
  std::vector<std::string> label_filter;  // empty: all labels
  std::string output_dir = ".";

  /// Throws std::invalid_argument when a threshold is below 1 or tol is not
  /// positive.
  void validate() const;
  TreeOptions tree_options() const;
};

/// Everything needed to replay records against a fit.
struct TopicModel {
  static constexpr int kFormatVersion = 1;

  RunConfig config;
  std::vector<std::string> stop_words;  // effective list, sorted
  Vocabulary vocabulary;
  Eigen::VectorXd idf;
  TopicTree tree;
  LabelTopicTable table;  // all labels
  std::vector<std::string> doc_ids;
  std::vector<std::string> doc_labels;

  StopRules stop_rules() const;
  ProjectedDocument project(const std::string& raw_text) const;
  CrosscheckResult crosscheck(const Document& record) const;
};

struct FitResult {
  TopicModel model;
  std::vector<Document> documents;  // surviving documents, matrix column order
  TermDocMatrix matrix;             // weighted
  std::vector<std::string> unknown_filter_labels;
  std::size_t input_documents = 0;
};

/// Builds the stop rules a config asks for: the built-in English list or the
/// replacement files, plus any additions.
StopRules make_stop_rules(const RunConfig& config);

/// Filter by label, tokenize, prune, weight, build the tree and tabulate.
/// Throws DataError when nothing survives preprocessing.
FitResult fit(std::vector<Document> records, const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TopicTree& tree);
TopicTree tree_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TopicModel& model);
TopicModel model_from_json(const nlohmann::json& j);

void save_model(const TopicModel& model, const std::string& path);
/// Throws DataError on unreadable files, bad JSON or a format version mismatch.
TopicModel load_model(const std::string& path);

}  // namespace hrnmf

#endif  // HRNMF_MODEL_HPP
