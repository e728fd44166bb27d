#ifndef HRNMF_ANALYSIS_HPP
#define HRNMF_ANALYSIS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrnmf/hierarchy.hpp"

namespace hrnmf {

using CountMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Documents per (label, topic). Rows are labels by decreasing frequency
/// (ties by name), columns are topics 1..k.
struct LabelTopicTable {
  std::vector<std::string> labels;
  CountMatrix counts;
  std::vector<long long> row_totals;  // documents carrying the label
  std::vector<long long> col_totals;  // documents in the topic, over all labels

  std::size_t num_topics() const { return col_totals.size(); }
  /// Row of a label, or labels.size() when absent.
  std::size_t row_of(const std::string& label) const;
};

/// Builds the table from per-column topics (1..k) and labels. top_labels
/// keeps the most frequent labels only; 0 keeps all of them.
LabelTopicTable confusion(const std::vector<int>& column_topic, const std::vector<std::string>& labels,
                          std::size_t num_topics, std::size_t top_labels = 0);
LabelTopicTable confusion(const TopicTree& tree, const std::vector<std::string>& labels,
                          std::size_t top_labels = 0);

/// Same table restricted to its first top_labels rows.
LabelTopicTable restrict_labels(const LabelTopicTable& table, std::size_t top_labels);

/// Fraction of a label's documents in each topic. Throws std::invalid_argument
/// for an unknown label or an empty row.
Eigen::VectorXd mixture(const LabelTopicTable& table, const std::string& label);

/// sum(a_i b_i) / (|a| |b|). Throws std::invalid_argument on a zero vector or
/// a length mismatch. For nonnegative inputs the value lies in [0, 1].
double cosine(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

struct SimilarityMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
  /// Label indices by decreasing sum of off-diagonal similarity (ties by
  /// index): labels similar to many others come first.
  std::vector<std::size_t> order;
};

SimilarityMatrix similarity_matrix(const LabelTopicTable& table);

struct Merge {
  int a = 0;  // cluster ids: 0..L-1 are single labels, L+s is the cluster made at step s
  int b = 0;
  double similarity = 0.0;
  std::size_t size = 0;  // members of the merged cluster
};

struct Dendrogram {
  std::vector<std::string> labels;
  std::vector<Merge> merges;  // all L-1 merges, in order
  std::size_t clusters = 0;
  std::vector<int> flat_cut;  // label -> cluster 1..C, numbered by first member
};

/// Average-linkage (UPGMA) agglomeration: the similarity of two clusters is
/// the mean of the original pairwise label similarities between them. The
/// most similar pair merges first; ties go to the lexicographically smallest
/// (a, b) with a < b. Runs to a single cluster and cuts after L - C merges.
/// Throws std::invalid_argument unless 1 <= C <= L.
Dendrogram average_linkage(const SimilarityMatrix& sim, std::size_t clusters);

/// Cluster assignment after the first merges.size() - (C - 1) merges.
std::vector<int> flat_cut(const Dendrogram& dendrogram, std::size_t clusters);

/// Most frequent label of a topic (first table row on ties); empty when the
/// topic has no documents in the table.
std::string dominant_label(const LabelTopicTable& table, int topic);

struct CrosscheckResult {
  bool unclassifiable = false;
  int topic = 0;
  std::string dominant_label;
  bool mismatch = false;
};

/// Assigns a projected record to a topic by descending the tree and compares
/// its label with the topic's dominant label. A record without any
/// in-vocabulary token is unclassifiable and never a mismatch.
CrosscheckResult crosscheck(const TopicTree& tree, const LabelTopicTable& table,
                            const ProjectedDocument& doc, const std::string& label);

}  // namespace hrnmf

#endif  // HRNMF_ANALYSIS_HPP
