#ifndef HRNMF_HIERARCHY_HPP
#define HRNMF_HIERARCHY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrnmf/weighting.hpp"

namespace hrnmf {

struct TopicNode {
  std::string id;
  std::optional<std::string> parent;
  std::vector<std::string> children;  // empty or {left, right}
  std::vector<int> doc_cols;          // increasing matrix columns
  Eigen::VectorXd term_vector;        // unit norm; the parent split's W column
  double split_score = 0.0;           // score of this node's own split, when one was tried
  bool split_evaluated = false;
  bool splittable = false;
  std::vector<std::pair<std::string, double>> top_terms;
  std::map<std::string, double> label_shares;

  bool is_leaf() const { return children.empty(); }
};

struct TopicTree {
  std::vector<TopicNode> nodes;  // creation order; nodes[0] is the root
  std::vector<std::string> leaves;  // left-to-right; leaves[t - 1] is topic t
  std::vector<int> column_topic;    // matrix column -> topic number 1..k
  Eigen::Index num_terms = 0;
  std::uint64_t seed = 0;

  const TopicNode& root() const { return nodes.front(); }
  const TopicNode& node(const std::string& id) const;
  std::size_t node_index(const std::string& id) const;
  std::size_t num_topics() const { return leaves.size(); }
  /// Topic number of a leaf, or 0 when id is not a leaf.
  int topic_of(const std::string& id) const;
};

struct TreeOptions {
  std::size_t max_leaves = 20;
  std::size_t min_leaf_docs = 5;
  /// Splits must score strictly above this; 0 disables the check.
  double score_threshold = 0.0;
  std::uint64_t seed = 0;
  int max_iters = 50;
  double tol = 1e-6;
};

struct SplitResult {
  bool accepted = false;
  std::vector<int> left_cols;
  std::vector<int> right_cols;
  Eigen::VectorXd left_vector;
  Eigen::VectorXd right_vector;
  double score = 0.0;
};

/// Rank-2 split of the documents in doc_cols.
///
/// Fits rank-2 NMF on those columns of A (rows keep their global index),
/// sends each document to the child with the larger coefficient against the
/// normalized topic vectors (ties go left), and scores the split as
///   |doc_cols| * (1 - cos(w_left, w_right)).
/// This score is a stand-in for the NDCG-based priority of the original
/// hierarchical rank-2 algorithm: it rewards large nodes whose daughters use
/// different vocabulary.
///
/// The split is rejected when doc_cols has fewer than 2 * min_leaf_docs
/// columns, the submatrix is all zero, or either child would receive fewer
/// than min_leaf_docs documents.
SplitResult split_node(const std::vector<int>& doc_cols, const SparseMatrix& A, std::uint64_t seed,
                       const TreeOptions& options);

/// Greedy top-down tree. Every leaf gets a trial split; the best pending split
/// (highest score, ties to the older node) is committed until max_leaves is
/// reached or nothing splittable remains. The root is "root"; committed
/// children are named A, B, ..., Z, AA, AB, ... in commit order, left first.
/// Topics are numbered 1..k over the leaves from left to right.
TopicTree build_tree(const TermDocMatrix& A, const TreeOptions& options);

/// Seed used for the trial split of the node at a given path from the root
/// ("" for the root, then '0' for left and '1' for right at each level).
std::uint64_t split_seed(std::uint64_t seed, const std::string& path);

/// Spreadsheet-style name for the n-th committed node: 0 -> A, 26 -> AA.
std::string node_name(std::size_t ordinal);

/// Fills top_terms and label_shares of every node. labels holds one label per
/// matrix column.
void describe_nodes(TopicTree& tree, const std::vector<std::string>& terms,
                    const std::vector<std::string>& labels, std::size_t top_k = 10);

/// The top_k largest positive entries of a term vector, by decreasing weight
/// and then by term.
std::vector<std::pair<std::string, double>> top_terms(const Eigen::VectorXd& term_vector,
                                                      const std::vector<std::string>& terms,
                                                      std::size_t top_k);

struct LeafTopic {
  int topic = 0;
  std::string node_id;
  std::vector<std::pair<std::string, double>> top_terms;
  std::size_t doc_count = 0;
  std::map<std::string, double> label_shares;
};

std::vector<LeafTopic> leaf_topics(const TopicTree& tree, const std::vector<std::string>& terms,
                                   const std::vector<std::string>& labels, std::size_t top_k = 10);

/// Walks a weighted document column down the tree, solving the rank-2
/// problem against the two child topic vectors at every internal node and
/// following the larger coefficient (ties go left). Returns the leaf's topic
/// number. entries: (row, value) pairs in increasing row order.
int descend(const TopicTree& tree, const std::vector<std::pair<int, double>>& entries);

}  // namespace hrnmf

#endif  // HRNMF_HIERARCHY_HPP
