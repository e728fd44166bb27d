#include "hrnmf/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hrnmf/factorization.hpp"

namespace hrnmf {

const TopicNode& TopicTree::node(const std::string& id) const { return nodes[node_index(id)]; }

std::size_t TopicTree::node_index(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  throw std::out_of_range("no tree node '" + id + "'");
}

int TopicTree::topic_of(const std::string& id) const {
  const auto it = std::find(leaves.begin(), leaves.end(), id);
  return it == leaves.end() ? 0 : static_cast<int>(it - leaves.begin()) + 1;
}

std::uint64_t split_seed(std::uint64_t seed, const std::string& path) {
  // FNV-1a over the path, then a splitmix64 finalizer.
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : path) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string node_name(std::size_t ordinal) {
  std::string name;
  std::size_t n = ordinal + 1;
  while (n > 0) {
    --n;
    name.insert(name.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return name;
}

namespace {

SparseMatrix column_subset(const SparseMatrix& A, const std::vector<int>& cols) {
  SparseMatrix sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
  Eigen::Index nnz = 0;
  for (const int c : cols) nnz += A.col(c).nonZeros();
  sub.reserve(nnz);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    sub.startVec(static_cast<Eigen::Index>(k));
    for (SparseMatrix::InnerIterator it(A, cols[k]); it; ++it) {
      sub.insertBack(it.row(), static_cast<Eigen::Index>(k)) = it.value();
    }
  }
  sub.finalize();
  return sub;
}

std::vector<std::pair<int, double>> column_entries(const SparseMatrix& A, Eigen::Index col) {
  std::vector<std::pair<int, double>> entries;
  entries.reserve(static_cast<std::size_t>(A.col(col).nonZeros()));
  for (SparseMatrix::InnerIterator it(A, col); it; ++it) entries.emplace_back(static_cast<int>(it.row()), it.value());
  return entries;
}

}  // namespace

SplitResult split_node(const std::vector<int>& doc_cols, const SparseMatrix& A, std::uint64_t seed,
                       const TreeOptions& options) {
  SplitResult result;
  if (doc_cols.size() < 2 * options.min_leaf_docs || doc_cols.size() < 2 || A.rows() < 2) return result;
  const SparseMatrix sub = column_subset(A, doc_cols);
  if (sub.nonZeros() == 0) return result;

  Rank2NmfOptions<double> nmf_options;
  nmf_options.seed = seed;
  nmf_options.max_iters = options.max_iters;
  nmf_options.tol = options.tol;
  const auto factors = nmf_rank2(sub, nmf_options);
  if (!(factors.W.col(0).squaredNorm() > 0.0) || !(factors.W.col(1).squaredNorm() > 0.0)) return result;

  const Rank2Projector<double> projector(factors.W);
  for (std::size_t k = 0; k < doc_cols.size(); ++k) {
    const auto h = projector.coefficients(column_entries(A, doc_cols[k]));
    (h[0] >= h[1] ? result.left_cols : result.right_cols).push_back(doc_cols[k]);
  }
  result.left_vector = factors.W.col(0);
  result.right_vector = factors.W.col(1);
  const double cosine = std::clamp(result.left_vector.dot(result.right_vector), 0.0, 1.0);
  result.score = static_cast<double>(doc_cols.size()) * (1.0 - cosine);
  result.accepted = result.left_cols.size() >= options.min_leaf_docs &&
                    result.right_cols.size() >= options.min_leaf_docs;
  return result;
}

TopicTree build_tree(const TermDocMatrix& A, const TreeOptions& options) {
  if (!A.weighted) throw std::invalid_argument("build_tree: matrix must be TF-IDF weighted");
  if (options.max_leaves < 1 || options.min_leaf_docs < 1) {
    throw std::invalid_argument("build_tree: max_leaves and min_leaf_docs must be at least 1");
  }
  const SparseMatrix& X = A.values;

  TopicTree tree;
  tree.num_terms = X.rows();
  tree.seed = options.seed;

  TopicNode root;
  root.id = "root";
  root.doc_cols.resize(static_cast<std::size_t>(X.cols()));
  std::iota(root.doc_cols.begin(), root.doc_cols.end(), 0);
  root.term_vector = Eigen::VectorXd::Zero(X.rows());
  for (Eigen::Index c = 0; c < X.cols(); ++c) root.term_vector += X.col(c);
  if (root.term_vector.norm() > 0.0) root.term_vector.normalize();
  tree.nodes.push_back(std::move(root));

  std::vector<std::string> paths{""};
  std::vector<SplitResult> trials(1);
  auto evaluate = [&](std::size_t index) {
    auto& node = tree.nodes[index];
    trials[index] = split_node(node.doc_cols, X, split_seed(options.seed, paths[index]), options);
    node.split_evaluated = true;
    node.split_score = trials[index].score;
    node.splittable = trials[index].accepted;
  };

  std::size_t num_leaves = 1;
  if (options.max_leaves > 1) evaluate(0);
  std::size_t committed = 0;
  while (num_leaves < options.max_leaves) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const auto& node = tree.nodes[i];
      if (!node.is_leaf() || !node.splittable) continue;
      if (options.score_threshold > 0.0 && !(trials[i].score > options.score_threshold)) continue;
      // Nodes are created in id order, so the first of equal scores is the smaller id.
      if (!best || trials[i].score > trials[*best].score) best = i;
    }
    if (!best) break;

    SplitResult split = std::move(trials[*best]);
    const std::size_t parent = *best;
    const std::size_t left = tree.nodes.size();
    for (int side = 0; side < 2; ++side) {
      TopicNode child;
      child.id = node_name(committed++);
      child.parent = tree.nodes[parent].id;
      child.doc_cols = side == 0 ? std::move(split.left_cols) : std::move(split.right_cols);
      child.term_vector = side == 0 ? std::move(split.left_vector) : std::move(split.right_vector);
      tree.nodes[parent].children.push_back(child.id);
      tree.nodes.push_back(std::move(child));
      paths.push_back(paths[parent] + (side == 0 ? '0' : '1'));
      trials.emplace_back();
    }
    ++num_leaves;
    if (num_leaves < options.max_leaves) {
      evaluate(left);
      evaluate(left + 1);
    }
  }

  // Left-to-right leaf order.
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t index = stack.back();
    stack.pop_back();
    const auto& node = tree.nodes[index];
    if (node.is_leaf()) {
      tree.leaves.push_back(node.id);
      continue;
    }
    stack.push_back(tree.node_index(node.children[1]));
    stack.push_back(tree.node_index(node.children[0]));
  }
  tree.column_topic.assign(static_cast<std::size_t>(X.cols()), 0);
  for (std::size_t t = 0; t < tree.leaves.size(); ++t) {
    for (const int col : tree.node(tree.leaves[t]).doc_cols) {
      tree.column_topic[static_cast<std::size_t>(col)] = static_cast<int>(t) + 1;
    }
  }
  return tree;
}

std::vector<std::pair<std::string, double>> top_terms(const Eigen::VectorXd& term_vector,
                                                      const std::vector<std::string>& terms,
                                                      std::size_t top_k) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < term_vector.size(); ++i) {
    if (term_vector[i] > 0.0) rows.push_back(i);
  }
  const auto k = std::min(top_k, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k), rows.end(),
                    [&](Eigen::Index a, Eigen::Index b) {
                      if (term_vector[a] != term_vector[b]) return term_vector[a] > term_vector[b];
                      return terms[static_cast<std::size_t>(a)] < terms[static_cast<std::size_t>(b)];
                    });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(terms[static_cast<std::size_t>(rows[i])], term_vector[rows[i]]);
  return out;
}

namespace {

std::map<std::string, double> shares_of(const std::vector<int>& cols, const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> counts;
  for (const int c : cols) ++counts[labels.at(static_cast<std::size_t>(c))];
  std::map<std::string, double> shares;
  for (const auto& [label, count] : counts) {
    shares[label] = static_cast<double>(count) / static_cast<double>(cols.size());
  }
  return shares;
}

}  // namespace

void describe_nodes(TopicTree& tree, const std::vector<std::string>& terms,
                    const std::vector<std::string>& labels, std::size_t top_k) {
  for (auto& node : tree.nodes) {
    node.top_terms = top_terms(node.term_vector, terms, top_k);
    node.label_shares = shares_of(node.doc_cols, labels);
  }
}

std::vector<LeafTopic> leaf_topics(const TopicTree& tree, const std::vector<std::string>& terms,
                                   const std::vector<std::string>& labels, std::size_t top_k) {
  std::vector<LeafTopic> out;
  for (std::size_t t = 0; t < tree.leaves.size(); ++t) {
    const auto& node = tree.node(tree.leaves[t]);
    LeafTopic leaf;
    leaf.topic = static_cast<int>(t) + 1;
    leaf.node_id = node.id;
    leaf.top_terms = top_terms(node.term_vector, terms, top_k);
    leaf.doc_count = node.doc_cols.size();
    leaf.label_shares = shares_of(node.doc_cols, labels);
    out.push_back(std::move(leaf));
  }
  return out;
}

int descend(const TopicTree& tree, const std::vector<std::pair<int, double>>& entries) {
  std::size_t index = 0;
  while (!tree.nodes[index].is_leaf()) {
    const auto& node = tree.nodes[index];
    const std::size_t left = tree.node_index(node.children[0]);
    const std::size_t right = tree.node_index(node.children[1]);
    TermTopicMatrix<double> W(tree.num_terms, 2);
    W.col(0) = tree.nodes[left].term_vector;
    W.col(1) = tree.nodes[right].term_vector;
    const auto h = Rank2Projector<double>(std::move(W)).coefficients(entries);
    index = h[0] >= h[1] ? left : right;
  }
  return tree.topic_of(tree.nodes[index].id);
}

}  // namespace hrnmf
