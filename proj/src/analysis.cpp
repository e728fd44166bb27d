#include "hrnmf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hrnmf {

std::size_t LabelTopicTable::row_of(const std::string& label) const {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
}

LabelTopicTable confusion(const std::vector<int>& column_topic, const std::vector<std::string>& labels,
                          std::size_t num_topics, std::size_t top_labels) {
  if (column_topic.size() != labels.size()) throw std::invalid_argument("confusion: one label per column required");
  std::map<std::string, long long> frequency;
  for (const auto& label : labels) ++frequency[label];
  std::vector<std::pair<std::string, long long>> ranked(frequency.begin(), frequency.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.second > y.second; });

  LabelTopicTable table;
  std::map<std::string, std::size_t> row;
  for (const auto& [label, count] : ranked) {
    row.emplace(label, table.labels.size());
    table.labels.push_back(label);
    table.row_totals.push_back(count);
  }
  table.counts = CountMatrix::Zero(static_cast<Eigen::Index>(table.labels.size()),
                                   static_cast<Eigen::Index>(num_topics));
  table.col_totals.assign(num_topics, 0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const int topic = column_topic[j];
    if (topic < 1 || static_cast<std::size_t>(topic) > num_topics) {
      throw std::invalid_argument("confusion: column without a topic");
    }
    ++table.counts(static_cast<Eigen::Index>(row.at(labels[j])), topic - 1);
    ++table.col_totals[static_cast<std::size_t>(topic - 1)];
  }
  return top_labels == 0 ? table : restrict_labels(table, top_labels);
}

LabelTopicTable confusion(const TopicTree& tree, const std::vector<std::string>& labels, std::size_t top_labels) {
  return confusion(tree.column_topic, labels, tree.num_topics(), top_labels);
}

LabelTopicTable restrict_labels(const LabelTopicTable& table, std::size_t top_labels) {
  if (top_labels == 0 || top_labels >= table.labels.size()) return table;
  LabelTopicTable out;
  out.labels.assign(table.labels.begin(), table.labels.begin() + static_cast<std::ptrdiff_t>(top_labels));
  out.row_totals.assign(table.row_totals.begin(), table.row_totals.begin() + static_cast<std::ptrdiff_t>(top_labels));
  out.counts = table.counts.topRows(static_cast<Eigen::Index>(top_labels));
  out.col_totals = table.col_totals;
  return out;
}

Eigen::VectorXd mixture(const LabelTopicTable& table, const std::string& label) {
  const auto row = table.row_of(label);
  if (row == table.labels.size()) throw std::invalid_argument("mixture: unknown label '" + label + "'");
  const long long total = table.counts.row(static_cast<Eigen::Index>(row)).sum();
  if (total == 0) throw std::invalid_argument("mixture: label '" + label + "' has no documents");
  return table.counts.row(static_cast<Eigen::Index>(row)).transpose().cast<double>() / static_cast<double>(total);
}

double cosine(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine: length mismatch");
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (!(aa > 0.0) || !(bb > 0.0)) throw std::invalid_argument("cosine: zero vector");
  return std::min(1.0, dot / std::sqrt(aa * bb));
}

SimilarityMatrix similarity_matrix(const LabelTopicTable& table) {
  SimilarityMatrix sim;
  sim.labels = table.labels;
  const auto L = static_cast<Eigen::Index>(table.labels.size());
  std::vector<Eigen::VectorXd> mixtures;
  for (const auto& label : table.labels) mixtures.push_back(mixture(table, label));
  sim.values = Eigen::MatrixXd::Identity(L, L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = i + 1; j < L; ++j) {
      const double value = cosine(mixtures[static_cast<std::size_t>(i)], mixtures[static_cast<std::size_t>(j)]);
      sim.values(i, j) = value;
      sim.values(j, i) = value;
    }
  }
  std::vector<double> breadth(static_cast<std::size_t>(L));
  for (Eigen::Index i = 0; i < L; ++i) breadth[static_cast<std::size_t>(i)] = sim.values.row(i).sum() - sim.values(i, i);
  sim.order.resize(static_cast<std::size_t>(L));
  std::iota(sim.order.begin(), sim.order.end(), 0);
  std::stable_sort(sim.order.begin(), sim.order.end(),
                   [&](std::size_t x, std::size_t y) { return breadth[x] > breadth[y]; });
  return sim;
}

Dendrogram average_linkage(const SimilarityMatrix& sim, std::size_t clusters) {
  const std::size_t L = sim.labels.size();
  if (clusters < 1 || clusters > L) throw std::invalid_argument("average_linkage: cluster count out of range");
  Dendrogram dendrogram;
  dendrogram.labels = sim.labels;
  dendrogram.clusters = clusters;

  // Between-cluster sums of original pairwise similarities, indexed by cluster id.
  const std::size_t ids = 2 * L - 1;
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ids), static_cast<Eigen::Index>(ids));
  sums.topLeftCorner(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L)) = sim.values;
  std::vector<std::size_t> size(ids, 0);
  std::fill(size.begin(), size.begin() + static_cast<std::ptrdiff_t>(L), 1);
  std::vector<int> active(L);
  std::iota(active.begin(), active.end(), 0);

  for (std::size_t step = 0; step + 1 < L; ++step) {
    int best_a = -1;
    int best_b = -1;
    double best = 0.0;
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const int a = active[x];
        const int b = active[y];
        const double mean = sums(a, b) / static_cast<double>(size[static_cast<std::size_t>(a)] * size[static_cast<std::size_t>(b)]);
        if (best_a < 0 || mean > best) {
          best = mean;
          best_a = a;
          best_b = b;
        }
      }
    }
    const int merged = static_cast<int>(L + step);
    size[static_cast<std::size_t>(merged)] = size[static_cast<std::size_t>(best_a)] + size[static_cast<std::size_t>(best_b)];
    for (const int z : active) {
      if (z == best_a || z == best_b) continue;
      const double s = sums(best_a, z) + sums(best_b, z);
      sums(merged, z) = s;
      sums(z, merged) = s;
    }
    std::erase_if(active, [&](int z) { return z == best_a || z == best_b; });
    active.push_back(merged);
    dendrogram.merges.push_back({best_a, best_b, best, size[static_cast<std::size_t>(merged)]});
  }
  dendrogram.flat_cut = flat_cut(dendrogram, clusters);
  return dendrogram;
}

std::vector<int> flat_cut(const Dendrogram& dendrogram, std::size_t clusters) {
  const std::size_t L = dendrogram.labels.size();
  if (clusters < 1 || clusters > L) throw std::invalid_argument("flat_cut: cluster count out of range");
  std::vector<std::size_t> parent(2 * L, 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const std::size_t steps = L - clusters;
  for (std::size_t s = 0; s < steps; ++s) {
    const auto& merge = dendrogram.merges.at(s);
    const std::size_t merged = L + s;
    parent[find(static_cast<std::size_t>(merge.a))] = merged;
    parent[find(static_cast<std::size_t>(merge.b))] = merged;
  }
  std::map<std::size_t, int> number;
  std::vector<int> cut(L);
  for (std::size_t i = 0; i < L; ++i) {
    const auto root = find(i);
    const auto [it, inserted] = number.emplace(root, static_cast<int>(number.size()) + 1);
    cut[i] = it->second;
  }
  return cut;
}

std::string dominant_label(const LabelTopicTable& table, int topic) {
  if (topic < 1 || static_cast<std::size_t>(topic) > table.num_topics()) return {};
  const auto col = table.counts.col(topic - 1);
  long long best = 0;
  std::string label;
  for (Eigen::Index r = 0; r < col.size(); ++r) {
    if (col[r] > best) {
      best = col[r];
      label = table.labels[static_cast<std::size_t>(r)];
    }
  }
  return label;
}

CrosscheckResult crosscheck(const TopicTree& tree, const LabelTopicTable& table,
                            const ProjectedDocument& doc, const std::string& label) {
  CrosscheckResult result;
  if (doc.known_tokens == 0) {
    result.unclassifiable = true;
    return result;
  }
  result.topic = descend(tree, doc.column);
  result.dominant_label = dominant_label(table, result.topic);
  result.mismatch = !result.dominant_label.empty() && result.dominant_label != label;
  return result;
}

}  // namespace hrnmf
