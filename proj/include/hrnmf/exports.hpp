#ifndef HRNMF_EXPORTS_HPP
#define HRNMF_EXPORTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hrnmf/analysis.hpp"
#include "hrnmf/hierarchy.hpp"
#include "hrnmf/model.hpp"

namespace hrnmf {

// Tree JSON without per-node term vectors and document columns.
nlohmann::json tree_summary_json(const TopicTree& tree);
void write_tree_json(const TopicTree& tree, std::ostream& out);
void write_tree_dot(const TopicTree& tree, std::ostream& out);

struct Assignment {
  std::string id;
  std::string label;
  int topic = 0;
  std::string node_id;
};
std::vector<Assignment> assignments(const TopicModel& model);
void write_assignments_csv(const std::vector<Assignment>& rows, std::ostream& out);
std::vector<Assignment> read_assignments_csv(const std::string& text);

// label, topic_1..topic_k, total; last row "total" holds the topic sizes.
void write_confusion_csv(const LabelTopicTable& table, std::ostream& out);
LabelTopicTable read_confusion_csv(const std::string& text);

// Rows and columns in the matrix's display order.
void write_similarity_csv(const SimilarityMatrix& sim, std::ostream& out);
SimilarityMatrix read_similarity_csv(const std::string& text);

void write_merges_csv(const Dendrogram& dendrogram, std::ostream& out);
std::vector<Merge> read_merges_csv(const std::string& text);
void write_clusters_csv(const Dendrogram& dendrogram, std::ostream& out);
std::vector<std::pair<std::string, int>> read_clusters_csv(const std::string& text);

struct CrosscheckRow {
  std::string id;
  std::string label;
  CrosscheckResult result;
};
// mismatch column is true, false or unclassifiable.
void write_crosscheck_csv(const std::vector<CrosscheckRow>& rows, std::ostream& out);
std::vector<CrosscheckRow> read_crosscheck_csv(const std::string& text);

/// Per-node table: documents, top label shares, top words.
void write_summary(const TopicModel& model, std::ostream& out);

std::string read_file(const std::string& path);

}  // namespace hrnmf

#endif  // HRNMF_EXPORTS_HPP
