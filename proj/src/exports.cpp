#include "hrnmf/exports.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hrnmf/csv.hpp"

namespace hrnmf {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json tree_summary_json(const TopicTree& tree) {
  json j = to_json(tree);
  j.erase("column_topic");
  for (auto& node : j.at("nodes")) {
    node.erase("doc_cols");
    node.erase("term_vector");
  }
  return j;
}

void write_tree_json(const TopicTree& tree, std::ostream& out) { out << tree_summary_json(tree).dump(1) << '\n'; }

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string percent(double share) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << 100.0 * share << '%';
  return s.str();
}

// Up to n labels by decreasing share, ties by name.
std::vector<std::pair<std::string, double>> top_shares(const std::map<std::string, double>& shares, std::size_t n) {
  std::vector<std::pair<std::string, double>> sorted(shares.begin(), shares.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (sorted.size() > n) sorted.resize(n);
  return sorted;
}

}  // namespace

void write_tree_dot(const TopicTree& tree, std::ostream& out) {
  out << "digraph topics {\n  graph [comment=\"seed " << tree.seed << "\"];\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& node : tree.nodes) {
    std::string words;
    for (std::size_t i = 0; i < node.top_terms.size() && i < 5; ++i) {
      words += (i ? " " : "") + node.top_terms[i].first;
    }
    out << "  \"" << dot_escape(node.id) << "\" [label=\"" << dot_escape(node.id);
    if (node.is_leaf()) out << " (topic " << tree.topic_of(node.id) << ")";
    out << "\\n" << node.doc_cols.size() << " docs\\n" << dot_escape(words) << "\"";
    if (node.is_leaf()) out << ", style=filled, fillcolor=gray85, terminal=true";
    out << "];\n";
  }
  for (const auto& node : tree.nodes) {
    for (const auto& child : node.children) {
      out << "  \"" << dot_escape(node.id) << "\" -> \"" << dot_escape(child) << "\";\n";
    }
  }
  out << "}\n";
}

std::vector<Assignment> assignments(const TopicModel& model) {
  std::vector<Assignment> rows;
  for (std::size_t j = 0; j < model.doc_ids.size(); ++j) {
    const int topic = model.tree.column_topic.at(j);
    rows.push_back({model.doc_ids[j], model.doc_labels[j], topic,
                    model.tree.leaves.at(static_cast<std::size_t>(topic - 1))});
  }
  return rows;
}

void write_assignments_csv(const std::vector<Assignment>& rows, std::ostream& out) {
  write_csv_row(out, {"id", "label", "topic", "node"});
  for (const auto& r : rows) write_csv_row(out, {r.id, r.label, std::to_string(r.topic), r.node_id});
}

std::vector<Assignment> read_assignments_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  const auto id = t.column("id"), label = t.column("label"), topic = t.column("topic"), node = t.column("node");
  std::vector<Assignment> rows;
  for (const auto& r : t.rows) {
    rows.push_back({r[id], r[label], static_cast<int>(parse_integer(r[topic])), r[node]});
  }
  return rows;
}

void write_confusion_csv(const LabelTopicTable& table, std::ostream& out) {
  std::vector<std::string> header{"label"};
  for (std::size_t t = 1; t <= table.num_topics(); ++t) header.push_back("topic_" + std::to_string(t));
  header.emplace_back("total");
  write_csv_row(out, header);
  for (std::size_t r = 0; r < table.labels.size(); ++r) {
    std::vector<std::string> row{table.labels[r]};
    for (Eigen::Index t = 0; t < table.counts.cols(); ++t) {
      row.push_back(std::to_string(table.counts(static_cast<Eigen::Index>(r), t)));
    }
    row.push_back(std::to_string(table.row_totals[r]));
    write_csv_row(out, row);
  }
  std::vector<std::string> totals{"total"};
  long long all = 0;
  for (const auto c : table.col_totals) {
    totals.push_back(std::to_string(c));
    all += c;
  }
  totals.push_back(std::to_string(all));
  write_csv_row(out, totals);
}

LabelTopicTable read_confusion_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  if (t.header.size() < 2 || t.header.front() != "label" || t.header.back() != "total" || t.rows.empty()) {
    throw DataError("not a confusion matrix");
  }
  const std::size_t k = t.header.size() - 2;
  LabelTopicTable table;
  table.counts = CountMatrix::Zero(static_cast<Eigen::Index>(t.rows.size() - 1), static_cast<Eigen::Index>(k));
  for (std::size_t r = 0; r + 1 < t.rows.size(); ++r) {
    table.labels.push_back(t.rows[r][0]);
    for (std::size_t c = 0; c < k; ++c) {
      table.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_integer(t.rows[r][c + 1]);
    }
    table.row_totals.push_back(parse_integer(t.rows[r][k + 1]));
  }
  const auto& totals = t.rows.back();
  if (totals[0] != "total") throw DataError("confusion matrix lacks a total row");
  for (std::size_t c = 0; c < k; ++c) table.col_totals.push_back(parse_integer(totals[c + 1]));
  return table;
}

void write_similarity_csv(const SimilarityMatrix& sim, std::ostream& out) {
  std::vector<std::string> header{"label"};
  for (const auto i : sim.order) header.push_back(sim.labels[i]);
  write_csv_row(out, header);
  for (const auto i : sim.order) {
    std::vector<std::string> row{sim.labels[i]};
    for (const auto j : sim.order) {
      row.push_back(format_double(sim.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    write_csv_row(out, row);
  }
}

SimilarityMatrix read_similarity_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  if (t.header.empty() || t.header.front() != "label" || t.rows.size() + 1 != t.header.size()) {
    throw DataError("not a similarity matrix");
  }
  SimilarityMatrix sim;
  sim.labels.assign(t.header.begin() + 1, t.header.end());
  const auto L = static_cast<Eigen::Index>(sim.labels.size());
  sim.values.resize(L, L);
  for (Eigen::Index r = 0; r < L; ++r) {
    const auto& row = t.rows[static_cast<std::size_t>(r)];
    if (row[0] != sim.labels[static_cast<std::size_t>(r)]) throw DataError("similarity rows and columns disagree");
    for (Eigen::Index c = 0; c < L; ++c) sim.values(r, c) = parse_double(row[static_cast<std::size_t>(c) + 1]);
    sim.order.push_back(static_cast<std::size_t>(r));
  }
  return sim;
}

void write_merges_csv(const Dendrogram& dendrogram, std::ostream& out) {
  const auto L = static_cast<int>(dendrogram.labels.size());
  const auto name = [&](int id) { return id < L ? dendrogram.labels[static_cast<std::size_t>(id)] : std::string(); };
  write_csv_row(out, {"step", "a", "b", "a_label", "b_label", "similarity", "size"});
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const auto& m = dendrogram.merges[s];
    write_csv_row(out, {std::to_string(s + 1), std::to_string(m.a), std::to_string(m.b), name(m.a), name(m.b),
                        format_double(m.similarity), std::to_string(m.size)});
  }
}

std::vector<Merge> read_merges_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  const auto a = t.column("a"), b = t.column("b"), s = t.column("similarity"), n = t.column("size");
  std::vector<Merge> merges;
  for (const auto& r : t.rows) {
    merges.push_back({static_cast<int>(parse_integer(r[a])), static_cast<int>(parse_integer(r[b])),
                      parse_double(r[s]), static_cast<std::size_t>(parse_integer(r[n]))});
  }
  return merges;
}

void write_clusters_csv(const Dendrogram& dendrogram, std::ostream& out) {
  write_csv_row(out, {"label", "cluster"});
  for (std::size_t i = 0; i < dendrogram.labels.size(); ++i) {
    write_csv_row(out, {dendrogram.labels[i], std::to_string(dendrogram.flat_cut[i])});
  }
}

std::vector<std::pair<std::string, int>> read_clusters_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  const auto label = t.column("label"), cluster = t.column("cluster");
  std::vector<std::pair<std::string, int>> rows;
  for (const auto& r : t.rows) rows.emplace_back(r[label], static_cast<int>(parse_integer(r[cluster])));
  return rows;
}

void write_crosscheck_csv(const std::vector<CrosscheckRow>& rows, std::ostream& out) {
  write_csv_row(out, {"id", "label", "assigned_topic", "dominant_label", "mismatch"});
  for (const auto& r : rows) {
    if (r.result.unclassifiable) {
      write_csv_row(out, {r.id, r.label, "", "", "unclassifiable"});
    } else {
      write_csv_row(out, {r.id, r.label, std::to_string(r.result.topic), r.result.dominant_label,
                          r.result.mismatch ? "true" : "false"});
    }
  }
}

std::vector<CrosscheckRow> read_crosscheck_csv(const std::string& text) {
  const Table t = parse_delimited(text, ',');
  const auto id = t.column("id"), label = t.column("label"), topic = t.column("assigned_topic"),
             dominant = t.column("dominant_label"), mismatch = t.column("mismatch");
  std::vector<CrosscheckRow> rows;
  for (const auto& r : t.rows) {
    CrosscheckRow row{r[id], r[label], {}};
    if (r[mismatch] == "unclassifiable") {
      row.result.unclassifiable = true;
    } else if (r[mismatch] == "true" || r[mismatch] == "false") {
      row.result.topic = static_cast<int>(parse_integer(r[topic]));
      row.result.dominant_label = r[dominant];
      row.result.mismatch = r[mismatch] == "true";
    } else {
      throw DataError("bad mismatch flag '" + r[mismatch] + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary(const TopicModel& model, std::ostream& out) {
  const auto& tree = model.tree;
  out << "seed: " << model.config.seed << '\n'
      << "documents: " << model.doc_ids.size() << '\n'
      << "terms: " << model.vocabulary.size() << '\n'
      << "topics: " << tree.num_topics() << "\n\n";
  for (const auto& node : tree.nodes) {
    out << node.id;
    if (node.parent) out << " (parent " << *node.parent << ")";
    if (node.is_leaf()) out << " [terminal, topic " << tree.topic_of(node.id) << "]";
    out << '\n' << "  documents: " << node.doc_cols.size() << '\n';
    if (node.split_evaluated) out << "  split score: " << format_double(node.split_score) << '\n';
    out << "  labels:";
    for (const auto& [label, share] : top_shares(node.label_shares, 3)) out << ' ' << label << ' ' << percent(share) << ';';
    out << "\n  words:";
    for (const auto& [term, weight] : node.top_terms) out << ' ' << term;
    out << "\n\n";
  }
}

}  // namespace hrnmf
