#include "hrnmf/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "hrnmf/csv.hpp"

namespace hrnmf {

using nlohmann::json;

void RunConfig::validate() const {
  const auto check = [](std::size_t value, const char* name) {
    if (value < 1) throw std::invalid_argument(std::string(name) + " must be at least 1");
  };
  check(min_term_count, "min_term_count");
  check(min_doc_len, "min_doc_len");
  check(max_leaves, "max_leaves");
  check(min_leaf_docs, "min_leaf_docs");
  check(top_k, "top_k");
  check(top_labels, "top_labels");
  check(display_labels, "display_labels");
  check(clusters, "clusters");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (score_threshold < 0.0) throw std::invalid_argument("score_threshold must be nonnegative");
}

TreeOptions RunConfig::tree_options() const {
  TreeOptions options;
  options.max_leaves = max_leaves;
  options.min_leaf_docs = min_leaf_docs;
  options.score_threshold = score_threshold;
  options.seed = seed;
  options.max_iters = max_iters;
  options.tol = tol;
  return options;
}

StopRules TopicModel::stop_rules() const {
  StopRules rules;
  rules.stop_words.insert(stop_words.begin(), stop_words.end());
  return rules;
}

ProjectedDocument TopicModel::project(const std::string& raw_text) const {
  return project_document(tokenize(raw_text, stop_rules(), {config.stem}), vocabulary, idf);
}

CrosscheckResult TopicModel::crosscheck(const Document& record) const {
  return hrnmf::crosscheck(tree, table, project(record.raw_text), record.label);
}

StopRules make_stop_rules(const RunConfig& config) {
  StopRules rules = config.stopword_files.empty() ? StopRules::english() : StopRules{};
  for (const auto& path : config.stopword_files) {
    for (auto& word : read_word_list(path)) rules.stop_words.insert(std::move(word));
  }
  for (const auto& path : config.extra_stopword_files) {
    for (auto& word : read_word_list(path)) rules.stop_words.insert(std::move(word));
  }
  return rules;
}

FitResult fit(std::vector<Document> records, const RunConfig& config) {
  config.validate();
  FitResult result;
  result.input_documents = records.size();

  if (!config.label_filter.empty()) {
    const std::set<std::string> wanted(config.label_filter.begin(), config.label_filter.end());
    std::set<std::string> present;
    for (const auto& doc : records) present.insert(doc.label);
    for (const auto& label : wanted) {
      if (!present.contains(label)) result.unknown_filter_labels.push_back(label);
    }
    std::erase_if(records, [&](const Document& doc) { return !wanted.contains(doc.label); });
  }

  const StopRules rules = make_stop_rules(config);
  tokenize_all(records, rules, {config.stem});
  auto pruned = prune_corpus(std::move(records), {config.min_term_count, config.min_doc_len});
  if (pruned.documents.empty()) throw DataError("no documents left after preprocessing");

  TopicModel& model = result.model;
  model.config = config;
  model.stop_words.assign(rules.stop_words.begin(), rules.stop_words.end());
  model.vocabulary = std::move(pruned.vocabulary);
  model.idf = inverse_document_frequency(model.vocabulary.doc_freq, model.vocabulary.num_documents);

  result.matrix = tfidf(count_matrix(pruned.documents, model.vocabulary));
  model.tree = build_tree(result.matrix, config.tree_options());

  for (const auto& doc : pruned.documents) {
    model.doc_ids.push_back(doc.id);
    model.doc_labels.push_back(doc.label);
  }
  describe_nodes(model.tree, model.vocabulary.terms, model.doc_labels, config.top_k);
  model.table = confusion(model.tree, model.doc_labels);
  result.documents = std::move(pruned.documents);
  return result;
}

json to_json(const RunConfig& c) {
  return json{{"input", c.input},
              {"columns", {{"id", c.columns.id}, {"label", c.columns.label}, {"text", c.columns.text}}},
              {"stopword_files", c.stopword_files},
              {"extra_stopword_files", c.extra_stopword_files},
              {"stem", c.stem},
              {"min_term_count", c.min_term_count},
              {"min_doc_len", c.min_doc_len},
              {"max_leaves", c.max_leaves},
              {"min_leaf_docs", c.min_leaf_docs},
              {"top_k", c.top_k},
              {"top_labels", c.top_labels},
              {"display_labels", c.display_labels},
              {"clusters", c.clusters},
              {"seed", c.seed},
              {"tol", c.tol},
              {"max_iters", c.max_iters},
              {"score_threshold", c.score_threshold},
              {"label_filter", c.label_filter}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.input = j.at("input").get<std::string>();
  c.columns.id = j.at("columns").at("id").get<std::string>();
  c.columns.label = j.at("columns").at("label").get<std::string>();
  c.columns.text = j.at("columns").at("text").get<std::string>();
  c.stopword_files = j.at("stopword_files").get<std::vector<std::string>>();
  c.extra_stopword_files = j.at("extra_stopword_files").get<std::vector<std::string>>();
  c.stem = j.at("stem").get<bool>();
  c.min_term_count = j.at("min_term_count").get<std::size_t>();
  c.min_doc_len = j.at("min_doc_len").get<std::size_t>();
  c.max_leaves = j.at("max_leaves").get<std::size_t>();
  c.min_leaf_docs = j.at("min_leaf_docs").get<std::size_t>();
  c.top_k = j.at("top_k").get<std::size_t>();
  c.top_labels = j.at("top_labels").get<std::size_t>();
  c.display_labels = j.at("display_labels").get<std::size_t>();
  c.clusters = j.at("clusters").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tol = j.at("tol").get<double>();
  c.max_iters = j.at("max_iters").get<int>();
  c.score_threshold = j.at("score_threshold").get<double>();
  c.label_filter = j.at("label_filter").get<std::vector<std::string>>();
  return c;
}

json to_json(const TopicTree& tree) {
  json nodes = json::array();
  for (const auto& node : tree.nodes) {
    json terms = json::array();
    for (const auto& [term, weight] : node.top_terms) terms.push_back({term, weight});
    json rows = json::array();
    json values = json::array();
    for (Eigen::Index i = 0; i < node.term_vector.size(); ++i) {
      if (node.term_vector[i] != 0.0) {
        rows.push_back(i);
        values.push_back(node.term_vector[i]);
      }
    }
    nodes.push_back({{"id", node.id},
                     {"parent", node.parent ? json(*node.parent) : json(nullptr)},
                     {"children", node.children},
                     {"terminal", node.is_leaf()},
                     {"topic", tree.topic_of(node.id)},
                     {"doc_count", node.doc_cols.size()},
                     {"split_score", node.split_score},
                     {"split_evaluated", node.split_evaluated},
                     {"splittable", node.splittable},
                     {"top_terms", terms},
                     {"label_shares", node.label_shares},
                     {"doc_cols", node.doc_cols},
                     {"term_vector", {{"rows", rows}, {"values", values}}}});
  }
  return json{{"seed", tree.seed},
              {"num_terms", tree.num_terms},
              {"leaves", tree.leaves},
              {"column_topic", tree.column_topic},
              {"nodes", nodes}};
}

TopicTree tree_from_json(const json& j) {
  TopicTree tree;
  tree.seed = j.at("seed").get<std::uint64_t>();
  tree.num_terms = j.at("num_terms").get<Eigen::Index>();
  tree.leaves = j.at("leaves").get<std::vector<std::string>>();
  tree.column_topic = j.at("column_topic").get<std::vector<int>>();
  for (const auto& n : j.at("nodes")) {
    TopicNode node;
    node.id = n.at("id").get<std::string>();
    if (!n.at("parent").is_null()) node.parent = n.at("parent").get<std::string>();
    node.children = n.at("children").get<std::vector<std::string>>();
    node.split_score = n.at("split_score").get<double>();
    node.split_evaluated = n.at("split_evaluated").get<bool>();
    node.splittable = n.at("splittable").get<bool>();
    for (const auto& t : n.at("top_terms")) node.top_terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<double>());
    node.label_shares = n.at("label_shares").get<std::map<std::string, double>>();
    node.doc_cols = n.at("doc_cols").get<std::vector<int>>();
    node.term_vector = Eigen::VectorXd::Zero(tree.num_terms);
    const auto& tv = n.at("term_vector");
    const auto rows = tv.at("rows").get<std::vector<Eigen::Index>>();
    const auto values = tv.at("values").get<std::vector<double>>();
    if (rows.size() != values.size()) throw DataError("term vector of node '" + node.id + "' is malformed");
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] < 0 || rows[k] >= tree.num_terms) throw DataError("term vector row out of range");
      node.term_vector[rows[k]] = values[k];
    }
    tree.nodes.push_back(std::move(node));
  }
  if (tree.nodes.empty()) throw DataError("tree has no nodes");
  return tree;
}

json to_json(const TopicModel& model) {
  const auto& v = model.vocabulary;
  json table_rows = json::array();
  for (Eigen::Index r = 0; r < model.table.counts.rows(); ++r) {
    std::vector<long long> row(model.table.counts.row(r).begin(), model.table.counts.row(r).end());
    table_rows.push_back(row);
  }
  return json{{"format", "hrnmf-model"},
              {"format_version", TopicModel::kFormatVersion},
              {"seed", model.config.seed},
              {"config", to_json(model.config)},
              {"stop_words", model.stop_words},
              {"vocabulary",
               {{"terms", v.terms},
                {"corpus_count", v.corpus_count},
                {"doc_freq", v.doc_freq},
                {"num_documents", v.num_documents}}},
              {"tree", to_json(model.tree)},
              {"table",
               {{"labels", model.table.labels},
                {"counts", table_rows},
                {"row_totals", model.table.row_totals},
                {"col_totals", model.table.col_totals}}},
              {"doc_ids", model.doc_ids},
              {"doc_labels", model.doc_labels}};
}

TopicModel model_from_json(const json& j) {
  if (j.value("format", "") != "hrnmf-model") throw DataError("not a model archive");
  if (j.at("format_version").get<int>() != TopicModel::kFormatVersion) {
    throw DataError("unsupported model format version " + j.at("format_version").dump());
  }
  TopicModel model;
  model.config = config_from_json(j.at("config"));
  model.stop_words = j.at("stop_words").get<std::vector<std::string>>();

  auto& v = model.vocabulary;
  const auto& jv = j.at("vocabulary");
  v.terms = jv.at("terms").get<std::vector<std::string>>();
  v.corpus_count = jv.at("corpus_count").get<std::vector<std::size_t>>();
  v.doc_freq = jv.at("doc_freq").get<std::vector<std::size_t>>();
  v.num_documents = jv.at("num_documents").get<std::size_t>();
  if (v.corpus_count.size() != v.terms.size() || v.doc_freq.size() != v.terms.size()) {
    throw DataError("vocabulary arrays have different lengths");
  }
  for (std::size_t i = 0; i < v.terms.size(); ++i) v.index.emplace(v.terms[i], i);
  model.idf = inverse_document_frequency(v.doc_freq, v.num_documents);

  model.tree = tree_from_json(j.at("tree"));
  if (model.tree.num_terms != static_cast<Eigen::Index>(v.size())) throw DataError("tree and vocabulary disagree");

  const auto& jt = j.at("table");
  model.table.labels = jt.at("labels").get<std::vector<std::string>>();
  model.table.row_totals = jt.at("row_totals").get<std::vector<long long>>();
  model.table.col_totals = jt.at("col_totals").get<std::vector<long long>>();
  const auto rows = jt.at("counts").get<std::vector<std::vector<long long>>>();
  model.table.counts = CountMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                         static_cast<Eigen::Index>(model.table.col_totals.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != model.table.col_totals.size()) throw DataError("confusion table row has wrong length");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      model.table.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  model.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
  model.doc_labels = j.at("doc_labels").get<std::vector<std::string>>();
  return model;
}

void save_model(const TopicModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << to_json(model).dump(1) << '\n';
}

TopicModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model '" + path + "'");
  try {
    return model_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw DataError("invalid model archive '" + path + "': " + e.what());
  }
}

}  // namespace hrnmf
