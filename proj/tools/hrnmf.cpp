// hrnmf: hierarchical rank-2 NMF topic models for labelled free-text records.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "hrnmf/csv.hpp"
#include "hrnmf/exports.hpp"
#include "hrnmf/model.hpp"
#include "hrnmf/synthetic.hpp"

namespace fs = std::filesystem;
using namespace hrnmf;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

void add_column_flags(CLI::App& cmd, ColumnNames& columns) {
  cmd.add_option("--id-column", columns.id, "Record id column")->capture_default_str();
  cmd.add_option("--label-column", columns.label, "Official label column")->capture_default_str();
  cmd.add_option("--text-column", columns.text, "Narrative text column")->capture_default_str();
}

void run_fit(const RunConfig& config, bool dump_matrix) {
  auto records = read_documents(config.input, config.columns);
  const FitResult result = fit(std::move(records), config);
  for (const auto& label : result.unknown_filter_labels) {
    std::cerr << "warning: label '" << label << "' does not occur in " << config.input << '\n';
  }
  const TopicModel& model = result.model;
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  save_model(model, (dir / "model.json").string());
  {
    auto out = open_output(dir / "tree.json");
    write_tree_json(model.tree, out);
  }
  {
    auto out = open_output(dir / "tree.dot");
    write_tree_dot(model.tree, out);
  }
  {
    auto out = open_output(dir / "assignments.csv");
    write_assignments_csv(assignments(model), out);
  }
  {
    auto out = open_output(dir / "confusion.csv");
    write_confusion_csv(restrict_labels(model.table, config.display_labels), out);
  }
  {
    auto out = open_output(dir / "summary.txt");
    write_summary(model, out);
  }
  if (dump_matrix) write_matrix_market(result.matrix, (dir / "matrix.mtx").string(), (dir / "terms.txt").string());

  std::cerr << result.input_documents << " records, " << model.doc_ids.size() << " documents after preprocessing, "
            << model.vocabulary.size() << " terms, " << model.tree.num_topics() << " topics\n";
}

void run_analyze(const std::string& model_path, std::optional<std::size_t> clusters,
                 std::optional<std::size_t> top_labels, const fs::path& dir) {
  const TopicModel model = load_model(model_path);
  const auto table = restrict_labels(model.table, top_labels.value_or(model.config.top_labels));
  const std::size_t C = clusters.value_or(model.config.clusters);
  if (C < 1 || C > table.labels.size()) {
    throw UsageError("--clusters must lie in [1, " + std::to_string(table.labels.size()) + "]");
  }
  const auto sim = similarity_matrix(table);
  const auto dendrogram = average_linkage(sim, C);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "similarity.csv");
    write_similarity_csv(sim, out);
  }
  {
    auto out = open_output(dir / "merges.csv");
    write_merges_csv(dendrogram, out);
  }
  {
    auto out = open_output(dir / "clusters.csv");
    write_clusters_csv(dendrogram, out);
  }
}

void run_crosscheck(const std::string& model_path, const std::string& input, const ColumnNames* columns,
                    const std::string& output) {
  const TopicModel model = load_model(model_path);
  const auto records = read_documents(input, columns ? *columns : model.config.columns);
  std::vector<CrosscheckRow> rows;
  std::size_t flagged = 0;
  std::size_t unclassifiable = 0;
  for (const auto& record : records) {
    rows.push_back({record.id, record.label, model.crosscheck(record)});
    flagged += rows.back().result.mismatch;
    unclassifiable += rows.back().result.unclassifiable;
  }
  if (output == "-") {
    write_crosscheck_csv(rows, std::cout);
  } else {
    auto out = open_output(output);
    write_crosscheck_csv(rows, out);
  }
  std::cerr << rows.size() << " records, " << flagged << " mismatches, " << unclassifiable << " unclassifiable\n";
}

void run_generate(const SyntheticOptions& options, const fs::path& output) {
  const auto corpus = generate_synthetic(options);
  if (output.has_parent_path()) fs::create_directories(output.parent_path());
  {
    auto out = open_output(output);
    write_documents_csv(corpus.documents, out);
  }
  auto params = open_output(fs::path(output).concat(".params.json"));
  params << to_json(options).dump(1) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical rank-2 NMF topic models for labelled free-text records"};
  app.require_subcommand(1);

  RunConfig config;
  bool no_stem = false;
  bool dump_matrix = false;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a topic tree and write the model and its exports");
  fit_cmd->add_option("-i,--input", config.input, "CSV or TSV file with a header row")->required()->check(CLI::ExistingFile);
  add_column_flags(*fit_cmd, config.columns);
  fit_cmd->add_option("--stopwords", config.stopword_files, "Word list replacing the built-in stop words")
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--extra-stopwords", config.extra_stopword_files, "Word list added to the stop words")
      ->check(CLI::ExistingFile);
  fit_cmd->add_flag("--no-stem", no_stem, "Keep words unstemmed");
  fit_cmd->add_option("--min-term-count", config.min_term_count, "Drop terms rarer than this")->capture_default_str();
  fit_cmd->add_option("--min-doc-len", config.min_doc_len, "Drop documents shorter than this")->capture_default_str();
  fit_cmd->add_option("--max-leaves", config.max_leaves, "Number of topics")->capture_default_str();
  fit_cmd->add_option("--min-leaf-docs", config.min_leaf_docs, "Smallest topic size")->capture_default_str();
  fit_cmd->add_option("--top-k", config.top_k, "Top words per node")->capture_default_str();
  fit_cmd->add_option("--top-labels", config.top_labels, "Labels kept for similarity and clustering")
      ->capture_default_str();
  fit_cmd->add_option("--display-labels", config.display_labels, "Rows in confusion.csv")->capture_default_str();
  fit_cmd->add_option("--clusters", config.clusters, "Default cluster count for analyze")->capture_default_str();
  fit_cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  fit_cmd->add_option("--tol", config.tol, "Relative residual tolerance")->capture_default_str();
  fit_cmd->add_option("--max-iters", config.max_iters, "Iterations per rank-2 factorization")->capture_default_str();
  fit_cmd->add_option("--score-threshold", config.score_threshold, "Smallest split score accepted")
      ->capture_default_str();
  fit_cmd->add_option("--label", config.label_filter, "Fit only records with these labels")->delimiter(',');
  fit_cmd->add_option("-o,--out", config.output_dir, "Output directory")->capture_default_str();
  fit_cmd->add_flag("--dump-matrix", dump_matrix, "Also write the weighted matrix as matrix.mtx and terms.txt");

  std::string model_path = "model.json";
  std::optional<std::size_t> clusters;
  std::optional<std::size_t> top_labels;
  std::string analyze_dir = ".";
  auto* analyze_cmd = app.add_subcommand("analyze", "Label similarity and average-linkage clusters");
  analyze_cmd->add_option("-m,--model", model_path, "Model file written by fit")->capture_default_str();
  analyze_cmd->add_option("-c,--clusters", clusters, "Flat clusters (default: the model's setting)");
  analyze_cmd->add_option("--top-labels", top_labels, "Most frequent labels compared (default: the model's setting)");
  analyze_cmd->add_option("-o,--out", analyze_dir, "Output directory")->capture_default_str();

  std::string check_input;
  std::string check_output = "-";
  ColumnNames check_columns;
  auto* check_cmd = app.add_subcommand("crosscheck", "Flag records whose label disagrees with their topic");
  check_cmd->add_option("-m,--model", model_path, "Model file written by fit")->capture_default_str();
  check_cmd->add_option("-i,--input", check_input, "Records to check")->required()->check(CLI::ExistingFile);
  add_column_flags(*check_cmd, check_columns);
  check_cmd->add_option("-o,--output", check_output, "CSV path, - for stdout")->capture_default_str();

  SyntheticOptions synth;
  bool no_filler = false;
  std::string synth_output = "synthetic.csv";
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a planted-topic corpus and its parameters");
  gen_cmd->add_option("--topics", synth.topics)->capture_default_str();
  gen_cmd->add_option("--docs-per-topic", synth.docs_per_topic)->capture_default_str();
  gen_cmd->add_option("--vocab-per-topic", synth.vocab_per_topic)->capture_default_str();
  gen_cmd->add_option("--min-len", synth.min_len)->capture_default_str();
  gen_cmd->add_option("--max-len", synth.max_len)->capture_default_str();
  gen_cmd->add_option("--noise", synth.noise, "Share of words drawn from all vocabularies")->capture_default_str();
  gen_cmd->add_option("--label-noise", synth.label_noise, "Share of records given another topic's label")
      ->capture_default_str();
  gen_cmd->add_option("--labels-per-topic", synth.labels_per_topic)->capture_default_str();
  gen_cmd->add_flag("--no-filler", no_filler, "Leave out stop words and role words");
  gen_cmd->add_option("--seed", synth.seed)->capture_default_str();
  gen_cmd->add_option("-o,--output", synth_output, "CSV path; parameters go to <path>.params.json")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*fit_cmd) {
      config.stem = !no_stem;
      run_fit(config, dump_matrix);
    } else if (*analyze_cmd) {
      run_analyze(model_path, clusters, top_labels, analyze_dir);
    } else if (*check_cmd) {
      const bool own_columns =
          check_cmd->count("--id-column") + check_cmd->count("--label-column") + check_cmd->count("--text-column") > 0;
      run_crosscheck(model_path, check_input, own_columns ? &check_columns : nullptr, check_output);
    } else if (*gen_cmd) {
      synth.filler = !no_filler;
      run_generate(synth, synth_output);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
