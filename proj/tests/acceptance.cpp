// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hrnmf/exports.hpp"
#include "hrnmf/factorization.hpp"
#include "hrnmf/hierarchy.hpp"
#include "hrnmf/model.hpp"
#include "oracles.hpp"

using namespace hrnmf;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, fmt, args...);
  return buffer;
}

Outcome nnls_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> rows(2, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::MatrixX2d> Ws;
  std::vector<Eigen::VectorXd> as;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = rows(rng);
    Eigen::MatrixX2d W(m, 2);
    Eigen::VectorXd a(m);
    for (int i = 0; i < m; ++i) {
      W(i, 0) = unit(rng);
      W(i, 1) = unit(rng);
      // Zeros in a push many solutions onto the boundary.
      a[i] = unit(rng) < 0.3 ? 0.0 : unit(rng);
    }
    Ws.push_back(W);
    as.push_back(a);
  }
  const auto start = Clock::now();
  std::vector<Eigen::Vector2d> solved;
  for (std::size_t t = 0; t < Ws.size(); ++t) solved.push_back(nnls_rank2(Ws[t], as[t]));
  const double elapsed = seconds_since(start);

  double max_error = 0.0;
  int residual_above = 0;
  int boundary = 0;
  for (std::size_t t = 0; t < Ws.size(); ++t) {
    const auto expected = oracle::nnls_brute_force(Ws[t], as[t]);
    max_error = std::max(max_error, (solved[t] - expected.h).cwiseAbs().maxCoeff());
    const double r = (as[t] - Ws[t] * solved[t]).norm();
    if (r > expected.residual * (1 + 1e-12) + 1e-15) ++residual_above;
    if (solved[t].minCoeff() == 0.0) ++boundary;
  }
  return {max_error <= 1e-9 && residual_above == 0 && elapsed < 5.0,
          format("1000 instances, %d on the boundary, max coefficient error %.2e, %d residuals above oracle, %.3f s",
                 boundary, max_error, residual_above, elapsed)};
}

Outcome monotone_descent() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> size(2, 200);
  std::uniform_real_distribution<double> density(0.02, 0.2);
  int violations = 0;
  int negative = 0;
  double worst_increase = 0.0;
  int matrices = 0;
  while (matrices < 100) {
    const auto weighted = tfidf(oracle::random_counts(size(rng), size(rng), density(rng), rng));
    if (weighted.values.nonZeros() == 0) continue;
    ++matrices;
    Rank2NmfOptions<double> options{.seed = static_cast<std::uint64_t>(matrices)};
    options.observer = [&](int, const TermTopicMatrix<double>& W, const TopicDocMatrix<double>& H, double) {
      if (W.minCoeff() < 0.0 || H.minCoeff() < 0.0) ++negative;
    };
    const auto pair = nmf_rank2(weighted.values, options);
    if (pair.W.minCoeff() < 0.0 || pair.H.minCoeff() < 0.0) ++negative;
    for (std::size_t t = 1; t < pair.residual_history.size(); ++t) {
      const double increase = pair.residual_history[t] - pair.residual_history[t - 1];
      worst_increase = std::max(worst_increase, increase);
      if (increase > 1e-10) ++violations;
    }
  }
  return {violations == 0 && negative == 0,
          format("100 matrices, %d residual increases above 1e-10 (largest %.2e), %d negative factors", violations,
                 worst_increase, negative)};
}

Outcome exact_recovery() {
  // Run to convergence: the optimum is exactly zero.
  constexpr int kMaxIters = 1000;
  constexpr double kTol = 1e-10;
  int recovered = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(3000 + seed);
    std::uniform_int_distribution<int> size(5, 100);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = size(rng);
    const int n = size(rng);
    Eigen::MatrixX2d W0(m, 2);
    Eigen::Matrix<double, 2, Eigen::Dynamic> H0(2, n);
    for (auto& x : W0.reshaped()) x = unit(rng);
    for (auto& x : H0.reshaped()) x = unit(rng);
    const SparseMatrix A = Eigen::MatrixXd(W0 * H0).sparseView();
    const auto pair = nmf_rank2(A, {.seed = seed, .max_iters = kMaxIters, .tol = kTol});
    worst = std::max(worst, pair.relative_residual());
    if (pair.relative_residual() <= 1e-4) ++recovered;
  }
  return {recovered >= 95, format("%d of 100 seeds reach relative residual <= 1e-4 (worst %.2e) with tol %g, max_iters %d", recovered,
                 worst, kTol, kMaxIters)};
}

Outcome prune_fixed_point() {
  const auto d = [](std::string id, std::vector<std::string> tokens) {
    return Document{std::move(id), "x", "", std::move(tokens)};
  };
  const std::vector<Document> docs{d("d1", {"q", "x", "y"}), d("d2", {"x", "x", "x", "x", "z"}),
                                   d("d3", {"y", "y", "z", "z", "w"}), d("d4", {"y", "y", "z", "z", "w", "w"}),
                                   d("d5", {"y", "z", "w", "w"})};
  const auto pruned = prune_corpus(docs);
  std::vector<std::string> ids;
  for (const auto& doc : pruned.documents) ids.push_back(doc.id);
  const bool expected = ids == std::vector<std::string>{"d3", "d4", "d5"} &&
                        pruned.vocabulary.terms == std::vector<std::string>{"w", "y", "z"} &&
                        pruned.documents[0].tokens == docs[2].tokens && pruned.documents[1].tokens == docs[3].tokens &&
                        pruned.documents[2].tokens == docs[4].tokens;
  const auto again = prune_corpus(pruned.documents);
  bool unchanged = again.documents.size() == pruned.documents.size() &&
                   again.vocabulary.terms == pruned.vocabulary.terms;
  for (std::size_t i = 0; unchanged && i < again.documents.size(); ++i) {
    unchanged = again.documents[i].tokens == pruned.documents[i].tokens;
  }
  return {expected && unchanged, format("cascade keeps d3 d4 d5 over {w,y,z} after %zu rounds; rerun %s",
                                        pruned.rounds, unchanged ? "changes nothing" : "changed the corpus")};
}

Outcome tfidf_properties() {
  std::mt19937_64 rng(5005);
  std::uniform_int_distribution<int> word(0, 39);
  std::uniform_int_distribution<int> length(1, 15);
  int zero_weight_violations = 0;
  int norm_violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Document> docs;
    for (int j = 0; j < 30; ++j) {
      Document doc{"d", "x", "", {"everywhere"}};
      for (int k = length(rng); k > 0; --k) doc.tokens.push_back("w" + std::to_string(word(rng)));
      docs.push_back(std::move(doc));
    }
    const auto vocab = Vocabulary::from_documents(docs);
    const auto weighted = tfidf(count_matrix(docs, vocab));
    const auto everywhere = static_cast<int>(vocab.find("everywhere"));
    for (int j = 0; j < weighted.cols(); ++j) {
      double sq = 0.0;
      for (SparseMatrix::InnerIterator it(weighted.values, j); it; ++it) {
        if (vocab.doc_freq[static_cast<std::size_t>(it.row())] == vocab.num_documents) ++zero_weight_violations;
        sq += it.value() * it.value();
      }
      if (weighted.values.coeff(everywhere, j) != 0.0) ++zero_weight_violations;
      if (sq > 0.0) {
        worst = std::max(worst, std::abs(std::sqrt(sq) - 1.0));
        if (std::abs(std::sqrt(sq) - 1.0) > 1e-9) ++norm_violations;
      }
    }
  }
  return {zero_weight_violations == 0 && norm_violations == 0,
          format("100 corpora: %d nonzero weights on df = n terms, %d columns off unit norm (worst %.2e)",
                 zero_weight_violations, norm_violations, worst)};
}

Outcome planted_recovery() {
  int pure = 0;
  int dominant = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = fixture::planted({.seed = 600 + seed});
    TreeOptions options;
    options.max_leaves = 4;
    options.seed = seed;
    const auto tree = build_tree(p.matrix, options);
    const double purity = oracle::min_leaf_purity(tree.column_topic, p.topics);
    worst = std::min(worst, purity);
    if (purity >= 0.95) ++pure;
    std::vector<std::string> labels;
    for (const auto& d : p.documents) labels.push_back(d.label);
    const auto table = confusion(tree, labels);
    if (tree.num_topics() == 4 && oracle::diagonal_dominant(table.counts)) ++dominant;
  }
  return {pure >= 9 && dominant == 10,
          format("%d of 10 seeds with leaf purity >= 0.95 (lowest %.4f), %d of 10 confusion tables diagonal-dominant",
                 pure, worst, dominant)};
}

Outcome cosine_properties() {
  std::mt19937_64 rng(7007);
  std::uniform_int_distribution<int> length(1, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int bound = 0;
  int asymmetric = 0;
  int self = 0;
  int pairs = 0;
  while (pairs < 10000) {
    const int k = length(rng);
    Eigen::VectorXd a(k), b(k);
    for (int i = 0; i < k; ++i) {
      a[i] = unit(rng) < 0.4 ? 0.0 : unit(rng);
      b[i] = unit(rng) < 0.4 ? 0.0 : unit(rng);
    }
    if (a.sum() == 0.0 || b.sum() == 0.0) continue;
    a /= a.sum();
    b /= b.sum();
    ++pairs;
    const double ab = cosine(a, b);
    if (!(ab >= 0.0 && ab <= 1.0)) ++bound;
    if (ab != cosine(b, a)) ++asymmetric;
    if (std::abs(cosine(a, a) - 1.0) > 1e-15) ++self;
  }
  const double hand = cosine(Eigen::Vector2d(3, 4), Eigen::Vector2d(4, 3));
  return {bound == 0 && asymmetric == 0 && self == 0 && std::abs(hand - 0.96) <= 1e-12,
          format("10000 mixture pairs: %d out of [0,1], %d asymmetric, %d self-similarities off 1; (3,4)/(4,3) = %.15f",
                 bound, asymmetric, self, hand)};
}

Outcome upgma_oracle() {
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<int> size(2, 10);
  int mismatched = 0;
  int ties = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int L = size(rng);
    SimilarityMatrix sim;
    for (int i = 0; i < L; ++i) sim.labels.push_back("label" + std::to_string(i));
    sim.values = oracle::random_dyadic_similarity(L, rng);
    const auto expected = oracle::upgma_brute_force(sim.values);
    const auto d = average_linkage(sim, 1);
    bool same = d.merges.size() == expected.merges.size();
    for (std::size_t s = 0; same && s < d.merges.size(); ++s) {
      same = d.merges[s].a == expected.merges[s].a && d.merges[s].b == expected.merges[s].b &&
             d.merges[s].similarity == expected.merges[s].similarity;
    }
    for (int C = 1; same && C <= L; ++C) same = flat_cut(d, static_cast<std::size_t>(C)) == expected.cuts[C];
    if (!same) ++mismatched;
    for (std::size_t s = 1; s < expected.merges.size(); ++s) {
      ties += expected.merges[s].similarity == expected.merges[s - 1].similarity;
    }
  }
  return {mismatched == 0,
          format("50 random matrices (up to 10 labels, %d tied consecutive merges): %d differ from brute force",
                 ties, mismatched)};
}

Outcome crosscheck_consistency() {
  const auto records = generate_synthetic({.topics = 5, .docs_per_topic = 200, .label_noise = 0.15,
                                           .labels_per_topic = 2, .seed = 9009})
                           .documents;
  RunConfig config;
  config.max_leaves = 8;
  config.seed = 9;
  const auto result = fit(records, config);
  const auto& model = result.model;
  std::size_t reproduced = 0;
  long long mismatches = 0;
  for (std::size_t j = 0; j < result.documents.size(); ++j) {
    const auto check = model.crosscheck(result.documents[j]);
    reproduced += !check.unclassifiable && check.topic == model.tree.column_topic[j];
    mismatches += check.mismatch;
  }
  long long off_dominant = 0;
  for (Eigen::Index t = 0; t < model.table.counts.cols(); ++t) {
    off_dominant += model.table.col_totals[static_cast<std::size_t>(t)] - model.table.counts.col(t).maxCoeff();
  }
  return {reproduced == result.documents.size() && mismatches == off_dominant,
          format("%zu of %zu training documents replay to their leaf; %lld mismatches vs %lld off-dominant documents",
                 reproduced, result.documents.size(), mismatches, off_dominant)};
}

std::string render_all(const TopicModel& model) {
  std::ostringstream out;
  out << to_json(model).dump(1);
  write_tree_json(model.tree, out);
  write_tree_dot(model.tree, out);
  write_assignments_csv(assignments(model), out);
  write_confusion_csv(model.table, out);
  write_summary(model, out);
  return out.str();
}

Outcome determinism_round_trip() {
  const auto records =
      generate_synthetic({.topics = 4, .docs_per_topic = 150, .label_noise = 0.1, .seed = 7}).documents;
  RunConfig config;
  config.max_leaves = 6;
  config.seed = 7;
  const auto first = fit(records, config);
  const auto second = fit(records, config);
  const bool identical = render_all(first.model) == render_all(second.model);

  const auto path = (std::filesystem::temp_directory_path() / "hrnmf_acceptance_model.json").string();
  save_model(first.model, path);
  const auto loaded = load_model(path);
  std::size_t preserved = 0;
  for (const auto& record : records) {
    const auto a = first.model.crosscheck(record);
    const auto b = loaded.crosscheck(record);
    preserved += a.unclassifiable == b.unclassifiable && a.topic == b.topic &&
                 a.dominant_label == b.dominant_label && a.mismatch == b.mismatch;
  }
  return {identical && preserved == records.size(),
          format("repeated fit %s; archive round trip preserves %zu of %zu crosscheck rows",
                 identical ? "byte-identical" : "differs", preserved, records.size())};
}

Outcome performance() {
  const auto records =
      generate_synthetic({.topics = 20, .docs_per_topic = 500, .vocab_per_topic = 250, .seed = 11}).documents;
  RunConfig config;
  config.max_leaves = 20;
  config.seed = 11;
  const auto start = Clock::now();
  const auto result = fit(records, config);
  const double elapsed = seconds_since(start);
  const auto& model = result.model;
  return {elapsed < 30.0 && model.doc_ids.size() == 10000 && model.vocabulary.size() == 5000 &&
              model.tree.num_topics() == 20,
          format("%zu documents, %zu terms, %zu leaves fitted in %.2f s", model.doc_ids.size(),
                 model.vocabulary.size(), model.tree.num_topics(), elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"nnls-oracle-equivalence", nnls_oracle},
      {"monotone-descent", monotone_descent},
      {"exact-factorization-recovery", exact_recovery},
      {"preprocessing-fixed-point", prune_fixed_point},
      {"tfidf-weighting", tfidf_properties},
      {"planted-topic-recovery", planted_recovery},
      {"cosine-properties", cosine_properties},
      {"upgma-oracle", upgma_oracle},
      {"crosscheck-self-consistency", crosscheck_consistency},
      {"determinism-and-round-trip", determinism_round_trip},
      {"performance-envelope", performance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %2zu %-30s %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
