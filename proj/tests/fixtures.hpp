// Planted-topic fixtures shared by the suites.
#ifndef HRNMF_TESTS_FIXTURES_HPP
#define HRNMF_TESTS_FIXTURES_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "hrnmf/corpus.hpp"
#include "hrnmf/synthetic.hpp"
#include "hrnmf/weighting.hpp"

namespace fixture {

struct Planted {
  std::vector<hrnmf::Document> documents;  // surviving, matrix column order
  std::vector<int> topics;                 // planted topic per column
  hrnmf::Vocabulary vocabulary;
  hrnmf::TermDocMatrix matrix;             // weighted
};

inline Planted planted(const hrnmf::SyntheticOptions& options) {
  auto corpus = hrnmf::generate_synthetic(options);
  std::map<std::string, int> topic_of;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) topic_of[corpus.documents[i].id] = corpus.topics[i];
  hrnmf::tokenize_all(corpus.documents, hrnmf::StopRules::english());
  auto pruned = hrnmf::prune_corpus(std::move(corpus.documents));
  Planted p;
  p.documents = std::move(pruned.documents);
  p.vocabulary = std::move(pruned.vocabulary);
  for (const auto& d : p.documents) p.topics.push_back(topic_of.at(d.id));
  p.matrix = hrnmf::tfidf(hrnmf::count_matrix(p.documents, p.vocabulary));
  return p;
}

// Weighted matrix with two disjoint term blocks; documents 0..n1-1 use block 1.
inline hrnmf::TermDocMatrix two_blocks(int terms_per_block, int n1, int n2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, terms_per_block - 1);
  std::vector<hrnmf::Document> docs;
  for (int j = 0; j < n1 + n2; ++j) {
    const std::string prefix = j < n1 ? "alpha" : "beta";
    hrnmf::Document d{"d" + std::to_string(j), j < n1 ? "A" : "B", "", {}};
    for (int k = 0; k < 12; ++k) d.tokens.push_back(prefix + std::to_string(pick(rng)));
    docs.push_back(std::move(d));
  }
  const auto vocab = hrnmf::Vocabulary::from_documents(docs);
  return hrnmf::tfidf(hrnmf::count_matrix(docs, vocab));
}

}  // namespace fixture

#endif  // HRNMF_TESTS_FIXTURES_HPP
