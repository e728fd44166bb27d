#ifndef HRNMF_SYNTHETIC_HPP
#define HRNMF_SYNTHETIC_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrnmf/corpus.hpp"

namespace hrnmf {

/// Planted-topic corpus: each topic owns a disjoint vocabulary, documents draw
/// their words from their topic's vocabulary and, at rate noise, from the union
/// of all vocabularies.
struct SyntheticOptions {
  std::size_t topics = 4;
  std::size_t docs_per_topic = 250;
  std::size_t vocab_per_topic = 50;
  std::size_t min_len = 15;
  std::size_t max_len = 25;
  double noise = 0.1;
  double label_noise = 0.0;        // chance a document carries another topic's label
  std::size_t labels_per_topic = 1;
  bool filler = true;              // sprinkle role words and stop words into the text
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticCorpus {
  SyntheticOptions options;
  std::vector<Document> documents;  // shuffled, ids doc_00001...
  std::vector<int> topics;          // planted topic (1-based) per document
  std::vector<std::vector<std::string>> vocabularies;
};

/// Word number i of the synthetic lexicon. Words are lowercase, distinct,
/// left unchanged by the stemmer and never stop or role words.
std::string synthetic_word(std::size_t i);

std::string topic_label(std::size_t topic, std::size_t sublabel, std::size_t labels_per_topic);

SyntheticCorpus generate_synthetic(const SyntheticOptions& options);

void write_documents_csv(const std::vector<Document>& docs, std::ostream& out);
nlohmann::json to_json(const SyntheticOptions& options);

}  // namespace hrnmf

#endif  // HRNMF_SYNTHETIC_HPP
