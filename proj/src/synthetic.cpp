#include "hrnmf/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hrnmf/csv.hpp"

namespace hrnmf {

namespace {

constexpr std::string_view kConsonants = "bdfgkmnprtz";
constexpr std::string_view kVowels = "aou";
constexpr std::size_t kSyllables = kConsonants.size() * kVowels.size();

std::string syllable(std::size_t s) {
  return {kConsonants[s / kVowels.size()], kVowels[s % kVowels.size()]};
}

const std::vector<std::string_view>& fillers() {
  static const std::vector<std::string_view> words{"THE", "AND", "SUSP", "V1", "VICT", "S2", "WITH", "TO"};
  return words;
}

}  // namespace

void SyntheticOptions::validate() const {
  if (topics < 1 || docs_per_topic < 1 || vocab_per_topic < 1 || labels_per_topic < 1) {
    throw std::invalid_argument("synthetic: counts must be at least 1");
  }
  if (min_len < 1 || min_len > max_len) throw std::invalid_argument("synthetic: need 1 <= min_len <= max_len");
  if (!(noise >= 0.0 && noise <= 1.0) || !(label_noise >= 0.0 && label_noise <= 1.0)) {
    throw std::invalid_argument("synthetic: rates must lie in [0, 1]");
  }
  if (topics * vocab_per_topic > kSyllables * kSyllables * kSyllables) {
    throw std::invalid_argument("synthetic: lexicon too small");
  }
}

// Ends in 'k' so no stemming rule applies.
std::string synthetic_word(std::size_t i) {
  return syllable(i % kSyllables) + syllable(i / kSyllables % kSyllables) +
         syllable(i / (kSyllables * kSyllables) % kSyllables) + "k";
}

std::string topic_label(std::size_t topic, std::size_t sublabel, std::size_t labels_per_topic) {
  std::string label = "type_" + std::to_string(topic);
  if (labels_per_topic > 1) label += "_" + std::to_string(sublabel);
  return label;
}

SyntheticCorpus generate_synthetic(const SyntheticOptions& options) {
  options.validate();
  SyntheticCorpus corpus;
  corpus.options = options;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::string> lexicon;
  for (std::size_t t = 0; t < options.topics; ++t) {
    auto& vocab = corpus.vocabularies.emplace_back();
    for (std::size_t i = 0; i < options.vocab_per_topic; ++i) {
      vocab.push_back(synthetic_word(t * options.vocab_per_topic + i));
      lexicon.push_back(vocab.back());
    }
  }

  std::uniform_int_distribution<std::size_t> length(options.min_len, options.max_len);
  std::uniform_int_distribution<std::size_t> own(0, options.vocab_per_topic - 1);
  std::uniform_int_distribution<std::size_t> any(0, lexicon.size() - 1);
  std::uniform_int_distribution<std::size_t> sublabel(1, options.labels_per_topic);
  std::uniform_int_distribution<std::size_t> filler(0, fillers().size() - 1);

  struct Planted {
    int topic;
    std::string label;
    std::string text;
  };
  std::vector<Planted> planted;
  for (std::size_t t = 0; t < options.topics; ++t) {
    for (std::size_t d = 0; d < options.docs_per_topic; ++d) {
      std::string text;
      const auto n = length(rng);
      for (std::size_t w = 0; w < n; ++w) {
        const auto& word = unit(rng) < options.noise ? lexicon[any(rng)] : corpus.vocabularies[t][own(rng)];
        if (!text.empty()) text += ' ';
        if (options.filler && unit(rng) < 0.2) {
          text += fillers()[filler(rng)];
          text += ' ';
        }
        text += word;
      }
      std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::toupper(c); });

      std::size_t label_topic = t;
      if (options.topics > 1 && unit(rng) < options.label_noise) {
        label_topic = (t + 1 + std::uniform_int_distribution<std::size_t>(0, options.topics - 2)(rng)) % options.topics;
      }
      planted.push_back({static_cast<int>(t + 1), topic_label(label_topic + 1, sublabel(rng), options.labels_per_topic),
                         std::move(text)});
    }
  }

  std::shuffle(planted.begin(), planted.end(), rng);
  for (std::size_t i = 0; i < planted.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "doc_%05zu", i + 1);
    corpus.documents.push_back({id, std::move(planted[i].label), std::move(planted[i].text), {}});
    corpus.topics.push_back(planted[i].topic);
  }
  return corpus;
}

void write_documents_csv(const std::vector<Document>& docs, std::ostream& out) {
  write_csv_row(out, {"id", "label", "text"});
  for (const auto& d : docs) write_csv_row(out, {d.id, d.label, d.raw_text});
}

nlohmann::json to_json(const SyntheticOptions& o) {
  return {{"generator", "planted-topics"},
          {"topics", o.topics},
          {"docs_per_topic", o.docs_per_topic},
          {"vocab_per_topic", o.vocab_per_topic},
          {"min_len", o.min_len},
          {"max_len", o.max_len},
          {"noise", o.noise},
          {"label_noise", o.label_noise},
          {"labels_per_topic", o.labels_per_topic},
          {"filler", o.filler},
          {"seed", o.seed}};
}

}  // namespace hrnmf
