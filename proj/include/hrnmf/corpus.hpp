#ifndef HRNMF_CORPUS_HPP
#define HRNMF_CORPUS_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hrnmf {

struct Document {
  std::string id;
  std::string label;
  std::string raw_text;
  std::vector<std::string> tokens;
};

/// Stop-word set plus the suspect/victim role-word rule.
///
/// A token is a role word when, case-insensitively, it is one of
/// s, su, susp, suspect, suspects, v, vic, vict, victim, victims, optionally
/// followed by a run of digits ("V1", "S2", "susp3").
struct StopRules {
  std::set<std::string, std::less<>> stop_words;

  /// Standard English list, no role words (those are matched by rule).
  static StopRules english();

  bool is_stop_word(std::string_view lowercase_token) const;
  static bool is_role_word(std::string_view token);
  bool discards(std::string_view lowercase_token) const {
    return is_stop_word(lowercase_token) || is_role_word(lowercase_token);
  }
};

const std::vector<std::string_view>& english_stop_words();

// Reads one word per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> read_word_list(const std::string& path);

struct TokenizeOptions {
  bool stem = true;
};

/// Lowercased maximal runs of ASCII alphanumerics, minus digit-only runs,
/// stop words and role words, optionally Porter-stemmed.
std::vector<std::string> tokenize(std::string_view raw_text, const StopRules& rules,
                                  TokenizeOptions options = {});

struct Vocabulary {
  std::vector<std::string> terms;  // sorted
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::size_t> corpus_count;
  std::vector<std::size_t> doc_freq;
  std::size_t num_documents = 0;

  std::size_t size() const { return terms.size(); }
  bool contains(const std::string& term) const { return index.contains(term); }
  // Row of a term, or size() when absent.
  std::size_t find(const std::string& term) const;

  /// Builds a vocabulary holding every token of docs.
  static Vocabulary from_documents(const std::vector<Document>& docs);
};

struct PruneOptions {
  std::size_t min_term_count = 5;
  std::size_t min_doc_len = 3;
};

struct PrunedCorpus {
  std::vector<Document> documents;
  Vocabulary vocabulary;
  std::size_t rounds = 0;
};

/// Alternately drops terms occurring fewer than min_term_count times and
/// documents shorter than min_doc_len tokens until neither rule fires.
///
/// Both rules only ever remove, so the loop reaches the unique largest
/// sub-corpus satisfying both thresholds regardless of document order.
/// Surviving documents keep their input order; their tokens are filtered in
/// place. The result may be empty.
PrunedCorpus prune_corpus(std::vector<Document> docs, PruneOptions options = {});

struct ColumnNames {
  std::string id = "id";
  std::string label = "label";
  std::string text = "text";
};

/// Reads id/label/text records from a comma or tab separated file with a
/// header row. Invalid UTF-8 in any field is replaced, never fatal. Tokens are
/// left empty.
std::vector<Document> read_documents(const std::string& path, const ColumnNames& columns = {});

void tokenize_all(std::vector<Document>& docs, const StopRules& rules, TokenizeOptions options = {});

}  // namespace hrnmf

#endif  // HRNMF_CORPUS_HPP
