#include "hrnmf/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <unordered_set>

#include "hrnmf/csv.hpp"
#include "hrnmf/stemmer.hpp"

namespace hrnmf {

StopRules StopRules::english() {
  StopRules rules;
  for (const auto word : english_stop_words()) rules.stop_words.emplace(word);
  return rules;
}

bool StopRules::is_stop_word(std::string_view lowercase_token) const {
  return stop_words.find(lowercase_token) != stop_words.end();
}

bool StopRules::is_role_word(std::string_view token) {
  static constexpr std::array<std::string_view, 10> kRoots{
      "s", "su", "susp", "suspect", "suspects", "v", "vic", "vict", "victim", "victims"};
  std::size_t end = token.size();
  while (end > 0 && token[end - 1] >= '0' && token[end - 1] <= '9') --end;
  const auto root = token.substr(0, end);
  return std::any_of(kRoots.begin(), kRoots.end(), [&](std::string_view r) {
    return r.size() == root.size() &&
           std::equal(r.begin(), r.end(), root.begin(), [](char a, char b) {
             return a == (b >= 'A' && b <= 'Z' ? static_cast<char>(b - 'A' + 'a') : b);
           });
  });
}

std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list '" + path + "'");
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string word = line.substr(start);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    words.push_back(std::move(word));
  }
  return words;
}

namespace {

bool ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text, const StopRules& rules,
                                  TokenizeOptions options) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < raw_text.size()) {
    if (!ascii_alnum(raw_text[i])) {
      ++i;
      continue;
    }
    std::string token;
    bool has_letter = false;
    for (; i < raw_text.size() && ascii_alnum(raw_text[i]); ++i) {
      char c = raw_text[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      has_letter = has_letter || (c >= 'a' && c <= 'z');
      token.push_back(c);
    }
    if (!has_letter || rules.discards(token)) continue;
    tokens.push_back(options.stem ? porter_stem(token) : std::move(token));
  }
  return tokens;
}

void tokenize_all(std::vector<Document>& docs, const StopRules& rules, TokenizeOptions options) {
  for (auto& doc : docs) doc.tokens = tokenize(doc.raw_text, rules, options);
}

std::size_t Vocabulary::find(const std::string& term) const {
  const auto it = index.find(term);
  return it == index.end() ? terms.size() : it->second;
}

Vocabulary Vocabulary::from_documents(const std::vector<Document>& docs) {
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> stats;
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& token : doc.tokens) {
      auto& [count, df] = stats[token];
      ++count;
      if (seen.insert(token).second) ++df;
    }
  }
  Vocabulary vocab;
  vocab.num_documents = docs.size();
  vocab.terms.reserve(stats.size());
  for (const auto& entry : stats) vocab.terms.push_back(entry.first);
  std::sort(vocab.terms.begin(), vocab.terms.end());
  vocab.corpus_count.reserve(vocab.terms.size());
  vocab.doc_freq.reserve(vocab.terms.size());
  for (std::size_t row = 0; row < vocab.terms.size(); ++row) {
    const auto& [count, df] = stats.at(vocab.terms[row]);
    vocab.index.emplace(vocab.terms[row], row);
    vocab.corpus_count.push_back(count);
    vocab.doc_freq.push_back(df);
  }
  return vocab;
}

PrunedCorpus prune_corpus(std::vector<Document> docs, PruneOptions options) {
  PrunedCorpus result;
  while (true) {
    ++result.rounds;
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& doc : docs) {
      for (const auto& token : doc.tokens) ++counts[token];
    }
    bool changed = false;
    for (auto& doc : docs) {
      const auto removed = std::erase_if(doc.tokens, [&](const std::string& token) {
        return counts.at(token) < options.min_term_count;
      });
      changed = changed || removed > 0;
    }
    const auto dropped = std::erase_if(
        docs, [&](const Document& doc) { return doc.tokens.size() < options.min_doc_len; });
    changed = changed || dropped > 0;
    if (!changed) break;
  }
  result.vocabulary = Vocabulary::from_documents(docs);
  result.documents = std::move(docs);
  return result;
}

std::vector<Document> read_documents(const std::string& path, const ColumnNames& columns) {
  const Table table = read_delimited(path);
  const auto id_col = table.column(columns.id);
  const auto label_col = table.column(columns.label);
  const auto text_col = table.column(columns.text);
  std::vector<Document> docs;
  docs.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    Document doc;
    doc.id = sanitize_utf8(row[id_col]);
    doc.label = sanitize_utf8(row[label_col]);
    doc.raw_text = sanitize_utf8(row[text_col]);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace hrnmf
