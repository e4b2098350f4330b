#include "probekit/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "probekit/error.hpp"
#include "probekit/text.hpp"

namespace probekit {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void check_aligned(const std::vector<std::string>& tokens, const ParseTree& parse, std::size_t line) {
  const auto yield = leaves(parse);
  if (yield.size() != tokens.size()) {
    throw InputError("parse has " + std::to_string(yield.size()) + " leaves but sentence has " +
                         std::to_string(tokens.size()) + " tokens",
                     line);
  }
  for (std::size_t k = 0; k < yield.size(); ++k) {
    if (yield[k] != tokens[k]) {
      throw InputError("leaf '" + yield[k] + "' does not match token '" + tokens[k] + "' at position " +
                           std::to_string(k + 1),
                       line);
    }
  }
}

}  // namespace

Corpus::Corpus(std::vector<Sentence> sentences, std::vector<ParseTree> parses)
    : sentences_(std::move(sentences)), parses_(std::move(parses)) {
  if (sentences_.size() != parses_.size()) {
    throw InputError("corpus has " + std::to_string(sentences_.size()) + " sentences but " +
                     std::to_string(parses_.size()) + " parses");
  }
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    if (sentences_[i].tokens.empty()) throw InputError("empty sentence", i + 1);
    check_aligned(sentences_[i].tokens, parses_[i], i + 1);
  }
}

Corpus Corpus::from_trees(std::vector<ParseTree> parses) {
  std::vector<Sentence> sentences;
  sentences.reserve(parses.size());
  for (std::size_t i = 0; i < parses.size(); ++i) sentences.push_back({leaves(parses[i]), i});
  return Corpus(std::move(sentences), std::move(parses));
}

bool Corpus::in_task_range(std::size_t i) const {
  const std::size_t n = sentences_.at(i).tokens.size();
  return n >= kMinTaskTokens && n <= kMaxTaskTokens;
}

Corpus load_corpus(const std::filesystem::path& sentence_path, const std::filesystem::path& parse_path) {
  const auto sentence_lines = read_lines(sentence_path);
  const auto parse_lines = read_lines(parse_path);
  if (sentence_lines.size() != parse_lines.size()) {
    throw InputError("line-count mismatch: " + std::to_string(sentence_lines.size()) + " sentences vs " +
                     std::to_string(parse_lines.size()) + " parses");
  }

  std::vector<Sentence> sentences;
  std::vector<ParseTree> parses;
  sentences.reserve(sentence_lines.size());
  parses.reserve(parse_lines.size());
  for (std::size_t i = 0; i < sentence_lines.size(); ++i) {
    const std::size_t line = i + 1;
    auto tokens = split_whitespace(sentence_lines[i]);
    if (tokens.empty()) throw InputError("empty sentence", line);

    ParseTree tree;
    try {
      tree = parse_bracketed(parse_lines[i]);
    } catch (const InputError& e) {
      throw InputError(std::string("malformed parse: ") + e.what(), line);
    }
    if (tree.label != "ROOT" && tree.label != "TOP") {
      throw InputError("malformed parse: top label '" + tree.label + "' is not ROOT", line);
    }
    check_aligned(tokens, tree, line);
    sentences.push_back({std::move(tokens), i});
    parses.push_back(std::move(tree));
  }
  return Corpus(std::move(sentences), std::move(parses));
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& sentence_path,
                  const std::filesystem::path& parse_path) {
  std::ofstream sent(sentence_path, std::ios::binary);
  std::ofstream par(parse_path, std::ios::binary);
  if (!sent || !par) throw InputError("cannot write corpus files");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    sent << join(corpus.sentence(i).tokens) << '\n';
    par << to_bracketed(corpus.parse(i)) << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string FrequencyTable::bigram_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back(' ');
  key.append(right);
  return key;
}

FrequencyTable::FrequencyTable(std::unordered_map<std::string, Count> unigrams,
                               std::unordered_map<std::string, Count> bigrams)
    : unigrams_(std::move(unigrams)), bigrams_(std::move(bigrams)) {
  std::erase_if(unigrams_, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(bigrams_, [](const auto& kv) { return kv.second == 0; });

  by_rank_.reserve(unigrams_.size());
  for (const auto& [word, n] : unigrams_) {
    by_rank_.push_back(word);
    total_ += n;
  }
  std::sort(by_rank_.begin(), by_rank_.end(), [this](const std::string& a, const std::string& b) {
    const Count ca = unigrams_.at(a);
    const Count cb = unigrams_.at(b);
    return ca != cb ? ca > cb : a < b;
  });
  rank_.reserve(by_rank_.size());
  for (std::size_t r = 0; r < by_rank_.size(); ++r) rank_.emplace(by_rank_[r], r);
}

FrequencyTable::Count FrequencyTable::count(std::string_view word) const {
  const auto it = unigrams_.find(fold_case(word));
  return it == unigrams_.end() ? 0 : it->second;
}

FrequencyTable::Count FrequencyTable::bigram_count(std::string_view left, std::string_view right) const {
  const auto it = bigrams_.find(bigram_key(fold_case(left), fold_case(right)));
  return it == bigrams_.end() ? 0 : it->second;
}

std::optional<std::size_t> FrequencyTable::rank(std::string_view word) const {
  const auto it = rank_.find(fold_case(word));
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

FrequencyTable build_frequency_table(const Corpus& corpus) {
  if (corpus.empty()) throw InputError("cannot build a frequency table from an empty corpus");
  std::unordered_map<std::string, FrequencyTable::Count> unigrams;
  std::unordered_map<std::string, FrequencyTable::Count> bigrams;
  for (const auto& s : corpus.sentences()) {
    std::string previous;
    for (std::size_t k = 0; k < s.tokens.size(); ++k) {
      std::string folded = fold_case(s.tokens[k]);
      ++unigrams[folded];
      if (k > 0) ++bigrams[FrequencyTable::bigram_key(previous, folded)];
      previous = std::move(folded);
    }
  }
  return FrequencyTable(std::move(unigrams), std::move(bigrams));
}

std::vector<std::string> mid_frequency_words(const FrequencyTable& table, std::size_t lo_rank, std::size_t hi_rank) {
  if (lo_rank >= hi_rank || hi_rank > table.vocabulary_size()) {
    throw InputError("rank range [" + std::to_string(lo_rank) + ", " + std::to_string(hi_rank) +
                     ") exceeds vocabulary of " + std::to_string(table.vocabulary_size()));
  }
  const auto& ranked = table.words_by_rank();
  return {ranked.begin() + static_cast<std::ptrdiff_t>(lo_rank), ranked.begin() + static_cast<std::ptrdiff_t>(hi_rank)};
}

std::optional<std::size_t> word_rank(const FrequencyTable& table, std::string_view word) { return table.rank(word); }

}  // namespace probekit
