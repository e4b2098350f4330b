#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "probekit/tree.hpp"

namespace probekit {

/// Sentences admitted to task pools have this many tokens, inclusive.
inline constexpr std::size_t kMinTaskTokens = 5;
inline constexpr std::size_t kMaxTaskTokens = 28;

struct Sentence {
  std::vector<std::string> tokens;
  std::size_t id = 0;
};

/// Aligned sentences and parses. Immutable once built.
class Corpus {
 public:
  Corpus() = default;
  /// Validates that each parse's leaves equal the corresponding tokens.
  Corpus(std::vector<Sentence> sentences, std::vector<ParseTree> parses);
  /// Builds sentences from tree yields; ids follow vector order.
  static Corpus from_trees(std::vector<ParseTree> parses);

  std::size_t size() const noexcept { return sentences_.size(); }
  bool empty() const noexcept { return sentences_.empty(); }
  const Sentence& sentence(std::size_t i) const { return sentences_.at(i); }
  const ParseTree& parse(std::size_t i) const { return parses_.at(i); }
  const std::vector<Sentence>& sentences() const noexcept { return sentences_; }
  const std::vector<ParseTree>& parses() const noexcept { return parses_; }

  /// 5 to 28 tokens: usable by task generators.
  bool in_task_range(std::size_t i) const;

 private:
  std::vector<Sentence> sentences_;
  std::vector<ParseTree> parses_;
};

/// Reads the two-file format: space-separated tokens, one bracketed parse per line.
Corpus load_corpus(const std::filesystem::path& sentence_path, const std::filesystem::path& parse_path);
void write_corpus(const Corpus& corpus, const std::filesystem::path& sentence_path,
                  const std::filesystem::path& parse_path);

/// Case-folded unigram and within-sentence bigram counts.
class FrequencyTable {
 public:
  using Count = std::uint64_t;

  FrequencyTable() = default;
  /// Counts are taken as given; keys with zero counts are dropped.
  FrequencyTable(std::unordered_map<std::string, Count> unigrams,
                 std::unordered_map<std::string, Count> bigrams);

  /// Count of the folded word; 0 when absent.
  Count count(std::string_view word) const;
  Count bigram_count(std::string_view left, std::string_view right) const;
  Count total_unigrams() const noexcept { return total_; }
  std::size_t vocabulary_size() const noexcept { return by_rank_.size(); }

  /// Words by descending count, ties broken lexicographically.
  const std::vector<std::string>& words_by_rank() const noexcept { return by_rank_; }
  std::optional<std::size_t> rank(std::string_view word) const;

  const std::unordered_map<std::string, Count>& unigrams() const noexcept { return unigrams_; }
  const std::unordered_map<std::string, Count>& bigrams() const noexcept { return bigrams_; }

  static std::string bigram_key(std::string_view left, std::string_view right);

 private:
  std::unordered_map<std::string, Count> unigrams_;
  std::unordered_map<std::string, Count> bigrams_;
  std::unordered_map<std::string, std::size_t> rank_;
  std::vector<std::string> by_rank_;
  Count total_ = 0;
};

FrequencyTable build_frequency_table(const Corpus& corpus);

/// Words ranked in [lo_rank, hi_rank), in rank order.
std::vector<std::string> mid_frequency_words(const FrequencyTable& table, std::size_t lo_rank, std::size_t hi_rank);

std::optional<std::size_t> word_rank(const FrequencyTable& table, std::string_view word);

}  // namespace probekit
