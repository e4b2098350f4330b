#pragma once

// Penn-Treebank constituency trees and the tree-derived features used by the
// probing tasks.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probekit {

/// Labeled ordered tree. Leaves carry a token and no children; every other
/// node carries a label. A preterminal is a node whose only child is a leaf.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::optional<std::string> token;

  static ParseTree leaf(std::string token);
  static ParseTree node(std::string label, std::vector<ParseTree> children);

  bool is_leaf() const noexcept { return token.has_value(); }
  bool is_preterminal() const noexcept { return children.size() == 1 && children.front().is_leaf(); }
  /// Number of tokens in the yield.
  std::size_t size() const;

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

/// Parses one bracketed line, e.g. "(ROOT (S (NP (DT The) (NN cat)) (VP (VBZ sleeps)) (. .)))".
/// A label-less outer bracket "( (S ...) )", as some treebanks write it, becomes ROOT.
/// Throws InputError with the byte offset for unbalanced or empty constituents.
ParseTree parse_bracketed(std::string_view line);

/// Single-line bracketed rendering; parse_bracketed(to_bracketed(t)) == t.
std::string to_bracketed(const ParseTree& tree);

std::vector<std::string> leaves(const ParseTree& tree);

/// POS tags of the tokens, in order.
std::vector<std::string> preterminal_tags(const ParseTree& tree);

/// Longest root-to-token path, counted in labeled non-leaf nodes (ROOT and the
/// preterminal included). "(ROOT (NN dog))" has depth 2.
int tree_depth(const ParseTree& tree);

/// First child of ROOT labeled S, or nullptr.
const ParseTree* main_clause(const ParseTree& tree);

/// Labels of the children of the main S.
std::optional<std::vector<std::string>> top_constituent_sequence(const ParseTree& tree);

struct TaggedToken {
  std::size_t index = 0;  ///< 0-based token position in the sentence
  std::string tag;
  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

/// First finite verb (VBP, VBZ, VBD) on the head-VP chain of the main S.
/// Material inside embedded S and SBAR constituents is never visited.
std::optional<TaggedToken> main_clause_verb(const ParseTree& tree);

enum class Tense { Past, Present };
std::optional<Tense> tense_of(std::string_view tag);
std::string_view to_string(Tense tense);

enum class GrammaticalNumber { Singular, Plural };
std::optional<GrammaticalNumber> number_of(std::string_view tag);
std::string_view to_string(GrammaticalNumber number);

bool is_noun_tag(std::string_view tag);
bool is_verb_tag(std::string_view tag);
bool is_finite_verb_tag(std::string_view tag);

struct ArgumentHeads {
  std::optional<TaggedToken> subject;
  std::optional<TaggedToken> object;
};

/// Subject: head noun of the NP child of the main S that precedes its VP.
/// Object: head noun of the first NP child of the deepest VP on the head chain.
/// The head noun of an NP is its rightmost noun preterminal child; an NP with
/// none defers to its first NP child.
ArgumentHeads argument_heads(const ParseTree& tree);

/// Half-open token range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t length() const noexcept { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// Two coordinate clauses: first [, ] connective second [trailing].
struct ClauseSplit {
  Span first;
  std::optional<std::size_t> comma;
  std::size_t connective = 0;
  Span second;
  std::optional<Span> trailing;
  friend bool operator==(const ClauseSplit&, const ClauseSplit&) = default;
};

/// Coordinating tokens accepted as clause connectives.
bool is_clause_connective(std::string_view token);

/// Matches main-S children against `S (,)? CC S (.)?` with exactly two clauses.
std::optional<ClauseSplit> coordinate_clauses(const ParseTree& tree);

/// True when the split's pieces tile [0, token_count) in order.
bool split_covers(const ClauseSplit& split, std::size_t token_count);

}  // namespace probekit
