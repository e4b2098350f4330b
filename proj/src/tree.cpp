#include "probekit/tree.hpp"

#include <algorithm>
#include <array>

#include "probekit/error.hpp"
#include "probekit/text.hpp"

namespace probekit {

ParseTree ParseTree::leaf(std::string token) {
  ParseTree t;
  t.token = std::move(token);
  return t;
}

ParseTree ParseTree::node(std::string label, std::vector<ParseTree> children) {
  ParseTree t;
  t.label = std::move(label);
  t.children = std::move(children);
  return t;
}

std::size_t ParseTree::size() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Reading and writing

namespace {

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  ParseTree read_top() {
    skip_space();
    if (at_end()) fail("empty parse");
    if (peek() != '(') fail("expected '('");
    ParseTree tree = read_node(/*top=*/true);
    skip_space();
    if (!at_end()) fail("trailing characters after tree");
    return tree;
  }

 private:
  ParseTree read_node(bool top) {
    const std::size_t open = pos_;
    ++pos_;  // '('
    skip_space();
    if (at_end()) fail_at(open, "unbalanced brackets: '(' never closed");
    std::string label;
    if (peek() != '(' && peek() != ')') label = read_atom();
    skip_space();

    std::vector<ParseTree> children;
    bool has_token = false;
    while (true) {
      if (at_end()) fail_at(open, "unbalanced brackets: '(' never closed");
      const char c = peek();
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (has_token) fail("constituent mixes a token with subtrees");
        children.push_back(read_node(false));
      } else {
        if (!children.empty()) fail("constituent mixes a token with subtrees");
        children.push_back(ParseTree::leaf(read_atom()));
        has_token = true;
      }
      skip_space();
    }

    if (children.empty()) fail_at(open, "empty constituent");
    if (label.empty()) {
      if (!top || has_token) fail_at(open, "constituent label missing");
      label = "ROOT";
    }
    if (has_token && children.size() != 1) fail_at(open, "preterminal with more than one token");
    return ParseTree::node(std::move(label), std::move(children));
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = peek();
      if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t where, const std::string& what) const {
    throw InputError(what + " (at offset " + std::to_string(where) + ")");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write_bracketed(const ParseTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += *t.token;
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    write_bracketed(c, out);
  }
  out += ')';
}

void collect_leaves(const ParseTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(*t.token);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void collect_tags(const ParseTree& t, std::vector<std::string>& out) {
  if (t.is_preterminal()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) {
    if (!c.is_leaf()) collect_tags(c, out);
  }
}

}  // namespace

ParseTree parse_bracketed(std::string_view line) { return BracketReader(line).read_top(); }

std::string to_bracketed(const ParseTree& tree) {
  std::string out;
  write_bracketed(tree, out);
  return out;
}

std::vector<std::string> leaves(const ParseTree& tree) {
  std::vector<std::string> out;
  collect_leaves(tree, out);
  return out;
}

std::vector<std::string> preterminal_tags(const ParseTree& tree) {
  std::vector<std::string> out;
  collect_tags(tree, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural features

int tree_depth(const ParseTree& tree) {
  if (tree.is_leaf()) return 0;
  int deepest = 0;
  for (const auto& c : tree.children) deepest = std::max(deepest, tree_depth(c));
  return deepest + 1;
}

const ParseTree* main_clause(const ParseTree& tree) {
  for (const auto& c : tree.children) {
    if (c.label == "S") return &c;
  }
  return nullptr;
}

std::optional<std::vector<std::string>> top_constituent_sequence(const ParseTree& tree) {
  const ParseTree* s = main_clause(tree);
  if (s == nullptr) return std::nullopt;
  std::vector<std::string> labels;
  labels.reserve(s->children.size());
  for (const auto& c : s->children) labels.push_back(c.is_leaf() ? *c.token : c.label);
  return labels;
}

// ---------------------------------------------------------------------------
// Tags

bool is_noun_tag(std::string_view tag) { return tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS"; }

bool is_verb_tag(std::string_view tag) {
  return tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" || tag == "VBZ";
}

bool is_finite_verb_tag(std::string_view tag) { return tag == "VBP" || tag == "VBZ" || tag == "VBD"; }

std::optional<Tense> tense_of(std::string_view tag) {
  if (tag == "VBD") return Tense::Past;
  if (tag == "VBP" || tag == "VBZ") return Tense::Present;
  return std::nullopt;
}

std::string_view to_string(Tense tense) { return tense == Tense::Past ? "Past" : "Present"; }

std::optional<GrammaticalNumber> number_of(std::string_view tag) {
  if (tag == "NN" || tag == "NNP") return GrammaticalNumber::Singular;
  if (tag == "NNS" || tag == "NNPS") return GrammaticalNumber::Plural;
  return std::nullopt;
}

std::string_view to_string(GrammaticalNumber number) {
  return number == GrammaticalNumber::Singular ? "Singular" : "Plural";
}

// ---------------------------------------------------------------------------
// Heads

namespace {

// Token offset of each child of `parent`, given the parent's own offset.
std::vector<std::size_t> child_offsets(const ParseTree& parent, std::size_t offset) {
  std::vector<std::size_t> out;
  out.reserve(parent.children.size());
  for (const auto& c : parent.children) {
    out.push_back(offset);
    offset += c.size();
  }
  return out;
}

std::optional<std::size_t> offset_of_main_clause(const ParseTree& tree) {
  std::size_t offset = 0;
  for (const auto& c : tree.children) {
    if (c.label == "S") return offset;
    offset += c.size();
  }
  return std::nullopt;
}

std::optional<TaggedToken> finite_verb_on_chain(const ParseTree& vp, std::size_t offset) {
  const auto offsets = child_offsets(vp, offset);
  for (std::size_t i = 0; i < vp.children.size(); ++i) {
    const ParseTree& c = vp.children[i];
    if (c.is_preterminal() && is_finite_verb_tag(c.label)) return TaggedToken{offsets[i], c.label};
    if (c.label == "VP") {
      if (auto found = finite_verb_on_chain(c, offsets[i])) return found;
    }
  }
  return std::nullopt;
}

std::optional<TaggedToken> head_noun(const ParseTree& np, std::size_t offset) {
  const auto offsets = child_offsets(np, offset);
  for (std::size_t i = np.children.size(); i-- > 0;) {
    const ParseTree& c = np.children[i];
    if (c.is_preterminal() && is_noun_tag(c.label)) return TaggedToken{offsets[i], c.label};
  }
  for (std::size_t i = 0; i < np.children.size(); ++i) {
    if (np.children[i].label == "NP") return head_noun(np.children[i], offsets[i]);
  }
  return std::nullopt;
}

struct Located {
  const ParseTree* node = nullptr;
  std::size_t offset = 0;
};

Located first_child_labeled(const ParseTree& parent, std::size_t offset, std::string_view label) {
  const auto offsets = child_offsets(parent, offset);
  for (std::size_t i = 0; i < parent.children.size(); ++i) {
    if (parent.children[i].label == label) return {&parent.children[i], offsets[i]};
  }
  return {};
}

}  // namespace

std::optional<TaggedToken> main_clause_verb(const ParseTree& tree) {
  const ParseTree* s = main_clause(tree);
  if (s == nullptr) return std::nullopt;
  const Located vp = first_child_labeled(*s, *offset_of_main_clause(tree), "VP");
  if (vp.node == nullptr) return std::nullopt;
  return finite_verb_on_chain(*vp.node, vp.offset);
}

ArgumentHeads argument_heads(const ParseTree& tree) {
  ArgumentHeads heads;
  const ParseTree* s = main_clause(tree);
  if (s == nullptr) return heads;
  const std::size_t s_offset = *offset_of_main_clause(tree);
  const auto offsets = child_offsets(*s, s_offset);

  std::optional<std::size_t> vp_index;
  for (std::size_t i = 0; i < s->children.size(); ++i) {
    if (s->children[i].label == "VP") {
      vp_index = i;
      break;
    }
  }
  if (!vp_index) return heads;

  for (std::size_t i = *vp_index; i-- > 0;) {
    if (s->children[i].label == "NP") {
      heads.subject = head_noun(s->children[i], offsets[i]);
      break;
    }
  }

  Located vp{&s->children[*vp_index], offsets[*vp_index]};
  for (Located inner = first_child_labeled(*vp.node, vp.offset, "VP"); inner.node != nullptr;
       inner = first_child_labeled(*vp.node, vp.offset, "VP")) {
    vp = inner;
  }
  const Located np = first_child_labeled(*vp.node, vp.offset, "NP");
  if (np.node != nullptr) heads.object = head_noun(*np.node, np.offset);
  return heads;
}

// ---------------------------------------------------------------------------
// Coordination

bool is_clause_connective(std::string_view token) {
  static constexpr std::array<std::string_view, 5> kConnectives = {"and", "but", "or", "so", "yet"};
  const std::string folded = fold_case(token);
  return std::find(kConnectives.begin(), kConnectives.end(), folded) != kConnectives.end();
}

std::optional<ClauseSplit> coordinate_clauses(const ParseTree& tree) {
  const ParseTree* s = main_clause(tree);
  if (s == nullptr) return std::nullopt;
  const auto& kids = s->children;
  const auto offsets = child_offsets(*s, *offset_of_main_clause(tree));

  std::size_t i = 0;
  auto labeled = [&](std::size_t k, std::string_view label) { return k < kids.size() && kids[k].label == label; };

  ClauseSplit split;
  if (!labeled(i, "S")) return std::nullopt;
  split.first = {offsets[i], offsets[i] + kids[i].size()};
  ++i;
  if (labeled(i, ",") && kids[i].is_preterminal()) {
    split.comma = offsets[i];
    ++i;
  }
  if (!labeled(i, "CC") || !kids[i].is_preterminal() || !is_clause_connective(*kids[i].children.front().token)) {
    return std::nullopt;
  }
  split.connective = offsets[i];
  ++i;
  if (!labeled(i, "S")) return std::nullopt;
  split.second = {offsets[i], offsets[i] + kids[i].size()};
  ++i;
  if (labeled(i, ".")) {
    split.trailing = Span{offsets[i], offsets[i] + kids[i].size()};
    ++i;
  }
  if (i != kids.size()) return std::nullopt;
  return split;
}

bool split_covers(const ClauseSplit& split, std::size_t token_count) {
  std::size_t cursor = 0;
  auto take = [&](Span s) {
    if (s.begin != cursor || s.end <= s.begin) return false;
    cursor = s.end;
    return true;
  };
  if (!take(split.first)) return false;
  if (split.comma && !take({*split.comma, *split.comma + 1})) return false;
  if (!take({split.connective, split.connective + 1})) return false;
  if (!take(split.second)) return false;
  if (split.trailing && !take(*split.trailing)) return false;
  return cursor == token_count;
}

}  // namespace probekit
