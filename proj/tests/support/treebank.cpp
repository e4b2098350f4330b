#include "treebank.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "probekit/random.hpp"
#include "probekit/text.hpp"

namespace fixture {

using probekit::ParseTree;
using probekit::Rng;

namespace {

ParseTree pt(const std::string& tag, const std::string& word) {
  return ParseTree::node(tag, {ParseTree::leaf(word)});
}

ParseTree nd(const std::string& label, std::vector<ParseTree> kids) { return ParseTree::node(label, std::move(kids)); }

bool chance(Rng& rng, double p) { return probekit::uniform_unit(rng) < p; }

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(probekit::uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[probekit::uniform_index(rng, v.size())];
}

// Zipf-like sampler over ranks.
class Zipf {
 public:
  explicit Zipf(std::size_t n, double exponent = 1.05, double offset = 2.7) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r) + offset, exponent);
      cdf_.push_back(total);
    }
    for (double& c : cdf_) c /= total;
  }
  std::size_t draw(Rng& rng) const {
    const double u = probekit::uniform_unit(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

// ---------------------------------------------------------------------------
// Lexicon

const std::vector<std::string> kOnsets = {"b",  "d",  "f",  "g",  "k",  "l",  "m",  "n",  "p",  "r",  "t",
                                          "v",  "z",  "br", "dr", "gr", "kl", "pl", "st", "tr", "sk", "sn",
                                          "fl", "gl", "cr", "sp", "j",  "w",  "h",  "bl", "pr", "fr"};
const std::vector<std::string> kVowels = {"a", "e", "i", "o", "u", "ai", "ea", "oo", "ou", "ie"};
const std::vector<std::string> kCodas = {"", "", "n", "r", "l", "m", "t", "k", "nd", "rt", "mp", "lk", "nt", "g", "p"};

std::string ends_sibilant_plural(const std::string& s) {
  const bool sib = s.ends_with("s") || s.ends_with("x") || s.ends_with("z") || s.ends_with("sh") || s.ends_with("ch");
  return s + (sib ? "es" : "s");
}

std::string past_form(const std::string& s) { return s.ends_with("e") ? s + "d" : s + "ed"; }
std::string gerund(const std::string& s) {
  return s.ends_with("e") && s.size() > 2 ? s.substr(0, s.size() - 1) + "ing" : s + "ing";
}

struct Noun {
  std::string sg;
  std::string pl;
};
struct Verb {
  std::string base;  // VB, VBP
  std::string third; // VBZ
  std::string past;  // VBD, VBN
  std::string ing;   // VBG
  bool transitive = true;
  bool takes_clause = false;
};

class Lexicon {
 public:
  Lexicon(const TreebankOptions& o, Rng& rng) {
    for (const char* w : {"the", "a", "an", "this", "that", "these", "those", "every", "each", "no", "some", "all",
                          "both", "another", "he", "she", "it", "they", "we", "you", "i", "him", "her", "them", "us",
                          "me", "his", "its", "my", "your", "our", "their", "and", "but", "or", "so", "yet", "is",
                          "are", "was", "were", "am", "has", "have", "had", "does", "do", "did", "been", "being", "be",
                          "not", "never", "who", "which", "to"}) {
      used_.insert(w);
    }
    for (const auto& w : kPreps) used_.insert(w);
    for (const auto& w : kSubordinators) used_.insert(w);
    for (const auto& w : kModals) used_.insert(w);
    for (const auto& w : kInterjections) used_.insert(w);
    for (const auto& w : kPlainAdverbs) used_.insert(w);

    while (nouns.size() < o.nouns) {
      const std::string s = stem(rng, 1, 3);
      const Noun n{s, ends_sibilant_plural(s)};
      if (claim({n.sg, n.pl})) nouns.push_back(n);
    }
    while (verbs.size() < o.verbs) {
      const std::string s = stem(rng, 1, 2);
      Verb v{s, ends_sibilant_plural(s), past_form(s), gerund(s), chance(rng, 0.6), false};
      if (claim({v.base, v.third, v.past, v.ing})) verbs.push_back(v);
    }
    // A handful of frequent verbs take clausal complements.
    for (std::size_t i = 0; i < verbs.size(); i += 37) verbs[i].takes_clause = true;
    while (adjectives.size() < o.adjectives) {
      static const std::vector<std::string> kSuffix = {"", "", "ous", "al", "y", "ic", "ive", "ish"};
      const std::string s = stem(rng, 1, 2) + pick(rng, kSuffix);
      if (claim({s})) adjectives.push_back(s);
    }
    while (adverbs.size() < o.adverbs) {
      const std::string s = stem(rng, 1, 2) + "ly";
      if (claim({s})) adverbs.push_back(s);
    }
    while (names.size() < o.names) {
      std::string s = stem(rng, 2, 3);
      if (!claim({s})) continue;
      s[0] = static_cast<char>(s[0] - 'a' + 'A');
      names.push_back(s);
    }
  }

  std::vector<Noun> nouns;
  std::vector<Verb> verbs;
  std::vector<std::string> adjectives;
  std::vector<std::string> adverbs;
  std::vector<std::string> names;

  inline static const std::vector<std::string> kPreps = {"in",    "on",      "with",   "for",     "from",
                                                         "at",    "by",      "of",     "about",   "under",
                                                         "over",  "near",    "behind", "through", "into",
                                                         "across", "without", "against", "beside", "toward"};
  inline static const std::vector<std::string> kSubordinators = {"because", "although", "when",  "if",   "while",
                                                                 "since",   "after",    "before", "once", "unless"};
  inline static const std::vector<std::string> kModals = {"will", "would", "can", "could", "might", "should", "must",
                                                          "may"};
  inline static const std::vector<std::string> kInterjections = {"oh", "well", "yes", "hey", "okay", "ah"};
  inline static const std::vector<std::string> kPlainAdverbs = {"still", "only", "just", "really", "already",
                                                                "then",  "now",  "here", "there",  "soon",
                                                                "also",  "always", "often", "again", "perhaps"};

 private:
  std::string stem(Rng& rng, int lo, int hi) {
    std::string s;
    const int syllables = uniform_int(rng, lo, hi);
    for (int i = 0; i < syllables; ++i) s += pick(rng, kOnsets) + pick(rng, kVowels) + (i + 1 == syllables ? pick(rng, kCodas) : "");
    return s;
  }

  bool claim(std::initializer_list<std::string> forms) {
    for (const auto& f : forms) {
      if (f.size() < 3 || used_.contains(f)) return false;
    }
    std::set<std::string> distinct(forms.begin(), forms.end());
    if (distinct.size() != forms.size()) return false;
    for (const auto& f : forms) used_.insert(f);
    return true;
  }

  std::unordered_set<std::string> used_;
};

// ---------------------------------------------------------------------------
// Grammar

enum class Tense { Past, Present };

// Agreement class of a subject.
struct Agr {
  bool third_singular = true;
  bool first_singular = false;
};

struct Phrase {
  ParseTree tree;
  Agr agr;
};

class Grammar {
 public:
  Grammar(const Lexicon& lex, const TreebankOptions& o, Rng& rng)
      : lex_(lex),
        o_(o),
        rng_(rng),
        noun_zipf_(lex.nouns.size()),
        verb_zipf_(lex.verbs.size()),
        adj_zipf_(lex.adjectives.size()),
        adv_zipf_(lex.adverbs.size()),
        name_zipf_(lex.names.size()) {
    for (std::size_t i = 0; i < lex.verbs.size(); ++i) {
      if (lex.verbs[i].takes_clause) clause_verbs_.push_back(i);
    }
  }

  ParseTree sentence() {
    budget_ = uniform_int(rng_, 0, o_.max_depth_budget);
    width_ = uniform_int(rng_, 0, o_.max_width);
    if (budget_ >= 5) width_ /= 2;
    tense_ = chance(rng_, 0.5) ? Tense::Past : Tense::Present;

    if (chance(rng_, o_.coordination)) return root(coordinated());
    return root(simple());
  }

 private:
  // ---- top level -----------------------------------------------------------

  static ParseTree root(ParseTree s) { return nd("ROOT", {std::move(s)}); }

  ParseTree period() { return pt(".", "."); }
  ParseTree comma() { return pt(",", ","); }

  ParseTree coordinated() {
    static const std::vector<std::string> kConj = {"and", "and", "but", "but", "or", "so", "yet"};
    const int budget = budget_;
    std::vector<ParseTree> kids;
    kids.push_back(clause(budget, tense_));
    const double r = probekit::uniform_unit(rng_);
    if (r < 0.55) kids.push_back(comma());
    kids.push_back(pt("CC", pick(rng_, kConj)));
    kids.push_back(clause(budget, embedded_tense()));
    kids.push_back(chance(rng_, 0.9) ? period() : pt(".", "!"));
    return nd("S", std::move(kids));
  }

  ParseTree simple() {
    // Weighted inventory of top-level shapes.
    static const std::vector<double> kWeights = {22, 4, 3, 4, 2.5, 4, 2, 3, 2, 2, 2, 2.5, 1.5, 3, 1.5, 3, 2.5, 2, 2, 1.5,
                                                 1.5, 1.5, 2.5};
    double total = 0.0;
    for (double w : kWeights) total += w;
    double u = probekit::uniform_unit(rng_) * total;
    std::size_t shape = 0;
    while (shape + 1 < kWeights.size() && u >= kWeights[shape]) u -= kWeights[shape++];

    int b = budget_;
    std::vector<ParseTree> kids;
    auto subject_and_predicate = [&](std::vector<ParseTree>& out, Tense t) {
      Phrase np = noun_phrase(b, true);
      out.push_back(std::move(np.tree));
      out.push_back(verb_phrase(b, t, np.agr));
    };
    switch (shape) {
      case 0:  // NP VP .
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 1:  // ADVP , NP VP .
        kids.push_back(adverb_phrase());
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 2:  // ADVP NP VP .
        kids.push_back(adverb_phrase());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 3:  // PP , NP VP .
        kids.push_back(prep_phrase(b));
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 4:  // PP NP VP .
        kids.push_back(prep_phrase(b));
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 5:  // SBAR , NP VP .
        kids.push_back(adverbial_clause(b));
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 6:  // SBAR NP VP .
        kids.push_back(adverbial_clause(b));
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 7: {  // NP ADVP VP .
        Phrase np = noun_phrase(b, true);
        kids.push_back(std::move(np.tree));
        kids.push_back(adverb_phrase());
        kids.push_back(verb_phrase(b, tense_, np.agr));
        kids.push_back(period());
        break;
      }
      case 8:  // NP VP !
        subject_and_predicate(kids, tense_);
        kids.push_back(pt(".", "!"));
        break;
      case 9:  // NP VP ?
        subject_and_predicate(kids, tense_);
        kids.push_back(pt(".", "?"));
        break;
      case 10:  // NP VP
        subject_and_predicate(kids, tense_);
        break;
      case 11:  // INTJ , NP VP .
        kids.push_back(nd("INTJ", {pt("UH", pick(rng_, Lexicon::kInterjections))}));
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 12:  // INTJ NP VP .
        kids.push_back(nd("INTJ", {pt("UH", pick(rng_, Lexicon::kInterjections))}));
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 13:  // CC NP VP .
        kids.push_back(pt("CC", chance(rng_, 0.5) ? "but" : "and"));
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 14:  // CC ADVP , NP VP .
        kids.push_back(pt("CC", chance(rng_, 0.5) ? "but" : "and"));
        kids.push_back(adverb_phrase());
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 15:  // VP .  (imperative)
        kids.push_back(imperative(b));
        kids.push_back(chance(rng_, 0.7) ? period() : pt(".", "!"));
        break;
      case 16:  // NP VP , SBAR .
        subject_and_predicate(kids, tense_);
        kids.push_back(comma());
        kids.push_back(adverbial_clause(b));
        kids.push_back(period());
        break;
      case 17:  // S : S .
        kids.push_back(clause(b, tense_));
        kids.push_back(pt(":", chance(rng_, 0.5) ? ";" : ":"));
        kids.push_back(clause(b, embedded_tense()));
        kids.push_back(period());
        break;
      case 18:  // S , NP VP .
        kids.push_back(clause(b, tense_));
        kids.push_back(comma());
        subject_and_predicate(kids, embedded_tense());
        kids.push_back(period());
        break;
      case 19:  // ADVP , PP , NP VP .
        kids.push_back(adverb_phrase());
        kids.push_back(comma());
        kids.push_back(prep_phrase(b));
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 20:  // PP , ADVP , NP VP .
        kids.push_back(prep_phrase(b));
        kids.push_back(comma());
        kids.push_back(adverb_phrase());
        kids.push_back(comma());
        subject_and_predicate(kids, tense_);
        kids.push_back(period());
        break;
      case 21: {  // NP , ADVP , VP .
        Phrase np = noun_phrase(b, true);
        kids.push_back(std::move(np.tree));
        kids.push_back(comma());
        kids.push_back(adverb_phrase());
        kids.push_back(comma());
        kids.push_back(verb_phrase(b, tense_, np.agr));
        kids.push_back(period());
        break;
      }
      default: {  // fragment, no S below ROOT
        Phrase np = noun_phrase(b, false);
        std::vector<ParseTree> frag;
        frag.push_back(std::move(np.tree));
        frag.push_back(period());
        return nd("FRAG", std::move(frag));
      }
    }
    return nd("S", std::move(kids));
  }

  Tense embedded_tense() {
    if (chance(rng_, o_.tense_agreement)) return tense_;
    return tense_ == Tense::Past ? Tense::Present : Tense::Past;
  }

  // Spends one unit of the recursion budget with probability p.
  bool recurse(int& b, double p) {
    if (b <= 0 || !chance(rng_, p)) return false;
    --b;
    return true;
  }

  // Number of flat modifiers to add at one site.
  int modifiers(double p) {
    int n = 0;
    for (int i = 0; i < width_; ++i) n += chance(rng_, p) ? 1 : 0;
    return n;
  }

  // ---- clauses -------------------------------------------------------------

  ParseTree clause(int b, Tense t) {
    Phrase np = noun_phrase(b, true);
    ParseTree vp = verb_phrase(b, t, np.agr);
    return nd("S", {std::move(np.tree), std::move(vp)});
  }

  ParseTree adverbial_clause(int& b) {
    int inner = b;
    ParseTree s = clause(inner, embedded_tense());
    return nd("SBAR", {pt("IN", pick(rng_, Lexicon::kSubordinators)), std::move(s)});
  }

  ParseTree imperative(int& b) {
    const Verb& v = lex_.verbs[verb_zipf_.draw(rng_)];
    std::vector<ParseTree> kids{pt("VB", v.base)};
    if (v.transitive) kids.push_back(noun_phrase(b, false).tree);
    if (recurse(b, 0.5)) kids.push_back(prep_phrase(b));
    return nd("VP", std::move(kids));
  }

  ParseTree adverb_phrase() {
    if (chance(rng_, 0.5)) return nd("ADVP", {pt("RB", pick(rng_, Lexicon::kPlainAdverbs))});
    std::vector<ParseTree> kids;
    if (chance(rng_, 0.2)) kids.push_back(pt("RB", "very"));
    kids.push_back(pt("RB", lex_.adverbs[adv_zipf_.draw(rng_)]));
    return nd("ADVP", std::move(kids));
  }

  ParseTree prep_phrase(int& b) {
    return nd("PP", {pt("IN", pick(rng_, Lexicon::kPreps)), noun_phrase(b, false).tree});
  }

  // ---- noun phrases --------------------------------------------------------

  Phrase noun_phrase(int& b, bool subject) {
    // Deep sentences lean on pronouns so depth does not simply track length.
    const double r = probekit::uniform_unit(rng_);
    if (r < (budget_ >= 5 ? 0.4 : 0.16)) return pronoun(subject);
    if (r < 0.22) return {nd("NP", {pt("NNP", lex_.names[name_zipf_.draw(rng_)])}), Agr{true, false}};

    const bool plural = chance(rng_, 0.45);
    Phrase base = bare_noun_phrase(plural);
    int inner = b;
    if (recurse(b, 0.45)) {
      // Post-modified NP: (NP (NP ...) (PP ...)) or a relative clause.
      std::vector<ParseTree> kids;
      kids.push_back(std::move(base.tree));
      if (chance(rng_, 0.7) || inner < 2) {
        kids.push_back(prep_phrase(b));
      } else {
        --b;
        ParseTree vp = verb_phrase(b, embedded_tense(), base.agr);
        kids.push_back(nd("SBAR", {nd("WHNP", {pt("WDT", chance(rng_, 0.5) ? "that" : "which")}),
                                   nd("S", {std::move(vp)})}));
      }
      return {nd("NP", std::move(kids)), base.agr};
    }
    if (!subject && chance(rng_, 0.06 + 0.02 * width_)) {
      // Coordinated object: (NP (NP ..) (, ,)? (CC and) (NP ..))
      Phrase other = bare_noun_phrase(chance(rng_, 0.45));
      return {nd("NP", {std::move(base.tree), pt("CC", chance(rng_, 0.8) ? "and" : "or"), std::move(other.tree)}),
              Agr{false, false}};
    }
    return base;
  }

  Phrase pronoun(bool subject) {
    static const std::vector<std::string> kSubj = {"he", "she", "it", "they", "we", "you", "I"};
    static const std::vector<std::string> kObj = {"him", "her", "it", "them", "us", "you", "me"};
    const std::size_t i = probekit::uniform_index(rng_, kSubj.size());
    const std::string& w = subject ? kSubj[i] : kObj[i];
    return {nd("NP", {pt("PRP", w)}), Agr{i < 3, i == 6}};
  }

  Phrase bare_noun_phrase(bool plural) {
    static const std::vector<std::string> kDetSg = {"the", "the", "the", "a", "a", "this", "that", "every", "each",
                                                    "no", "another"};
    static const std::vector<std::string> kDetPl = {"the", "the", "the", "these", "those", "some", "all", "no", "both"};
    static const std::vector<std::string> kPoss = {"his", "her", "its", "my", "your", "our", "their"};
    std::vector<ParseTree> kids;
    const double d = probekit::uniform_unit(rng_);
    if (d < 0.15) {
      kids.push_back(pt("PRP$", pick(rng_, kPoss)));
    } else if (!plural || d < 0.8) {
      kids.push_back(pt("DT", pick(rng_, plural ? kDetPl : kDetSg)));
    }
    const int adjectives = modifiers(0.22);
    for (int i = 0; i < adjectives; ++i) {
      if (i > 0 && chance(rng_, 0.15)) kids.push_back(pt("CC", "and"));
      kids.push_back(pt("JJ", lex_.adjectives[adj_zipf_.draw(rng_)]));
    }
    if (chance(rng_, 0.08 + 0.03 * width_)) kids.push_back(pt("NN", lex_.nouns[noun_zipf_.draw(rng_)].sg));
    const Noun& n = lex_.nouns[noun_zipf_.draw(rng_)];
    kids.push_back(plural ? pt("NNS", n.pl) : pt("NN", n.sg));
    // Keep English article agreement loosely: "a" before a vowel becomes "an".
    if (kids.front().label == "DT" && *kids.front().children.front().token == "a" && kids.size() > 1) {
      const std::string& next = *kids[1].children.front().token;
      if (std::string("aeiou").find(next[0]) != std::string::npos) kids.front() = pt("DT", "an");
    }
    return {nd("NP", std::move(kids)), Agr{!plural, false}};
  }

  // ---- verb phrases --------------------------------------------------------

  std::string be_form(Tense t, const Agr& a) {
    if (t == Tense::Past) return a.third_singular || a.first_singular ? "was" : "were";
    if (a.first_singular) return "am";
    return a.third_singular ? "is" : "are";
  }

  // Finite tag and word for a lexical verb.
  ParseTree finite(const Verb& v, Tense t, const Agr& a) {
    if (t == Tense::Past) return pt("VBD", v.past);
    return a.third_singular ? pt("VBZ", v.third) : pt("VBP", v.base);
  }

  ParseTree finite_aux(const std::string& kind, Tense t, const Agr& a) {
    if (kind == "be") {
      const std::string w = be_form(t, a);
      return pt(t == Tense::Past ? "VBD" : (a.third_singular ? "VBZ" : "VBP"), w);
    }
    if (kind == "have") {
      if (t == Tense::Past) return pt("VBD", "had");
      return a.third_singular ? pt("VBZ", "has") : pt("VBP", "have");
    }
    if (t == Tense::Past) return pt("VBD", "did");
    return a.third_singular ? pt("VBZ", "does") : pt("VBP", "do");
  }

  // Non-finite lexical VP headed by `tag` (VB, VBN, VBG).
  ParseTree lexical_vp(int& b, const std::string& tag) {
    const Verb& v = lex_.verbs[verb_zipf_.draw(rng_)];
    const std::string& word = tag == "VB" ? v.base : tag == "VBG" ? v.ing : v.past;
    return nd("VP", complements(b, pt(tag, word), v));
  }

  std::vector<ParseTree> complements(int& b, ParseTree head, const Verb& v) {
    std::vector<ParseTree> kids{std::move(head)};
    if (v.takes_clause && recurse(b, 0.8)) {
      int inner = b;
      std::vector<ParseTree> sbar;
      if (chance(rng_, 0.7)) sbar.push_back(pt("IN", "that"));
      sbar.push_back(clause(inner, embedded_tense()));
      kids.push_back(nd("SBAR", std::move(sbar)));
      return kids;
    }
    if (v.transitive) kids.push_back(noun_phrase(b, false).tree);
    const int extra = modifiers(0.12);
    for (int i = 0; i < extra; ++i) {
      if (chance(rng_, 0.5)) {
        kids.push_back(adverb_phrase());
      } else {
        int flat = 0;  // flat PP: no further recursion inside
        kids.push_back(prep_phrase(flat));
      }
    }
    if (recurse(b, 0.35)) kids.push_back(prep_phrase(b));
    return kids;
  }

  ParseTree verb_phrase(int& b, Tense t, const Agr& a) {
    const double r = probekit::uniform_unit(rng_);
    if (r < 0.12 && b > 0) {
      // Auxiliary chains: each auxiliary adds one level.
      --b;
      const double k = probekit::uniform_unit(rng_);
      if (k < 0.35) return nd("VP", {finite_aux("be", t, a), lexical_vp(b, "VBG")});
      if (k < 0.65) {
        if (recurse(b, 0.5)) {
          return nd("VP", {finite_aux("have", t, a), nd("VP", {pt("VBN", "been"), lexical_vp(b, "VBG")})});
        }
        return nd("VP", {finite_aux("have", t, a), lexical_vp(b, "VBN")});
      }
      if (k < 0.85) return nd("VP", {finite_aux("do", t, a), pt("RB", "not"), lexical_vp(b, "VB")});
      // Modal: no finite verb on the chain.
      if (recurse(b, 0.4)) {
        return nd("VP", {pt("MD", pick(rng_, Lexicon::kModals)), nd("VP", {pt("VB", "have"), lexical_vp(b, "VBN")})});
      }
      return nd("VP", {pt("MD", pick(rng_, Lexicon::kModals)), lexical_vp(b, "VB")});
    }
    if (r < 0.24) {
      // Copula.
      std::vector<ParseTree> kids{finite_aux("be", t, a)};
      const double c = probekit::uniform_unit(rng_);
      if (c < 0.45) {
        std::vector<ParseTree> adj;
        if (chance(rng_, 0.25)) adj.push_back(pt("RB", "very"));
        adj.push_back(pt("JJ", lex_.adjectives[adj_zipf_.draw(rng_)]));
        kids.push_back(nd("ADJP", std::move(adj)));
      } else if (c < 0.75) {
        kids.push_back(noun_phrase(b, false).tree);
      } else {
        kids.push_back(prep_phrase(b));
      }
      return nd("VP", std::move(kids));
    }
    // Large budgets favour clausal complements, the cheapest recursion in tokens.
    const Verb& v = b >= 3 && chance(rng_, 0.4) ? lex_.verbs[pick(rng_, clause_verbs_)]
                                                 : lex_.verbs[verb_zipf_.draw(rng_)];
    return nd("VP", complements(b, finite(v, t, a), v));
  }

  const Lexicon& lex_;
  const TreebankOptions& o_;
  Rng& rng_;
  Zipf noun_zipf_;
  Zipf verb_zipf_;
  Zipf adj_zipf_;
  Zipf adv_zipf_;
  Zipf name_zipf_;
  std::vector<std::size_t> clause_verbs_;
  int budget_ = 0;
  int width_ = 0;
  Tense tense_ = Tense::Past;
};

void capitalize_first(ParseTree& t) {
  if (t.is_leaf()) {
    std::string& w = *t.token;
    if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return;
  }
  if (!t.children.empty()) capitalize_first(t.children.front());
}

}  // namespace

std::vector<ParseTree> generate_treebank(const TreebankOptions& options) {
  Rng rng(probekit::derive_seed(options.seed, 101));
  const Lexicon lex(options, rng);
  Grammar grammar(lex, options, rng);
  std::vector<ParseTree> out;
  out.reserve(options.sentences);
  for (std::size_t i = 0; i < options.sentences; ++i) {
    ParseTree t = grammar.sentence();
    capitalize_first(t);
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vectors

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Eigen::VectorXf hashed_vector(std::string_view key, std::size_t dim, std::uint64_t seed) {
  Rng rng(probekit::derive_seed(seed, fnv1a(key)));
  Eigen::VectorXf v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Sum of uniforms: roughly Gaussian, unit variance.
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += 2.0 * probekit::uniform_unit(rng) - 1.0;
    v[i] = static_cast<float>(s);
  }
  return v;
}

}  // namespace

std::vector<VectorEntry> synthetic_vectors(const probekit::Corpus& corpus, std::size_t dim, std::uint64_t seed) {
  std::map<std::string, std::map<std::string, std::size_t>> tags;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& toks = corpus.sentence(i).tokens;
    const auto tg = probekit::preterminal_tags(corpus.parse(i));
    for (std::size_t k = 0; k < toks.size(); ++k) ++tags[probekit::fold_case(toks[k])][tg[k]];
  }
  std::vector<VectorEntry> out;
  out.reserve(tags.size());
  for (const auto& [word, counts] : tags) {
    const auto majority = std::max_element(counts.begin(), counts.end(),
                                           [](const auto& a, const auto& b) { return a.second < b.second; });
    Eigen::VectorXf v = hashed_vector("w:" + word, dim, seed);
    const std::string marked = "<" + word + ">";
    Eigen::VectorXf grams = Eigen::VectorXf::Zero(static_cast<Eigen::Index>(dim));
    int count = 0;
    for (std::size_t n = 3; n <= 5; ++n) {
      for (std::size_t i = 0; i + n <= marked.size(); ++i) {
        grams += hashed_vector("g:" + marked.substr(i, n), dim, seed);
        ++count;
      }
    }
    if (count > 0) v += grams / static_cast<float>(count);
    v += 0.5f * hashed_vector("t:" + majority->first, dim, seed);
    v /= static_cast<float>(std::sqrt(static_cast<double>(dim)));
    out.push_back({word, std::move(v)});
  }
  return out;
}

probekit::WordVectors to_word_vectors(const std::vector<VectorEntry>& entries) {
  probekit::WordVectors wv(entries.empty() ? 1 : static_cast<std::size_t>(entries.front().vec.size()));
  for (const auto& e : entries) wv.set(e.word, e.vec);
  return wv;
}

void write_vectors(const std::vector<VectorEntry>& entries, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  const std::size_t dim = entries.empty() ? 0 : static_cast<std::size_t>(entries.front().vec.size());
  out << entries.size() << ' ' << dim << '\n';
  for (const auto& e : entries) {
    out << e.word;
    for (Eigen::Index i = 0; i < e.vec.size(); ++i) out << ' ' << probekit::format_real(e.vec[i]);
    out << '\n';
  }
}

}  // namespace fixture
