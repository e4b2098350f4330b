#include "probekit/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "probekit/error.hpp"
#include "probekit/stats.hpp"
#include "probekit/text.hpp"

namespace probekit {

// ---------------------------------------------------------------------------
// Names

namespace {

constexpr std::array<std::string_view, 10> kTaskNames = {"SentLen", "WC",      "TreeDepth", "TopConst", "BShift",
                                                         "Tense",   "SubjNum", "ObjNum",    "SOMO",     "CoordInv"};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric labels sort by value, everything else lexicographically after them.
bool label_less(const std::string& a, const std::string& b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (na && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void sort_labels(std::vector<std::string>& labels) {
  std::sort(labels.begin(), labels.end(), label_less);
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

std::string fixed6(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

std::string_view to_string(TaskId task) { return kTaskNames[static_cast<std::size_t>(task)]; }

std::optional<TaskId> parse_task_id(std::string_view name) {
  const std::string folded = fold_case(name);
  for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
    if (fold_case(kTaskNames[i]) == folded) return static_cast<TaskId>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::Train:
      return "tr";
    case Partition::Valid:
      return "va";
    case Partition::Test:
      return "te";
  }
  return "tr";
}

std::optional<Partition> parse_partition(std::string_view name) {
  if (name == "tr") return Partition::Train;
  if (name == "va") return Partition::Valid;
  if (name == "te") return Partition::Test;
  return std::nullopt;
}

std::size_t ProbingDataset::count(Partition p) const {
  return static_cast<std::size_t>(
      std::count_if(examples.begin(), examples.end(), [p](const ProbingExample& e) { return e.partition == p; }));
}

std::vector<const ProbingExample*> ProbingDataset::partition(Partition p) const {
  std::vector<const ProbingExample*> out;
  for (const auto& e : examples) {
    if (e.partition == p) out.push_back(&e);
  }
  return out;
}

std::size_t ProbingDataset::label_index(std::string_view label) const {
  const auto it = std::find(label_set.begin(), label_set.end(), label);
  if (it == label_set.end()) throw InputError("unknown label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - label_set.begin());
}

std::optional<std::string> ProbingDataset::report_value(std::string_view key) const {
  for (const auto& [k, v] : control_report) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::size_t SplitSizes::operator[](Partition p) const {
  switch (p) {
    case Partition::Train:
      return train;
    case Partition::Valid:
      return valid;
    case Partition::Test:
      return test;
  }
  return 0;
}

std::vector<LengthBin> default_sentlen_bins() {
  std::vector<LengthBin> bins;
  for (std::size_t lo = kMinTaskTokens; lo <= kMaxTaskTokens; lo += 4) bins.push_back({lo, lo + 3});
  return bins;
}

void GenConfig::validate() const {
  if (sizes.train == 0 || sizes.valid == 0 || sizes.test == 0) throw InputError("split sizes must be > 0");
  if (!(somo_log2_tolerance > 0.0)) throw InputError("somo tolerance must be > 0");
  if (!(treedepth_max_abs_spearman > 0.0)) throw InputError("treedepth spearman bound must be > 0");
  if (wc_lo_rank >= wc_hi_rank) throw InputError("wc rank range is empty");
  if (treedepth_min > treedepth_max) throw InputError("treedepth range is empty");
  if (sentlen_bins.empty()) throw InputError("no sentence length bins");
  for (std::size_t i = 0; i < sentlen_bins.size(); ++i) {
    if (sentlen_bins[i].lo > sentlen_bins[i].hi) throw InputError("inverted sentence length bin");
    if (i > 0 && sentlen_bins[i].lo <= sentlen_bins[i - 1].hi) throw InputError("sentence length bins overlap");
  }
}

std::size_t assign_sentlen_bin(std::size_t length, std::span<const LengthBin> bins) {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (length >= bins[i].lo && length <= bins[i].hi) return i;
  }
  throw InputError("length " + std::to_string(length) + " outside all bins");
}

// ---------------------------------------------------------------------------
// BShift

std::vector<std::size_t> bshift_eligible_pairs(std::span<const std::string> tokens) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (is_alphabetic(tokens[i]) && is_alphabetic(tokens[i + 1]) && fold_case(tokens[i]) != fold_case(tokens[i + 1])) {
      out.push_back(i);
    }
  }
  return out;
}

ShiftedSentence bshift_at(std::span<const std::string> tokens, std::size_t swap_index) {
  const auto eligible = bshift_eligible_pairs(tokens);
  if (std::find(eligible.begin(), eligible.end(), swap_index) == eligible.end()) {
    throw InputError("swap index " + std::to_string(swap_index) + " is not an eligible pair");
  }
  ShiftedSentence out{{tokens.begin(), tokens.end()}, swap_index};
  std::swap(out.tokens[swap_index], out.tokens[swap_index + 1]);
  return out;
}

ShiftedSentence bshift_perturb(std::span<const std::string> tokens, Rng& rng) {
  const auto eligible = bshift_eligible_pairs(tokens);
  if (eligible.empty()) throw InputError("no eligible adjacent pair to invert");
  const std::size_t i = eligible[uniform_index(rng, eligible.size())];
  ShiftedSentence out{{tokens.begin(), tokens.end()}, i};
  std::swap(out.tokens[i], out.tokens[i + 1]);
  return out;
}

// ---------------------------------------------------------------------------
// SOMO

std::optional<SideDeviations> replacement_deviations(std::span<const std::string> tokens, std::size_t target,
                                                     std::string_view candidate, const FrequencyTable& freqs) {
  if (target >= tokens.size()) throw InputError("target index out of range");
  SideDeviations dev;
  if (target > 0) {
    const auto fo = freqs.bigram_count(tokens[target - 1], tokens[target]);
    const auto fn = freqs.bigram_count(tokens[target - 1], candidate);
    if (fo == 0 || fn == 0) return std::nullopt;
    dev.left = std::abs(std::log2(static_cast<double>(fn)) - std::log2(static_cast<double>(fo)));
  }
  if (target + 1 < tokens.size()) {
    const auto fo = freqs.bigram_count(tokens[target], tokens[target + 1]);
    const auto fn = freqs.bigram_count(candidate, tokens[target + 1]);
    if (fo == 0 || fn == 0) return std::nullopt;
    dev.right = std::abs(std::log2(static_cast<double>(fn)) - std::log2(static_cast<double>(fo)));
  }
  return dev;
}

namespace {

std::string match_initial_case(const std::string& model, std::string word) {
  if (!model.empty() && model[0] >= 'A' && model[0] <= 'Z' && !word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

bool within(const std::optional<double>& dev, double tol) { return !dev || *dev <= tol; }

}  // namespace

std::optional<Replacement> somo_replace(std::span<const std::string> tokens, std::size_t target,
                                        std::span<const std::string> pool, const FrequencyTable& freqs,
                                        double tol_log2, Rng& rng) {
  if (target >= tokens.size()) throw InputError("target index out of range");
  const std::string original_folded = fold_case(tokens[target]);

  std::vector<std::pair<std::size_t, SideDeviations>> qualifying;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (fold_case(pool[i]) == original_folded) continue;
    const auto dev = replacement_deviations(tokens, target, pool[i], freqs);
    if (dev && within(dev->left, tol_log2) && within(dev->right, tol_log2)) qualifying.emplace_back(i, *dev);
  }
  if (qualifying.empty()) return std::nullopt;

  const auto& [pick, dev] = qualifying[uniform_index(rng, qualifying.size())];
  Replacement out;
  out.tokens.assign(tokens.begin(), tokens.end());
  out.original = tokens[target];
  out.replacement = match_initial_case(tokens[target], pool[pick]);
  out.tokens[target] = out.replacement;
  out.left_deviation = dev.left;
  out.right_deviation = dev.right;
  return out;
}

// ---------------------------------------------------------------------------
// CoordInv

namespace {

bool starts_upper(const std::string& s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }
bool starts_lower(const std::string& s) { return !s.empty() && s[0] >= 'a' && s[0] <= 'z'; }

}  // namespace

ClauseSplit inverted_split(const ClauseSplit& split) {
  ClauseSplit out;
  std::size_t cursor = 0;
  out.first = {cursor, cursor + split.second.length()};
  cursor = out.first.end;
  if (split.comma) out.comma = cursor++;
  out.connective = cursor++;
  out.second = {cursor, cursor + split.first.length()};
  cursor = out.second.end;
  if (split.trailing) out.trailing = Span{cursor, cursor + split.trailing->length()};
  return out;
}

std::vector<std::string> coordinv_invert(std::span<const std::string> tokens, const ClauseSplit& split,
                                         std::span<const std::string> tags) {
  if (!split_covers(split, tokens.size())) throw InputError("clause split does not cover the sentence");
  if (!tags.empty() && tags.size() != tokens.size()) throw InputError("tag count differs from token count");

  std::vector<std::string> out;
  out.reserve(tokens.size());
  auto append = [&](Span s) { out.insert(out.end(), tokens.begin() + s.begin, tokens.begin() + s.end); };

  append(split.second);
  if (split.comma) out.push_back(tokens[*split.comma]);
  out.push_back(tokens[split.connective]);
  const std::size_t moved_first = out.size();
  append(split.first);
  if (split.trailing) append(*split.trailing);

  if (!tags.empty()) {
    const std::string& head_tag = tags[split.first.begin];
    std::string& demoted = out[moved_first];
    if (starts_upper(demoted) && demoted != "I" && head_tag != "NNP" && head_tag != "NNPS") {
      demoted[0] = static_cast<char>(demoted[0] - 'A' + 'a');
    }
    std::string& promoted = out[0];
    if (starts_lower(promoted)) promoted[0] = static_cast<char>(promoted[0] - 'a' + 'A');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decorrelation

namespace {

// Tie-aware Spearman between class and length over a cell-count table.
double spearman_from_cells(const std::vector<std::vector<std::size_t>>& cells) {
  const std::size_t nc = cells.size();
  const std::size_t nl = nc == 0 ? 0 : cells[0].size();
  std::vector<double> class_total(nc, 0.0);
  std::vector<double> length_total(nl, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t l = 0; l < nl; ++l) {
      class_total[c] += static_cast<double>(cells[c][l]);
      length_total[l] += static_cast<double>(cells[c][l]);
    }
    n += class_total[c];
  }
  auto mid_ranks = [](const std::vector<double>& totals) {
    std::vector<double> r(totals.size());
    double before = 0.0;
    for (std::size_t i = 0; i < totals.size(); ++i) {
      r[i] = before + 0.5 * (totals[i] + 1.0);
      before += totals[i];
    }
    return r;
  };
  const auto rc = mid_ranks(class_total);
  const auto rl = mid_ranks(length_total);
  const double mean = 0.5 * (n + 1.0);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t c = 0; c < nc; ++c) sxx += class_total[c] * (rc[c] - mean) * (rc[c] - mean);
  for (std::size_t l = 0; l < nl; ++l) syy += length_total[l] * (rl[l] - mean) * (rl[l] - mean);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t l = 0; l < nl; ++l) {
      sxy += static_cast<double>(cells[c][l]) * (rc[c] - mean) * (rl[l] - mean);
    }
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Scales a row down to `cap` entries by largest remainder, never exceeding the input.
void cap_row(std::vector<std::size_t>& row, std::size_t cap) {
  const std::size_t total = std::accumulate(row.begin(), row.end(), std::size_t{0});
  if (cap == 0 || total <= cap) return;
  const double scale = static_cast<double>(cap) / static_cast<double>(total);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t kept = 0;
  for (std::size_t l = 0; l < row.size(); ++l) {
    const double exact = static_cast<double>(row[l]) * scale;
    const auto whole = static_cast<std::size_t>(std::floor(exact));
    remainders.emplace_back(exact - static_cast<double>(whole), l);
    row[l] = whole;
    kept += whole;
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; kept < cap && i < remainders.size(); ++i, ++kept) ++row[remainders[i].second];
}

}  // namespace

std::vector<std::size_t> decorrelate(std::span<const DepthCandidate> pool, const DecorrelationOptions& options,
                                     Rng& rng) {
  if (pool.empty()) throw InfeasibleError("decorrelation", "empty pool");
  std::vector<int> classes;
  std::vector<std::size_t> lengths;
  for (const auto& c : pool) {
    classes.push_back(c.depth);
    lengths.push_back(c.length);
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  if (classes.size() < 2) throw InfeasibleError("decorrelation", "need at least two depth classes");

  auto class_of = [&](int d) { return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), d) - classes.begin()); };
  auto length_of = [&](std::size_t l) {
    return static_cast<std::size_t>(std::lower_bound(lengths.begin(), lengths.end(), l) - lengths.begin());
  };

  const std::size_t nc = classes.size();
  const std::size_t nl = lengths.size();
  std::vector<std::vector<std::vector<std::size_t>>> members(nc, std::vector<std::vector<std::size_t>>(nl));
  for (std::size_t i = 0; i < pool.size(); ++i) members[class_of(pool[i].depth)][length_of(pool[i].length)].push_back(i);

  std::vector<std::size_t> floor_hist(nl, std::numeric_limits<std::size_t>::max());
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t l = 0; l < nl; ++l) floor_hist[l] = std::min(floor_hist[l], members[c][l].size());
  }

  constexpr int kSteps = 64;
  struct Choice {
    std::vector<std::vector<std::size_t>> cells;
    std::size_t total = 0;
  };
  std::optional<Choice> best;
  for (int step = 0; step <= kSteps; ++step) {
    const double beta = static_cast<double>(step) / kSteps;
    Choice choice;
    choice.cells.assign(nc, std::vector<std::size_t>(nl, 0));
    bool every_class = true;
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t l = 0; l < nl; ++l) {
        const double extra = beta * static_cast<double>(members[c][l].size() - floor_hist[l]);
        choice.cells[c][l] = floor_hist[l] + static_cast<std::size_t>(std::floor(extra + 1e-9));
      }
      cap_row(choice.cells[c], options.per_class_cap);
      const std::size_t row = std::accumulate(choice.cells[c].begin(), choice.cells[c].end(), std::size_t{0});
      every_class = every_class && row > 0;
      choice.total += row;
    }
    if (!every_class) continue;
    if (std::abs(spearman_from_cells(choice.cells)) > options.max_abs_spearman) continue;
    if (!best || choice.total > best->total) best = std::move(choice);
  }
  if (!best) {
    throw InfeasibleError("decorrelation", "no subsample reaches |rho| <= " + fixed6(options.max_abs_spearman) +
                                               " with every depth class represented");
  }

  std::vector<std::size_t> selected;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t l = 0; l < nl; ++l) {
      auto cell = members[c][l];
      shuffle_in_place(cell, rng);
      for (std::size_t k = 0; k < best->cells[c][l]; ++k) selected.push_back(pool[cell[k]].id);
    }
  }
  return selected;
}

// ---------------------------------------------------------------------------
// Balanced, key-disjoint splits

ProbingDataset build_balanced_splits(std::vector<Candidate> items, std::vector<std::string> label_set,
                                     const SplitSizes& sizes, Rng& rng, BalancePolicy policy) {
  sort_labels(label_set);
  const std::size_t k = label_set.size();
  if (k == 0) throw InfeasibleError("balance", "no classes");
  std::unordered_map<std::string, std::size_t> class_index;
  for (std::size_t c = 0; c < k; ++c) class_index.emplace(label_set[c], c);

  std::vector<std::size_t> available(k, 0);
  for (const auto& item : items) {
    const auto it = class_index.find(item.label);
    if (it == class_index.end()) throw InputError("candidate label '" + item.label + "' not in label set");
    ++available[it->second];
  }

  // quota[p][c]
  std::array<std::vector<std::size_t>, 3> quota;
  for (Partition p : kAllPartitions) quota[static_cast<std::size_t>(p)].assign(k, sizes[p] / k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t needed = 0;
    for (const auto& q : quota) needed += q[c];
    if (available[c] >= needed) continue;
    if (policy == BalancePolicy::Exact) {
      throw InfeasibleError("balance", "class '" + label_set[c] + "' has " + std::to_string(available[c]) +
                                           " candidates, needs " + std::to_string(needed));
    }
    std::size_t assigned = 0;
    for (auto& q : quota) {
      q[c] = needed == 0 ? 0 : q[c] * available[c] / needed;
      assigned += q[c];
    }
    for (auto& q : quota) {
      if (assigned < available[c] && q[c] < sizes.total()) {
        ++q[c];
        ++assigned;
      }
    }
  }
  std::size_t total_quota = 0;
  for (const auto& q : quota) total_quota += std::accumulate(q.begin(), q.end(), std::size_t{0});
  if (total_quota == 0) throw InfeasibleError("balance", "split sizes too small for " + std::to_string(k) + " classes");

  // Group by key in a seeded order.
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < items.size(); ++i) by_key[items[i].key].push_back(i);
  std::vector<const std::vector<std::size_t>*> groups;
  groups.reserve(by_key.size());
  for (const auto& [key, members] : by_key) groups.push_back(&members);
  shuffle_in_place(groups, rng);

  std::array<std::vector<std::size_t>, 3> have;
  for (auto& h : have) h.assign(k, 0);
  std::array<std::vector<std::size_t>, 3> chosen_groups;  // indices into `groups`
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::size_t> per_class(k, 0);
    for (std::size_t i : *groups[g]) ++per_class[class_index.at(items[i].label)];

    std::optional<std::size_t> target;
    double target_need = 0.0;
    for (std::size_t p = 0; p < 3; ++p) {
      std::size_t gain = 0;
      std::size_t need = 0;
      std::size_t cap = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t missing = quota[p][c] - have[p][c];
        gain += std::min(per_class[c], missing);
        need += missing;
        cap += quota[p][c];
      }
      if (gain == 0) continue;
      const double need_fraction = static_cast<double>(need) / static_cast<double>(cap);
      if (!target || need_fraction > target_need) {
        target = p;
        target_need = need_fraction;
      }
    }
    if (!target) continue;
    chosen_groups[*target].push_back(g);
    for (std::size_t c = 0; c < k; ++c) {
      have[*target][c] += std::min(per_class[c], quota[*target][c] - have[*target][c]);
    }
  }

  if (policy == BalancePolicy::Exact) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t c = 0; c < k; ++c) {
        if (have[p][c] < quota[p][c]) {
          throw InfeasibleError("disjointness", "partition " + std::string(to_string(kAllPartitions[p])) +
                                                    " cannot fill class '" + label_set[c] +
                                                    "' without sharing keys across partitions");
        }
      }
    }
  }

  ProbingDataset out;
  out.label_set = label_set;
  for (std::size_t p = 0; p < 3; ++p) {
    std::vector<std::vector<std::size_t>> per_class(k);
    for (std::size_t g : chosen_groups[p]) {
      for (std::size_t i : *groups[g]) per_class[class_index.at(items[i].label)].push_back(i);
    }
    std::vector<std::size_t> picked;
    for (std::size_t c = 0; c < k; ++c) {
      shuffle_in_place(per_class[c], rng);
      const std::size_t n = std::min(quota[p][c], per_class[c].size());
      picked.insert(picked.end(), per_class[c].begin(), per_class[c].begin() + static_cast<std::ptrdiff_t>(n));
    }
    shuffle_in_place(picked, rng);
    for (std::size_t i : picked) {
      ProbingExample e;
      e.partition = kAllPartitions[p];
      e.label = items[i].label;
      e.tokens = std::move(items[i].tokens);
      e.meta = std::move(items[i].meta);
      e.meta["key"] = items[i].key;
      out.examples.push_back(std::move(e));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct Context {
  const Corpus& corpus;
  const GenConfig& cfg;
  Rng rng;
  // Eligible sentence ids: in task range, first occurrence of each token sequence.
  std::vector<std::size_t> pool;
  std::unordered_set<std::string> pool_text;
};

Context make_context(TaskId task, const Corpus& corpus, const GenConfig& cfg) {
  Context ctx{corpus, cfg, Rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(task))), {}, {}};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus.in_task_range(i)) continue;
    if (ctx.pool_text.insert(join(corpus.sentence(i).tokens)).second) ctx.pool.push_back(i);
  }
  return ctx;
}

Candidate source_candidate(const Context& ctx, std::size_t id, std::string label, std::string key) {
  Candidate c;
  c.label = std::move(label);
  c.key = std::move(key);
  c.tokens = ctx.corpus.sentence(id).tokens;
  c.meta["source_id"] = std::to_string(id);
  return c;
}

std::string id_key(std::size_t id) { return "s" + std::to_string(id); }

void add(ControlReport& r, std::string key, std::string value) { r.emplace_back(std::move(key), std::move(value)); }
void add(ControlReport& r, std::string key, std::size_t value) { add(r, std::move(key), std::to_string(value)); }
void add(ControlReport& r, std::string key, double value) { add(r, std::move(key), fixed6(value)); }

void common_report(ProbingDataset& ds, const GenConfig& cfg, std::size_t pool_size) {
  ControlReport r;
  add(r, "task", std::string(to_string(*ds.task)));
  add(r, "seed", std::to_string(cfg.seed));
  add(r, "requested.tr", cfg.sizes.train);
  add(r, "requested.va", cfg.sizes.valid);
  add(r, "requested.te", cfg.sizes.test);
  add(r, "classes", ds.label_set.size());
  add(r, "pool", pool_size);

  std::unordered_set<std::string> seen;
  std::size_t duplicates = 0;
  for (const auto& e : ds.examples) {
    if (!seen.insert(join(e.tokens)).second) ++duplicates;
  }
  add(r, "duplicates", duplicates);

  bool balanced = true;
  for (Partition p : kAllPartitions) {
    const auto part = ds.partition(p);
    const std::string tag(to_string(p));
    add(r, "size." + tag, part.size());
    std::vector<std::size_t> counts(ds.label_set.size(), 0);
    for (const auto* e : part) ++counts[ds.label_index(e->label)];
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    balanced = balanced && *lo == *hi;
    const double n = part.empty() ? 1.0 : static_cast<double>(part.size());
    add(r, "majority_prior." + tag, static_cast<double>(*hi) / n);
    for (std::size_t c = 0; c < counts.size(); ++c) {
      add(r, "prior." + tag + "." + ds.label_set[c], static_cast<double>(counts[c]) / n);
    }
  }
  add(r, "balanced", std::string(balanced ? "1" : "0"));
  ds.control_report.insert(ds.control_report.begin(), r.begin(), r.end());
}

// Sources reused across original and modified examples.
std::size_t shared_sources(const ProbingDataset& ds) {
  std::map<std::string, std::set<std::string>> labels_by_source;
  for (const auto& e : ds.examples) {
    const auto it = e.meta.find("source_id");
    if (it != e.meta.end()) labels_by_source[it->second].insert(e.label);
  }
  std::size_t shared = 0;
  for (const auto& [src, labels] : labels_by_source) shared += labels.size() > 1 ? 1 : 0;
  std::map<std::string, std::size_t> uses;
  for (const auto& e : ds.examples) {
    const auto it = e.meta.find("source_id");
    if (it != e.meta.end()) ++uses[it->second];
  }
  for (const auto& [src, n] : uses) shared += n > 1 && labels_by_source[src].size() == 1 ? 1 : 0;
  return shared;
}

// Number of keys found in more than one partition.
std::size_t keys_across_partitions(const ProbingDataset& ds, std::string_view meta_key) {
  std::map<std::string, std::set<Partition>> where;
  for (const auto& e : ds.examples) {
    const auto it = e.meta.find(std::string(meta_key));
    if (it != e.meta.end()) where[it->second].insert(e.partition);
  }
  std::size_t n = 0;
  for (const auto& [k, parts] : where) n += parts.size() > 1 ? 1 : 0;
  return n;
}

ProbingDataset finish(TaskId task, ProbingDataset ds, const Context& ctx) {
  ds.task = task;
  common_report(ds, ctx.cfg, ctx.pool.size());
  return ds;
}

ProbingDataset gen_sentlen(Context& ctx) {
  std::vector<Candidate> items;
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < ctx.cfg.sentlen_bins.size(); ++b) labels.push_back(std::to_string(b));
  for (std::size_t id : ctx.pool) {
    const std::size_t n = ctx.corpus.sentence(id).tokens.size();
    std::optional<std::size_t> bin;
    for (std::size_t b = 0; b < ctx.cfg.sentlen_bins.size(); ++b) {
      if (n >= ctx.cfg.sentlen_bins[b].lo && n <= ctx.cfg.sentlen_bins[b].hi) bin = b;
    }
    if (!bin) continue;
    items.push_back(source_candidate(ctx, id, std::to_string(*bin), id_key(id)));
  }
  auto ds = build_balanced_splits(std::move(items), labels, ctx.cfg.sizes, ctx.rng);
  std::size_t wrong = 0;
  for (const auto& e : ds.examples) {
    wrong += std::to_string(assign_sentlen_bin(e.tokens.size(), ctx.cfg.sentlen_bins)) == e.label ? 0 : 1;
  }
  add(ds.control_report, "sentlen.bin_mismatches", wrong);
  return finish(TaskId::SentLen, std::move(ds), ctx);
}

ProbingDataset gen_wc(Context& ctx) {
  const auto table = build_frequency_table(ctx.corpus);
  const auto vocab = mid_frequency_words(table, ctx.cfg.wc_lo_rank, ctx.cfg.wc_hi_rank);
  const std::unordered_set<std::string> targets(vocab.begin(), vocab.end());

  std::vector<Candidate> items;
  for (std::size_t id : ctx.pool) {
    std::optional<std::string> hit;
    std::size_t hits = 0;
    for (const auto& tok : ctx.corpus.sentence(id).tokens) {
      std::string folded = fold_case(tok);
      if (targets.contains(folded)) {
        ++hits;
        hit = std::move(folded);
      }
    }
    if (hits == 1) items.push_back(source_candidate(ctx, id, *hit, id_key(id)));
  }
  auto ds = build_balanced_splits(std::move(items), vocab, ctx.cfg.sizes, ctx.rng);

  std::size_t violations = 0;
  for (const auto& e : ds.examples) {
    std::size_t hits = 0;
    bool label_found = false;
    for (const auto& tok : e.tokens) {
      const std::string folded = fold_case(tok);
      if (targets.contains(folded)) {
        ++hits;
        label_found = label_found || folded == e.label;
      }
    }
    violations += (hits == 1 && label_found) ? 0 : 1;
  }
  add(ds.control_report, "wc.rank_lo", ctx.cfg.wc_lo_rank);
  add(ds.control_report, "wc.rank_hi", ctx.cfg.wc_hi_rank);
  add(ds.control_report, "wc.exactly_one_violations", violations);
  return finish(TaskId::WC, std::move(ds), ctx);
}

double depth_length_spearman(const ProbingDataset& ds) {
  std::vector<double> depth;
  std::vector<double> length;
  for (const auto& e : ds.examples) {
    depth.push_back(static_cast<double>(parse_integer(e.label)));
    length.push_back(static_cast<double>(e.tokens.size()));
  }
  return spearman_rho(depth, length);
}

ProbingDataset gen_treedepth(Context& ctx) {
  const auto& cfg = ctx.cfg;
  std::vector<DepthCandidate> pool;
  std::vector<std::string> labels;
  for (int d = cfg.treedepth_min; d <= cfg.treedepth_max; ++d) labels.push_back(std::to_string(d));
  for (std::size_t id : ctx.pool) {
    const int depth = tree_depth(ctx.corpus.parse(id));
    if (depth < cfg.treedepth_min || depth > cfg.treedepth_max) continue;
    pool.push_back({depth, ctx.corpus.sentence(id).tokens.size(), id});
  }

  const std::size_t k = labels.size();
  double bound = cfg.treedepth_max_abs_spearman;
  for (int attempt = 0; attempt < 6; ++attempt, bound *= 0.5) {
    DecorrelationOptions opts;
    opts.max_abs_spearman = bound;
    opts.per_class_cap = (cfg.sizes.train / k) + (cfg.sizes.valid / k) + (cfg.sizes.test / k);
    const auto selected = decorrelate(pool, opts, ctx.rng);

    std::vector<Candidate> items;
    items.reserve(selected.size());
    for (std::size_t id : selected) {
      auto c = source_candidate(ctx, id, std::to_string(tree_depth(ctx.corpus.parse(id))), id_key(id));
      items.push_back(std::move(c));
    }
    auto ds = build_balanced_splits(std::move(items), labels, cfg.sizes, ctx.rng, BalancePolicy::BestEffort);
    const double rho = depth_length_spearman(ds);
    if (std::abs(rho) <= cfg.treedepth_max_abs_spearman) {
      add(ds.control_report, "treedepth.spearman_depth_length", rho);
      add(ds.control_report, "treedepth.max_abs_spearman", cfg.treedepth_max_abs_spearman);
      add(ds.control_report, "treedepth.internal_bound", bound);
      return finish(TaskId::TreeDepth, std::move(ds), ctx);
    }
  }
  throw InfeasibleError("decorrelation", "final dataset exceeds the depth/length correlation bound");
}

ProbingDataset gen_topconst(Context& ctx) {
  std::map<std::string, std::size_t> freq;
  std::vector<std::pair<std::size_t, std::string>> sequences;
  for (std::size_t id : ctx.pool) {
    const auto seq = top_constituent_sequence(ctx.corpus.parse(id));
    if (!seq) continue;
    std::string label = join(*seq, "_");
    ++freq[label];
    sequences.emplace_back(id, std::move(label));
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() <= ctx.cfg.topconst_classes) {
    throw InfeasibleError("balance", "corpus has only " + std::to_string(ranked.size()) +
                                         " top-constituent sequences; need more than " +
                                         std::to_string(ctx.cfg.topconst_classes));
  }
  std::set<std::string> top;
  for (std::size_t i = 0; i < ctx.cfg.topconst_classes; ++i) top.insert(ranked[i].first);

  std::vector<std::string> labels(top.begin(), top.end());
  labels.emplace_back("OTHER");
  std::vector<Candidate> items;
  for (auto& [id, label] : sequences) {
    items.push_back(source_candidate(ctx, id, top.contains(label) ? label : "OTHER", id_key(id)));
  }
  auto ds = build_balanced_splits(std::move(items), labels, ctx.cfg.sizes, ctx.rng);
  add(ds.control_report, "topconst.distinct_sequences", ranked.size());
  return finish(TaskId::TopConst, std::move(ds), ctx);
}

ProbingDataset gen_bshift(Context& ctx) {
  std::vector<std::size_t> sources;
  for (std::size_t id : ctx.pool) {
    if (!bshift_eligible_pairs(ctx.corpus.sentence(id).tokens).empty()) sources.push_back(id);
  }
  shuffle_in_place(sources, ctx.rng);

  std::vector<Candidate> items;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::size_t id = sources[i];
    if (i % 2 == 0) {
      items.push_back(source_candidate(ctx, id, "O", id_key(id)));
      continue;
    }
    auto shifted = bshift_perturb(ctx.corpus.sentence(id).tokens, ctx.rng);
    if (ctx.pool_text.contains(join(shifted.tokens))) continue;
    Candidate c = source_candidate(ctx, id, "I", id_key(id));
    c.tokens = std::move(shifted.tokens);
    c.meta["swap_index"] = std::to_string(shifted.swap_index);
    items.push_back(std::move(c));
  }
  auto ds = build_balanced_splits(std::move(items), {"I", "O"}, ctx.cfg.sizes, ctx.rng);

  std::size_t bad = 0;
  for (const auto& e : ds.examples) {
    if (e.label != "I") continue;
    const auto& src = ctx.corpus.sentence(std::stoul(e.meta.at("source_id"))).tokens;
    const std::size_t i = std::stoul(e.meta.at("swap_index"));
    auto restored = e.tokens;
    std::swap(restored[i], restored[i + 1]);
    bad += restored == src && e.tokens != src ? 0 : 1;
  }
  add(ds.control_report, "bshift.transposition_violations", bad);
  add(ds.control_report, "shared_sources", shared_sources(ds));
  return finish(TaskId::BShift, std::move(ds), ctx);
}

std::map<std::string, std::string> majority_tags(const Corpus& corpus) {
  std::unordered_map<std::string, std::map<std::string, std::size_t>> counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& toks = corpus.sentence(i).tokens;
    const auto tags = preterminal_tags(corpus.parse(i));
    for (std::size_t k = 0; k < toks.size() && k < tags.size(); ++k) ++counts[fold_case(toks[k])][tags[k]];
  }
  std::map<std::string, std::string> out;
  for (const auto& [word, tags] : counts) {
    const auto best = std::max_element(tags.begin(), tags.end(), [](const auto& a, const auto& b) {
      return a.second < b.second;  // first maximum: lexicographically smallest tag
    });
    out.emplace(word, best->first);
  }
  return out;
}

bool is_somo_tag(std::string_view tag) { return tag == "NN" || tag == "NNS" || is_verb_tag(tag); }

ProbingDataset gen_somo(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto table = build_frequency_table(ctx.corpus);
  const auto tag_of = majority_tags(ctx.corpus);

  // Pool membership: folded word -> tag, restricted by rank.
  std::unordered_map<std::string, std::string> pool_tag;
  const auto& ranked = table.words_by_rank();
  for (std::size_t r = 0; r < ranked.size() && r < cfg.somo_pool_max_rank; ++r) {
    const auto it = tag_of.find(ranked[r]);
    if (it != tag_of.end() && is_somo_tag(it->second) && is_alphabetic(ranked[r])) pool_tag.emplace(ranked[r], it->second);
  }

  // Attested neighbours, sorted for determinism.
  std::unordered_map<std::string, std::vector<std::string>> successors;
  std::unordered_map<std::string, std::vector<std::string>> predecessors;
  for (const auto& [key, n] : table.bigrams()) {
    const auto space = key.find(' ');
    std::string left = key.substr(0, space);
    std::string right = key.substr(space + 1);
    if (pool_tag.contains(right)) successors[left].push_back(right);
    if (pool_tag.contains(left)) predecessors[right].push_back(left);
  }
  for (auto& [w, v] : successors) std::sort(v.begin(), v.end());
  for (auto& [w, v] : predecessors) std::sort(v.begin(), v.end());

  struct Modified {
    std::size_t id;
    std::size_t target;
    Replacement replacement;
  };
  std::vector<Modified> modifiable;
  static const std::vector<std::string> kNone;
  // Scanning every sentence is costly on large corpora; a few times the
  // requested size leaves ample room for the balance and disjointness passes.
  auto order = ctx.pool;
  shuffle_in_place(order, ctx.rng);
  const std::size_t enough = 4 * cfg.sizes.total();
  for (std::size_t id : order) {
    if (modifiable.size() >= enough) break;
    const auto& toks = ctx.corpus.sentence(id).tokens;
    const auto tags = preterminal_tags(ctx.corpus.parse(id));
    std::vector<std::size_t> targets;
    for (std::size_t k = 0; k < toks.size(); ++k) {
      if (is_somo_tag(tags[k]) && is_alphabetic(toks[k])) targets.push_back(k);
    }
    shuffle_in_place(targets, ctx.rng);
    for (std::size_t t : targets) {
      const auto& neighbours = [&]() -> const std::vector<std::string>& {
        const auto& index = t > 0 ? successors : predecessors;
        const auto it = index.find(fold_case(t > 0 ? toks[t - 1] : toks[t + 1]));
        return it == index.end() ? kNone : it->second;
      }();
      std::vector<std::string> pool;
      for (const auto& w : neighbours) {
        if (pool_tag.at(w) == tags[t]) pool.push_back(w);
      }
      auto rep = somo_replace(toks, t, pool, table, cfg.somo_log2_tolerance, ctx.rng);
      if (!rep || ctx.pool_text.contains(join(rep->tokens))) continue;
      modifiable.push_back({id, t, std::move(*rep)});
      break;
    }
  }
  shuffle_in_place(modifiable, ctx.rng);

  std::vector<Candidate> items;
  for (std::size_t i = 0; i < modifiable.size(); ++i) {
    auto& m = modifiable[i];
    if (i % 2 == 0) {
      items.push_back(source_candidate(ctx, m.id, "O", id_key(m.id)));
      continue;
    }
    Candidate c = source_candidate(ctx, m.id, "I", "r:" + fold_case(m.replacement.replacement));
    c.tokens = std::move(m.replacement.tokens);
    c.meta["target_index"] = std::to_string(m.target);
    c.meta["original"] = m.replacement.original;
    c.meta["replacement"] = fold_case(m.replacement.replacement);
    items.push_back(std::move(c));
  }
  auto ds = build_balanced_splits(std::move(items), {"I", "O"}, cfg.sizes, ctx.rng);

  // Independent re-measurement of the bigram bound on the emitted examples.
  std::size_t modified = 0;
  std::size_t satisfied = 0;
  double worst = 0.0;
  for (const auto& e : ds.examples) {
    if (e.label != "I") continue;
    ++modified;
    const std::size_t t = std::stoul(e.meta.at("target_index"));
    auto source = e.tokens;
    source[t] = e.meta.at("original");
    const auto dev = replacement_deviations(source, t, e.tokens[t], table);
    const bool ok = dev && within(dev->left, cfg.somo_log2_tolerance) && within(dev->right, cfg.somo_log2_tolerance) &&
                    fold_case(e.tokens[t]) != fold_case(source[t]) && tag_of.at(fold_case(e.tokens[t])) ==
                    preterminal_tags(ctx.corpus.parse(std::stoul(e.meta.at("source_id"))))[t];
    satisfied += ok ? 1 : 0;
    if (dev) worst = std::max({worst, dev->left.value_or(0.0), dev->right.value_or(0.0)});
  }
  add(ds.control_report, "somo.log2_tolerance", cfg.somo_log2_tolerance);
  add(ds.control_report, "somo.modified", modified);
  add(ds.control_report, "somo.bound_satisfied_rate", modified == 0 ? 1.0 : static_cast<double>(satisfied) / modified);
  add(ds.control_report, "somo.max_log2_deviation", worst);
  add(ds.control_report, "somo.replacements_across_partitions", keys_across_partitions(ds, "replacement"));
  add(ds.control_report, "shared_sources", shared_sources(ds));
  return finish(TaskId::SOMO, std::move(ds), ctx);
}

long clause_diff(const ClauseSplit& s) {
  return static_cast<long>(s.first.length()) - static_cast<long>(s.second.length());
}

ProbingDataset gen_coordinv(Context& ctx) {
  struct Source {
    std::size_t id;
    ClauseSplit split;
  };
  std::map<long, std::vector<Source>> by_diff;
  for (std::size_t id : ctx.pool) {
    auto split = coordinate_clauses(ctx.corpus.parse(id));
    if (split) by_diff[clause_diff(*split)].push_back({id, *split});
  }

  // Pair sources with clause-length difference d and -d so that the emitted
  // first-minus-second histograms of the two classes coincide.
  std::vector<std::pair<Source, bool>> chosen;  // (source, invert)
  for (auto& [d, group] : by_diff) {
    if (d < 0) continue;
    shuffle_in_place(group, ctx.rng);
    if (d == 0) {
      for (std::size_t i = 0; i < group.size(); ++i) chosen.emplace_back(group[i], i % 2 == 1);
      continue;
    }
    auto mit = by_diff.find(-d);
    if (mit == by_diff.end()) continue;
    auto& mirror = mit->second;
    shuffle_in_place(mirror, ctx.rng);
    const std::size_t n = std::min(group.size(), mirror.size());
    const std::size_t keep_plus = (n + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      chosen.emplace_back(group[i], i >= keep_plus);   // first ceil(n/2) stay original
      chosen.emplace_back(mirror[i], i < keep_plus);  // mirrors of those are inverted
    }
  }

  std::vector<Candidate> items;
  for (auto& [src, invert] : chosen) {
    Candidate c = source_candidate(ctx, src.id, invert ? "I" : "O", id_key(src.id));
    ClauseSplit emitted = src.split;
    if (invert) {
      const auto tags = preterminal_tags(ctx.corpus.parse(src.id));
      c.tokens = coordinv_invert(c.tokens, src.split, tags);
      emitted = inverted_split(src.split);
      if (ctx.pool_text.contains(join(c.tokens))) continue;
    }
    c.meta["clause_diff"] = std::to_string(clause_diff(emitted));
    items.push_back(std::move(c));
  }
  auto ds = build_balanced_splits(std::move(items), {"I", "O"}, ctx.cfg.sizes, ctx.rng);

  std::map<long, std::array<double, 2>> hist;
  std::array<double, 2> totals{0.0, 0.0};
  for (const auto& e : ds.examples) {
    const std::size_t cls = e.label == "I" ? 0 : 1;
    hist[std::stol(e.meta.at("clause_diff"))][cls] += 1.0;
    totals[cls] += 1.0;
  }
  double tv = 0.0;
  for (const auto& [d, h] : hist) tv += std::abs(h[0] / std::max(totals[0], 1.0) - h[1] / std::max(totals[1], 1.0));
  add(ds.control_report, "coordinv.clause_diff_tv", 0.5 * tv);
  add(ds.control_report, "shared_sources", shared_sources(ds));
  return finish(TaskId::CoordInv, std::move(ds), ctx);
}

enum class Target { Tense, Subject, Object };

ProbingDataset gen_agreement(Context& ctx, TaskId task, Target which) {
  std::vector<Candidate> items;
  std::vector<std::string> labels;
  if (which == Target::Tense) {
    labels = {std::string(to_string(Tense::Past)), std::string(to_string(Tense::Present))};
  } else {
    labels = {std::string(to_string(GrammaticalNumber::Plural)), std::string(to_string(GrammaticalNumber::Singular))};
  }
  for (std::size_t id : ctx.pool) {
    const auto& tree = ctx.corpus.parse(id);
    std::optional<TaggedToken> target;
    std::optional<std::string> label;
    if (which == Target::Tense) {
      target = main_clause_verb(tree);
      if (target) {
        if (auto t = tense_of(target->tag)) label = std::string(to_string(*t));
      }
    } else {
      const auto heads = argument_heads(tree);
      target = which == Target::Subject ? heads.subject : heads.object;
      if (target) {
        if (auto n = number_of(target->tag)) label = std::string(to_string(*n));
      }
    }
    if (!label) continue;
    const std::string form = fold_case(ctx.corpus.sentence(id).tokens[target->index]);
    Candidate c = source_candidate(ctx, id, *label, form);
    c.meta["target_index"] = std::to_string(target->index);
    c.meta["target_form"] = form;
    items.push_back(std::move(c));
  }
  auto ds = build_balanced_splits(std::move(items), labels, ctx.cfg.sizes, ctx.rng);

  std::array<std::set<std::string>, 3> forms;
  for (const auto& e : ds.examples) forms[static_cast<std::size_t>(e.partition)].insert(e.meta.at("target_form"));
  auto overlap = [&](std::size_t a, std::size_t b) {
    std::size_t n = 0;
    for (const auto& f : forms[a]) n += forms[b].contains(f) ? 1 : 0;
    return n;
  };
  add(ds.control_report, "forms.tr", forms[0].size());
  add(ds.control_report, "forms.va", forms[1].size());
  add(ds.control_report, "forms.te", forms[2].size());
  add(ds.control_report, "forms.overlap_tr_va", overlap(0, 1));
  add(ds.control_report, "forms.overlap_tr_te", overlap(0, 2));
  add(ds.control_report, "forms.overlap_va_te", overlap(1, 2));
  return finish(task, std::move(ds), ctx);
}

}  // namespace

ProbingDataset generate_task(TaskId task, const Corpus& corpus, const GenConfig& cfg) {
  cfg.validate();
  if (corpus.empty()) throw InputError("empty corpus");
  Context ctx = make_context(task, corpus, cfg);
  switch (task) {
    case TaskId::SentLen:
      return gen_sentlen(ctx);
    case TaskId::WC:
      return gen_wc(ctx);
    case TaskId::TreeDepth:
      return gen_treedepth(ctx);
    case TaskId::TopConst:
      return gen_topconst(ctx);
    case TaskId::BShift:
      return gen_bshift(ctx);
    case TaskId::Tense:
      return gen_agreement(ctx, task, Target::Tense);
    case TaskId::SubjNum:
      return gen_agreement(ctx, task, Target::Subject);
    case TaskId::ObjNum:
      return gen_agreement(ctx, task, Target::Object);
    case TaskId::SOMO:
      return gen_somo(ctx);
    case TaskId::CoordInv:
      return gen_coordinv(ctx);
  }
  throw InputError("unknown task");
}

// ---------------------------------------------------------------------------
// Files

void write_tsv(const ProbingDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& e : dataset.examples) {
    out << to_string(e.partition) << '\t' << e.label << '\t' << join(e.tokens) << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

ProbingDataset read_tsv(const std::filesystem::path& path, std::optional<TaskId> task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  ProbingDataset ds;
  ds.task = task;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cols = split_on(line, '\t');
    if (cols.size() != 3) {
      throw InputError("expected 3 tab-separated columns, found " + std::to_string(cols.size()), line_no);
    }
    const auto part = parse_partition(cols[0]);
    if (!part) throw InputError("unknown partition '" + cols[0] + "'", line_no);
    if (cols[1].empty()) throw InputError("empty label", line_no);
    ProbingExample e;
    e.partition = *part;
    e.label = cols[1];
    e.tokens = split_whitespace(cols[2]);
    if (e.tokens.empty()) throw InputError("empty sentence", line_no);
    ds.label_set.push_back(e.label);
    ds.examples.push_back(std::move(e));
  }
  sort_labels(ds.label_set);
  return ds;
}

void write_report(const ProbingDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& [k, v] : dataset.control_report) out << k << '=' << v << '\n';
}

}  // namespace probekit
