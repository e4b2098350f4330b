#pragma once

// Probing dataset generators and the statistical controls they enforce.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "probekit/corpus.hpp"
#include "probekit/random.hpp"
#include "probekit/tree.hpp"

namespace probekit {

enum class TaskId { SentLen, WC, TreeDepth, TopConst, BShift, Tense, SubjNum, ObjNum, SOMO, CoordInv };

/// Canonical task order, as used for score table columns.
inline constexpr std::array<TaskId, 10> kAllTasks = {TaskId::SentLen, TaskId::WC,      TaskId::TreeDepth, TaskId::TopConst,
                                                     TaskId::BShift,  TaskId::Tense,   TaskId::SubjNum,   TaskId::ObjNum,
                                                     TaskId::SOMO,    TaskId::CoordInv};

std::string_view to_string(TaskId task);
std::optional<TaskId> parse_task_id(std::string_view name);

enum class Partition { Train, Valid, Test };
inline constexpr std::array<Partition, 3> kAllPartitions = {Partition::Train, Partition::Valid, Partition::Test};
std::string_view to_string(Partition p);  // "tr", "va", "te"
std::optional<Partition> parse_partition(std::string_view name);

struct ProbingExample {
  Partition partition = Partition::Train;
  std::string label;
  std::vector<std::string> tokens;
  /// Provenance, e.g. source_id, swap_index, original, replacement. Not serialized.
  std::map<std::string, std::string> meta;
};

/// Ordered key=value pairs describing measured control statistics.
using ControlReport = std::vector<std::pair<std::string, std::string>>;

struct ProbingDataset {
  std::optional<TaskId> task;
  std::vector<ProbingExample> examples;
  std::vector<std::string> label_set;  ///< sorted
  ControlReport control_report;

  std::size_t count(Partition p) const;
  std::vector<const ProbingExample*> partition(Partition p) const;
  /// Index of `label` in label_set; throws InputError when unknown.
  std::size_t label_index(std::string_view label) const;
  /// First value stored under `key` in the control report.
  std::optional<std::string> report_value(std::string_view key) const;
};

struct SplitSizes {
  std::size_t train = 100000;
  std::size_t valid = 10000;
  std::size_t test = 10000;

  std::size_t operator[](Partition p) const;
  std::size_t total() const { return train + valid + test; }
};

/// Inclusive token-count range.
struct LengthBin {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

/// Six width-4 bins over 5..28.
std::vector<LengthBin> default_sentlen_bins();

struct GenConfig {
  SplitSizes sizes;
  std::uint64_t seed = 1;
  std::size_t wc_lo_rank = 2000;
  std::size_t wc_hi_rank = 3000;
  double somo_log2_tolerance = 1.0;
  std::size_t somo_pool_max_rank = 10000;
  double treedepth_max_abs_spearman = 0.10;
  int treedepth_min = 5;
  int treedepth_max = 12;
  std::size_t topconst_classes = 19;
  std::vector<LengthBin> sentlen_bins = default_sentlen_bins();

  /// Throws InputError when sizes or tolerances are non-positive or bins overlap.
  void validate() const;
};

/// Index of the bin containing `length`; throws InputError when none does.
std::size_t assign_sentlen_bin(std::size_t length, std::span<const LengthBin> bins);

// ---------------------------------------------------------------------------
// Perturbations

/// Indices i such that tokens i and i+1 are both alphabetic and differ.
std::vector<std::size_t> bshift_eligible_pairs(std::span<const std::string> tokens);

struct ShiftedSentence {
  std::vector<std::string> tokens;
  std::size_t swap_index = 0;  ///< tokens[swap_index] and tokens[swap_index + 1] were exchanged
};

/// Swaps one uniformly chosen eligible adjacent pair. Throws InputError when
/// no pair is eligible.
ShiftedSentence bshift_perturb(std::span<const std::string> tokens, Rng& rng);

/// Swap at a fixed index, validated against eligibility.
ShiftedSentence bshift_at(std::span<const std::string> tokens, std::size_t swap_index);

struct Replacement {
  std::vector<std::string> tokens;
  std::string original;
  std::string replacement;
  /// log2 bigram deviations on the sides that exist
  std::optional<double> left_deviation;
  std::optional<double> right_deviation;
};

/// Log2 frequency deviations of the bigrams around `target` when its word is
/// replaced by `candidate`. nullopt when a defined side has an unattested
/// bigram (original or new).
struct SideDeviations {
  std::optional<double> left;
  std::optional<double> right;
};
std::optional<SideDeviations> replacement_deviations(std::span<const std::string> tokens, std::size_t target,
                                                     std::string_view candidate, const FrequencyTable& freqs);

/// Replaces tokens[target] by a pool word whose bigrams with both neighbours
/// are attested and within `tol_log2` of the original bigrams on a log2
/// scale. The choice is uniform over qualifying candidates; nullopt when none
/// qualifies. The pool word is assumed to share the target's POS.
std::optional<Replacement> somo_replace(std::span<const std::string> tokens, std::size_t target,
                                        std::span<const std::string> pool, const FrequencyTable& freqs,
                                        double tol_log2, Rng& rng);

/// Swaps the two clauses around the connective, keeping the comma before it.
/// When `tags` are supplied the clause-initial capital moves with sentence
/// position (proper nouns and "I" keep theirs). Throws InputError when the
/// split does not tile the tokens.
std::vector<std::string> coordinv_invert(std::span<const std::string> tokens, const ClauseSplit& split,
                                         std::span<const std::string> tags = {});

/// Split of an inverted sentence, i.e. where the clauses ended up.
ClauseSplit inverted_split(const ClauseSplit& split);

// ---------------------------------------------------------------------------
// Sampling controls

struct DepthCandidate {
  int depth = 0;
  std::size_t length = 0;
  std::size_t id = 0;
};

struct DecorrelationOptions {
  double max_abs_spearman = 0.10;
  /// Cap on examples kept per depth class; 0 means unlimited.
  std::size_t per_class_cap = 0;
};

/// Subsamples (depth class x length) cells toward a length histogram shared
/// by all classes. The mixing weight between the pooled histogram and the
/// common floor min_c n_c(L) is scanned on a grid; the result keeps as much
/// data as any admissible weight and, among those, the most decorrelated.
/// Throws InfeasibleError("decorrelation") when no weight reaches the bound
/// with at least one example per class.
std::vector<std::size_t> decorrelate(std::span<const DepthCandidate> pool, const DecorrelationOptions& options, Rng& rng);

/// One labeled candidate for a split; `key` is the disjointness key.
struct Candidate {
  std::string label;
  std::string key;
  std::vector<std::string> tokens;
  std::map<std::string, std::string> meta;
};

enum class BalancePolicy {
  Exact,      ///< equal class counts per partition, else InfeasibleError("balance")
  BestEffort  ///< scarce classes shrink proportionally; priors recorded
};

/// Distributes candidates over tr/va/te so that every key lands in exactly one
/// partition and class counts are equal within each partition. Per-class
/// quotas are floor(size / classes).
ProbingDataset build_balanced_splits(std::vector<Candidate> items, std::vector<std::string> label_set,
                                     const SplitSizes& sizes, Rng& rng,
                                     BalancePolicy policy = BalancePolicy::Exact);

// ---------------------------------------------------------------------------

/// Builds the dataset for one task. Errors name the failing control.
ProbingDataset generate_task(TaskId task, const Corpus& corpus, const GenConfig& cfg);

/// `partition<TAB>label<TAB>tokens` per line.
void write_tsv(const ProbingDataset& dataset, const std::filesystem::path& path);
ProbingDataset read_tsv(const std::filesystem::path& path, std::optional<TaskId> task = std::nullopt);
void write_report(const ProbingDataset& dataset, const std::filesystem::path& path);

}  // namespace probekit
