#pragma once

// Score tables, probing-vs-downstream correlation and redundancy statistics.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probekit/corpus.hpp"
#include "probekit/stats.hpp"
#include "probekit/taskgen.hpp"

namespace probekit {

/// Rows are embedding sources, columns are tasks. Cells may be missing.
class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::string>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  /// Adds a row or fills cells of an existing one; unknown columns are appended.
  void set(std::string_view row, std::string_view column, double value);
  std::optional<double> get(std::string_view row, std::string_view column) const;
  std::optional<std::size_t> row_index(std::string_view row) const;
  std::optional<std::size_t> column_index(std::string_view column) const;

  /// Merges every cell of `other` into this table.
  void merge(const ScoreTable& other);

  /// Columns reordered to the canonical task order, other columns after them.
  ScoreTable canonical() const;

  bool operator==(const ScoreTable& other) const = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
  std::vector<std::vector<std::optional<double>>> cells_;
};

/// `name,<col1>,<col2>,...`; empty fields are missing cells. Throws InputError
/// (with line) on ragged rows, duplicate rows or bad numbers.
ScoreTable parse_score_csv(std::istream& in);
ScoreTable read_score_csv(const std::filesystem::path& path);

/// CSV in canonical column order. Throws InputError naming the row and column
/// of any missing cell.
std::string report_csv(const ScoreTable& table);
/// Aligned plain-text rendering of the same table.
std::string report_text(const ScoreTable& table);

// ---------------------------------------------------------------------------

struct CorrelationCell {
  std::string probing;
  std::string downstream;
  double rho = 0.0;
  double p_raw = 1.0;
  double p_holm = 1.0;
  bool significant = false;
};

struct CorrelationResult {
  std::vector<std::string> probing_tasks;
  std::vector<std::string> downstream_tasks;
  std::vector<CorrelationCell> cells;  // probing-major
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::string correction = "holm";

  const CorrelationCell& at(std::string_view probing, std::string_view downstream) const;
};

/// Holm step-down adjusted p-values, monotone and capped at 1.
std::vector<double> holm_adjust(std::span<const double> p);
std::vector<double> bonferroni_adjust(std::span<const double> p);

/// Spearman for every (probing column, downstream column) pair over the shared
/// rows, two-sided permutation p-values with one set of row permutations
/// shared by all pairs, Holm correction across all pairs.
CorrelationResult correlate(const ScoreTable& probing, const ScoreTable& downstream, double alpha = 0.05,
                            std::size_t permutations = 10000, std::uint64_t seed = 1);

/// probing_task,downstream_task,rho,p_raw,p_holm,significant
std::string correlation_csv(const CorrelationResult& result);

// ---------------------------------------------------------------------------

enum class RedundancyFeature { Tense, Number };

/// Percentage of test sentences whose label equals the strict-majority value of
/// the feature over all tokens carrying it (ties do not match). Tags come from
/// the corpus parse named by meta source_id, else from a token lookup.
double redundancy_stat(const ProbingDataset& dataset, const Corpus& corpus, RedundancyFeature feature);

}  // namespace probekit
