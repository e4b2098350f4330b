#include "probekit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "probekit/error.hpp"
#include "probekit/random.hpp"
#include "probekit/text.hpp"

namespace probekit {

ScoreTable::ScoreTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

std::optional<std::size_t> ScoreTable::row_index(std::string_view row) const {
  const auto it = std::find(rows_.begin(), rows_.end(), row);
  if (it == rows_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::optional<std::size_t> ScoreTable::column_index(std::string_view column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

void ScoreTable::set(std::string_view row, std::string_view column, double value) {
  auto c = column_index(column);
  if (!c) {
    columns_.emplace_back(column);
    for (auto& r : cells_) r.emplace_back();
    c = columns_.size() - 1;
  }
  auto r = row_index(row);
  if (!r) {
    rows_.emplace_back(row);
    cells_.emplace_back(columns_.size());
    r = rows_.size() - 1;
  }
  cells_[*r][*c] = value;
}

std::optional<double> ScoreTable::get(std::string_view row, std::string_view column) const {
  const auto r = row_index(row);
  const auto c = column_index(column);
  if (!r || !c) return std::nullopt;
  return cells_[*r][*c];
}

void ScoreTable::merge(const ScoreTable& other) {
  for (std::size_t r = 0; r < other.rows_.size(); ++r) {
    if (!row_index(other.rows_[r])) {
      rows_.push_back(other.rows_[r]);
      cells_.emplace_back(columns_.size());
    }
    for (std::size_t c = 0; c < other.columns_.size(); ++c) {
      if (other.cells_[r][c]) set(other.rows_[r], other.columns_[c], *other.cells_[r][c]);
    }
  }
  // Columns of `other` without any values still belong to the table.
  for (const auto& col : other.columns_) {
    if (!column_index(col)) {
      columns_.push_back(col);
      for (auto& row : cells_) row.emplace_back();
    }
  }
}

ScoreTable ScoreTable::canonical() const {
  std::vector<std::string> order;
  for (TaskId t : kAllTasks) {
    const std::string name(to_string(t));
    if (column_index(name)) order.push_back(name);
  }
  for (const auto& c : columns_) {
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
  }
  ScoreTable out(order);
  out.rows_ = rows_;
  for (const auto& row : cells_) {
    std::vector<std::optional<double>> reordered;
    for (const auto& name : order) reordered.push_back(row[*column_index(name)]);
    out.cells_.push_back(std::move(reordered));
  }
  return out;
}

ScoreTable parse_score_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw InputError("empty score file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_on(line, ',');
  if (header.size() < 2 || header[0] != "name") throw InputError("header must be 'name,<task>,...'", 1);
  std::vector<std::string> columns(header.begin() + 1, header.end());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].empty()) throw InputError("empty column name", 1);
    if (std::find(columns.begin(), columns.begin() + static_cast<std::ptrdiff_t>(i), columns[i]) !=
        columns.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw InputError("duplicate column '" + columns[i] + "'", 1);
    }
  }
  ScoreTable table(columns);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_on(line, ',');
    if (fields.size() != header.size()) {
      throw InputError("ragged row: " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(header.size()),
                       line_no);
    }
    if (fields[0].empty()) throw InputError("empty row name", line_no);
    if (table.row_index(fields[0])) throw InputError("duplicate row '" + fields[0] + "'", line_no);
    bool any = false;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (fields[c].empty()) continue;
      table.set(fields[0], columns[c - 1], parse_real(fields[c], line_no));
      any = true;
    }
    if (!any) throw InputError("row '" + fields[0] + "' has no values", line_no);
  }
  return table;
}

ScoreTable read_score_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_score_csv(in);
}

namespace {

std::vector<std::vector<std::string>> formatted_cells(const ScoreTable& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : t.rows()) {
    std::vector<std::string> fields{row};
    for (const auto& col : t.columns()) {
      const auto v = t.get(row, col);
      if (!v) throw InputError("missing cell: row '" + row + "', column '" + col + "'");
      fields.push_back(format_score(*v));
    }
    out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace

std::string report_csv(const ScoreTable& table) {
  const ScoreTable t = table.canonical();
  std::ostringstream out;
  out << "name";
  for (const auto& c : t.columns()) out << ',' << c;
  out << '\n';
  for (const auto& fields : formatted_cells(t)) out << join(fields, ",") << '\n';
  return out.str();
}

std::string report_text(const ScoreTable& table) {
  const ScoreTable t = table.canonical();
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> head{"name"};
  head.insert(head.end(), t.columns().begin(), t.columns().end());
  lines.push_back(head);
  for (auto& fields : formatted_cells(t)) lines.push_back(std::move(fields));

  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], l[i].size());
  }
  std::ostringstream out;
  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i == 0) {
        out << l[i] << std::string(width[i] - l[i].size(), ' ');
      } else {
        out << "  " << std::string(width[i] - l[i].size(), ' ') << l[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

const CorrelationCell& CorrelationResult::at(std::string_view probing, std::string_view downstream) const {
  for (const auto& c : cells) {
    if (c.probing == probing && c.downstream == downstream) return c;
  }
  throw InputError("no correlation cell for " + std::string(probing) + " x " + std::string(downstream));
}

std::vector<double> holm_adjust(std::span<const double> p) {
  const std::size_t m = p.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
  std::vector<double> adj(m);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    running = std::max(running, std::min(1.0, static_cast<double>(m - j) * p[order[j]]));
    adj[order[j]] = running;
  }
  return adj;
}

std::vector<double> bonferroni_adjust(std::span<const double> p) {
  std::vector<double> adj(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) adj[i] = std::min(1.0, static_cast<double>(p.size()) * p[i]);
  return adj;
}

CorrelationResult correlate(const ScoreTable& probing, const ScoreTable& downstream, double alpha,
                            std::size_t permutations, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must be in (0, 1)");
  if (permutations == 0) throw InputError("need at least one permutation");
  {
    auto a = probing.rows();
    auto b = downstream.rows();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError("probing and downstream tables cover different row sets");
  }
  const std::vector<std::string>& names = probing.rows();
  const std::size_t n = names.size();
  if (n < 3) throw InputError("correlation needs at least 3 shared rows, got " + std::to_string(n));

  auto ranked_column = [&](const ScoreTable& t, const std::string& col) {
    std::vector<double> v;
    for (const auto& r : names) {
      const auto x = t.get(r, col);
      if (!x) throw InputError("missing cell: row '" + r + "', column '" + col + "'");
      v.push_back(*x);
    }
    return average_ranks(v);
  };
  const ScoreTable pc = probing.canonical();
  const ScoreTable dc = downstream.canonical();
  std::vector<std::vector<double>> pr;
  std::vector<std::vector<double>> dr;
  for (const auto& c : pc.columns()) pr.push_back(ranked_column(pc, c));
  for (const auto& c : dc.columns()) dr.push_back(ranked_column(dc, c));

  CorrelationResult result;
  result.probing_tasks = pc.columns();
  result.downstream_tasks = dc.columns();
  result.permutations = permutations;
  result.seed = seed;
  result.alpha = alpha;

  const std::size_t np = pr.size();
  const std::size_t nd = dr.size();
  std::vector<double> observed(np * nd);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nd; ++j) observed[i * nd + j] = pearson(pr[i], dr[j]);
  }

  // Pearson on ranks only needs the cross sum once means and norms are fixed.
  auto centered = [](std::vector<double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double norm = 0.0;
    for (double& x : v) {
      x -= mean;
      norm += x * x;
    }
    const double s = std::sqrt(norm);
    for (double& x : v) x /= s;
    return v;
  };
  std::vector<std::vector<double>> pz;
  std::vector<std::vector<double>> dz;
  for (const auto& v : pr) pz.push_back(centered(v));
  for (const auto& v : dr) dz.push_back(centered(v));

  std::vector<std::size_t> exceed(np * nd, 0);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 0));
  constexpr double kSlack = 1e-12;
  for (std::size_t b = 0; b < permutations; ++b) {
    shuffle_in_place(perm, rng);
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t j = 0; j < nd; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += pz[i][perm[r]] * dz[j][r];
        if (std::abs(s) >= std::abs(observed[i * nd + j]) - kSlack) ++exceed[i * nd + j];
      }
    }
  }

  std::vector<double> p_raw(np * nd);
  for (std::size_t k = 0; k < p_raw.size(); ++k) {
    p_raw[k] = (1.0 + static_cast<double>(exceed[k])) / (1.0 + static_cast<double>(permutations));
  }
  const auto p_holm = holm_adjust(p_raw);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      const std::size_t k = i * nd + j;
      result.cells.push_back({result.probing_tasks[i], result.downstream_tasks[j], observed[k], p_raw[k], p_holm[k],
                              p_holm[k] <= alpha});
    }
  }
  return result;
}

std::string correlation_csv(const CorrelationResult& result) {
  std::ostringstream out;
  out << "probing_task,downstream_task,rho,p_raw,p_holm,significant\n";
  for (const auto& c : result.cells) {
    out << c.probing << ',' << c.downstream << ',' << format_real(c.rho) << ',' << format_real(c.p_raw) << ','
        << format_real(c.p_holm) << ',' << (c.significant ? "true" : "false") << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

double redundancy_stat(const ProbingDataset& dataset, const Corpus& corpus, RedundancyFeature feature) {
  if (!dataset.task) throw InputError("redundancy statistic needs a known task");
  const TaskId task = *dataset.task;
  const bool tense_task = task == TaskId::Tense;
  const bool number_task = task == TaskId::SubjNum || task == TaskId::ObjNum;
  if ((feature == RedundancyFeature::Tense && !tense_task) || (feature == RedundancyFeature::Number && !number_task)) {
    throw InputError("redundancy feature does not match task " + std::string(to_string(task)));
  }
  const auto test = dataset.partition(Partition::Test);
  if (test.empty()) throw InputError("test partition is empty");

  std::unordered_map<std::string, std::size_t> by_text;
  auto lookup = [&](const ProbingExample& e) -> std::size_t {
    const auto it = e.meta.find("source_id");
    if (it != e.meta.end()) return static_cast<std::size_t>(parse_integer(it->second));
    if (by_text.empty()) {
      for (std::size_t i = 0; i < corpus.size(); ++i) by_text.emplace(join(corpus.sentence(i).tokens), i);
    }
    const auto found = by_text.find(join(e.tokens));
    if (found == by_text.end()) throw InputError("test sentence not found in corpus: " + join(e.tokens));
    return found->second;
  };

  std::size_t matching = 0;
  for (const ProbingExample* e : test) {
    std::map<std::string, std::size_t> votes;
    for (const auto& tag : preterminal_tags(corpus.parse(lookup(*e)))) {
      if (feature == RedundancyFeature::Tense) {
        if (const auto t = tense_of(tag)) ++votes[std::string(to_string(*t))];
      } else if (const auto n = number_of(tag)) {
        ++votes[std::string(to_string(*n))];
      }
    }
    std::size_t total = 0;
    for (const auto& [value, n] : votes) total += n;
    const auto it = votes.find(e->label);
    if (it != votes.end() && 2 * it->second > total) ++matching;
  }
  return 100.0 * static_cast<double>(matching) / static_cast<double>(test.size());
}

}  // namespace probekit
