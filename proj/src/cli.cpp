#include "probekit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>

#include "probekit/corpus.hpp"
#include "probekit/embed.hpp"
#include "probekit/error.hpp"
#include "probekit/harness.hpp"
#include "probekit/probe.hpp"
#include "probekit/taskgen.hpp"
#include "probekit/text.hpp"

namespace probekit {

namespace {

struct SourceOptions {
  std::string kind = "bov";
  std::string vectors;
  std::string table;
  std::uint64_t encoder_seed = 1;
  std::size_t hidden = 512;
  std::size_t layers = 1;
};

void add_source_options(CLI::App* app, SourceOptions& o) {
  app->add_option("--source", o.kind, "Embedding source")
      ->check(CLI::IsMember({"bov", "length", "birnn-max", "birnn-last", "table"}));
  app->add_option("--vectors", o.vectors, "Word vectors (text format)");
  app->add_option("--table", o.table, "Precomputed embedding table (for --source table)");
  app->add_option("--encoder-seed", o.encoder_seed, "Seed of the untrained recurrent encoder");
  app->add_option("--hidden", o.hidden, "Recurrent hidden size per direction");
  app->add_option("--layers", o.layers, "Recurrent layers");
}

std::unique_ptr<EmbeddingSource> make_source(const SourceOptions& o, std::ostream& err) {
  if (o.kind == "length") return std::make_unique<LengthSource>();
  if (o.kind == "table") {
    if (o.table.empty()) throw InputError("--source table needs --table");
    return std::make_unique<TableSource>(load_embedding_table(o.table));
  }
  if (o.vectors.empty()) throw InputError("--source " + o.kind + " needs --vectors");
  auto loaded = load_word_vectors(o.vectors);
  for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
  auto vectors = std::make_shared<const WordVectors>(std::move(loaded.vectors));
  if (o.kind == "bov") return std::make_unique<BovSource>(vectors);
  const Pooling pooling = o.kind == "birnn-max" ? Pooling::Max : Pooling::Last;
  auto params = random_recurrent_params<float>(vectors->dim(), o.hidden, o.encoder_seed, o.layers);
  return std::make_unique<BiRnnSource>(vectors, std::move(params), pooling);
}

std::optional<TaskId> resolve_task(const std::string& flag, const std::string& task_file) {
  if (!flag.empty()) {
    const auto t = parse_task_id(flag);
    if (!t) throw InputError("unknown task '" + flag + "'");
    return t;
  }
  return parse_task_id(std::filesystem::path(task_file).stem().string());
}

std::vector<Sentence> sentences_of(const ProbingDataset& ds) {
  std::vector<Sentence> out;
  out.reserve(ds.examples.size());
  for (std::size_t i = 0; i < ds.examples.size(); ++i) out.push_back({ds.examples[i].tokens, i});
  return out;
}

DesignMatrix design_for(const ProbingDataset& ds, const Eigen::MatrixXd& features, Partition p) {
  DesignMatrix m;
  m.class_names = ds.label_set;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < ds.examples.size(); ++i) {
    if (ds.examples[i].partition != p) continue;
    rows.push_back(static_cast<Eigen::Index>(i));
    m.labels.push_back(ds.label_index(ds.examples[i].label));
  }
  m.rows = features(rows, Eigen::all);
  return m;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

void write_single_score(const std::string& path, const std::string& row, const std::string& column, double value) {
  ScoreTable t;
  t.set(row, column, value);
  write_text(path, report_csv(t));
}

std::string task_column(const std::optional<TaskId>& task, const std::string& task_file) {
  return task ? std::string(to_string(*task)) : std::filesystem::path(task_file).stem().string();
}

// --- subcommands -----------------------------------------------------------

struct GenerateArgs {
  std::string task;
  std::string corpus;
  std::string parses;
  std::uint64_t seed = 0;
  std::size_t train = 100000;
  std::size_t valid = 10000;
  std::size_t test = 10000;
  std::string out;
  GenConfig cfg;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  const auto task = parse_task_id(a.task);
  if (!task) throw InputError("unknown task '" + a.task + "'");
  GenConfig cfg = a.cfg;
  cfg.seed = a.seed;
  cfg.sizes = {a.train, a.valid, a.test};
  const Corpus corpus = load_corpus(a.corpus, a.parses);
  const ProbingDataset ds = generate_task(*task, corpus, cfg);
  write_tsv(ds, a.out);
  const auto report = std::filesystem::path(a.out).replace_extension(".report");
  write_report(ds, report);
  out << "wrote " << ds.examples.size() << " examples to " << a.out << " and " << report.string() << '\n';
  return 0;
}

struct EncodeArgs {
  std::string task_file;
  SourceOptions source;
  std::string out;
};

int do_encode(const EncodeArgs& a, std::ostream& out, std::ostream& err) {
  const ProbingDataset ds = read_tsv(a.task_file);
  const auto source = make_source(a.source, err);
  const auto sentences = sentences_of(ds);
  save_embeddings(*source, sentences, a.out);
  out << "wrote " << sentences.size() << " x " << source->dim() << " embeddings to " << a.out << '\n';
  return 0;
}

struct ProbeArgs {
  std::string task_file;
  std::string task;
  SourceOptions source;
  std::string classifier = "auto";
  std::uint64_t seed = 1;
  std::vector<std::size_t> hidden_sizes{50, 100, 200};
  std::vector<double> dropouts{0.0, 0.1, 0.2};
  std::vector<double> l2s{0.0, 1e-5, 1e-4};
  ClassifierConfig base;
  unsigned threads = 1;
  std::string grid_out;
  std::string score_out;
  std::string name;
};

int do_probe(const ProbeArgs& a, std::ostream& out, std::ostream& err) {
  const auto task = resolve_task(a.task, a.task_file);
  const ProbingDataset ds = read_tsv(a.task_file, task);
  const auto source = make_source(a.source, err);
  const Eigen::MatrixXd features = encode_all(*source, sentences_of(ds));

  GridSpec grid;
  grid.base = a.base;
  grid.hidden_sizes = a.hidden_sizes;
  grid.dropouts = a.dropouts;
  grid.l2s = a.l2s;
  if (a.classifier == "auto") {
    grid.kind = task == TaskId::WC ? ClassifierKind::LogReg : ClassifierKind::Mlp;
  } else {
    grid.kind = a.classifier == "logreg" ? ClassifierKind::LogReg : ClassifierKind::Mlp;
  }

  const auto result = grid_search<float>(design_for(ds, features, Partition::Train),
                                         design_for(ds, features, Partition::Valid),
                                         design_for(ds, features, Partition::Test), grid, a.seed, a.threads);
  const std::string grid_path =
      a.grid_out.empty() ? std::filesystem::path(a.task_file).replace_extension(".grid.csv").string() : a.grid_out;
  write_text(grid_path, grid_trace_csv(result));
  const std::string row = a.name.empty() ? source->name() : a.name;
  const std::string column = task_column(task, a.task_file);
  if (!a.score_out.empty()) write_single_score(a.score_out, row, column, result.test_accuracy);

  out << "task=" << column << " source=" << row << " classifier=" << to_string(result.best.kind);
  if (result.best.kind == ClassifierKind::Mlp) {
    out << " hidden=" << result.best.hidden_size << " dropout=" << format_real(result.best.dropout);
  }
  out << " l2=" << format_real(result.best.l2) << " val_acc=" << format_score(result.val_accuracy)
      << " test_acc=" << format_score(result.test_accuracy) << '\n';
  return 0;
}

struct BaselineArgs {
  std::string task_file;
  std::string task;
  std::vector<std::string> which{"majority", "length", "nb-uni", "nb-bi"};
  std::uint64_t seed = 1;
  std::string score_out;
};

int do_baseline(const BaselineArgs& a, std::ostream& out) {
  const auto task = resolve_task(a.task, a.task_file);
  const ProbingDataset ds = read_tsv(a.task_file, task);
  std::vector<std::vector<std::string>> docs[3];
  std::vector<std::string> labels[3];
  for (const auto& e : ds.examples) {
    const auto p = static_cast<std::size_t>(e.partition);
    docs[p].push_back(e.tokens);
    labels[p].push_back(e.label);
  }
  const std::string column = task_column(task, a.task_file);
  ScoreTable scores;
  for (const auto& which : a.which) {
    double acc = 0.0;
    std::string row;
    if (which == "majority") {
      acc = majority_baseline(labels[0], labels[2]);
      row = "Majority";
    } else if (which == "length") {
      LengthSource length;
      const Eigen::MatrixXd features = encode_all(length, sentences_of(ds));
      acc = grid_search<double>(design_for(ds, features, Partition::Train), design_for(ds, features, Partition::Valid),
                                design_for(ds, features, Partition::Test), length_baseline_grid(), a.seed)
                .test_accuracy;
      row = "Length";
    } else if (which == "nb-uni" || which == "nb-bi") {
      const int order = which == "nb-uni" ? 1 : 2;
      acc = nb_tfidf_baseline(docs[0], labels[0], docs[2], labels[2], order);
      row = order == 1 ? "NB-uni-tfidf" : "NB-bi-tfidf";
    } else {
      throw InputError("unknown baseline '" + which + "'");
    }
    scores.set(row, column, acc);
    out << which << '=' << format_score(acc) << '\n';
  }
  if (!a.score_out.empty()) write_text(a.score_out, report_csv(scores));
  return 0;
}

struct CorrelateArgs {
  std::string probing;
  std::string downstream;
  double alpha = 0.05;
  std::size_t permutations = 10000;
  std::uint64_t seed = 1;
  std::string out;
};

int do_correlate(const CorrelateArgs& a, std::ostream& out) {
  const auto result = correlate(read_score_csv(a.probing), read_score_csv(a.downstream), a.alpha, a.permutations, a.seed);
  const std::string csv = correlation_csv(result);
  if (a.out.empty()) {
    out << csv;
  } else {
    write_text(a.out, csv);
    const auto n = std::count_if(result.cells.begin(), result.cells.end(), [](const auto& c) { return c.significant; });
    out << "wrote " << result.cells.size() << " correlations (" << n << " significant after holm) to " << a.out
        << '\n';
  }
  return 0;
}

struct ReportArgs {
  std::vector<std::string> scores;
  std::string out;
};

int do_report(const ReportArgs& a, std::ostream& out) {
  ScoreTable table;
  for (const auto& path : a.scores) table.merge(read_score_csv(path));
  out << report_text(table);
  if (!a.out.empty()) write_text(a.out, report_csv(table));
  return 0;
}

struct RedundancyArgs {
  std::string task_file;
  std::string task;
  std::string corpus;
  std::string parses;
};

int do_redundancy(const RedundancyArgs& a, std::ostream& out) {
  const auto task = resolve_task(a.task, a.task_file);
  if (!task) throw InputError("cannot infer the task; pass --task");
  const ProbingDataset ds = read_tsv(a.task_file, task);
  const Corpus corpus = load_corpus(a.corpus, a.parses);
  const auto feature = *task == TaskId::Tense ? RedundancyFeature::Tense : RedundancyFeature::Number;
  out << "redundancy=" << format_score(redundancy_stat(ds, corpus, feature)) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"probekit: probing dataset generation and sentence-embedding probes"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate one probing task from a parsed corpus");
  g->add_option("--task", gen.task, "Task name")->required();
  g->add_option("--corpus", gen.corpus, "Sentences file")->required()->check(CLI::ExistingFile);
  g->add_option("--parses", gen.parses, "Bracketed parses file")->required()->check(CLI::ExistingFile);
  g->add_option("--seed", gen.seed, "Random seed")->required();
  g->add_option("--train-size", gen.train);
  g->add_option("--valid-size", gen.valid);
  g->add_option("--test-size", gen.test);
  g->add_option("--out", gen.out, "Output TSV; the report goes next to it as .report")->required();
  g->add_option("--wc-lo-rank", gen.cfg.wc_lo_rank);
  g->add_option("--wc-hi-rank", gen.cfg.wc_hi_rank);
  g->add_option("--somo-tolerance", gen.cfg.somo_log2_tolerance, "Max |log2| bigram frequency change");
  g->add_option("--somo-pool-rank", gen.cfg.somo_pool_max_rank);
  g->add_option("--treedepth-max-rho", gen.cfg.treedepth_max_abs_spearman);
  g->add_option("--topconst-classes", gen.cfg.topconst_classes);

  EncodeArgs enc;
  auto* e = app.add_subcommand("encode", "Write an embedding table for a task file");
  e->add_option("--task-file", enc.task_file)->required()->check(CLI::ExistingFile);
  add_source_options(e, enc.source);
  e->add_option("--out", enc.out)->required();

  ProbeArgs pr;
  auto* p = app.add_subcommand("probe", "Grid-search a probing classifier");
  p->add_option("--task-file", pr.task_file)->required()->check(CLI::ExistingFile);
  p->add_option("--task", pr.task, "Task name (default: inferred from the file name)");
  add_source_options(p, pr.source);
  p->add_option("--classifier", pr.classifier)->check(CLI::IsMember({"auto", "mlp", "logreg"}));
  p->add_option("--seed", pr.seed, "Random seed (default 1)");
  p->add_option("--hidden-sizes", pr.hidden_sizes)->delimiter(',');
  p->add_option("--dropouts", pr.dropouts)->delimiter(',');
  p->add_option("--l2", pr.l2s)->delimiter(',');
  p->add_option("--learning-rate", pr.base.learning_rate);
  p->add_option("--batch-size", pr.base.batch_size);
  p->add_option("--max-epochs", pr.base.max_epochs);
  p->add_option("--patience", pr.base.patience);
  p->add_option("--threads", pr.threads);
  p->add_option("--grid-out", pr.grid_out, "Grid trace CSV (default: <task-file>.grid.csv)");
  p->add_option("--score-out", pr.score_out, "One-cell score CSV");
  p->add_option("--name", pr.name, "Row name in the score CSV");

  BaselineArgs bl;
  auto* b = app.add_subcommand("baseline", "Majority, length and naive Bayes baselines");
  b->add_option("--task-file", bl.task_file)->required()->check(CLI::ExistingFile);
  b->add_option("--task", bl.task);
  b->add_option("--which", bl.which)->delimiter(',');
  b->add_option("--seed", bl.seed);
  b->add_option("--score-out", bl.score_out);

  CorrelateArgs co;
  auto* c = app.add_subcommand("correlate", "Spearman correlation of probing and downstream scores");
  c->add_option("--probing", co.probing)->required()->check(CLI::ExistingFile);
  c->add_option("--downstream", co.downstream)->required()->check(CLI::ExistingFile);
  c->add_option("--alpha", co.alpha);
  c->add_option("--permutations", co.permutations);
  c->add_option("--seed", co.seed);
  c->add_option("--out", co.out);

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "Merge score CSVs into one table");
  r->add_option("--scores", rep.scores)->required()->check(CLI::ExistingFile);
  r->add_option("--out", rep.out);

  RedundancyArgs red;
  auto* d = app.add_subcommand("redundancy", "Share of test sentences whose label is the sentence-wide majority");
  d->add_option("--task-file", red.task_file)->required()->check(CLI::ExistingFile);
  d->add_option("--task", red.task);
  d->add_option("--corpus", red.corpus)->required()->check(CLI::ExistingFile);
  d->add_option("--parses", red.parses)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (g->parsed()) return do_generate(gen, out);
    if (e->parsed()) return do_encode(enc, out, err);
    if (p->parsed()) return do_probe(pr, out, err);
    if (b->parsed()) return do_baseline(bl, out);
    if (c->parsed()) return do_correlate(co, out);
    if (r->parsed()) return do_report(rep, out);
    if (d->parsed()) return do_redundancy(red, out);
  } catch (const InfeasibleError& ex) {
    err << "error: " << ex.what() << '\n';
    return 3;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace probekit
