#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "probekit/error.hpp"
#include "probekit/harness.hpp"
#include "probekit/random.hpp"

using namespace probekit;

TEST_CASE("score table basics and canonical order") {
  ScoreTable t;
  t.set("BoV", "WC", 60.0);
  t.set("BoV", "SentLen", 70.5);
  t.set("Extra", "MyTask", 1.0);
  CHECK(t.get("BoV", "WC") == 60.0);
  CHECK_FALSE(t.get("Extra", "WC").has_value());
  CHECK_FALSE(t.get("Nope", "WC").has_value());
  const auto c = t.canonical();
  CHECK(c.columns() == std::vector<std::string>{"SentLen", "WC", "MyTask"});
  CHECK(c.get("BoV", "SentLen") == 70.5);

  ScoreTable other;
  other.set("BoV", "Tense", 80.0);
  t.merge(other);
  CHECK(t.get("BoV", "Tense") == 80.0);
}

TEST_CASE("report csv round trip and missing cells") {
  ScoreTable t;
  t.set("Majority", "BShift", 50.0);
  t.set("Majority", "SentLen", 16.666666666666668);
  const auto csv = report_csv(t);
  CHECK(csv.rfind("name,SentLen,BShift\n", 0) == 0);
  std::istringstream in(csv);
  CHECK(parse_score_csv(in) == t.canonical());
  CHECK(report_text(t).find("Majority") != std::string::npos);

  t.set("Length", "SentLen", 100.0);
  try {
    report_csv(t);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("Length") != std::string::npos);
    CHECK(what.find("BShift") != std::string::npos);
  }
}

TEST_CASE("score csv parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_score_csv(in);
    } catch (const InputError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("name,A,B\nx,1,2\ny,1\n") == 3);
  CHECK(line_of("name,A\nx,1\nx,2\n") == 3);
  CHECK(line_of("name,A\nx,abc\n") == 2);
  std::istringstream missing("name,A,B\nx,1,\n");
  const auto t = parse_score_csv(missing);
  CHECK_FALSE(t.get("x", "B").has_value());
}

TEST_CASE("holm adjustment dominates nothing Bonferroni rejects") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(12);
    for (auto& v : p) v = uniform_unit(rng) * 0.2;
    const auto h = holm_adjust(p);
    const auto b = bonferroni_adjust(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(h[i] <= b[i] + 1e-15);
      CHECK(h[i] >= p[i]);
      CHECK(h[i] <= 1.0);
    }
  }
  const auto h = holm_adjust(std::vector<double>{0.01, 0.04, 0.03});
  CHECK(h[0] == doctest::Approx(0.03));
  CHECK(h[2] == doctest::Approx(0.06));
  CHECK(h[1] == doctest::Approx(0.06));
}

TEST_CASE("correlation of identical and independent columns") {
  ScoreTable probing;
  ScoreTable downstream;
  Rng rng(8);
  for (int r = 0; r < 30; ++r) {
    const std::string row = "enc" + std::to_string(r);
    const double x = uniform_unit(rng);
    probing.set(row, "WC", x);
    probing.set(row, "Noise", uniform_unit(rng));
    downstream.set(row, "Same", x);
    downstream.set(row, "Other", uniform_unit(rng));
  }
  const auto res = correlate(probing, downstream, 0.05, 2000, 3);
  CHECK(res.cells.size() == 4);
  const auto& same = res.at("WC", "Same");
  CHECK(same.rho == doctest::Approx(1.0));
  CHECK(same.significant);
  CHECK(std::abs(res.at("Noise", "Other").rho) < 0.5);
  CHECK_FALSE(res.at("Noise", "Other").significant);
  CHECK(correlation_csv(res).rfind("probing_task,downstream_task,rho,p_raw,p_holm,significant\n", 0) == 0);
  // Seeded permutations are reproducible.
  CHECK(correlation_csv(correlate(probing, downstream, 0.05, 2000, 3)) == correlation_csv(res));

  ScoreTable tiny;
  tiny.set("a", "WC", 1);
  tiny.set("b", "WC", 2);
  CHECK_THROWS(correlate(tiny, tiny));
}

TEST_CASE("redundancy statistic") {
  const auto corpus = testing::corpus_of({
      "(ROOT (S (NP (PRP He)) (VP (VBD said) (SBAR (S (NP (PRP she)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP "
      "it)) (VP (VBZ rains))))))))))",
      "(ROOT (S (NP (PRP He)) (VP (VBD lied)) (. .)))",
      "(ROOT (S (NP (PRP He)) (VP (VBD said) (SBAR (S (NP (PRP it)) (VP (VBZ rains))))) (. .)))",
  });
  ProbingDataset ds;
  ds.task = TaskId::Tense;
  ds.label_set = {"Past", "Present"};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ProbingExample e{Partition::Test, "Past", corpus.sentence(i).tokens, {}};
    if (i == 0) e.meta["source_id"] = "0";
    ds.examples.push_back(e);
  }
  // Sentence 1: 2 of 3 past; sentence 2: the only tensed verb; sentence 3: a 1-1 tie.
  CHECK(redundancy_stat(ds, corpus, RedundancyFeature::Tense) == doctest::Approx(200.0 / 3.0));
  CHECK_THROWS_AS(redundancy_stat(ds, corpus, RedundancyFeature::Number), InputError);
}
