#include <doctest.h>

#include <memory>

#include "helpers.hpp"
#include "probekit/embed.hpp"
#include "probekit/error.hpp"

using namespace probekit;
using testing::toks;

namespace {

std::shared_ptr<WordVectors> abc_vectors() {
  auto wv = std::make_shared<WordVectors>(3);
  wv->set("a", Eigen::Vector3f(1, 0, 0));
  wv->set("b", Eigen::Vector3f(0, 1, 0));
  wv->set("c", Eigen::Vector3f(0.25f, -1, 2));
  return wv;
}

}  // namespace

TEST_CASE("word vector files") {
  const auto dir = testing::scratch_dir("vectors");
  testing::write_file(dir / "v.txt", "2 3\na 1 0 0\nb 0 1 0\n");
  const auto ok = load_word_vectors(dir / "v.txt");
  CHECK(ok.vectors.dim() == 3);
  CHECK(ok.vectors.size() == 2);
  CHECK(ok.warnings.empty());
  REQUIRE(ok.vectors.find("B"));
  CHECK(ok.vectors.find("B")->isApprox(Eigen::Vector3f(0, 1, 0)));

  testing::write_file(dir / "count.txt", "2 3\na 1 0 0\nb 0 1 0\nc 0 0 1\n");
  const auto more = load_word_vectors(dir / "count.txt");
  CHECK(more.vectors.size() == 3);
  CHECK(more.warnings.size() == 1);

  testing::write_file(dir / "bad.txt", "2 3\na 1 0 0\nb 0 1\n");
  try {
    load_word_vectors(dir / "bad.txt");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
  }
  WordVectors wv(3);
  CHECK_THROWS_AS(wv.set("x", Eigen::Vector2f(1, 1)), DimensionError);
}

TEST_CASE("bag of vectors") {
  const auto wv = abc_vectors();
  CHECK(bov_encode(toks("c"), *wv) == wv->find("c")->cast<double>());
  CHECK(bov_encode(toks("a b"), *wv).isApprox(Eigen::Vector3d(0.5, 0.5, 0)));
  CHECK(bov_encode(toks("a b"), *wv, BovMode::Sum).isApprox(Eigen::Vector3d(1, 1, 0)));
  CHECK(bov_encode(toks("zzz"), *wv).isZero());
  // Order invariance is exact, not approximate.
  const auto x = bov_encode(toks("c a b a c"), *wv);
  const auto y = bov_encode(toks("a c c b a"), *wv);
  CHECK((x.array() == y.array()).all());
}

TEST_CASE("length feature") {
  CHECK(length_feature(toks("a b c d e f g"))[0] == 7.0);
  CHECK(length_feature(std::vector<std::string>{})[0] == 0.0);
  CHECK(length_feature(toks("a b c d e f g a b"))[0] ==
        length_feature(toks("a b c d e f g"))[0] + length_feature(toks("a b"))[0]);
}

TEST_CASE("random recurrent parameters") {
  const auto p = random_recurrent_params<double>(4, 3, 7);
  const auto q = random_recurrent_params<double>(4, 3, 7);
  const auto r = random_recurrent_params<double>(4, 3, 8);
  REQUIRE(p.layers.size() == 1);
  CHECK(p.layers[0].forward.w_input.rows() == 12);
  CHECK(p.layers[0].forward.w_input.cols() == 4);
  CHECK(p.layers[0].forward.w_input == q.layers[0].forward.w_input);
  CHECK(p.layers[0].backward.w_recurrent == q.layers[0].backward.w_recurrent);
  CHECK(p.layers[0].forward.w_input != r.layers[0].forward.w_input);
  const double bound = 1.0 / std::sqrt(3.0);
  CHECK(p.layers[0].forward.w_input.cwiseAbs().maxCoeff() <= bound);
  CHECK(p.layers[0].forward.bias.segment(3, 3).isZero());
  CHECK_THROWS(random_recurrent_params<double>(4, 0, 1));
  const auto deep = random_recurrent_params<float>(4, 3, 7, 2);
  CHECK(deep.layers[1].forward.w_input.cols() == 6);
}

TEST_CASE("bidirectional encoder") {
  const auto params = random_recurrent_params<double>(3, 5, 11);
  Eigen::MatrixXd one = Eigen::MatrixXd::Random(3, 1);
  CHECK(birnn_encode(one, params, Pooling::Last) == birnn_encode(one, params, Pooling::Max));
  CHECK(birnn_encode(one, params, Pooling::Max).size() == 10);

  Eigen::MatrixXd seq = Eigen::MatrixXd::Random(3, 4);
  const auto zero = zero_recurrent_params<double>(3, 5);
  Eigen::MatrixXd states;
  CHECK(birnn_encode(seq, zero, Pooling::Max, &states).isZero());
  CHECK(states.rows() == 10);
  CHECK(states.cols() == 4);
  CHECK(states.isZero());

  Eigen::MatrixXd three = Eigen::MatrixXd::Random(3, 3);
  Eigen::MatrixXd permuted(3, 3);
  permuted << three.col(2), three.col(0), three.col(1);
  CHECK_FALSE(birnn_encode(three, params, Pooling::Max).isApprox(birnn_encode(permuted, params, Pooling::Max)));

  // Last pooling: forward half of the last step, backward half of the first.
  birnn_encode(seq, params, Pooling::Max, &states);
  const auto last = birnn_encode(seq, params, Pooling::Last);
  CHECK(last.head(5).isApprox(states.col(3).head(5)));
  CHECK(last.tail(5).isApprox(states.col(0).tail(5)));
  CHECK(birnn_encode(seq, params, Pooling::Max).isApprox(states.rowwise().maxCoeff()));
}

TEST_CASE("encoder in float agrees with double") {
  const auto pd = random_recurrent_params<double>(3, 4, 5);
  const auto pf = random_recurrent_params<float>(3, 4, 5);
  Eigen::MatrixXd seq = Eigen::MatrixXd::Random(3, 6);
  const Eigen::VectorXd d = birnn_encode(seq, pd, Pooling::Max);
  const Eigen::VectorXf f = birnn_encode<float>(seq.cast<float>(), pf, Pooling::Max);
  CHECK((d - f.cast<double>()).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("sources and embedding tables") {
  const auto dir = testing::scratch_dir("table");
  const auto wv = abc_vectors();
  const std::vector<Sentence> sentences{{toks("a b"), 0}, {toks("c"), 1}, {toks("a c b"), 2}};
  const BiRnnSource rnn(wv, random_recurrent_params<float>(3, 4, 1), Pooling::Max);
  CHECK(rnn.name() == "BiLSTM-max");
  CHECK(rnn.dim() == 8);
  const auto m = encode_all(rnn, sentences, 2);
  CHECK(m.row(1).transpose().isApprox(rnn.encode(sentences[1])));

  save_embeddings(rnn, sentences, dir / "emb.txt");
  const auto table = load_embedding_table(dir / "emb.txt");
  CHECK(table.size() == 3);
  CHECK((table.encode(sentences[2]) - rnn.encode(sentences[2])).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK_THROWS_AS(table.encode(Sentence{toks("a"), 3}), InputError);

  testing::write_file(dir / "ragged.txt", "0\t1 2\n1\t1 2 3\n");
  try {
    load_embedding_table(dir / "ragged.txt");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 2);
  }
  testing::write_file(dir / "gap.txt", "0\t1 2\n2\t1 2\n");
  CHECK_THROWS_AS(load_embedding_table(dir / "gap.txt"), InputError);

  const Eigen::MatrixXf tm = token_matrix(toks("a zzz"), *wv);
  CHECK(tm.col(1).isZero());
}
