#pragma once

// Sentence embedding sources: bag of vectors, the length feature, an untrained
// bidirectional LSTM, and lookup tables produced by external encoders.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "probekit/corpus.hpp"
#include "probekit/random.hpp"

namespace probekit {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

class WordVectors {
 public:
  explicit WordVectors(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }
  /// Replaces any existing entry. Throws DimensionError on a length mismatch.
  void set(std::string token, Eigen::VectorXf vec);
  /// Exact match first, then the lowercased form; nullptr when absent.
  const Eigen::VectorXf* find(std::string_view token) const;

 private:
  std::size_t dim_;
  std::unordered_map<std::string, Eigen::VectorXf> table_;
};

struct WordVectorLoad {
  WordVectors vectors;
  std::vector<std::string> warnings;
};

/// Text format: header `<count> <dim>`, then `<token> <dim floats>` per line.
/// Duplicates keep the last entry; count mismatches and duplicates are warned.
WordVectorLoad load_word_vectors(const std::filesystem::path& path);

enum class BovMode { Average, Sum };

/// Mean (or sum) of in-vocabulary token vectors; zero when none is known.
/// Summation runs in sorted token order so any permutation of the input gives
/// a bit-identical result.
Eigen::VectorXd bov_encode(std::span<const std::string> tokens, const WordVectors& vectors,
                           BovMode mode = BovMode::Average);

Eigen::VectorXd length_feature(std::span<const std::string> tokens);

// ---------------------------------------------------------------------------
// Untrained bidirectional LSTM

/// Gate blocks are stacked as input, forget, output, candidate.
template <typename Scalar>
struct LstmCell {
  Matrix<Scalar> w_input;      // 4H x in
  Matrix<Scalar> w_recurrent;  // 4H x H
  Vector<Scalar> bias;         // 4H
};

template <typename Scalar>
struct RecurrentLayer {
  LstmCell<Scalar> forward;
  LstmCell<Scalar> backward;
};

template <typename Scalar>
struct RecurrentParams {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::uint64_t seed = 0;
  /// Layer l > 0 reads the 2H concatenated states of layer l - 1.
  std::vector<RecurrentLayer<Scalar>> layers;
};

/// Weights and biases uniform in [-1/sqrt(H), 1/sqrt(H)], forget-gate bias 0.
template <typename Scalar>
RecurrentParams<Scalar> random_recurrent_params(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed,
                                                std::size_t layers = 1);

/// All-zero parameters of the given shape.
template <typename Scalar>
RecurrentParams<Scalar> zero_recurrent_params(std::size_t input_dim, std::size_t hidden_dim, std::size_t layers = 1);

enum class Pooling { Last, Max };

/// `inputs` holds one column per time step. Returns 2H values: forward and
/// backward halves. With `states` set, the top layer's per-step states
/// (2H x T) are stored there.
template <typename Scalar>
Vector<Scalar> birnn_encode(const Matrix<Scalar>& inputs, const RecurrentParams<Scalar>& params, Pooling pooling,
                            Matrix<Scalar>* states = nullptr);

extern template RecurrentParams<float> random_recurrent_params(std::size_t, std::size_t, std::uint64_t, std::size_t);
extern template RecurrentParams<double> random_recurrent_params(std::size_t, std::size_t, std::uint64_t, std::size_t);
extern template RecurrentParams<float> zero_recurrent_params(std::size_t, std::size_t, std::size_t);
extern template RecurrentParams<double> zero_recurrent_params(std::size_t, std::size_t, std::size_t);
extern template Vector<float> birnn_encode(const Matrix<float>&, const RecurrentParams<float>&, Pooling,
                                           Matrix<float>*);
extern template Vector<double> birnn_encode(const Matrix<double>&, const RecurrentParams<double>&, Pooling,
                                            Matrix<double>*);

/// One column per token; OOV tokens become zero columns.
Eigen::MatrixXf token_matrix(std::span<const std::string> tokens, const WordVectors& vectors);

// ---------------------------------------------------------------------------
// Sources

class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  /// Deterministic for a fixed source.
  virtual Eigen::VectorXd encode(const Sentence& sentence) const = 0;
};

class BovSource final : public EmbeddingSource {
 public:
  BovSource(std::shared_ptr<const WordVectors> vectors, BovMode mode = BovMode::Average);
  std::string name() const override { return "BoV"; }
  std::size_t dim() const override { return vectors_->dim(); }
  Eigen::VectorXd encode(const Sentence& sentence) const override;

 private:
  std::shared_ptr<const WordVectors> vectors_;
  BovMode mode_;
};

class LengthSource final : public EmbeddingSource {
 public:
  std::string name() const override { return "Length"; }
  std::size_t dim() const override { return 1; }
  Eigen::VectorXd encode(const Sentence& sentence) const override;
};

class BiRnnSource final : public EmbeddingSource {
 public:
  BiRnnSource(std::shared_ptr<const WordVectors> vectors, RecurrentParams<float> params, Pooling pooling);
  std::string name() const override;
  std::size_t dim() const override { return 2 * params_.hidden_dim; }
  Eigen::VectorXd encode(const Sentence& sentence) const override;

 private:
  std::shared_ptr<const WordVectors> vectors_;
  RecurrentParams<float> params_;
  Pooling pooling_;
};

/// Rows looked up by Sentence::id.
class TableSource final : public EmbeddingSource {
 public:
  TableSource(std::string name, Eigen::MatrixXd rows);
  std::string name() const override { return name_; }
  std::size_t dim() const override { return static_cast<std::size_t>(rows_.cols()); }
  std::size_t size() const { return static_cast<std::size_t>(rows_.rows()); }
  /// Throws InputError when the id is out of range.
  Eigen::VectorXd encode(const Sentence& sentence) const override;

 private:
  std::string name_;
  Eigen::MatrixXd rows_;
};

/// `<index><TAB><space-separated floats>`; indices must cover 0..n-1 once each.
TableSource load_embedding_table(const std::filesystem::path& path);

/// Writes row i for sentences[i], indexed by position.
void save_embeddings(const EmbeddingSource& source, std::span<const Sentence> sentences,
                     const std::filesystem::path& path);

/// One row per sentence; runs on up to `threads` workers (0 = hardware).
Eigen::MatrixXd encode_all(const EmbeddingSource& source, std::span<const Sentence> sentences,
                           unsigned threads = 0);

}  // namespace probekit
