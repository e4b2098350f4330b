#pragma once

// Probing classifiers (softmax regression, one-hidden-layer sigmoid MLP) and
// the non-neural baselines.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace probekit {

struct DesignMatrix {
  Eigen::MatrixXd rows;  // n x d
  std::vector<std::size_t> labels;
  std::vector<std::string> class_names;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rows.cols()); }
  /// Throws DimensionError on shape mismatch, non-finite values or labels out of range.
  void validate() const;
};

enum class ClassifierKind { LogReg, Mlp };
std::string to_string(ClassifierKind kind);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::Mlp;
  std::size_t hidden_size = 50;  // mlp only
  double dropout = 0.0;
  double l2 = 0.0;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 100;
  std::size_t patience = 5;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Weights of the network. An empty `hidden_w` means a direct softmax layer.
template <typename Scalar>
struct NetworkParams {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Mat hidden_w;  // h x d
  Vec hidden_b;  // h
  Mat out_w;     // k x h (or k x d)
  Vec out_b;     // k

  bool has_hidden() const noexcept { return hidden_w.size() > 0; }
};

/// Mean cross-entropy over the batch plus 0.5 * l2 * squared weight norms
/// (biases unpenalized). When `mask` is given it multiplies the hidden
/// activations (inverted dropout already folded in). Fills `grad` when set.
template <typename Scalar>
Scalar network_loss(const NetworkParams<Scalar>& params,
                    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x, std::span<const std::size_t> labels,
                    Scalar l2, const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* mask = nullptr,
                    NetworkParams<Scalar>* grad = nullptr);

template <typename Scalar>
struct TrainedModel {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ClassifierKind kind = ClassifierKind::LogReg;
  ClassifierConfig config;
  Vec feature_mean;   // standardization fitted on training rows
  Vec feature_scale;
  NetworkParams<Scalar> params;
  std::vector<std::string> class_names;
  std::vector<double> val_trace;  // val accuracy after each epoch
  std::size_t best_epoch = 0;     // 1-based
  double best_val_accuracy = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(feature_mean.size()); }
  /// Class scores (n x k) for raw rows.
  Mat scores(const Eigen::MatrixXd& rows) const;
};

template <typename Scalar>
TrainedModel<Scalar> fit_logreg(const DesignMatrix& train, const DesignMatrix& val, ClassifierConfig cfg);
template <typename Scalar>
TrainedModel<Scalar> fit_mlp(const DesignMatrix& train, const DesignMatrix& val, const ClassifierConfig& cfg);
/// Dispatches on cfg.kind.
template <typename Scalar>
TrainedModel<Scalar> fit_classifier(const DesignMatrix& train, const DesignMatrix& val, const ClassifierConfig& cfg);

/// Argmax per row; ties go to the lowest class index.
template <typename Scalar>
std::vector<std::size_t> predict(const TrainedModel<Scalar>& model, const Eigen::MatrixXd& rows);
/// 100 * correct / n. Throws on an empty set or dimension mismatch.
template <typename Scalar>
double accuracy(const TrainedModel<Scalar>& model, const DesignMatrix& data);

// ---------------------------------------------------------------------------
// Baselines

/// Most frequent training label (lowest sorted label on ties), scored on test.
double majority_baseline(std::span<const std::string> train_labels, std::span<const std::string> test_labels);

/// tf * ln(N / df), L2-normalized rows, fitted on the training documents.
class TfidfVectorizer {
 public:
  /// order 1: unigrams; order 2: unigrams and bigrams. Tokens are case-folded.
  explicit TfidfVectorizer(int order);
  void fit(std::span<const std::vector<std::string>> docs);
  /// Sparse row as (term index, weight), sorted by index. Unknown terms are dropped.
  std::vector<std::pair<std::size_t, double>> transform(std::span<const std::string> doc) const;
  std::size_t vocabulary_size() const noexcept { return idf_.size(); }

 private:
  std::vector<std::string> terms(std::span<const std::string> doc) const;
  int order_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> idf_;
};

/// Multinomial naive Bayes over tf-idf mass with add-one smoothing.
double nb_tfidf_baseline(std::span<const std::vector<std::string>> train_docs,
                         std::span<const std::string> train_labels,
                         std::span<const std::vector<std::string>> test_docs,
                         std::span<const std::string> test_labels, int order);

// ---------------------------------------------------------------------------
// Model selection

struct GridSpec {
  ClassifierKind kind = ClassifierKind::Mlp;
  std::vector<std::size_t> hidden_sizes{50, 100, 200};
  std::vector<double> dropouts{0.0, 0.1, 0.2};
  std::vector<double> l2s{0.0, 1e-5, 1e-4};
  ClassifierConfig base;

  /// Configurations in deterministic order (hidden, dropout, l2 nested);
  /// logreg varies l2 only. Seeds are derived per point from `seed`.
  std::vector<ClassifierConfig> expand(std::uint64_t seed) const;
};

struct GridPoint {
  ClassifierConfig config;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct GridResult {
  ClassifierConfig best;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::vector<GridPoint> trace;
};

/// Picks the highest validation accuracy (first in grid order on ties) and
/// reports that configuration's test accuracy. Points may train concurrently.
template <typename Scalar>
GridResult grid_search(const DesignMatrix& train, const DesignMatrix& val, const DesignMatrix& test,
                       const GridSpec& grid, std::uint64_t seed, unsigned threads = 1);

/// Logreg grid for the one-feature length baseline. A single standardized
/// input needs large weights to carve sharp length intervals, so it trains
/// with a higher learning rate and longer patience than the probes.
GridSpec length_baseline_grid();

/// kind,hidden_size,dropout,l2,val_acc,test_acc
std::string grid_trace_csv(const GridResult& result);

}  // namespace probekit
