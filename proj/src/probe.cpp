#include "probekit/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "probekit/error.hpp"
#include "probekit/random.hpp"
#include "probekit/text.hpp"

namespace probekit {

void DesignMatrix::validate() const {
  if (static_cast<std::size_t>(rows.rows()) != labels.size()) {
    throw DimensionError("design matrix has " + std::to_string(rows.rows()) + " rows but " +
                         std::to_string(labels.size()) + " labels");
  }
  if (!rows.allFinite()) throw DimensionError("design matrix contains NaN or Inf");
  for (std::size_t y : labels) {
    if (y >= class_names.size()) throw DimensionError("label index " + std::to_string(y) + " out of range");
  }
}

std::string to_string(ClassifierKind kind) { return kind == ClassifierKind::Mlp ? "mlp" : "logreg"; }

void ClassifierConfig::validate() const {
  if (kind == ClassifierKind::Mlp && hidden_size == 0) throw Error("mlp needs hidden_size > 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw Error("dropout must be in [0, 1)");
  if (!(l2 >= 0.0)) throw Error("l2 must be >= 0");
  if (!(learning_rate > 0.0)) throw Error("learning rate must be > 0");
  if (batch_size == 0 || max_epochs == 0) throw Error("batch size and epochs must be > 0");
}

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Mat<Scalar> sigmoid(const Mat<Scalar>& x) {
  return (Scalar(1) + (-x.array()).exp()).inverse().matrix();
}

// Row-wise log-softmax.
template <typename Scalar>
Mat<Scalar> log_softmax(const Mat<Scalar>& logits) {
  const Vec<Scalar> m = logits.rowwise().maxCoeff();
  Mat<Scalar> shifted = logits.colwise() - m;
  const Vec<Scalar> lse = shifted.array().exp().rowwise().sum().log().matrix();
  shifted.colwise() -= lse;
  return shifted;
}

template <typename Scalar>
Mat<Scalar> forward_logits(const NetworkParams<Scalar>& p, const Mat<Scalar>& x) {
  if (!p.has_hidden()) return (x * p.out_w.transpose()).rowwise() + p.out_b.transpose();
  const Mat<Scalar> h = sigmoid<Scalar>((x * p.hidden_w.transpose()).rowwise() + p.hidden_b.transpose());
  return (h * p.out_w.transpose()).rowwise() + p.out_b.transpose();
}

std::size_t argmax_row(const auto& row) {
  std::size_t best = 0;
  for (Eigen::Index j = 1; j < row.size(); ++j) {
    if (row[j] > row[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(j);
  }
  return best;
}

}  // namespace

template <typename Scalar>
Scalar network_loss(const NetworkParams<Scalar>& p, const Mat<Scalar>& x, std::span<const std::size_t> labels, Scalar l2,
                    const Mat<Scalar>* mask, NetworkParams<Scalar>* grad) {
  const auto n = x.rows();
  if (static_cast<std::size_t>(n) != labels.size() || n == 0) throw DimensionError("network_loss: bad batch");

  Mat<Scalar> act;
  Mat<Scalar> hidden_out;
  if (p.has_hidden()) {
    act = sigmoid<Scalar>((x * p.hidden_w.transpose()).rowwise() + p.hidden_b.transpose());
    hidden_out = mask ? Mat<Scalar>(act.cwiseProduct(*mask)) : act;
  }
  const Mat<Scalar>& features = p.has_hidden() ? hidden_out : x;
  const Mat<Scalar> logits = (features * p.out_w.transpose()).rowwise() + p.out_b.transpose();
  const Mat<Scalar> logp = log_softmax<Scalar>(logits);

  Scalar loss = 0;
  for (Eigen::Index i = 0; i < n; ++i) loss -= logp(i, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)]));
  loss /= static_cast<Scalar>(n);
  Scalar penalty = p.out_w.squaredNorm();
  if (p.has_hidden()) penalty += p.hidden_w.squaredNorm();
  loss += Scalar(0.5) * l2 * penalty;

  if (grad) {
    Mat<Scalar> d = logp.array().exp().matrix();
    for (Eigen::Index i = 0; i < n; ++i) d(i, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)])) -= 1;
    d /= static_cast<Scalar>(n);
    grad->out_w = d.transpose() * features + l2 * p.out_w;
    grad->out_b = d.colwise().sum().transpose();
    if (p.has_hidden()) {
      Mat<Scalar> dh = d * p.out_w;
      if (mask) dh = dh.cwiseProduct(*mask);
      const Mat<Scalar> dpre = dh.cwiseProduct(act.cwiseProduct((Scalar(1) - act.array()).matrix()));
      grad->hidden_w = dpre.transpose() * x + l2 * p.hidden_w;
      grad->hidden_b = dpre.colwise().sum().transpose();
    } else {
      grad->hidden_w.resize(0, 0);
      grad->hidden_b.resize(0);
    }
  }
  return loss;
}

template <typename Scalar>
typename TrainedModel<Scalar>::Mat TrainedModel<Scalar>::scores(const Eigen::MatrixXd& rows) const {
  if (static_cast<std::size_t>(rows.cols()) != dim()) {
    throw DimensionError("model expects " + std::to_string(dim()) + " columns, got " + std::to_string(rows.cols()));
  }
  const Mat x = ((rows.cast<Scalar>().rowwise() - feature_mean.transpose()).array().rowwise() /
                 feature_scale.transpose().array())
                    .matrix();
  return forward_logits<Scalar>(params, x);
}

template <typename Scalar>
std::vector<std::size_t> predict(const TrainedModel<Scalar>& model, const Eigen::MatrixXd& rows) {
  const auto s = model.scores(rows);
  std::vector<std::size_t> out(static_cast<std::size_t>(s.rows()));
  for (Eigen::Index i = 0; i < s.rows(); ++i) out[static_cast<std::size_t>(i)] = argmax_row(s.row(i));
  return out;
}

template <typename Scalar>
double accuracy(const TrainedModel<Scalar>& model, const DesignMatrix& data) {
  if (data.size() == 0) throw DimensionError("accuracy of an empty set");
  data.validate();
  const auto pred = predict(model, data.rows);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == data.labels[i] ? 1 : 0;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(pred.size());
}

// ---------------------------------------------------------------------------
// Training

namespace {

template <typename Scalar>
struct AdamState {
  NetworkParams<Scalar> m;
  NetworkParams<Scalar> v;
  std::size_t t = 0;
};

template <typename Scalar>
NetworkParams<Scalar> zeros_like(const NetworkParams<Scalar>& p) {
  NetworkParams<Scalar> z;
  z.hidden_w = Mat<Scalar>::Zero(p.hidden_w.rows(), p.hidden_w.cols());
  z.hidden_b = Vec<Scalar>::Zero(p.hidden_b.size());
  z.out_w = Mat<Scalar>::Zero(p.out_w.rows(), p.out_w.cols());
  z.out_b = Vec<Scalar>::Zero(p.out_b.size());
  return z;
}

template <typename Scalar, typename Derived>
void adam_step(Eigen::MatrixBase<Derived>& w, Eigen::MatrixBase<Derived>& m, Eigen::MatrixBase<Derived>& v,
               const Eigen::MatrixBase<Derived>& g, double lr, std::size_t t) {
  constexpr double b1 = 0.9;
  constexpr double b2 = 0.999;
  constexpr double eps = 1e-8;
  m = Scalar(b1) * m + Scalar(1 - b1) * g;
  v = Scalar(b2) * v + Scalar(1 - b2) * g.cwiseProduct(g);
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
  const Scalar step = static_cast<Scalar>(lr / c1);
  w.array() -= step * m.array() / ((v.array() / static_cast<Scalar>(c2)).sqrt() + Scalar(eps));
}

template <typename Scalar>
void adam_update(NetworkParams<Scalar>& p, AdamState<Scalar>& s, const NetworkParams<Scalar>& g, double lr) {
  ++s.t;
  if (p.has_hidden()) {
    adam_step<Scalar>(p.hidden_w, s.m.hidden_w, s.v.hidden_w, g.hidden_w, lr, s.t);
    adam_step<Scalar>(p.hidden_b, s.m.hidden_b, s.v.hidden_b, g.hidden_b, lr, s.t);
  }
  adam_step<Scalar>(p.out_w, s.m.out_w, s.v.out_w, g.out_w, lr, s.t);
  adam_step<Scalar>(p.out_b, s.m.out_b, s.v.out_b, g.out_b, lr, s.t);
}

template <typename Scalar>
void glorot(Mat<Scalar>& w, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = static_cast<Scalar>(bound * (2.0 * uniform_unit(rng) - 1.0));
  }
}

void check_pair(const DesignMatrix& train, const DesignMatrix& val) {
  if (train.size() == 0) throw DimensionError("empty training data");
  if (val.size() == 0) throw DimensionError("empty validation data");
  train.validate();
  val.validate();
  if (train.dim() != val.dim()) {
    throw DimensionError("train has " + std::to_string(train.dim()) + " columns, val has " +
                         std::to_string(val.dim()));
  }
  if (train.class_names != val.class_names) throw DimensionError("train and val class lists differ");
  std::vector<bool> present(train.class_names.size(), false);
  for (std::size_t y : train.labels) present[y] = true;
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw DimensionError("training data has a single class");
  }
}

template <typename Scalar>
TrainedModel<Scalar> train_network(const DesignMatrix& train, const DesignMatrix& val, const ClassifierConfig& cfg) {
  cfg.validate();
  check_pair(train, val);
  const auto d = static_cast<Eigen::Index>(train.dim());
  const auto k = static_cast<Eigen::Index>(train.class_names.size());
  const bool mlp = cfg.kind == ClassifierKind::Mlp;
  const auto h = static_cast<Eigen::Index>(cfg.hidden_size);

  TrainedModel<Scalar> model;
  model.kind = cfg.kind;
  model.config = cfg;
  model.class_names = train.class_names;
  const Eigen::VectorXd mean = train.rows.colwise().mean().transpose();
  Eigen::VectorXd scale = ((train.rows.rowwise() - mean.transpose()).array().square().colwise().mean().sqrt()).matrix().transpose();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(scale[j] > 1e-12)) scale[j] = 1.0;
  }
  model.feature_mean = mean.cast<Scalar>();
  model.feature_scale = scale.cast<Scalar>();

  const Mat<Scalar> x = ((train.rows.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array())
                            .matrix()
                            .cast<Scalar>();

  Rng rng(cfg.seed);
  NetworkParams<Scalar>& p = model.params;
  if (mlp) {
    p.hidden_w.resize(h, d);
    glorot(p.hidden_w, rng);
    p.hidden_b = Vec<Scalar>::Zero(h);
    p.out_w.resize(k, h);
  } else {
    p.out_w.resize(k, d);
  }
  glorot(p.out_w, rng);
  p.out_b = Vec<Scalar>::Zero(k);

  AdamState<Scalar> adam{zeros_like(p), zeros_like(p), 0};
  NetworkParams<Scalar> grad;
  NetworkParams<Scalar> best = p;
  model.best_val_accuracy = -1.0;

  std::vector<Eigen::Index> order(train.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Scalar l2 = static_cast<Scalar>(cfg.l2);
  const bool drop = mlp && cfg.dropout > 0.0;
  const double keep = 1.0 - cfg.dropout;
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle_in_place(order, rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      const std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(start),
                                          order.begin() + static_cast<std::ptrdiff_t>(stop));
      const Mat<Scalar> xb = x(idx, Eigen::all);
      std::vector<std::size_t> yb(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) yb[i] = train.labels[static_cast<std::size_t>(idx[i])];
      Mat<Scalar> mask;
      if (drop) {
        mask.resize(xb.rows(), h);
        for (Eigen::Index j = 0; j < h; ++j) {
          for (Eigen::Index i = 0; i < xb.rows(); ++i) {
            mask(i, j) = uniform_unit(rng) < keep ? static_cast<Scalar>(1.0 / keep) : Scalar(0);
          }
        }
      }
      network_loss<Scalar>(p, xb, yb, l2, drop ? &mask : nullptr, &grad);
      adam_update(p, adam, grad, cfg.learning_rate);
    }

    const double acc = accuracy(model, val);
    model.val_trace.push_back(acc);
    if (acc > model.best_val_accuracy) {
      model.best_val_accuracy = acc;
      model.best_epoch = epoch;
      best = p;
      stale = 0;
    } else if (++stale >= cfg.patience) {
      break;
    }
  }
  p = std::move(best);
  return model;
}

}  // namespace

template <typename Scalar>
TrainedModel<Scalar> fit_logreg(const DesignMatrix& train, const DesignMatrix& val, ClassifierConfig cfg) {
  cfg.kind = ClassifierKind::LogReg;
  return train_network<Scalar>(train, val, cfg);
}

template <typename Scalar>
TrainedModel<Scalar> fit_mlp(const DesignMatrix& train, const DesignMatrix& val, const ClassifierConfig& cfg) {
  if (cfg.kind != ClassifierKind::Mlp) throw Error("fit_mlp needs an mlp config");
  return train_network<Scalar>(train, val, cfg);
}

template <typename Scalar>
TrainedModel<Scalar> fit_classifier(const DesignMatrix& train, const DesignMatrix& val, const ClassifierConfig& cfg) {
  return train_network<Scalar>(train, val, cfg);
}

// ---------------------------------------------------------------------------
// Baselines

double majority_baseline(std::span<const std::string> train_labels, std::span<const std::string> test_labels) {
  if (train_labels.empty() || test_labels.empty()) throw DimensionError("majority baseline needs non-empty splits");
  std::map<std::string, std::size_t> counts;
  for (const auto& y : train_labels) ++counts[y];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  const auto correct = std::count(test_labels.begin(), test_labels.end(), best->first);
  return 100.0 * static_cast<double>(correct) / static_cast<double>(test_labels.size());
}

TfidfVectorizer::TfidfVectorizer(int order) : order_(order) {
  if (order != 1 && order != 2) throw Error("tf-idf order must be 1 or 2");
}

std::vector<std::string> TfidfVectorizer::terms(std::span<const std::string> doc) const {
  std::vector<std::string> out;
  std::vector<std::string> folded;
  folded.reserve(doc.size());
  for (const auto& t : doc) folded.push_back(fold_case(t));
  out = folded;
  if (order_ == 2) {
    for (std::size_t i = 0; i + 1 < folded.size(); ++i) out.push_back(folded[i] + ' ' + folded[i + 1]);
  }
  return out;
}

void TfidfVectorizer::fit(std::span<const std::vector<std::string>> docs) {
  if (docs.empty()) throw DimensionError("tf-idf needs training documents");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    auto t = terms(doc);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    for (auto& term : t) ++df[std::move(term)];
  }
  index_.clear();
  idf_.clear();
  const double n = static_cast<double>(docs.size());
  for (const auto& [term, count] : df) {
    index_.emplace(term, idf_.size());
    idf_.push_back(std::log(n / static_cast<double>(count)));
  }
  if (idf_.empty()) throw DimensionError("empty vocabulary after fitting tf-idf");
}

std::vector<std::pair<std::size_t, double>> TfidfVectorizer::transform(std::span<const std::string> doc) const {
  std::map<std::size_t, double> tf;
  for (const auto& term : terms(doc)) {
    const auto it = index_.find(term);
    if (it != index_.end()) tf[it->second] += 1.0;
  }
  std::vector<std::pair<std::size_t, double>> row;
  double norm = 0.0;
  for (const auto& [j, count] : tf) {
    const double w = count * idf_[j];
    if (w == 0.0) continue;
    row.emplace_back(j, w);
    norm += w * w;
  }
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (auto& [j, w] : row) w /= norm;
  }
  return row;
}

double nb_tfidf_baseline(std::span<const std::vector<std::string>> train_docs, std::span<const std::string> train_labels,
                         std::span<const std::vector<std::string>> test_docs, std::span<const std::string> test_labels,
                         int order) {
  if (train_docs.empty() || test_docs.empty()) throw DimensionError("naive Bayes needs non-empty splits");
  if (train_docs.size() != train_labels.size() || test_docs.size() != test_labels.size()) {
    throw DimensionError("document and label counts differ");
  }
  TfidfVectorizer vec(order);
  vec.fit(train_docs);

  std::vector<std::string> classes(train_labels.begin(), train_labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  const std::size_t k = classes.size();
  const std::size_t v = vec.vocabulary_size();
  auto class_of = [&](const std::string& y) {
    return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), y) - classes.begin());
  };

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(v));
  Eigen::VectorXd docs_per_class = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < train_docs.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(class_of(train_labels[i]));
    docs_per_class[c] += 1.0;
    for (const auto& [j, w] : vec.transform(train_docs[i])) mass(c, static_cast<Eigen::Index>(j)) += w;
  }
  constexpr double alpha = 1.0;
  const Eigen::VectorXd denom = (mass.rowwise().sum().array() + alpha * static_cast<double>(v)).matrix();
  const Eigen::MatrixXd log_theta = ((mass.array() + alpha).colwise() / denom.array()).log().matrix();
  const Eigen::VectorXd log_prior = (docs_per_class / static_cast<double>(train_docs.size())).array().log().matrix();

  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_docs.size(); ++i) {
    Eigen::VectorXd score = log_prior;
    for (const auto& [j, w] : vec.transform(test_docs[i])) score += w * log_theta.col(static_cast<Eigen::Index>(j));
    correct += classes[argmax_row(score)] == test_labels[i] ? 1 : 0;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(test_docs.size());
}

// ---------------------------------------------------------------------------
// Model selection

std::vector<ClassifierConfig> GridSpec::expand(std::uint64_t seed) const {
  if (l2s.empty()) throw Error("empty l2 grid");
  std::vector<ClassifierConfig> out;
  auto push = [&](std::size_t hidden, double dropout, double l2) {
    ClassifierConfig c = base;
    c.kind = kind;
    c.hidden_size = hidden;
    c.dropout = dropout;
    c.l2 = l2;
    c.seed = derive_seed(seed, out.size());
    out.push_back(c);
  };
  if (kind == ClassifierKind::LogReg) {
    for (double l2 : l2s) push(0, 0.0, l2);
    return out;
  }
  if (hidden_sizes.empty() || dropouts.empty()) throw Error("empty mlp grid");
  for (std::size_t hidden : hidden_sizes) {
    for (double dropout : dropouts) {
      for (double l2 : l2s) push(hidden, dropout, l2);
    }
  }
  return out;
}

template <typename Scalar>
GridResult grid_search(const DesignMatrix& train, const DesignMatrix& val, const DesignMatrix& test,
                       const GridSpec& grid, std::uint64_t seed, unsigned threads) {
  const auto configs = grid.expand(seed);
  std::vector<GridPoint> points(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < configs.size(); i += step) {
      try {
        const auto model = fit_classifier<Scalar>(train, val, configs[i]);
        points[i] = {configs[i], model.best_val_accuracy, accuracy(model, test)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  GridResult result;
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].val_accuracy > points[best].val_accuracy) best = i;
  }
  result.best = points[best].config;
  result.val_accuracy = points[best].val_accuracy;
  result.test_accuracy = points[best].test_accuracy;
  result.trace = std::move(points);
  return result;
}

GridSpec length_baseline_grid() {
  GridSpec grid;
  grid.kind = ClassifierKind::LogReg;
  grid.base.learning_rate = 0.1;
  grid.base.max_epochs = 500;
  grid.base.patience = 30;
  return grid;
}

std::string grid_trace_csv(const GridResult& result) {
  std::ostringstream out;
  out << "kind,hidden_size,dropout,l2,val_acc,test_acc\n";
  for (const auto& p : result.trace) {
    out << to_string(p.config.kind) << ',' << p.config.hidden_size << ',' << format_real(p.config.dropout) << ','
        << format_real(p.config.l2) << ',' << format_score(p.val_accuracy) << ',' << format_score(p.test_accuracy)
        << '\n';
  }
  return out.str();
}

#define PROBEKIT_INSTANTIATE(S)                                                                                  \
  template S network_loss(const NetworkParams<S>&, const Mat<S>&, std::span<const std::size_t>, S, const Mat<S>*, \
                          NetworkParams<S>*);                                                                   \
  template struct TrainedModel<S>;                                                                              \
  template TrainedModel<S> fit_logreg<S>(const DesignMatrix&, const DesignMatrix&, ClassifierConfig);           \
  template TrainedModel<S> fit_mlp<S>(const DesignMatrix&, const DesignMatrix&, const ClassifierConfig&);       \
  template TrainedModel<S> fit_classifier<S>(const DesignMatrix&, const DesignMatrix&, const ClassifierConfig&); \
  template std::vector<std::size_t> predict(const TrainedModel<S>&, const Eigen::MatrixXd&);                    \
  template double accuracy(const TrainedModel<S>&, const DesignMatrix&);                                        \
  template GridResult grid_search<S>(const DesignMatrix&, const DesignMatrix&, const DesignMatrix&,             \
                                     const GridSpec&, std::uint64_t, unsigned);

PROBEKIT_INSTANTIATE(float)
PROBEKIT_INSTANTIATE(double)

#undef PROBEKIT_INSTANTIATE

// Extended precision for finite-difference reference losses.
template long double network_loss(const NetworkParams<long double>&, const Mat<long double>&,
                                  std::span<const std::size_t>, long double, const Mat<long double>*,
                                  NetworkParams<long double>*);

}  // namespace probekit
