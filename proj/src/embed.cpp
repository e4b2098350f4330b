#include "probekit/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "probekit/error.hpp"
#include "probekit/text.hpp"

namespace probekit {

WordVectors::WordVectors(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionError("word vectors need dim > 0");
}

void WordVectors::set(std::string token, Eigen::VectorXf vec) {
  if (static_cast<std::size_t>(vec.size()) != dim_) {
    throw DimensionError("vector for '" + token + "' has " + std::to_string(vec.size()) + " values, expected " +
                         std::to_string(dim_));
  }
  table_.insert_or_assign(std::move(token), std::move(vec));
}

const Eigen::VectorXf* WordVectors::find(std::string_view token) const {
  auto it = table_.find(std::string(token));
  if (it == table_.end()) it = table_.find(fold_case(token));
  return it == table_.end() ? nullptr : &it->second;
}

WordVectorLoad load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("missing header", 1);
  const auto header = split_whitespace(line);
  if (header.size() != 2) throw InputError("header must be '<count> <dim>'", 1);
  const long long count = parse_integer(header[0], 1);
  const long long dim = parse_integer(header[1], 1);
  if (count < 0 || dim <= 0) throw InputError("header must have count >= 0 and dim > 0", 1);

  WordVectorLoad out{WordVectors(static_cast<std::size_t>(dim)), {}};
  std::size_t entries = 0;
  std::size_t duplicates = 0;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != static_cast<std::size_t>(dim) + 1) {
      throw InputError("expected " + std::to_string(dim) + " floats, found " + std::to_string(fields.size() - 1),
                       line_no);
    }
    Eigen::VectorXf v(dim);
    for (long long k = 0; k < dim; ++k) v[k] = static_cast<float>(parse_real(fields[k + 1], line_no));
    if (!seen.insert(fields[0]).second) ++duplicates;
    out.vectors.set(fields[0], std::move(v));
    ++entries;
  }
  if (entries != static_cast<std::size_t>(count)) {
    out.warnings.push_back("header announces " + std::to_string(count) + " vectors, file has " +
                           std::to_string(entries));
  }
  if (duplicates > 0) out.warnings.push_back(std::to_string(duplicates) + " duplicate tokens, last entry kept");
  return out;
}

Eigen::VectorXd bov_encode(std::span<const std::string> tokens, const WordVectors& vectors, BovMode mode) {
  std::vector<std::string_view> order(tokens.begin(), tokens.end());
  std::sort(order.begin(), order.end());
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vectors.dim()));
  std::size_t known = 0;
  for (auto tok : order) {
    if (const auto* v = vectors.find(tok)) {
      sum += v->cast<double>();
      ++known;
    }
  }
  if (mode == BovMode::Average && known > 0) sum /= static_cast<double>(known);
  return sum;
}

Eigen::VectorXd length_feature(std::span<const std::string> tokens) {
  return Eigen::VectorXd::Constant(1, static_cast<double>(tokens.size()));
}

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
LstmCell<Scalar> zero_cell(std::size_t in, std::size_t hidden) {
  const auto h4 = static_cast<Eigen::Index>(4 * hidden);
  return {Matrix<Scalar>::Zero(h4, static_cast<Eigen::Index>(in)),
          Matrix<Scalar>::Zero(h4, static_cast<Eigen::Index>(hidden)), Vector<Scalar>::Zero(h4)};
}

template <typename Scalar>
void fill_uniform(LstmCell<Scalar>& cell, std::size_t hidden, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  auto draw = [&] { return static_cast<Scalar>(bound * (2.0 * uniform_unit(rng) - 1.0)); };
  for (Eigen::Index j = 0; j < cell.w_input.cols(); ++j)
    for (Eigen::Index i = 0; i < cell.w_input.rows(); ++i) cell.w_input(i, j) = draw();
  for (Eigen::Index j = 0; j < cell.w_recurrent.cols(); ++j)
    for (Eigen::Index i = 0; i < cell.w_recurrent.rows(); ++i) cell.w_recurrent(i, j) = draw();
  for (Eigen::Index i = 0; i < cell.bias.size(); ++i) cell.bias[i] = draw();
  const auto h = static_cast<Eigen::Index>(hidden);
  cell.bias.segment(h, h).setZero();
}

template <typename Scalar>
Vector<Scalar> sigmoid(const Vector<Scalar>& x) {
  return (Scalar(1) + (-x.array()).exp()).inverse().matrix();
}

// Runs one direction; column t of `out` receives h_t.
template <typename Scalar>
void run_direction(const LstmCell<Scalar>& cell, const Matrix<Scalar>& inputs, bool reverse, Matrix<Scalar>& out) {
  const Eigen::Index hidden = cell.w_recurrent.cols();
  const Eigen::Index steps = inputs.cols();
  const Matrix<Scalar> projected = (cell.w_input * inputs).colwise() + cell.bias;
  Vector<Scalar> h = Vector<Scalar>::Zero(hidden);
  Vector<Scalar> c = Vector<Scalar>::Zero(hidden);
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = reverse ? steps - 1 - s : s;
    const Vector<Scalar> z = projected.col(t) + cell.w_recurrent * h;
    const Vector<Scalar> i = sigmoid<Scalar>(z.segment(0, hidden));
    const Vector<Scalar> f = sigmoid<Scalar>(z.segment(hidden, hidden));
    const Vector<Scalar> o = sigmoid<Scalar>(z.segment(2 * hidden, hidden));
    const Vector<Scalar> g = z.segment(3 * hidden, hidden).array().tanh().matrix();
    c = f.cwiseProduct(c) + i.cwiseProduct(g);
    h = o.cwiseProduct(c.array().tanh().matrix());
    out.col(t) = h;
  }
}

}  // namespace

template <typename Scalar>
RecurrentParams<Scalar> zero_recurrent_params(std::size_t input_dim, std::size_t hidden_dim, std::size_t layers) {
  if (input_dim == 0 || hidden_dim == 0 || layers == 0) throw DimensionError("recurrent dims must be > 0");
  RecurrentParams<Scalar> p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = l == 0 ? input_dim : 2 * hidden_dim;
    p.layers.push_back({zero_cell<Scalar>(in, hidden_dim), zero_cell<Scalar>(in, hidden_dim)});
  }
  return p;
}

template <typename Scalar>
RecurrentParams<Scalar> random_recurrent_params(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed,
                                                std::size_t layers) {
  auto p = zero_recurrent_params<Scalar>(input_dim, hidden_dim, layers);
  p.seed = seed;
  Rng rng(derive_seed(seed, 0));
  for (auto& layer : p.layers) {
    fill_uniform(layer.forward, hidden_dim, rng);
    fill_uniform(layer.backward, hidden_dim, rng);
  }
  return p;
}

template <typename Scalar>
Vector<Scalar> birnn_encode(const Matrix<Scalar>& inputs, const RecurrentParams<Scalar>& params, Pooling pooling,
                            Matrix<Scalar>* states) {
  if (inputs.cols() == 0) throw DimensionError("birnn_encode: empty input");
  if (static_cast<std::size_t>(inputs.rows()) != params.input_dim) {
    throw DimensionError("birnn_encode: input dim " + std::to_string(inputs.rows()) + " != " +
                         std::to_string(params.input_dim));
  }
  const auto hidden = static_cast<Eigen::Index>(params.hidden_dim);
  const Eigen::Index steps = inputs.cols();
  Matrix<Scalar> layer_in = inputs;
  Matrix<Scalar> both(2 * hidden, steps);
  for (const auto& layer : params.layers) {
    Matrix<Scalar> fwd(hidden, steps);
    Matrix<Scalar> bwd(hidden, steps);
    run_direction(layer.forward, layer_in, false, fwd);
    run_direction(layer.backward, layer_in, true, bwd);
    both.topRows(hidden) = fwd;
    both.bottomRows(hidden) = bwd;
    layer_in = both;
  }

  Vector<Scalar> out(2 * hidden);
  if (pooling == Pooling::Last) {
    out.head(hidden) = both.col(steps - 1).head(hidden);
    out.tail(hidden) = both.col(0).tail(hidden);
  } else {
    out = both.rowwise().maxCoeff();
  }
  if (states) *states = std::move(both);
  return out;
}

template RecurrentParams<float> random_recurrent_params(std::size_t, std::size_t, std::uint64_t, std::size_t);
template RecurrentParams<double> random_recurrent_params(std::size_t, std::size_t, std::uint64_t, std::size_t);
template RecurrentParams<float> zero_recurrent_params(std::size_t, std::size_t, std::size_t);
template RecurrentParams<double> zero_recurrent_params(std::size_t, std::size_t, std::size_t);
template Vector<float> birnn_encode(const Matrix<float>&, const RecurrentParams<float>&, Pooling, Matrix<float>*);
template Vector<double> birnn_encode(const Matrix<double>&, const RecurrentParams<double>&, Pooling,
                                     Matrix<double>*);

Eigen::MatrixXf token_matrix(std::span<const std::string> tokens, const WordVectors& vectors) {
  Eigen::MatrixXf m = Eigen::MatrixXf::Zero(static_cast<Eigen::Index>(vectors.dim()),
                                            static_cast<Eigen::Index>(tokens.size()));
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (const auto* v = vectors.find(tokens[t])) m.col(static_cast<Eigen::Index>(t)) = *v;
  }
  return m;
}

// ---------------------------------------------------------------------------

BovSource::BovSource(std::shared_ptr<const WordVectors> vectors, BovMode mode)
    : vectors_(std::move(vectors)), mode_(mode) {
  if (!vectors_) throw Error("BovSource needs word vectors");
}

Eigen::VectorXd BovSource::encode(const Sentence& sentence) const {
  return bov_encode(sentence.tokens, *vectors_, mode_);
}

Eigen::VectorXd LengthSource::encode(const Sentence& sentence) const { return length_feature(sentence.tokens); }

BiRnnSource::BiRnnSource(std::shared_ptr<const WordVectors> vectors, RecurrentParams<float> params, Pooling pooling)
    : vectors_(std::move(vectors)), params_(std::move(params)), pooling_(pooling) {
  if (!vectors_) throw Error("BiRnnSource needs word vectors");
  if (vectors_->dim() != params_.input_dim) {
    throw DimensionError("word vector dim " + std::to_string(vectors_->dim()) + " != encoder input dim " +
                         std::to_string(params_.input_dim));
  }
}

std::string BiRnnSource::name() const { return pooling_ == Pooling::Max ? "BiLSTM-max" : "BiLSTM-last"; }

Eigen::VectorXd BiRnnSource::encode(const Sentence& sentence) const {
  if (sentence.tokens.empty()) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
  return birnn_encode<float>(token_matrix(sentence.tokens, *vectors_), params_, pooling_).cast<double>();
}

TableSource::TableSource(std::string name, Eigen::MatrixXd rows) : name_(std::move(name)), rows_(std::move(rows)) {}

Eigen::VectorXd TableSource::encode(const Sentence& sentence) const {
  if (sentence.id >= size()) {
    throw InputError("embedding index " + std::to_string(sentence.id) + " out of range (table has " +
                     std::to_string(size()) + " rows)");
  }
  return rows_.row(static_cast<Eigen::Index>(sentence.id)).transpose();
}

TableSource load_embedding_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::pair<long long, std::vector<double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw InputError("expected '<index><TAB><floats>'", line_no);
    const long long index = parse_integer(std::string_view(line).substr(0, tab), line_no);
    const auto fields = split_whitespace(std::string_view(line).substr(tab + 1));
    if (fields.empty()) throw InputError("row has no values", line_no);
    if (rows.empty()) dim = fields.size();
    if (fields.size() != dim) {
      throw InputError("ragged row: " + std::to_string(fields.size()) + " values, expected " + std::to_string(dim),
                       line_no);
    }
    std::vector<double> values;
    values.reserve(dim);
    for (const auto& f : fields) values.push_back(parse_real(f, line_no));
    rows.emplace_back(index, std::move(values));
  }
  if (rows.empty()) throw InputError("empty embedding table " + path.string());

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  std::vector<bool> seen(rows.size(), false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const long long index = rows[r].first;
    if (index < 0 || static_cast<std::size_t>(index) >= rows.size()) {
      throw InputError("index " + std::to_string(index) + " out of range", r + 1);
    }
    if (seen[static_cast<std::size_t>(index)]) throw InputError("duplicate index " + std::to_string(index), r + 1);
    seen[static_cast<std::size_t>(index)] = true;
    m.row(index) = Eigen::Map<const Eigen::RowVectorXd>(rows[r].second.data(), static_cast<Eigen::Index>(dim));
  }
  return TableSource(path.stem().string(), std::move(m));
}

Eigen::MatrixXd encode_all(const EmbeddingSource& source, std::span<const Sentence> sentences, unsigned threads) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(sentences.size()), static_cast<Eigen::Index>(source.dim()));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, sentences.size())));
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < sentences.size(); i += step) {
      out.row(static_cast<Eigen::Index>(i)) = source.encode(sentences[i]).transpose();
    }
  };
  if (threads <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  for (auto& th : pool) th.join();
  return out;
}

void save_embeddings(const EmbeddingSource& source, std::span<const Sentence> sentences,
                     const std::filesystem::path& path) {
  const Eigen::MatrixXd rows = encode_all(source, sentences);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out << i << '\t';
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_real(rows(i, j));
    }
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace probekit
