#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adlv/ml.hpp"
#include "adlv/random.hpp"

namespace adlv::ml {

namespace {

// Rows of `a` are samples. Keeps pre-activations for the backward pass.
struct Pass {
  std::vector<Matrix> z;  // per layer, batch x out
  std::vector<Matrix> a;  // a[0] = standardized input, a[l + 1] = layer l output
};

Pass forward_batch(const MlpModel& m, Matrix input) {
  Pass p;
  p.a.push_back(std::move(input));
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const Layer& layer = m.layers[l];
    Matrix z = p.a.back() * layer.w.transpose();
    z.rowwise() += layer.b.transpose();
    const bool hidden = l + 1 < m.layers.size();
    p.a.push_back(hidden ? Matrix(z.cwiseMax(0.0)) : z);
    p.z.push_back(std::move(z));
  }
  return p;
}

std::size_t class_index(const MlpModel& m, double y) {
  const auto it = std::lower_bound(m.classes.begin(), m.classes.end(), y);
  if (it == m.classes.end() || *it != y) throw std::invalid_argument("label outside the trained classes");
  return static_cast<std::size_t>(it - m.classes.begin());
}

// Per-row losses and d loss_i / d output_i.
double output_gradient(const MlpModel& m, const Matrix& out, std::span<const double> y, Matrix& grad) {
  grad.resize(out.rows(), out.cols());
  double loss = 0;
  if (m.config.head == Head::kRegression) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const double d = out(i, 0) - y[static_cast<std::size_t>(i)];
      loss += d * d;
      grad(i, 0) = 2 * d;
    }
    return loss;
  }
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double top = out.row(i).maxCoeff();
    Eigen::RowVectorXd e = (out.row(i).array() - top).exp();
    const double total = e.sum();
    const auto k = static_cast<Eigen::Index>(class_index(m, y[static_cast<std::size_t>(i)]));
    loss += std::log(total) - (out(i, k) - top);
    grad.row(i) = e / total;
    grad(i, k) -= 1.0;
  }
  return loss;
}

// Backward pass for per-row gradients `dz` at the output. Parameter
// gradients are summed over rows; `input` receives per-row input gradients
// in standardized units.
void backward(const MlpModel& m, const Pass& p, Matrix dz, std::vector<Layer>* params, Matrix* input) {
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    if (params != nullptr) {
      (*params)[l].w = dz.transpose() * p.a[l];
      (*params)[l].b = dz.colwise().sum().transpose();
    }
    if (l == 0 && input == nullptr) break;
    Matrix da = dz * m.layers[l].w;
    if (l == 0) {
      *input = std::move(da);
      break;
    }
    dz = da.cwiseProduct((p.z[l - 1].array() > 0.0).cast<double>().matrix());
  }
}

Matrix gather(const MlpModel& m, const View& v, std::size_t begin, std::size_t end) {
  Matrix x(static_cast<Eigen::Index>(end - begin), static_cast<Eigen::Index>(v.width()));
  for (std::size_t i = begin; i < end; ++i) {
    x.row(static_cast<Eigen::Index>(i - begin)) =
        v.table->x.row(static_cast<Eigen::Index>(v.rows[i])).cast<double>();
  }
  x.rowwise() -= m.shift.transpose();
  x.array().rowwise() *= m.scale.transpose().array();
  return x;
}

std::vector<double> gather_labels(const View& v, std::size_t begin, std::size_t end) {
  std::vector<double> y;
  y.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) y.push_back(v.table->y[v.rows[i]]);
  return y;
}

Matrix standardized_row(const MlpModel& m, const Eigen::Ref<const Vector>& x) {
  return ((x - m.shift).cwiseProduct(m.scale)).transpose();
}

}  // namespace

MlpModel init_mlp(std::size_t inputs, const MlpConfig& config, std::vector<double> classes) {
  if (config.layers < 1 || config.width < 1) throw std::invalid_argument("an MLP needs at least one layer and unit");
  if (config.head == Head::kClassification && classes.size() < 2) {
    throw std::invalid_argument("classification needs at least two classes");
  }
  MlpModel m;
  m.config = config;
  m.classes = std::move(classes);
  std::sort(m.classes.begin(), m.classes.end());
  const auto p = static_cast<Eigen::Index>(inputs);
  m.shift = Vector::Zero(p);
  m.scale = Vector::Ones(p);
  Rng rng(config.seed);
  Eigen::Index fan_in = p;
  const auto outputs = config.head == Head::kRegression ? Eigen::Index{1} : static_cast<Eigen::Index>(m.classes.size());
  for (int l = 0; l <= config.layers; ++l) {
    const Eigen::Index out = l == config.layers ? outputs : config.width;
    Layer layer;
    layer.w.resize(out, fan_in);
    const double sd = std::sqrt(2.0 / static_cast<double>(fan_in));
    for (Eigen::Index r = 0; r < out; ++r) {
      for (Eigen::Index c = 0; c < fan_in; ++c) layer.w(r, c) = sd * standard_normal(rng);
    }
    layer.b = Vector::Zero(out);
    m.layers.push_back(std::move(layer));
    fan_in = out;
  }
  return m;
}

Vector MlpModel::forward(const Eigen::Ref<const Vector>& x) const {
  const Pass p = forward_batch(*this, standardized_row(*this, x));
  return p.a.back().row(0).transpose();
}

double MlpModel::predict(const Eigen::Ref<const Vector>& x) const {
  const Vector out = forward(x);
  if (config.head == Head::kRegression) return out(0);
  Eigen::Index k = 0;
  out.maxCoeff(&k);
  return classes[static_cast<std::size_t>(k)];
}

MlpModel fit_mlp(const View& train, const MlpConfig& config) {
  if (train.size() == 0) throw std::invalid_argument("fit_mlp: no rows");
  if (config.batch < 1 || config.epochs < 0) throw std::invalid_argument("fit_mlp: bad batch size or epoch count");
  std::vector<double> classes;
  if (config.head == Head::kClassification) {
    for (std::size_t r : train.rows) classes.push_back(train.table->y[r]);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }
  MlpModel m = init_mlp(train.width(), config, std::move(classes));

  if (config.standardize) {
    const auto p = static_cast<Eigen::Index>(train.width());
    Vector sum = Vector::Zero(p);
    Vector sq = Vector::Zero(p);
    for (std::size_t r : train.rows) {
      const Vector x = train.table->row(r);
      sum += x;
      sq += x.cwiseProduct(x);
    }
    const auto count = static_cast<double>(train.size());
    m.shift = sum / count;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double var = sq(j) / count - m.shift(j) * m.shift(j);
      m.scale(j) = var > 1e-12 ? 1.0 / std::sqrt(var) : 1.0;
    }
  }

  // Adam state.
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  std::vector<Layer> m1;
  std::vector<Layer> m2;
  for (const Layer& l : m.layers) {
    m1.push_back({Matrix::Zero(l.w.rows(), l.w.cols()), Vector::Zero(l.b.size())});
    m2.push_back(m1.back());
  }
  std::vector<Layer> grads(m.layers.size());

  // Batch order draws from its own stream so it does not depend on the layer shapes.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  View shuffled{train.table, {}};
  std::uint64_t step = 0;
  const auto batch = static_cast<std::size_t>(config.batch);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_in_place(order, rng);
    shuffled.rows.clear();
    for (std::size_t i : order) shuffled.rows.push_back(train.rows[i]);
    double epoch_loss = 0;
    for (std::size_t begin = 0; begin < shuffled.size(); begin += batch) {
      const std::size_t end = std::min(begin + batch, shuffled.size());
      const Pass p = forward_batch(m, gather(m, shuffled, begin, end));
      const std::vector<double> y = gather_labels(shuffled, begin, end);
      Matrix dz;
      epoch_loss += output_gradient(m, p.a.back(), y, dz);
      dz /= static_cast<double>(end - begin);
      backward(m, p, std::move(dz), &grads, nullptr);
      ++step;
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      for (std::size_t l = 0; l < m.layers.size(); ++l) {
        Layer& layer = m.layers[l];
        grads[l].w += config.lambda * layer.w;
        m1[l].w = kBeta1 * m1[l].w + (1 - kBeta1) * grads[l].w;
        m2[l].w = kBeta2 * m2[l].w + (1 - kBeta2) * grads[l].w.cwiseAbs2();
        m1[l].b = kBeta1 * m1[l].b + (1 - kBeta1) * grads[l].b;
        m2[l].b = kBeta2 * m2[l].b + (1 - kBeta2) * grads[l].b.cwiseAbs2();
        layer.w.array() -= config.learning_rate * (m1[l].w.array() / c1) / ((m2[l].w.array() / c2).sqrt() + kEps);
        layer.b.array() -= config.learning_rate * (m1[l].b.array() / c1) / ((m2[l].b.array() / c2).sqrt() + kEps);
      }
    }
    if (!std::isfinite(epoch_loss)) {
      throw std::runtime_error("fit_mlp: non-finite loss at epoch " + std::to_string(epoch));
    }
  }
  return m;
}

std::vector<double> predict(const MlpModel& m, const View& v) {
  std::vector<double> out;
  out.reserve(v.size());
  constexpr std::size_t kChunk = 4096;
  for (std::size_t begin = 0; begin < v.size(); begin += kChunk) {
    const std::size_t end = std::min(begin + kChunk, v.size());
    const Pass p = forward_batch(m, gather(m, v, begin, end));
    const Matrix& o = p.a.back();
    for (Eigen::Index i = 0; i < o.rows(); ++i) {
      if (m.config.head == Head::kRegression) {
        out.push_back(o(i, 0));
      } else {
        Eigen::Index k = 0;
        o.row(i).maxCoeff(&k);
        out.push_back(m.classes[static_cast<std::size_t>(k)]);
      }
    }
  }
  return out;
}

Metrics evaluate(const MlpModel& m, const View& v) {
  const std::vector<double> predicted = predict(m, v);
  const std::vector<double> labels = gather_labels(v, 0, v.size());
  return m.config.head == Head::kRegression ? regression_metrics(predicted, labels)
                                            : classification_metrics(predicted, labels);
}

Gradients row_gradients(const MlpModel& m, const Eigen::Ref<const Vector>& x, double y) {
  const Pass p = forward_batch(m, standardized_row(m, x));
  Matrix dz;
  const double labels[] = {y};
  Gradients g;
  g.loss = output_gradient(m, p.a.back(), labels, dz);
  g.params.resize(m.layers.size());
  Matrix input;
  backward(m, p, std::move(dz), &g.params, &input);
  g.input = input.row(0).transpose().cwiseProduct(m.scale);
  return g;
}

std::optional<double> gradient_check(const MlpModel& m, const Eigen::Ref<const Vector>& x, double y, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("gradient_check: epsilon must be positive");
  const Pass p = forward_batch(m, standardized_row(m, x));
  for (std::size_t l = 0; l + 1 < p.z.size(); ++l) {
    if ((p.z[l].array().abs() < 10 * epsilon).any()) return std::nullopt;
  }
  const Gradients g = row_gradients(m, x, y);
  const auto loss_at = [&](const MlpModel& model, const Vector& input) {
    const double labels[] = {y};
    Matrix unused;
    return output_gradient(model, forward_batch(model, standardized_row(model, input)).a.back(), labels, unused);
  };
  const auto rel = [](double a, double n) { return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-7}); };

  double worst = 0;
  MlpModel probe = m;
  const Vector base(x);
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    for (Eigen::Index i = 0; i < m.layers[l].w.size(); ++i) {
      double& w = probe.layers[l].w.data()[i];
      const double keep = w;
      w = keep + epsilon;
      const double up = loss_at(probe, base);
      w = keep - epsilon;
      const double down = loss_at(probe, base);
      w = keep;
      worst = std::max(worst, rel(g.params[l].w.data()[i], (up - down) / (2 * epsilon)));
    }
    for (Eigen::Index i = 0; i < m.layers[l].b.size(); ++i) {
      double& b = probe.layers[l].b(i);
      const double keep = b;
      b = keep + epsilon;
      const double up = loss_at(probe, base);
      b = keep - epsilon;
      const double down = loss_at(probe, base);
      b = keep;
      worst = std::max(worst, rel(g.params[l].b(i), (up - down) / (2 * epsilon)));
    }
  }
  for (Eigen::Index j = 0; j < base.size(); ++j) {
    Vector shifted = base;
    shifted(j) += epsilon;
    const double up = loss_at(m, shifted);
    shifted(j) = base(j) - epsilon;
    const double down = loss_at(m, shifted);
    worst = std::max(worst, rel(g.input(j), (up - down) / (2 * epsilon)));
  }
  return worst;
}

Vector sensitivity(const MlpModel& m, const View& v) {
  Vector total = Vector::Zero(static_cast<Eigen::Index>(m.inputs()));
  if (v.size() == 0) return total;
  constexpr std::size_t kChunk = 4096;
  for (std::size_t begin = 0; begin < v.size(); begin += kChunk) {
    const std::size_t end = std::min(begin + kChunk, v.size());
    const Pass p = forward_batch(m, gather(m, v, begin, end));
    Matrix dz;
    output_gradient(m, p.a.back(), gather_labels(v, begin, end), dz);
    Matrix input;
    backward(m, p, std::move(dz), nullptr, &input);
    total += input.cwiseAbs().colwise().sum().transpose();
  }
  return total.cwiseProduct(m.scale) / static_cast<double>(v.size());
}

Vector averaged_sensitivity(const View& train, const View& probe, MlpConfig config,
                            std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw std::invalid_argument("averaged_sensitivity: no seeds");
  Vector total = Vector::Zero(static_cast<Eigen::Index>(train.width()));
  for (std::uint64_t seed : seeds) {
    config.seed = seed;
    total += sensitivity(fit_mlp(train, config), probe);
  }
  return total / static_cast<double>(seeds.size());
}

}  // namespace adlv::ml
