#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adlv/ml.hpp"
#include "adlv/random.hpp"

namespace adlv::ml {

namespace {

struct Moments {
  Matrix gram;  // X^T X, centered when requested
  Vector cross; // X^T Y, centered when requested
  Vector mean_x;
  double mean_y = 0;
};

Moments moments(const View& v, bool center) {
  const auto p = static_cast<Eigen::Index>(v.width());
  Moments m;
  m.gram = Matrix::Zero(p, p);
  m.cross = Vector::Zero(p);
  m.mean_x = Vector::Zero(p);
  Vector x(p);
  for (std::size_t r : v.rows) {
    x = v.table->row(r);
    m.mean_x += x;
    m.mean_y += v.table->y[r];
  }
  const auto count = static_cast<double>(v.size());
  m.mean_x /= count;
  m.mean_y /= count;
  if (!center) {
    m.mean_x.setZero();
    m.mean_y = 0;
  }
  for (std::size_t r : v.rows) {
    x = v.table->row(r) - m.mean_x;
    m.gram.selfadjointView<Eigen::Lower>().rankUpdate(x);
    m.cross += x * (v.table->y[r] - m.mean_y);
  }
  m.gram = m.gram.selfadjointView<Eigen::Lower>();
  return m;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

LinearModel fit_l2(const View& train, const LinearConfig& config) {
  const Moments mo = moments(train, config.fit_intercept);
  const auto p = mo.gram.rows();
  LinearModel m;
  m.config = config;
  if (config.regularizer == Regularizer::kL1) {
    // Coordinate descent on beta^T G beta - 2 c^T beta + lambda |beta|_1.
    m.beta = Vector::Zero(p);
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      double change = 0;
      for (Eigen::Index j = 0; j < p; ++j) {
        const double g = mo.gram(j, j);
        const double old = m.beta(j);
        double next = 0;
        if (g > 0) {
          const double rho = mo.cross(j) - mo.gram.row(j).dot(m.beta) + g * old;
          next = soft_threshold(rho, config.lambda / 2) / g;
        }
        m.beta(j) = next;
        change = std::max(change, std::abs(next - old));
      }
      if (change < config.tolerance) break;
    }
  } else {
    const double lambda = config.regularizer == Regularizer::kL2 ? config.lambda : 0.0;
    const Matrix a = mo.gram + lambda * Matrix::Identity(p, p);
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    if (qr.rank() < p) {
      throw std::domain_error("normal equations are singular (rank " + std::to_string(qr.rank()) + " of " +
                              std::to_string(p) + "); add a regularizer or drop collinear features");
    }
    m.beta = qr.solve(mo.cross);
  }
  // f = beta x - b through the means.
  m.intercept = config.fit_intercept ? m.beta.dot(mo.mean_x) - mo.mean_y : 0.0;
  return m;
}

double sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

LinearModel fit_linear(const View& train, const LinearConfig& config) {
  if (train.size() == 0) throw std::invalid_argument("fit_linear: no rows");
  if (config.lambda < 0) throw std::invalid_argument("fit_linear: negative lambda");
  if (config.fidelity == Fidelity::kL2) return fit_l2(train, config);

  // Least absolute deviation by full-batch subgradient descent, warm
  // started from least squares and returning the average of the second
  // half of the iterates.
  const auto p = static_cast<Eigen::Index>(train.width());
  LinearModel m;
  m.config = config;
  try {
    LinearConfig warm = config;
    warm.fidelity = Fidelity::kL2;
    m = fit_l2(train, warm);
    m.config = config;
  } catch (const std::domain_error&) {
    m.beta = Vector::Zero(p);
    m.intercept = 0;
  }
  const auto count = static_cast<double>(train.size());
  Vector avg_beta = Vector::Zero(p);
  double avg_intercept = 0;
  int averaged = 0;
  Vector x(p);
  Vector g(p);
  for (int t = 1; t <= config.epochs; ++t) {
    g.setZero();
    double gb = 0;
    for (std::size_t r : train.rows) {
      x = train.table->row(r);
      const double s = sign(train.table->y[r] - (m.beta.dot(x) - m.intercept));
      g -= s * x;
      gb += s;
    }
    g /= count;
    gb /= count;
    if (config.regularizer == Regularizer::kL1) {
      g += (config.lambda / count) * m.beta.unaryExpr([](double b) { return sign(b); });
    } else if (config.regularizer == Regularizer::kL2) {
      g += (2 * config.lambda / count) * m.beta;
    }
    const double eta = config.step / std::sqrt(static_cast<double>(t));
    m.beta -= eta * g;
    if (config.fit_intercept) m.intercept -= eta * gb;
    if (2 * t > config.epochs) {
      avg_beta += m.beta;
      avg_intercept += m.intercept;
      ++averaged;
    }
  }
  if (averaged > 0) {
    m.beta = avg_beta / averaged;
    m.intercept = avg_intercept / averaged;
  }
  return m;
}

std::vector<double> predict(const LinearModel& m, const View& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t r : v.rows) out.push_back(m.predict(v.table->row(r)));
  return out;
}

Metrics evaluate(const LinearModel& m, const View& v) {
  std::vector<double> labels;
  labels.reserve(v.size());
  for (std::size_t r : v.rows) labels.push_back(v.table->y[r]);
  return regression_metrics(predict(m, v), labels);
}

Vector ridge_gradient(const LinearModel& m, const View& train) {
  const Moments mo = moments(train, m.config.fit_intercept);
  const double lambda = m.config.regularizer == Regularizer::kL2 ? m.config.lambda : 0.0;
  return 2 * (mo.gram * m.beta - mo.cross) + 2 * lambda * m.beta;
}

Vector sensitivity(const LinearModel& m) { return m.beta.cwiseAbs(); }

SvmModel fit_svm(const View& train, const SvmConfig& config) {
  if (train.size() == 0) throw std::invalid_argument("fit_svm: no rows");
  bool pos = false;
  bool neg = false;
  for (std::size_t r : train.rows) {
    const double y = train.table->y[r];
    if (y == 1.0) {
      pos = true;
    } else if (y == -1.0) {
      neg = true;
    } else {
      throw std::invalid_argument("fit_svm: labels must be +1 or -1");
    }
  }
  if (!pos || !neg) throw std::invalid_argument("fit_svm: both classes must be present");

  const auto p = static_cast<Eigen::Index>(train.width());
  Vector shift = Vector::Zero(p);
  Vector scale = Vector::Ones(p);
  if (config.standardize) {
    Vector sq = Vector::Zero(p);
    for (std::size_t r : train.rows) {
      const Vector x = train.table->row(r);
      shift += x;
      sq += x.cwiseProduct(x);
    }
    const auto count = static_cast<double>(train.size());
    shift /= count;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double var = sq(j) / count - shift(j) * shift(j);
      scale(j) = var > 1e-12 ? 1.0 / std::sqrt(var) : 1.0;
    }
  }

  Vector beta = Vector::Zero(p);
  double b = 0;
  Rng rng(config.seed);
  std::vector<std::size_t> order = train.rows;
  Vector x(p);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_in_place(order, rng);
    for (std::size_t r : order) {
      ++t;
      const double eta = config.step / std::sqrt(static_cast<double>(t));
      x = (train.table->row(r) - shift).cwiseProduct(scale);
      const double y = train.table->y[r];
      const bool active = y * (beta.dot(x) - b) < 1.0;
      beta *= 1.0 - 2.0 * config.lambda * eta;
      if (active) {
        beta += eta * y * x;
        b -= eta * y;
      }
    }
  }
  SvmModel m;
  m.config = config;
  m.beta = beta.cwiseProduct(scale);
  m.b = b + m.beta.dot(shift);
  return m;
}

Metrics evaluate(const SvmModel& m, const View& v) {
  std::vector<double> predicted;
  std::vector<double> labels;
  predicted.reserve(v.size());
  labels.reserve(v.size());
  for (std::size_t r : v.rows) {
    predicted.push_back(m.classify(v.table->row(r)));
    labels.push_back(v.table->y[r]);
  }
  return classification_metrics(predicted, labels);
}

Vector sensitivity(const SvmModel& m) { return m.beta.cwiseAbs(); }

}  // namespace adlv::ml
