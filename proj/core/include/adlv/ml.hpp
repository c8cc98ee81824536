#pragma once

// Linear least squares / lasso / least absolute deviation, linear SVM and
// ReLU perceptrons with manual backpropagation, plus metrics and gradient
// saliency. All fits are deterministic functions of (data, config, seed).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace adlv {
struct Dataset;
}

namespace adlv::ml {

/// Features are kept in single precision to fit full scans in memory;
/// every reduction runs in double.
using FeatureMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Table {
  FeatureMatrix x;
  std::vector<double> y;
  std::vector<std::string> names;

  std::size_t rows() const { return y.size(); }
  std::size_t width() const { return static_cast<std::size_t>(x.cols()); }
  Vector row(std::size_t i) const { return x.row(static_cast<Eigen::Index>(i)).cast<double>(); }
};

Table to_table(const Dataset& d);
/// Keeps only the named columns, in the given order.
Table select_columns(const Table& t, std::span<const std::string> names);

/// A subset of rows, possibly with repeats (oversampling).
struct View {
  const Table* table = nullptr;
  std::vector<std::size_t> rows;

  static View all(const Table& t);
  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return table->width(); }
};

struct Metrics {
  double accuracy = 0;
  double mean_error = 0;
  std::size_t rows = 0;
};

/// Accuracy counts round(prediction) == label; mean error is mean |Y - f(X)|.
Metrics regression_metrics(std::span<const double> predictions, std::span<const double> labels);
/// Accuracy counts prediction == label exactly; mean error as above.
Metrics classification_metrics(std::span<const double> predicted, std::span<const double> labels);

/// max(0, 1 - y f).
inline double hinge(double y, double f) { return f * y < 1.0 ? 1.0 - y * f : 0.0; }

// Linear models -------------------------------------------------------------

enum class Fidelity { kL2, kL1 };
enum class Regularizer { kNone, kL2, kL1 };

struct LinearConfig {
  Fidelity fidelity = Fidelity::kL2;
  Regularizer regularizer = Regularizer::kNone;
  double lambda = 0.0;
  bool fit_intercept = true;
  // Subgradient schedule for L1 fidelity: step c / sqrt(t).
  int epochs = 200;
  double step = 0.1;
  // Coordinate descent stopping rule for the lasso.
  double tolerance = 1e-10;
  int max_sweeps = 100000;
};

struct LinearModel {
  Vector beta;
  double intercept = 0.0;
  LinearConfig config;

  /// beta . x - intercept
  double predict(const Eigen::Ref<const Vector>& x) const { return beta.dot(x) - intercept; }
};

/// Objective sum (Y - f)^2 or sum |Y - f| plus lambda times the penalty;
/// the intercept is never penalized. Throws std::domain_error when the
/// unregularized normal system is singular.
LinearModel fit_linear(const View& train, const LinearConfig& config);
std::vector<double> predict(const LinearModel& m, const View& v);
Metrics evaluate(const LinearModel& m, const View& v);

/// Gradient of the L2 objective at the model, 2 X^T (X b - Y) + 2 lambda b,
/// over centered data when the intercept is fitted.
Vector ridge_gradient(const LinearModel& m, const View& train);

// SVM -------------------------------------------------------------------------

struct SvmConfig {
  double lambda = 1e-4;
  int epochs = 200;
  double step = 0.1;
  std::uint64_t seed = 0;
  bool standardize = true;
};

struct SvmModel {
  Vector beta;  // in raw feature units
  double b = 0.0;
  SvmConfig config;

  double decision(const Eigen::Ref<const Vector>& x) const { return beta.dot(x) - b; }
  double classify(const Eigen::Ref<const Vector>& x) const { return decision(x) >= 0 ? 1.0 : -1.0; }
};

/// Minimizes mean hinge + lambda |beta|^2 by shuffled per-row subgradient
/// steps. Labels must be +-1 with both classes present.
SvmModel fit_svm(const View& train, const SvmConfig& config);
Metrics evaluate(const SvmModel& m, const View& v);

// MLP ---------------------------------------------------------------------------

enum class Head { kRegression, kClassification };

struct MlpConfig {
  int layers = 1;
  int width = 10;
  Head head = Head::kRegression;
  double lambda = 0.0;  // weight decay on weights, not biases
  double learning_rate = 1e-3;
  int batch = 256;
  int epochs = 50;
  std::uint64_t seed = 0;
  bool standardize = true;
};

struct Layer {
  Matrix w;  // out x in
  Vector b;
};

struct MlpModel {
  MlpConfig config;
  std::vector<Layer> layers;  // hidden layers then the output layer
  Vector shift;               // input standardization: (x - shift) .* scale
  Vector scale;
  std::vector<double> classes;  // label value per output, classification only

  std::size_t inputs() const { return static_cast<std::size_t>(layers.front().w.cols()); }
  /// Raw output: regression value or class logits.
  Vector forward(const Eigen::Ref<const Vector>& x) const;
  /// Regression value or the label of the most probable class.
  double predict(const Eigen::Ref<const Vector>& x) const;
};

/// Per-row loss: (f - y)^2 or softmax cross entropy.
struct Gradients {
  double loss = 0;
  std::vector<Layer> params;
  Vector input;  // d loss / d raw input
};

/// Fresh model with He-initialized weights from the seed.
MlpModel init_mlp(std::size_t inputs, const MlpConfig& config, std::vector<double> classes = {});

/// Throws std::runtime_error naming the epoch if the loss turns non-finite.
MlpModel fit_mlp(const View& train, const MlpConfig& config);
std::vector<double> predict(const MlpModel& m, const View& v);
Metrics evaluate(const MlpModel& m, const View& v);

/// Loss and exact gradients for one row, excluding weight decay.
Gradients row_gradients(const MlpModel& m, const Eigen::Ref<const Vector>& x, double y);

/// Largest relative gap between analytic and central-difference gradients
/// over all parameters and inputs. Returns nullopt when some
/// pre-activation lies within 10 epsilon of a ReLU kink.
std::optional<double> gradient_check(const MlpModel& m, const Eigen::Ref<const Vector>& x, double y, double epsilon);

// Saliency --------------------------------------------------------------------

/// Mean |d loss / d x_j| over the rows.
Vector sensitivity(const MlpModel& m, const View& v);
/// |beta| for linear models.
Vector sensitivity(const LinearModel& m);
Vector sensitivity(const SvmModel& m);

/// Trains one network per seed on `train` and averages the saliency
/// measured on `probe`.
Vector averaged_sensitivity(const View& train, const View& probe, MlpConfig config, std::span<const std::uint64_t> seeds);

/// Two-column "feature value" table, values to two decimals.
std::string render_coefficients(std::span<const std::string> names, const Vector& values);

// Persistence -----------------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

void save_model(std::ostream& out, const LinearModel& m, std::span<const std::string> names);
void save_model(std::ostream& out, const SvmModel& m, std::span<const std::string> names);
void save_model(std::ostream& out, const MlpModel& m, std::span<const std::string> names);

/// The model kind stored in a saved document: "linear", "svm" or "mlp".
std::string model_kind(std::string_view document);
/// Feature names stored alongside the weights.
std::vector<std::string> model_features(std::string_view document);
LinearModel load_linear(std::string_view document);
SvmModel load_svm(std::string_view document);
MlpModel load_mlp(std::string_view document);

}  // namespace adlv::ml
