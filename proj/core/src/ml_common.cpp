#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "adlv/dataset.hpp"
#include "adlv/ml.hpp"

namespace adlv::ml {

using nlohmann::json;
using nlohmann::ordered_json;

Table to_table(const Dataset& d) {
  Table t;
  t.names = d.columns;
  t.y = d.labels;
  t.x.resize(static_cast<Eigen::Index>(d.rows()), static_cast<Eigen::Index>(d.width()));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const auto row = d.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      t.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<float>(row[j]);
    }
  }
  return t;
}

Table select_columns(const Table& t, std::span<const std::string> names) {
  std::vector<Eigen::Index> picks;
  for (const auto& name : names) {
    const auto it = std::find(t.names.begin(), t.names.end(), name);
    if (it == t.names.end()) throw std::invalid_argument("no feature column '" + name + "'");
    picks.push_back(it - t.names.begin());
  }
  Table out;
  out.names.assign(names.begin(), names.end());
  out.y = t.y;
  out.x.resize(t.x.rows(), static_cast<Eigen::Index>(picks.size()));
  for (std::size_t j = 0; j < picks.size(); ++j) out.x.col(static_cast<Eigen::Index>(j)) = t.x.col(picks[j]);
  return out;
}

View View::all(const Table& t) {
  View v;
  v.table = &t;
  v.rows.resize(t.rows());
  for (std::size_t i = 0; i < v.rows.size(); ++i) v.rows[i] = i;
  return v;
}

Metrics regression_metrics(std::span<const double> predictions, std::span<const double> labels) {
  Metrics m;
  m.rows = labels.size();
  if (m.rows == 0) return m;
  double hits = 0;
  double err = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (std::round(predictions[i]) == labels[i]) hits += 1;
    err += std::abs(labels[i] - predictions[i]);
  }
  m.accuracy = hits / static_cast<double>(m.rows);
  m.mean_error = err / static_cast<double>(m.rows);
  return m;
}

Metrics classification_metrics(std::span<const double> predicted, std::span<const double> labels) {
  Metrics m;
  m.rows = labels.size();
  if (m.rows == 0) return m;
  double hits = 0;
  double err = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (predicted[i] == labels[i]) hits += 1;
    err += std::abs(labels[i] - predicted[i]);
  }
  m.accuracy = hits / static_cast<double>(m.rows);
  m.mean_error = err / static_cast<double>(m.rows);
  return m;
}

std::string render_coefficients(std::span<const std::string> names, const Vector& values) {
  std::size_t wide = 7;
  for (const auto& n : names) wide = std::max(wide, n.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(wide)) << "feature" << "  value\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(wide)) << names[i] << "  " << std::fixed << std::setprecision(2)
        << values(static_cast<Eigen::Index>(i)) << '\n';
  }
  return out.str();
}

namespace {

std::vector<double> to_list(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector from_list(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ordered_json envelope(std::string_view kind, std::span<const std::string> names) {
  ordered_json doc;
  doc["format"] = kModelFormatVersion;
  doc["kind"] = kind;
  doc["features"] = std::vector<std::string>(names.begin(), names.end());
  return doc;
}

json open(std::string_view document, std::string_view kind) {
  json doc = json::parse(document);
  if (doc.at("format").get<int>() != kModelFormatVersion) throw std::invalid_argument("unsupported model format");
  if (doc.at("kind").get<std::string>() != kind) {
    throw std::invalid_argument("model is a " + doc.at("kind").get<std::string>() + ", expected " + std::string(kind));
  }
  return doc;
}

const char* fidelity_name(Fidelity f) { return f == Fidelity::kL2 ? "L2" : "L1"; }
const char* regularizer_name(Regularizer r) {
  return r == Regularizer::kNone ? "none" : r == Regularizer::kL2 ? "L2" : "L1";
}

}  // namespace

void save_model(std::ostream& out, const LinearModel& m, std::span<const std::string> names) {
  ordered_json doc = envelope("linear", names);
  doc["config"] = {{"fidelity", fidelity_name(m.config.fidelity)},
                   {"regularizer", regularizer_name(m.config.regularizer)},
                   {"lambda", m.config.lambda},
                   {"fit_intercept", m.config.fit_intercept},
                   {"epochs", m.config.epochs},
                   {"step", m.config.step}};
  doc["beta"] = to_list(m.beta);
  doc["intercept"] = m.intercept;
  out << doc.dump(2) << '\n';
}

void save_model(std::ostream& out, const SvmModel& m, std::span<const std::string> names) {
  ordered_json doc = envelope("svm", names);
  doc["config"] = {{"lambda", m.config.lambda},
                   {"epochs", m.config.epochs},
                   {"step", m.config.step},
                   {"seed", m.config.seed},
                   {"standardize", m.config.standardize}};
  doc["beta"] = to_list(m.beta);
  doc["b"] = m.b;
  out << doc.dump(2) << '\n';
}

void save_model(std::ostream& out, const MlpModel& m, std::span<const std::string> names) {
  ordered_json doc = envelope("mlp", names);
  doc["config"] = {{"layers", m.config.layers},
                   {"width", m.config.width},
                   {"head", m.config.head == Head::kRegression ? "regression" : "classification"},
                   {"lambda", m.config.lambda},
                   {"learning_rate", m.config.learning_rate},
                   {"batch", m.config.batch},
                   {"epochs", m.config.epochs},
                   {"seed", m.config.seed},
                   {"standardize", m.config.standardize}};
  doc["shift"] = to_list(m.shift);
  doc["scale"] = to_list(m.scale);
  doc["classes"] = m.classes;
  ordered_json layers = ordered_json::array();
  for (const Layer& l : m.layers) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < l.w.rows(); ++r) rows.push_back(to_list(l.w.row(r).transpose()));
    layers.push_back({{"w", rows}, {"b", to_list(l.b)}});
  }
  doc["layers"] = layers;
  out << doc.dump(2) << '\n';
}

std::string model_kind(std::string_view document) { return json::parse(document).at("kind").get<std::string>(); }

std::vector<std::string> model_features(std::string_view document) {
  return json::parse(document).at("features").get<std::vector<std::string>>();
}

LinearModel load_linear(std::string_view document) {
  const json doc = open(document, "linear");
  LinearModel m;
  const json& c = doc.at("config");
  m.config.fidelity = c.at("fidelity").get<std::string>() == "L1" ? Fidelity::kL1 : Fidelity::kL2;
  const auto reg = c.at("regularizer").get<std::string>();
  m.config.regularizer = reg == "L1" ? Regularizer::kL1 : reg == "L2" ? Regularizer::kL2 : Regularizer::kNone;
  m.config.lambda = c.at("lambda").get<double>();
  m.config.fit_intercept = c.at("fit_intercept").get<bool>();
  m.config.epochs = c.at("epochs").get<int>();
  m.config.step = c.at("step").get<double>();
  m.beta = from_list(doc.at("beta"));
  m.intercept = doc.at("intercept").get<double>();
  return m;
}

SvmModel load_svm(std::string_view document) {
  const json doc = open(document, "svm");
  SvmModel m;
  const json& c = doc.at("config");
  m.config.lambda = c.at("lambda").get<double>();
  m.config.epochs = c.at("epochs").get<int>();
  m.config.step = c.at("step").get<double>();
  m.config.seed = c.at("seed").get<std::uint64_t>();
  m.config.standardize = c.at("standardize").get<bool>();
  m.beta = from_list(doc.at("beta"));
  m.b = doc.at("b").get<double>();
  return m;
}

MlpModel load_mlp(std::string_view document) {
  const json doc = open(document, "mlp");
  MlpModel m;
  const json& c = doc.at("config");
  m.config.layers = c.at("layers").get<int>();
  m.config.width = c.at("width").get<int>();
  m.config.head = c.at("head").get<std::string>() == "regression" ? Head::kRegression : Head::kClassification;
  m.config.lambda = c.at("lambda").get<double>();
  m.config.learning_rate = c.at("learning_rate").get<double>();
  m.config.batch = c.at("batch").get<int>();
  m.config.epochs = c.at("epochs").get<int>();
  m.config.seed = c.at("seed").get<std::uint64_t>();
  m.config.standardize = c.at("standardize").get<bool>();
  m.shift = from_list(doc.at("shift"));
  m.scale = from_list(doc.at("scale"));
  m.classes = doc.at("classes").get<std::vector<double>>();
  for (const json& l : doc.at("layers")) {
    Layer layer;
    const auto& rows = l.at("w");
    const auto cols = rows.empty() ? std::size_t{0} : rows.front().size();
    layer.w.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) layer.w.row(static_cast<Eigen::Index>(r)) = from_list(rows[r]).transpose();
    layer.b = from_list(l.at("b"));
    m.layers.push_back(std::move(layer));
  }
  if (m.layers.empty()) throw std::invalid_argument("model has no layers");
  return m;
}

}  // namespace adlv::ml
