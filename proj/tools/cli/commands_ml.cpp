#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "adlv/dataset.hpp"
#include "adlv/ml.hpp"
#include "commands.hpp"

namespace adlv::cli {

namespace {

using namespace adlv::ml;

Dataset load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return read_dataset(in);
}

Table load_table(const Options& o) {
  Table t = to_table(load(o.in));
  if (!o.features.empty()) t = select_columns(t, o.features);
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

MlpConfig mlp_config(const Options& o) {
  MlpConfig c;
  c.layers = o.layers;
  c.width = o.width;
  if (o.head != "regression" && o.head != "classification") throw std::invalid_argument("--head must be regression or classification");
  c.head = o.head == "regression" ? Head::kRegression : Head::kClassification;
  c.lambda = o.reg;
  c.batch = o.batch;
  c.seed = o.seed;
  if (o.epochs) c.epochs = *o.epochs;
  if (o.lr) c.learning_rate = *o.lr;
  return c;
}

nlohmann::ordered_json metrics_json(const Metrics& m) {
  return {{"accuracy", m.accuracy}, {"mean_error", m.mean_error}, {"rows", m.rows}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + o.out);
  out << text;
}

}  // namespace

int run_train(const Options& o) {
  const Table t = load_table(o);
  auto [train_rows, test_rows] = split_indices(t.rows(), o.seed);
  View train{&t, std::move(train_rows)};
  const View test{&t, std::move(test_rows)};
  if (o.oversample) train.rows = oversample_minority(t.y, train.rows, o.seed);

  nlohmann::ordered_json report;
  report["command"] = o.command_line;
  report["model"] = o.model;
  report["seed"] = o.seed;
  report["train_rows"] = train.size();
  report["test_rows"] = test.size();
  std::ostringstream saved;

  if (o.model == "linreg" || o.model == "lasso" || o.model == "l1") {
    LinearConfig c;
    c.fit_intercept = o.intercept;
    c.lambda = o.reg;
    if (o.model == "linreg") {
      c.regularizer = o.reg > 0 ? Regularizer::kL2 : Regularizer::kNone;
    } else {
      c.regularizer = o.reg > 0 ? Regularizer::kL1 : Regularizer::kNone;
      c.fidelity = o.model == "l1" ? Fidelity::kL1 : Fidelity::kL2;
    }
    if (o.epochs) c.epochs = *o.epochs;
    if (o.lr) c.step = *o.lr;
    const LinearModel m = fit_linear(train, c);
    report["train"] = metrics_json(evaluate(m, train));
    report["test"] = metrics_json(evaluate(m, test));
    report["coefficients"] = std::vector<double>(m.beta.data(), m.beta.data() + m.beta.size());
    report["intercept"] = m.intercept;
    save_model(saved, m, t.names);
  } else if (o.model == "svm") {
    SvmConfig c;
    if (o.reg > 0) c.lambda = o.reg;
    c.seed = o.seed;
    if (o.epochs) c.epochs = *o.epochs;
    if (o.lr) c.step = *o.lr;
    const SvmModel m = fit_svm(train, c);
    report["train"] = metrics_json(evaluate(m, train));
    report["test"] = metrics_json(evaluate(m, test));
    save_model(saved, m, t.names);
  } else if (o.model == "mlp") {
    const MlpModel m = fit_mlp(train, mlp_config(o));
    report["train"] = metrics_json(evaluate(m, train));
    report["test"] = metrics_json(evaluate(m, test));
    save_model(saved, m, t.names);
  } else {
    throw std::invalid_argument("--model must be linreg, lasso, l1, svm or mlp");
  }

  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + o.out);
    out << saved.str();
  }
  const std::string text = report.dump(2) + "\n";
  if (o.report.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.report, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + o.report);
    out << text;
  }
  return 0;
}

int run_analyze(const Options& o) {
  Table t = load_table(o);
  if (!o.model_file.empty()) {
    const std::string doc = slurp(o.model_file);
    const std::vector<std::string> names = model_features(doc);
    if (names != t.names) t = select_columns(t, names);
    const std::string kind = model_kind(doc);
    if (kind == "linear") {
      emit(o, render_coefficients(names, load_linear(doc).beta));
    } else if (kind == "svm") {
      emit(o, render_coefficients(names, load_svm(doc).beta));
    } else {
      emit(o, render_coefficients(names, sensitivity(load_mlp(doc), View::all(t))));
    }
    return 0;
  }
  if (o.seeds.empty()) throw std::invalid_argument("analyze needs --model-file or --seeds");
  const View all = View::all(t);
  emit(o, render_coefficients(t.names, averaged_sensitivity(all, all, mlp_config(o), o.seeds)));
  return 0;
}

}  // namespace adlv::cli
