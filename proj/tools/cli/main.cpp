#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>

#include "adlv/adlv.hpp"
#include "adlv/dataset.hpp"
#include "commands.hpp"

namespace {

using adlv::cli::Options;

constexpr int kValidationError = 2;
constexpr int kBudgetError = 3;

void add_rank(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Rank of SL_n")->check(CLI::Range(2, 8));
}

void add_effort(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget", o.budget, "Maximum elements visited per cyclic-shift class");
  cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
}

// Worker count is left out so artifacts do not depend on it.
std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--workers") {
      ++i;
      continue;
    }
    if (a.rfind("--workers=", 0) == 0) continue;
    if (!out.empty()) out += ' ';
    out += a.find_first_of(" \"'(),[]") == std::string::npos ? a : "'" + a + "'";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.command_line = join_args(argc, argv);

  CLI::App app{"Affine Deligne-Lusztig variety workbench for SL_n"};
  app.set_version_flag("--version", std::string(adlv::kGeneratorVersion));
  app.require_subcommand(1);

  auto* query = app.add_subcommand("query", "Dimension / component count at given Newton points");
  add_rank(query, o);
  query->add_option("--w", o.w, "Element, e.g. affine_Weyl([1,1,-2],[2,1])")->required();
  query->add_option("--nu", o.nu, "Newton point as comma-separated rationals (repeatable)")->required();
  query->add_option("--print", o.print, "Comma list of dim|irr, one per --nu (or one for all)");
  add_effort(query, o);

  auto* list = app.add_subcommand("list", "Print the full table of w");
  add_rank(list, o);
  list->add_option("--w", o.w, "Element")->required();
  add_effort(list, o);

  auto* enumerate = app.add_subcommand("enumerate", "Write all filtered (w, nu) pairs as a dataset");
  add_rank(enumerate, o);
  enumerate->add_option("--max-len", o.max_len, "Scan all w with l(w) < max-len")->required();
  enumerate->add_option("--filter", o.filter, "MAZUR|MAZUR_ALL|NONEMPTY|NONEMPTY_EQDIM|Y_EQ_1");
  enumerate->add_option("--schema", o.schema, "EXP1|EXP3|EXP4|EXP5|SEC5_46|SEC5_47");
  enumerate->add_option("--label", o.label, "DIM|DIM_MINUS_HALFLEN|NONEMPTY_PM1|VD_NEQ_DIM_PM1|IRR");
  enumerate->add_option("--out", o.out, "Output file (stdout when omitted)");
  add_effort(enumerate, o);

  auto* sample = app.add_subcommand("sample", "Draw one of the sampled datasets");
  add_rank(sample, o);
  sample->add_option("--dataset", o.dataset, "1, 2 or 3")->check(CLI::Range(1, 3));
  sample->add_option("--count", o.count, "Number of draws");
  sample->add_option("--seed", o.seed, "Sampler seed");
  sample->add_option("--schema", o.schema, "Feature schema");
  sample->add_option("--label", o.label, "Label kind");
  sample->add_option("--out", o.out, "Output file (stdout when omitted)");
  sample->add_option("--budget", o.budget, "Maximum elements visited per cyclic-shift class");

  auto* train = app.add_subcommand("train", "Fit a model on a dataset with a seeded 80/20 split");
  train->add_option("--in", o.in, "Dataset file")->required();
  train->add_option("--model", o.model, "linreg|lasso|l1|svm|mlp");
  train->add_option("--head", o.head, "MLP head: regression|classification");
  train->add_option("--layers", o.layers, "Hidden layers")->check(CLI::PositiveNumber);
  train->add_option("--width", o.width, "Hidden units per layer")->check(CLI::PositiveNumber);
  train->add_option("--reg", o.reg, "Regularization strength")->check(CLI::NonNegativeNumber);
  train->add_option("--epochs", o.epochs, "Epochs");
  train->add_option("--lr", o.lr, "Learning rate / initial step");
  train->add_option("--batch", o.batch, "MLP batch size")->check(CLI::PositiveNumber);
  train->add_option("--seed", o.seed, "Split, shuffle and initialization seed");
  train->add_option("--features", o.features, "Restrict to these feature columns");
  train->add_flag("--intercept", o.intercept, "Fit an intercept for linear models");
  train->add_flag("--oversample", o.oversample, "Balance classes in the training split");
  train->add_option("--out", o.out, "Model file");
  train->add_option("--report", o.report, "Metrics report file (stdout when omitted)");

  auto* analyze = app.add_subcommand("analyze", "Coefficient or gradient-saliency table");
  analyze->add_option("--in", o.in, "Dataset file")->required();
  analyze->add_option("--model-file", o.model_file, "Trained model; omit to train MLPs per --seeds");
  analyze->add_option("--seeds", o.seeds, "Seeds for averaged MLP saliency");
  analyze->add_option("--head", o.head, "MLP head: regression|classification");
  analyze->add_option("--layers", o.layers, "Hidden layers")->check(CLI::PositiveNumber);
  analyze->add_option("--width", o.width, "Hidden units per layer")->check(CLI::PositiveNumber);
  analyze->add_option("--reg", o.reg, "Weight decay")->check(CLI::NonNegativeNumber);
  analyze->add_option("--epochs", o.epochs, "Epochs");
  analyze->add_option("--lr", o.lr, "Learning rate");
  analyze->add_option("--batch", o.batch, "Batch size")->check(CLI::PositiveNumber);
  analyze->add_option("--features", o.features, "Restrict to these feature columns");
  analyze->add_option("--out", o.out, "Output file (stdout when omitted)");

  auto* stats = app.add_subcommand("stats", "Delta histogram and cordiality by l(eta)");
  add_rank(stats, o);
  stats->add_option("--max-len", o.max_len, "Scan all w with l(w) < max-len")->required();
  add_effort(stats, o);

  auto* verify = app.add_subcommand("verify-bound", "Scan max Delta and check the split witness");
  add_rank(verify, o);
  verify->add_option("--max-len", o.max_len, "Scan all w with l(w) < max-len");
  verify->add_flag("--witness-only", o.witness_only, "Skip the scan");
  verify->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--report", o.report, "Also write the JSON report here");
  add_effort(verify, o);

  auto* selftest = app.add_subcommand("selftest", "Notation pin and the worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  try {
    if (*query) return adlv::cli::run_query(o);
    if (*list) return adlv::cli::run_list(o);
    if (*enumerate) return adlv::cli::run_enumerate(o);
    if (*sample) return adlv::cli::run_sample(o);
    if (*train) return adlv::cli::run_train(o);
    if (*analyze) return adlv::cli::run_analyze(o);
    if (*stats) return adlv::cli::run_stats(o);
    if (*verify) return adlv::cli::run_verify_bound(o);
    if (*selftest) return adlv::cli::run_selftest(o);
  } catch (const adlv::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudgetError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
