#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace adlv::cli {

/// Every flag of every subcommand; unused ones keep their defaults.
struct Options {
  int n = 3;
  std::string w;
  std::vector<std::string> nu;
  std::string print;
  int max_len = 0;
  std::string filter = "NONEMPTY";
  std::string schema = "SEC5_46";
  std::string label = "DIM";
  std::string model = "linreg";
  std::string head = "regression";
  int layers = 1;
  int width = 10;
  double reg = 0.0;
  std::optional<int> epochs;
  std::optional<double> lr;
  int batch = 256;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  std::string in;
  std::string out;
  std::string model_file;
  std::string report;
  std::size_t budget = 2'000'000;
  int workers = 1;
  int dataset = 1;
  std::size_t count = 5000;
  bool intercept = false;
  bool oversample = false;
  bool witness_only = false;
  std::vector<std::string> features;
  std::string format = "text";
  std::string command_line;  // recorded in artifacts
};

int run_query(const Options& o);
int run_list(const Options& o);
int run_selftest(const Options& o);
int run_verify_bound(const Options& o);
int run_stats(const Options& o);
int run_enumerate(const Options& o);
int run_sample(const Options& o);
int run_train(const Options& o);
int run_analyze(const Options& o);

}  // namespace adlv::cli
