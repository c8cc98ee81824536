#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>

#include "adlv/dataset.hpp"
#include "commands.hpp"

namespace adlv::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  return out;
}

struct RowWriter {
  Schema schema;
  LabelKind label;
  std::vector<double> f;

  void operator()(std::ostream& out, const PairView& p) {
    f.clear();
    append_features(schema, p.w, schema_uses_newton(schema) ? &p.nu : nullptr, f);
    write_dataset_row(out, f, label_value(label, p.w, p.nu, p.data), format_element(p.w), p.nu.to_string());
  }
};

}  // namespace

int run_enumerate(const Options& o) {
  const PairFilter filter = parse_filter(o.filter);
  const Schema schema = parse_schema(o.schema);
  const LabelKind label = parse_label(o.label);
  DatasetMeta meta;
  meta.schema = schema_name(schema);
  meta.label = label_name(label);
  meta.source = filter_name(filter);
  meta.n = o.n;
  meta.max_len = o.max_len;
  meta.command = o.command_line;

  const PairSource source(o.n, o.max_len, filter);
  const TableOptions table{o.budget, std::nullopt};
  const std::size_t total = source.elements().size();

  if (o.out.empty() || o.workers <= 1) {
    std::ofstream file;
    if (!o.out.empty()) file = open_out(o.out);
    std::ostream& out = o.out.empty() ? std::cout : file;
    write_dataset_header(out, meta, feature_names(schema, o.n));
    TableComputer computer(o.n, table);
    RowWriter writer{schema, label, {}};
    const std::size_t rows = source.emit(0, total, computer, [&](const PairView& p) { writer(out, p); });
    std::cerr << "rows " << rows << '\n';
    return 0;
  }

  // Contiguous element ranges go to shard files that are concatenated in
  // range order, so the result matches a single-threaded run byte for byte.
  const auto workers = static_cast<std::size_t>(o.workers);
  std::vector<std::string> parts;
  std::vector<std::size_t> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t k = 0; k < workers; ++k) {
    const std::size_t begin = total * k / workers;
    const std::size_t end = total * (k + 1) / workers;
    parts.push_back(o.out + "." + std::to_string(begin) + "-" + std::to_string(end) + ".part");
    threads.emplace_back([&, k, begin, end] {
      try {
        std::ofstream out = open_out(parts[k]);
        TableComputer computer(o.n, table);
        RowWriter writer{schema, label, {}};
        counts[k] = source.emit(begin, end, computer, [&](const PairView& p) { writer(out, p); });
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) {
      for (const auto& p : parts) std::remove(p.c_str());
      std::rethrow_exception(e);
    }
  }
  std::ofstream out = open_out(o.out);
  write_dataset_header(out, meta, feature_names(schema, o.n));
  std::size_t rows = 0;
  for (std::size_t k = 0; k < workers; ++k) {
    std::ifstream in(parts[k], std::ios::binary);
    out << in.rdbuf();
    in.close();
    std::remove(parts[k].c_str());
    rows += counts[k];
  }
  std::cerr << "rows " << rows << '\n';
  return 0;
}

int run_sample(const Options& o) {
  const Schema schema = parse_schema(o.schema);
  const LabelKind label = parse_label(o.label);
  const TableOptions table{o.budget, std::nullopt};
  const std::vector<AffineElement> samples = sample_w(o.dataset, o.count, o.seed, o.n, table);
  TableComputer computer(o.n, table);
  Dataset d = build_sampled_dataset(samples, schema, label, computer);
  d.meta.source = "dataset" + std::to_string(o.dataset);
  d.meta.seed = o.seed;
  d.meta.command = o.command_line;
  if (o.out.empty()) {
    write_dataset(std::cout, d);
  } else {
    std::ofstream out = open_out(o.out);
    write_dataset(out, d);
  }
  return 0;
}

}  // namespace adlv::cli
