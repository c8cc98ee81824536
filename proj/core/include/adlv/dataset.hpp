#pragma once

// Pair enumeration under the experiment filters, element samplers for the
// three sampled datasets, the on-disk tabular format, seeded splits,
// minority oversampling and the Delta / cordiality statistics.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/adlv.hpp"
#include "adlv/enumeration.hpp"
#include "adlv/features.hpp"
#include "adlv/weyl.hpp"

namespace adlv {

inline constexpr std::string_view kGeneratorVersion = "adlv 0.1.0";

enum class PairFilter {
  kMazur,         // nu <= mu, nu among Newton points realized by some w of the scan
  kMazurAll,      // nu <= mu over every Newton point below mu
  kNonempty,      // nu in the table support
  kNonemptyEqDim, // additionally dim = d_w(nu)
  kYEq1,          // y = id in w = x t^mu y, nu in the support
};

PairFilter parse_filter(std::string_view name);
std::string_view filter_name(PairFilter f);

struct PairView {
  const AffineElement& w;
  int length;
  const Decomposition& dec;
  const NewtonPoint& nu;
  std::optional<ComponentData> data;  // nullopt when X_w(b) is empty
};

struct PairOptions {
  int workers = 1;
  TableOptions table;
};

/// The element list and candidate Newton points behind a pair scan.
class PairSource {
 public:
  PairSource(int n, int max_len, PairFilter filter);

  int rank() const { return n_; }
  int max_len() const { return max_len_; }
  PairFilter filter() const { return filter_; }
  const std::vector<ElementRecord>& elements() const { return elements_; }

  /// Emits the pairs of elements[begin, end) in order: w by (length, key),
  /// nu ascending lexicographically. Returns the number emitted.
  std::size_t emit(std::size_t begin, std::size_t end, TableComputer& computer,
                   const std::function<void(const PairView&)>& sink) const;

  /// Same, for one element whose table is already known.
  std::size_t emit_one(const ElementRecord& r, const TableComputer::CompactTable& table,
                       const std::function<void(const PairView&)>& sink) const;

 private:
  int n_;
  int max_len_;
  PairFilter filter_;
  std::vector<ElementRecord> elements_;
  std::vector<NewtonPoint> candidates_;  // MAZUR only, ascending
};

/// Streams every pair of the scan to `sink` on the calling thread. Tables
/// are computed on `workers` threads first; emission order never depends on
/// the worker count.
std::size_t enumerate_pairs(int n, int max_len, PairFilter filter, const PairOptions& options,
                            const std::function<void(const PairView&)>& sink);

/// Samplers for the three sampled datasets; with replacement.
///   1: l(w) < 30 with X_w(1) nonempty
///   2: x t^mu y, mu strictly decreasing in (-7, 7), x, y arbitrary, X_w(1) nonempty
///   3: t^mu y, mu strictly decreasing in (-9, 9), X_w(1) nonempty
/// Throws std::invalid_argument when the constraint set is empty.
std::vector<AffineElement> sample_w(int dataset_id, std::size_t count, std::uint64_t seed, int n,
                                    const TableOptions& table = {});

struct DatasetMeta {
  std::string schema;
  std::string label;
  std::string source;  // filter name or "dataset<k>"
  int n = 0;
  int max_len = 0;
  std::uint64_t seed = 0;
  std::string generator{kGeneratorVersion};
  std::string command;
};

/// In-memory form of a dataset file. Features are row-major.
struct Dataset {
  DatasetMeta meta;
  std::vector<std::string> columns;
  std::vector<double> features;
  std::vector<double> labels;
  std::vector<std::string> w_text;
  std::vector<std::string> nu_text;

  std::size_t rows() const { return labels.size(); }
  std::size_t width() const { return columns.size(); }
  std::span<const double> row(std::size_t i) const { return {features.data() + i * width(), width()}; }
  void add_row(std::span<const double> f, double label, std::string w, std::string nu);
};

/// Rows from sampled elements at nu = 0 (the dataset experiments).
Dataset build_sampled_dataset(const std::vector<AffineElement>& samples, Schema schema, LabelKind label,
                              TableComputer& computer);

/// One CSV row per emitted pair.
Dataset build_pair_dataset(int n, int max_len, PairFilter filter, Schema schema, LabelKind label,
                           const PairOptions& options);

void write_dataset(std::ostream& out, const Dataset& d);
void write_dataset_header(std::ostream& out, const DatasetMeta& meta, const std::vector<std::string>& columns);
void write_dataset_row(std::ostream& out, std::span<const double> f, double label, std::string_view w,
                       std::string_view nu);
Dataset read_dataset(std::istream& in);

/// Recomputes features and labels from the provenance columns; returns the
/// index of the first mismatching row.
std::optional<std::size_t> first_invalid_row(const Dataset& d, TableComputer& computer);

/// Seeded shuffle then floor(4N/5) train rows. Requires N >= 5.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t rows, std::uint64_t seed);

/// Pads every smaller class with uniformly drawn duplicates of its own rows
/// until all classes match the largest; the result is shuffled.
std::vector<std::size_t> oversample_minority(std::span<const double> labels, std::span<const std::size_t> rows,
                                             std::uint64_t seed);

struct StatsTables {
  std::map<int, std::uint64_t> delta_histogram;
  /// l(eta(w)) -> (all w, non-cordial w).
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> by_eta_length;
  std::uint64_t elements = 0;
  std::uint64_t pairs = 0;

  std::string render() const;
};

StatsTables stats_tables(int n, int max_len, const PairOptions& options = {});

}  // namespace adlv
