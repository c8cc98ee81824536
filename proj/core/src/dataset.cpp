#include "adlv/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "adlv/random.hpp"

namespace adlv {

namespace {

constexpr std::array<std::pair<PairFilter, std::string_view>, 5> kFilters{{
    {PairFilter::kMazur, "MAZUR"},
    {PairFilter::kMazurAll, "MAZUR_ALL"},
    {PairFilter::kNonempty, "NONEMPTY"},
    {PairFilter::kNonemptyEqDim, "NONEMPTY_EQDIM"},
    {PairFilter::kYEq1, "Y_EQ_1"},
}};

std::optional<ComponentData> lookup(const TableComputer::CompactTable& table, NewtonId id) {
  const auto it = std::lower_bound(table.begin(), table.end(), id,
                                   [](const TableComputer::CompactEntry& e, NewtonId v) { return e.nu < v; });
  if (it == table.end() || it->nu != id) return std::nullopt;
  return ComponentData{it->dim, it->irr};
}

// 2 (d_w(nu) - dim) for a table entry; even by construction.
int twice_delta(int length, int eta_length, NewtonId nu, int dim) {
  return length + eta_length - pairing_plus_defect(nu) - 2 * dim;
}

std::vector<std::vector<int>> regular_dominant_coweights(int n, int bound) {
  // Strictly decreasing entries in (-bound, bound) summing to zero.
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int next_max, int sum) {
    if (static_cast<int>(current.size()) == n) {
      if (sum == 0) out.push_back(current);
      return;
    }
    for (int v = next_max; v > -bound; --v) {
      current.push_back(v);
      rec(v - 1, sum + v);
      current.pop_back();
    }
  };
  rec(bound - 1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

void put_double(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), res.ptr - buf.data());
}

double get_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return v;
}

// Splits on commas outside double quotes; quotes are stripped.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in dataset row");
  return out;
}

}  // namespace

PairFilter parse_filter(std::string_view name) {
  for (const auto& [f, text] : kFilters) {
    if (text == name) return f;
  }
  throw std::invalid_argument("unknown filter '" + std::string(name) + "'");
}

std::string_view filter_name(PairFilter f) {
  for (const auto& [filter, text] : kFilters) {
    if (filter == f) return text;
  }
  throw std::invalid_argument("unknown filter");
}

PairSource::PairSource(int n, int max_len, PairFilter filter)
    : n_(n), max_len_(max_len), filter_(filter), elements_(enumerate_elements(n, max_len)) {
  if (filter == PairFilter::kMazur) {
    const std::set<NewtonPoint> realized = realized_newton_points(elements_);
    candidates_.assign(realized.begin(), realized.end());
  } else if (filter == PairFilter::kMazurAll) {
    std::set<std::vector<int>> mus;
    for (const ElementRecord& r : elements_) {
      const Decomposition d = decompose(r.w);
      mus.emplace(d.mu_span().begin(), d.mu_span().end());
    }
    std::set<NewtonPoint> all;
    for (const auto& mu : mus) {
      for (NewtonPoint& nu : enumerate_newton_leq(mu)) all.insert(std::move(nu));
    }
    candidates_.assign(all.begin(), all.end());
  }
}

std::size_t PairSource::emit_one(const ElementRecord& r, const TableComputer::CompactTable& table,
                                 const std::function<void(const PairView&)>& sink) const {
  const Decomposition dec = decompose(r.w);
  std::size_t emitted = 0;
  if (filter_ == PairFilter::kMazur || filter_ == PairFilter::kMazurAll) {
    for (const NewtonPoint& nu : candidates_) {
      if (!mazur_leq(nu, dec.mu_span())) continue;
      sink(PairView{r.w, r.length, dec, nu, lookup(table, intern_newton(nu))});
      ++emitted;
    }
    return emitted;
  }
  if (filter_ == PairFilter::kYEq1 && !dec.y.is_identity()) return 0;
  const int eta_length = dec.eta().length();
  std::vector<const TableComputer::CompactEntry*> entries;
  entries.reserve(table.size());
  for (const auto& e : table) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const auto* a, const auto* b) { return newton_by_id(a->nu) < newton_by_id(b->nu); });
  for (const auto* e : entries) {
    if (filter_ == PairFilter::kNonemptyEqDim && twice_delta(r.length, eta_length, e->nu, e->dim) != 0) continue;
    sink(PairView{r.w, r.length, dec, newton_by_id(e->nu), ComponentData{e->dim, e->irr}});
    ++emitted;
  }
  return emitted;
}

std::size_t PairSource::emit(std::size_t begin, std::size_t end, TableComputer& computer,
                             const std::function<void(const PairView&)>& sink) const {
  end = std::min(end, elements_.size());
  std::size_t emitted = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const auto table = computer.compact_shared(elements_[i].w);
    emitted += emit_one(elements_[i], *table, sink);
  }
  return emitted;
}

std::size_t enumerate_pairs(int n, int max_len, PairFilter filter, const PairOptions& options,
                            const std::function<void(const PairView&)>& sink) {
  const PairSource source(n, max_len, filter);
  if (options.workers <= 1) {
    TableComputer computer(n, options.table);
    return source.emit(0, source.elements().size(), computer, sink);
  }
  std::vector<std::shared_ptr<const TableComputer::CompactTable>> tables(source.elements().size());
  for_each_table(source.elements(), n, options.workers, options.table,
                 [&](std::size_t i, const ElementRecord& r, TableComputer& c) { tables[i] = c.compact_shared(r.w); });
  std::size_t emitted = 0;
  for (std::size_t i = 0; i < tables.size(); ++i) emitted += source.emit_one(source.elements()[i], *tables[i], sink);
  return emitted;
}

std::vector<AffineElement> sample_w(int dataset_id, std::size_t count, std::uint64_t seed, int n,
                                    const TableOptions& table) {
  Rng rng(seed);
  TableComputer computer(n, table);
  const NewtonId zero = intern_newton(NewtonPoint::zero(n));
  const auto nonempty_at_one = [&](const AffineElement& w) { return lookup(computer.compact(w), zero).has_value(); };

  std::vector<AffineElement> out;
  out.reserve(count);
  if (dataset_id == 1) {
    // Uniform over the finite filtered set equals rejection from any
    // uniform proposal covering it.
    std::vector<AffineElement> pool;
    for (const ElementRecord& r : enumerate_elements(n, 30)) {
      if (nonempty_at_one(r.w)) pool.push_back(r.w);
    }
    if (pool.empty()) throw std::invalid_argument("dataset 1: no admissible element");
    for (std::size_t k = 0; k < count; ++k) out.push_back(pool[uniform_index(rng, pool.size())]);
    return out;
  }
  if (dataset_id != 2 && dataset_id != 3) {
    throw std::invalid_argument("dataset id must be 1, 2 or 3, got " + std::to_string(dataset_id));
  }
  const auto mus = regular_dominant_coweights(n, dataset_id == 2 ? 7 : 9);
  if (mus.empty()) throw std::invalid_argument("dataset " + std::to_string(dataset_id) + ": no regular coweight in range");
  const std::size_t perms = factorial(n);
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(count, 1);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > max_attempts) {
      throw std::invalid_argument("dataset " + std::to_string(dataset_id) + ": acceptance rate too low");
    }
    const auto& mu = mus[uniform_index(rng, mus.size())];
    const Permutation x = dataset_id == 2 ? Permutation::from_lehmer_rank(n, uniform_index(rng, perms))
                                          : Permutation::identity(n);
    const Permutation y = Permutation::from_lehmer_rank(n, uniform_index(rng, perms));
    const std::vector<int> zero_lambda(static_cast<std::size_t>(n), 0);
    const AffineElement w =
        AffineElement::make(zero_lambda, x) * AffineElement::translation(mu) * AffineElement::make(zero_lambda, y);
    if (nonempty_at_one(w)) out.push_back(w);
  }
  return out;
}

void Dataset::add_row(std::span<const double> f, double label, std::string w, std::string nu) {
  if (f.size() != width()) throw std::invalid_argument("row width differs from the column count");
  features.insert(features.end(), f.begin(), f.end());
  labels.push_back(label);
  w_text.push_back(std::move(w));
  nu_text.push_back(std::move(nu));
}

Dataset build_sampled_dataset(const std::vector<AffineElement>& samples, Schema schema, LabelKind label,
                              TableComputer& computer) {
  Dataset d;
  const int n = computer.rank();
  d.meta.schema = schema_name(schema);
  d.meta.label = label_name(label);
  d.meta.n = n;
  d.columns = feature_names(schema, n);
  const NewtonPoint zero = NewtonPoint::zero(n);
  const NewtonId zero_id = intern_newton(zero);
  const std::string zero_text = zero.to_string();
  std::vector<double> f;
  for (const AffineElement& w : samples) {
    f.clear();
    append_features(schema, w, schema_uses_newton(schema) ? &zero : nullptr, f);
    d.add_row(f, label_value(label, w, zero, lookup(computer.compact(w), zero_id)), format_element(w), zero_text);
  }
  return d;
}

Dataset build_pair_dataset(int n, int max_len, PairFilter filter, Schema schema, LabelKind label,
                           const PairOptions& options) {
  Dataset d;
  d.meta.schema = schema_name(schema);
  d.meta.label = label_name(label);
  d.meta.source = filter_name(filter);
  d.meta.n = n;
  d.meta.max_len = max_len;
  d.columns = feature_names(schema, n);
  const bool wants = schema_uses_newton(schema);
  std::vector<double> f;
  enumerate_pairs(n, max_len, filter, options, [&](const PairView& p) {
    f.clear();
    append_features(schema, p.w, wants ? &p.nu : nullptr, f);
    d.add_row(f, label_value(label, p.w, p.nu, p.data), format_element(p.w), p.nu.to_string());
  });
  return d;
}

void write_dataset_header(std::ostream& out, const DatasetMeta& meta, const std::vector<std::string>& columns) {
  nlohmann::ordered_json j;
  j["schema"] = meta.schema;
  j["label"] = meta.label;
  j["source"] = meta.source;
  j["n"] = meta.n;
  j["max_len"] = meta.max_len;
  j["seed"] = meta.seed;
  j["generator"] = meta.generator;
  j["command"] = meta.command;
  out << "# meta: " << j.dump() << '\n';
  for (const auto& c : columns) out << "f_" << c << ',';
  out << "label,w,nu\n";
}

void write_dataset_row(std::ostream& out, std::span<const double> f, double label, std::string_view w,
                       std::string_view nu) {
  for (double v : f) {
    put_double(out, v);
    out << ',';
  }
  put_double(out, label);
  out << ",\"" << w << "\",\"" << nu << "\"\n";
}

void write_dataset(std::ostream& out, const Dataset& d) {
  write_dataset_header(out, d.meta, d.columns);
  for (std::size_t i = 0; i < d.rows(); ++i) write_dataset_row(out, d.row(i), d.labels[i], d.w_text[i], d.nu_text[i]);
}

Dataset read_dataset(std::istream& in) {
  Dataset d;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# meta: ", 0) != 0) throw std::invalid_argument("missing meta line");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.substr(8));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad meta line: ") + e.what());
  }
  d.meta.schema = j.at("schema").get<std::string>();
  d.meta.label = j.at("label").get<std::string>();
  d.meta.source = j.at("source").get<std::string>();
  d.meta.n = j.at("n").get<int>();
  d.meta.max_len = j.at("max_len").get<int>();
  d.meta.seed = j.at("seed").get<std::uint64_t>();
  d.meta.generator = j.at("generator").get<std::string>();
  d.meta.command = j.at("command").get<std::string>();
  if (!std::getline(in, line)) throw std::invalid_argument("missing header line");
  const auto header = split_csv(line);
  if (header.size() < 3 || header[header.size() - 3] != "label" || header[header.size() - 2] != "w" ||
      header.back() != "nu") {
    throw std::invalid_argument("header must end with label,w,nu");
  }
  for (std::size_t i = 0; i + 3 < header.size(); ++i) {
    if (header[i].rfind("f_", 0) != 0) throw std::invalid_argument("feature column without f_ prefix");
    d.columns.push_back(header[i].substr(2));
  }
  std::vector<double> f(d.width());
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                                  " cells");
    }
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = get_double(cells[i]);
    d.add_row(f, get_double(cells[f.size()]), cells[f.size() + 1], cells[f.size() + 2]);
  }
  return d;
}

std::optional<std::size_t> first_invalid_row(const Dataset& d, TableComputer& computer) {
  const Schema schema = parse_schema(d.meta.schema);
  const LabelKind label = parse_label(d.meta.label);
  std::vector<double> f;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const AffineElement w = parse_element(d.w_text[i], d.meta.n);
    const NewtonPoint nu = NewtonPoint::parse(d.nu_text[i]);
    f.clear();
    append_features(schema, w, schema_uses_newton(schema) ? &nu : nullptr, f);
    const auto row = d.row(i);
    if (!std::equal(f.begin(), f.end(), row.begin(), row.end())) return i;
    const auto data = lookup(computer.compact(w), intern_newton(nu));
    if (!data && label != LabelKind::kNonemptyPm1) return i;
    if (label_value(label, w, nu, data) != d.labels[i]) return i;
  }
  return std::nullopt;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t rows, std::uint64_t seed) {
  if (rows < 5) throw std::invalid_argument("split needs at least 5 rows");
  std::vector<std::size_t> order(rows);
  for (std::size_t i = 0; i < rows; ++i) order[i] = i;
  Rng rng(seed);
  shuffle_in_place(order, rng);
  const std::size_t train = rows * 4 / 5;
  return {std::vector<std::size_t>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train)),
          std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(train), order.end())};
}

std::vector<std::size_t> oversample_minority(std::span<const double> labels, std::span<const std::size_t> rows,
                                             std::uint64_t seed) {
  std::map<double, std::vector<std::size_t>> classes;
  for (std::size_t r : rows) classes[labels[r]].push_back(r);
  std::size_t largest = 0;
  for (const auto& [_, members] : classes) largest = std::max(largest, members.size());
  Rng rng(seed);
  std::vector<std::size_t> out(rows.begin(), rows.end());
  for (const auto& [_, members] : classes) {
    for (std::size_t k = members.size(); k < largest; ++k) out.push_back(members[uniform_index(rng, members.size())]);
  }
  shuffle_in_place(out, rng);
  return out;
}

StatsTables stats_tables(int n, int max_len, const PairOptions& options) {
  const std::vector<ElementRecord> elements = enumerate_elements(n, max_len);
  struct PerElement {
    int eta_length = 0;
    std::vector<int> deltas;
  };
  std::vector<PerElement> per(elements.size());
  for_each_table(elements, n, options.workers, options.table,
                 [&](std::size_t i, const ElementRecord& r, TableComputer& c) {
                   const auto& table = c.compact(r.w);
                   per[i].eta_length = decompose(r.w).eta().length();
                   for (const auto& e : table) {
                     const int twice = twice_delta(r.length, per[i].eta_length, e.nu, e.dim);
                     if (twice < 0 || twice % 2 != 0) {
                       throw std::logic_error("invalid virtual dimension gap at " + format_element(r.w));
                     }
                     per[i].deltas.push_back(twice / 2);
                   }
                 });
  StatsTables s;
  s.elements = elements.size();
  for (const PerElement& p : per) {
    bool cordial = true;
    for (int d : p.deltas) {
      ++s.delta_histogram[d];
      cordial = cordial && d == 0;
    }
    s.pairs += p.deltas.size();
    auto& row = s.by_eta_length[p.eta_length];
    ++row.first;
    if (!cordial) ++row.second;
  }
  return s;
}

std::string StatsTables::render() const {
  std::ostringstream out;
  out << "elements " << elements << "\npairs " << pairs << "\n\n";
  out << std::left << std::setw(8) << "delta" << std::right << std::setw(12) << "pairs" << '\n';
  for (const auto& [d, c] : delta_histogram) out << std::left << std::setw(8) << d << std::right << std::setw(12) << c << '\n';
  out << '\n'
      << std::left << std::setw(8) << "l(eta)" << std::right << std::setw(12) << "elements" << std::setw(12)
      << "cordial" << std::setw(14) << "non-cordial" << '\n';
  for (const auto& [len, row] : by_eta_length) {
    out << std::left << std::setw(8) << len << std::right << std::setw(12) << row.first << std::setw(12)
        << row.first - row.second << std::setw(14) << row.second << '\n';
  }
  return out.str();
}

}  // namespace adlv
