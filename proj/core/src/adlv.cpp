#include "adlv/adlv.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace adlv {

AdlvTable::AdlvTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first > b.first; });
}

const ComponentData* AdlvTable::find(const NewtonPoint& nu) const {
  for (const auto& [point, data] : entries_) {
    if (point == nu) return &data;
  }
  return nullptr;
}

std::string AdlvTable::listing() const {
  std::string out;
  for (const auto& [nu, data] : entries_) {
    out += "Newton point = " + nu.to_string() + ", dim = " + std::to_string(data.dim) +
           ", irr = " + std::to_string(data.irr) + "\n";
  }
  return out;
}

namespace {

ComponentData combine(const ComponentData* upper, const ComponentData* lower) {
  if (upper && lower) {
    if (upper->dim == lower->dim) return {upper->dim + 1, upper->irr + lower->irr};
    return upper->dim > lower->dim ? ComponentData{upper->dim + 1, upper->irr} : ComponentData{lower->dim + 1, lower->irr};
  }
  const ComponentData* one = upper ? upper : lower;
  return {one->dim + 1, one->irr};
}

}  // namespace

AdlvTable merge_children(const AdlvTable& upper, const AdlvTable& lower) {
  std::vector<AdlvTable::Entry> out;
  for (const auto& [nu, data] : upper.entries()) out.emplace_back(nu, combine(&data, lower.find(nu)));
  for (const auto& [nu, data] : lower.entries()) {
    if (!upper.find(nu)) out.emplace_back(nu, combine(nullptr, &data));
  }
  return AdlvTable(std::move(out));
}

namespace {

class NewtonRegistry {
 public:
  NewtonId intern(const NewtonPoint& nu) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(nu); it != index_.end()) return it->second;
    const Rational p = pair_2rho(nu.coords()) + defect(nu);
    if (p.denominator() != 1) throw std::logic_error("non-integral <nu,2rho> + def for " + nu.to_string());
    const auto id = static_cast<NewtonId>(points_.size());
    points_.push_back(nu);
    pairing_.push_back(static_cast<int>(p.numerator()));
    index_.emplace(nu, id);
    return id;
  }
  const NewtonPoint& get(NewtonId id) {
    std::lock_guard lock(mutex_);
    return points_.at(id);
  }
  int pairing(NewtonId id) {
    std::lock_guard lock(mutex_);
    return pairing_.at(id);
  }
  std::vector<NewtonPoint> snapshot() {
    std::lock_guard lock(mutex_);
    return {points_.begin(), points_.end()};
  }

 private:
  std::mutex mutex_;
  std::deque<NewtonPoint> points_;  // stable references
  std::deque<int> pairing_;
  std::unordered_map<NewtonPoint, NewtonId> index_;
};

NewtonRegistry& registry() {
  static NewtonRegistry instance;
  return instance;
}

}  // namespace

NewtonId intern_newton(const NewtonPoint& nu) { return registry().intern(nu); }
const NewtonPoint& newton_by_id(NewtonId id) { return registry().get(id); }
int pairing_plus_defect(NewtonId id) { return registry().pairing(id); }
std::vector<NewtonPoint> newton_snapshot() { return registry().snapshot(); }

struct TableComputer::Impl {
  std::unordered_map<AffineElement, std::shared_ptr<const CompactTable>> memo;
  std::mt19937_64 rng;
};

TableComputer::TableComputer(int n, TableOptions options)
    : n_(n), options_(options), impl_(std::make_unique<Impl>()) {
  if (n < 2 || n > kMaxRank) throw std::invalid_argument("TableComputer: unsupported rank " + std::to_string(n));
  if (options_.shuffle_seed) impl_->rng.seed(*options_.shuffle_seed);
}

TableComputer::~TableComputer() = default;

std::size_t TableComputer::cache_size() const { return impl_->memo.size(); }

void TableComputer::clear() { impl_->memo.clear(); }

namespace {

// BFS over the cyclic-shift class, stopping at the first length drop.
template <class Rng>
void explore(const AffineElement& w, int n, const TableOptions& options, Rng& rng,
             const std::unordered_map<AffineElement, std::shared_ptr<const TableComputer::CompactTable>>& memo,
             std::vector<AffineElement>& members, std::optional<ReductionTrace>& trace,
             std::shared_ptr<const TableComputer::CompactTable>& known) {
  const int len = affine_length(w);
  members.assign(1, w);
  std::unordered_set<AffineElement> seen{w};
  std::array<int, kMaxRank> gens{};
  std::iota(gens.begin(), gens.begin() + n, 0);
  const bool shuffled = options.shuffle_seed.has_value();
  for (std::size_t head = 0; head < members.size(); ++head) {
    if (shuffled) {
      std::uniform_int_distribution<std::size_t> pick(head, members.size() - 1);
      std::swap(members[head], members[pick(rng)]);
      std::shuffle(gens.begin(), gens.begin() + n, rng);
    }
    const AffineElement u = members[head];
    for (int k = 0; k < n; ++k) {
      const int i = gens[static_cast<std::size_t>(k)];
      AffineElement c = u.conjugate_by_simple(i);
      const int lc = affine_length(c);
      if (lc < len) {
        trace = ReductionTrace{u, i, u.times_simple(i), c};
        return;
      }
      if (lc == len && seen.insert(c).second) {
        if (auto it = memo.find(c); it != memo.end()) {
          known = it->second;
          return;
        }
        members.push_back(std::move(c));
        if (members.size() > options.class_budget) {
          throw BudgetExceeded("cyclic-shift class of " + format_element(w) + " exceeds the budget of " +
                               std::to_string(options.class_budget) + " elements");
        }
      }
    }
  }
}

}  // namespace

std::optional<ReductionTrace> TableComputer::reduction(const AffineElement& w) {
  std::vector<AffineElement> members;
  std::optional<ReductionTrace> trace;
  std::shared_ptr<const CompactTable> known;
  explore(w, n_, options_, impl_->rng, {}, members, trace, known);
  return trace;
}

std::shared_ptr<const TableComputer::CompactTable> TableComputer::compact_shared(const AffineElement& w) {
  if (w.rank() != n_) throw std::invalid_argument("TableComputer: element rank differs from computer rank");
  if (auto it = impl_->memo.find(w); it != impl_->memo.end()) return it->second;

  std::vector<AffineElement> members;
  std::optional<ReductionTrace> trace;
  std::shared_ptr<const CompactTable> result;
  explore(w, n_, options_, impl_->rng, impl_->memo, members, trace, result);

  if (!result && trace) {
    const auto upper = compact_shared(trace->upper);
    const auto lower = compact_shared(trace->lower);
    auto merged = std::make_shared<CompactTable>();
    auto a = upper->begin();
    auto b = lower->begin();
    while (a != upper->end() || b != lower->end()) {
      if (b == lower->end() || (a != upper->end() && a->nu < b->nu)) {
        merged->push_back({a->nu, a->dim + 1, a->irr});
        ++a;
      } else if (a == upper->end() || b->nu < a->nu) {
        merged->push_back({b->nu, b->dim + 1, b->irr});
        ++b;
      } else {
        const ComponentData up{a->dim, a->irr};
        const ComponentData low{b->dim, b->irr};
        const ComponentData c = combine(&up, &low);
        merged->push_back({a->nu, c.dim, c.irr});
        ++a;
        ++b;
      }
    }
    result = std::move(merged);
  } else if (!result) {
    const NewtonPoint nu = newton_point(w);
    const Rational pairing = pair_2rho(nu.coords());
    if (pairing.denominator() != 1) throw std::logic_error("non-integral <nu,2rho> at a minimal element");
    const int dim = affine_length(w) - static_cast<int>(pairing.numerator());
    result = std::make_shared<const CompactTable>(CompactTable{{intern_newton(nu), dim, 1}});
  }
  for (const AffineElement& m : members) impl_->memo.emplace(m, result);
  return result;
}

AdlvTable TableComputer::table(const AffineElement& w) {
  const CompactTable& compact_table = compact(w);
  std::vector<AdlvTable::Entry> entries;
  entries.reserve(compact_table.size());
  for (const CompactEntry& e : compact_table) entries.emplace_back(newton(e.nu), ComponentData{e.dim, e.irr});
  return AdlvTable(std::move(entries));
}

void TableComputer::save(std::ostream& out) const {
  std::vector<std::pair<AffineElement, const CompactTable*>> rows;
  rows.reserve(impl_->memo.size());
  for (const auto& [w, t] : impl_->memo) rows.emplace_back(w, t.get());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [w, t] : rows) {
    out << format_element(w) << '\t';
    for (std::size_t k = 0; k < t->size(); ++k) {
      const CompactEntry& e = (*t)[k];
      if (k) out << ';';
      out << newton(e.nu).to_string() << '|' << e.dim << '|' << e.irr;
    }
    out << '\n';
  }
}

std::size_t TableComputer::load(std::istream& in) {
  std::size_t loaded = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::invalid_argument("malformed cache line: " + line);
    const AffineElement w = parse_element(std::string_view(line).substr(0, tab), n_);
    auto t = std::make_shared<CompactTable>();
    std::stringstream rest(line.substr(tab + 1));
    std::string item;
    while (std::getline(rest, item, ';')) {
      const auto p1 = item.find('|');
      const auto p2 = item.find('|', p1 + 1);
      if (p1 == std::string::npos || p2 == std::string::npos) throw std::invalid_argument("malformed cache entry: " + item);
      t->push_back({intern_newton(NewtonPoint::parse(item.substr(0, p1))), std::stoi(item.substr(p1 + 1, p2 - p1 - 1)),
                    std::stoll(item.substr(p2 + 1))});
    }
    std::sort(t->begin(), t->end(), [](const CompactEntry& a, const CompactEntry& b) { return a.nu < b.nu; });
    loaded += impl_->memo.emplace(w, std::move(t)).second ? 1 : 0;
  }
  return loaded;
}

QueryResult query(const AdlvTable& table, const NewtonPoint& nu) {
  if (const ComponentData* d = table.find(nu)) return {d->dim, d->irr};
  return {};
}

Rational virtual_dimension(const AffineElement& w, const NewtonPoint& nu) {
  const int eta_len = decompose(w).eta().length();
  return Rational(affine_length(w) + eta_len, 2) - pair_2rho(nu.coords()) / 2 - Rational(defect(nu), 2);
}

NewtonPoint generic_sigma_class(const AdlvTable& table) {
  if (table.size() == 0) throw std::invalid_argument("generic_sigma_class: empty table");
  const NewtonPoint* best = nullptr;
  for (const auto& [nu, data] : table.entries()) {
    bool maximal = true;
    for (const auto& [other, unused] : table.entries()) {
      if (!mazur_leq(other, nu)) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      best = &nu;
      break;
    }
  }
  if (!best) throw std::logic_error("support has no unique dominance-maximal Newton point");
  return *best;
}

Cordiality cordiality(const AffineElement& w, const AdlvTable& table) {
  Cordiality c;
  for (const auto& [nu, data] : table.entries()) {
    const Rational delta = virtual_dimension(w, nu) - data.dim;
    if (delta.denominator() != 1 || delta.numerator() < 0) throw std::logic_error("virtual dimension bound violated at " + nu.to_string());
    c.max_delta = std::max(c.max_delta, static_cast<int>(delta.numerator()));
  }
  c.cordial = c.max_delta == 0;
  return c;
}

}  // namespace adlv
