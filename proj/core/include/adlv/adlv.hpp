#pragma once

// Nonemptiness pattern, dimension and top-dimensional component count of
// X_w(b) for SL_n, by reduction along cyclic shifts.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adlv/isocrystal.hpp"
#include "adlv/weyl.hpp"

namespace adlv {

struct ComponentData {
  int dim = 0;
  std::int64_t irr = 0;

  friend bool operator==(const ComponentData&, const ComponentData&) = default;
};

/// Thrown when a cyclic-shift class grows past the configured node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The full answer for one w: Newton points of the classes [b] with
/// X_w(b) nonempty, sorted in decreasing lexicographic order.
class AdlvTable {
 public:
  using Entry = std::pair<NewtonPoint, ComponentData>;

  AdlvTable() = default;
  explicit AdlvTable(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const ComponentData* find(const NewtonPoint& nu) const;

  /// `Newton point = [..], dim = d, irr = k`, one line per entry.
  std::string listing() const;

  friend bool operator==(const AdlvTable&, const AdlvTable&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Parent entries from the tables of w s and s w s.
AdlvTable merge_children(const AdlvTable& upper, const AdlvTable& lower);

/// One step of the reduction: a member of the cyclic-shift class of w and a
/// simple reflection lowering its length by two under conjugation.
struct ReductionTrace {
  AffineElement pivot;
  int s = 0;
  AffineElement upper;  // pivot s
  AffineElement lower;  // s pivot s
};

using NewtonId = std::uint32_t;

/// Process-wide interning of Newton points; ids are stable for the life of
/// the process and shared by every TableComputer. Thread-safe.
NewtonId intern_newton(const NewtonPoint& nu);
const NewtonPoint& newton_by_id(NewtonId id);
/// <nu, 2 rho> + def(nu), always an integer.
int pairing_plus_defect(NewtonId id);
/// Copy of the registry indexed by id, for lock-free reads.
std::vector<NewtonPoint> newton_snapshot();

struct TableOptions {
  /// Maximum number of elements visited in a single cyclic-shift class.
  std::size_t class_budget = 2'000'000;
  /// Randomizes traversal and pivot order when set.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Memoizing table evaluator for a fixed rank. Not thread-safe; give each
/// worker its own instance.
class TableComputer {
 public:
  struct CompactEntry {
    NewtonId nu;
    int dim;
    std::int64_t irr;
    friend bool operator==(const CompactEntry&, const CompactEntry&) = default;
  };
  /// Sorted by Newton id.
  using CompactTable = std::vector<CompactEntry>;

  explicit TableComputer(int n, TableOptions options = {});
  ~TableComputer();
  TableComputer(const TableComputer&) = delete;
  TableComputer& operator=(const TableComputer&) = delete;

  int rank() const { return n_; }

  AdlvTable table(const AffineElement& w);
  const CompactTable& compact(const AffineElement& w) { return *compact_shared(w); }
  std::shared_ptr<const CompactTable> compact_shared(const AffineElement& w);

  /// The pivot used for w, or nullopt when w is of minimal length in its
  /// conjugacy class.
  std::optional<ReductionTrace> reduction(const AffineElement& w);

  const NewtonPoint& newton(NewtonId id) const { return newton_by_id(id); }
  int pairing_plus_defect(NewtonId id) const { return adlv::pairing_plus_defect(id); }

  std::size_t cache_size() const;
  void clear();

  /// Appends the memo in a line-oriented text format.
  void save(std::ostream& out) const;
  /// Reads entries written by save(); returns the number loaded.
  std::size_t load(std::istream& in);

 private:
  struct Impl;
  int n_;
  TableOptions options_;
  std::unique_ptr<Impl> impl_;
};

struct QueryResult {
  std::optional<int> dim;  // nullopt means empty
  std::int64_t irr = 0;
};

/// (empty, 0) outside the support.
QueryResult query(const AdlvTable& table, const NewtonPoint& nu);

/// 1/2 (l(w) + l(eta(w))) - <nu, rho> - 1/2 def(nu).
Rational virtual_dimension(const AffineElement& w, const NewtonPoint& nu);

/// Unique maximum of the support in the dominance order.
NewtonPoint generic_sigma_class(const AdlvTable& table);

struct Cordiality {
  bool cordial = true;
  int max_delta = 0;
};

Cordiality cordiality(const AffineElement& w, const AdlvTable& table);

}  // namespace adlv
