#pragma once

// Exhaustive enumeration of affine Weyl group elements by length and
// deterministic fan-out of table computations across worker threads.

#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include "adlv/adlv.hpp"
#include "adlv/weyl.hpp"

namespace adlv {

struct ElementRecord {
  AffineElement w;
  int length = 0;
};

/// Every w with l(w) < max_len, ordered by (length, canonical key).
std::vector<ElementRecord> enumerate_elements(int n, int max_len);

/// Newton points nu_w over all w with l(w) < max_len.
std::set<NewtonPoint> realized_newton_points(const std::vector<ElementRecord>& elements);

/// Calls fn(index, record, computer) for every element. Work is dealt
/// round-robin to `workers` threads, each owning a private TableComputer.
/// fn must only write to per-index state. Exceptions are rethrown after all
/// workers stop; the one from the lowest index wins.
void for_each_table(const std::vector<ElementRecord>& elements, int n, int workers, const TableOptions& options,
                    const std::function<void(std::size_t, const ElementRecord&, TableComputer&)>& fn);

}  // namespace adlv
