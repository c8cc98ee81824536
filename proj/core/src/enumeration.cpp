#include "adlv/enumeration.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace adlv {

std::vector<ElementRecord> enumerate_elements(int n, int max_len) {
  std::vector<ElementRecord> out;
  if (max_len <= 0) return out;
  // Layered BFS in the Coxeter generators: layer k holds exactly length k.
  std::vector<AffineElement> layer{AffineElement::identity(n)};
  std::unordered_set<AffineElement> previous;
  for (int len = 0; len < max_len && !layer.empty(); ++len) {
    std::sort(layer.begin(), layer.end());
    for (const AffineElement& w : layer) out.push_back({w, len});
    if (len + 1 == max_len) break;
    std::unordered_set<AffineElement> current(layer.begin(), layer.end());
    std::unordered_set<AffineElement> next;
    for (const AffineElement& w : layer) {
      for (int i = 0; i < n; ++i) {
        AffineElement v = w.times_simple(i);
        if (!previous.count(v) && !current.count(v)) next.insert(std::move(v));
      }
    }
    previous = std::move(current);
    layer.assign(next.begin(), next.end());
  }
  return out;
}

std::set<NewtonPoint> realized_newton_points(const std::vector<ElementRecord>& elements) {
  std::set<NewtonPoint> out;
  for (const ElementRecord& r : elements) out.insert(newton_point(r.w));
  return out;
}

void for_each_table(const std::vector<ElementRecord>& elements, int n, int workers, const TableOptions& options,
                    const std::function<void(std::size_t, const ElementRecord&, TableComputer&)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1) {
    TableComputer computer(n, options);
    for (std::size_t i = 0; i < elements.size(); ++i) fn(i, elements[i], computer);
    return;
  }
  std::mutex error_mutex;
  std::size_t error_index = elements.size();
  std::exception_ptr error;
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      TableComputer computer(n, options);
      for (std::size_t i = static_cast<std::size_t>(t); i < elements.size(); i += static_cast<std::size_t>(workers)) {
        try {
          fn(i, elements[i], computer);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace adlv
