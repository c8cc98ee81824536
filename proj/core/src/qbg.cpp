#include "adlv/qbg.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "adlv/adlv.hpp"
#include "adlv/enumeration.hpp"

namespace adlv {

namespace {
constexpr std::uint8_t kUnreachable = std::numeric_limits<std::uint8_t>::max();
}

QuantumBruhatGraph::QuantumBruhatGraph(int n) : n_(n) {
  if (n < 2 || n > 7) throw std::invalid_argument("quantum Bruhat graph supports 2 <= n <= 7");
  vertices_ = Permutation::all(n);  // lexicographic order = Lehmer rank order
  const std::size_t count = vertices_.size();
  std::vector<std::vector<std::uint32_t>> adjacency(count);
  const std::vector<Root> roots = positive_roots(n);
  for (std::size_t v = 0; v < count; ++v) {
    const Permutation& u = vertices_[v];
    const int len = u.length();
    for (const Root& a : roots) {
      const Permutation target = u * Permutation::transposition(n, a.i, a.j);
      const int lt = target.length();
      EdgeKind kind;
      if (lt == len + 1) {
        kind = EdgeKind::kBruhat;
      } else if (lt == len + 1 - a.height2()) {
        kind = EdgeKind::kQuantum;
      } else {
        continue;
      }
      edges_.push_back({u, target, a, kind});
      adjacency[v].push_back(static_cast<std::uint32_t>(target.lehmer_rank()));
    }
  }
  dist_.assign(count * count, kUnreachable);
  std::vector<std::uint32_t> queue(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::uint8_t* row = &dist_[s * count];
    std::size_t head = 0;
    std::size_t tail = 0;
    row[s] = 0;
    queue[tail++] = static_cast<std::uint32_t>(s);
    while (head < tail) {
      const std::uint32_t v = queue[head++];
      for (std::uint32_t t : adjacency[v]) {
        if (row[t] == kUnreachable) {
          row[t] = static_cast<std::uint8_t>(row[v] + 1);
          queue[tail++] = t;
        }
      }
    }
  }
}

int QuantumBruhatGraph::distance(const Permutation& u, const Permutation& v) const {
  if (u.rank() != n_ || v.rank() != n_) throw std::invalid_argument("distance: rank mismatch");
  const std::uint8_t d = dist_[u.lehmer_rank() * vertices_.size() + v.lehmer_rank()];
  if (d == kUnreachable) throw std::logic_error("quantum Bruhat graph is not strongly connected");
  return d;
}

bool QuantumBruhatGraph::strongly_connected() const {
  return std::none_of(dist_.begin(), dist_.end(), [](std::uint8_t d) { return d == kUnreachable; });
}

const QuantumBruhatGraph& quantum_bruhat_graph(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuantumBruhatGraph>> graphs;
  std::lock_guard lock(mutex);
  auto& slot = graphs[n];
  if (!slot) slot = std::make_unique<QuantumBruhatGraph>(n);
  return *slot;
}

std::vector<Permutation> lp_set(const AffineElement& w) {
  const int n = w.rank();
  const Permutation& z = w.finite();
  // u = z^{-1} lam, u_k = lam_{z(k)}
  std::array<int, kMaxRank> u{};
  for (int k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] = w.translation()[static_cast<std::size_t>(z(k))];
  const std::vector<Root> roots = positive_roots(n);
  std::vector<Permutation> members;
  for (const Permutation& v : Permutation::all(n)) {
    bool ok = true;
    for (const Root& a : roots) {
      // v alpha = e_{v(i)} - e_{v(j)}
      const int p = v(a.i);
      const int q = v(a.j);
      const int pairing = u[static_cast<std::size_t>(p)] - u[static_cast<std::size_t>(q)];
      const int d_zv = z(p) > z(q) ? 1 : 0;
      const int d_v = p > q ? 1 : 0;
      if (pairing + d_zv - d_v < 0) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(v);
  }
  return members;
}

int generic_floor_pairing(const AffineElement& w) {
  const QuantumBruhatGraph& g = quantum_bruhat_graph(w.rank());
  int best = std::numeric_limits<int>::max();
  for (const Permutation& v : lp_set(w)) best = std::min(best, g.distance(v, w.finite() * v));
  return affine_length(w) - best;
}

Rational theorem_bound(int n) {
  const Permutation w0 = Permutation::longest(n);
  return Rational(w0.length() - reflection_length(w0), 2);
}

AffineElement split_witness(int n) {
  std::vector<int> two_rho(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) two_rho[static_cast<std::size_t>(i)] = n - 1 - 2 * i;
  return AffineElement::make(two_rho, Permutation::longest(n));
}

namespace {

int table_max_delta(const AffineElement& w, int length, const TableComputer::CompactTable& table,
                    const TableComputer& computer) {
  const int eta = decompose(w).eta().length();
  int best = 0;
  for (const auto& e : table) {
    const int twice = length + eta - computer.pairing_plus_defect(e.nu);
    best = std::max(best, twice / 2 - e.dim);
  }
  return best;
}

}  // namespace

int max_delta(const AffineElement& w, std::size_t class_budget) {
  TableComputer computer(w.rank(), TableOptions{class_budget, std::nullopt});
  return table_max_delta(w, affine_length(w), computer.compact(w), computer);
}

BoundReport verify_bound(int n, int max_len, const BoundOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BoundReport report;
  report.n = n;
  report.max_len = max_len;
  report.bound = theorem_bound(n);

  if (!options.witness_only && max_len > 0) {
    const std::vector<ElementRecord> elements = enumerate_elements(n, max_len);
    std::vector<int> deltas(elements.size(), 0);
    for_each_table(elements, n, options.workers, TableOptions{options.class_budget, std::nullopt},
                   [&](std::size_t i, const ElementRecord& r, TableComputer& computer) {
                     deltas[i] = table_max_delta(r.w, r.length, computer.compact(r.w), computer);
                   });
    report.scanned = elements.size();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (deltas[i] > report.observed_max) {
        report.observed_max = deltas[i];
        report.attained_at.clear();
      }
      if (deltas[i] == report.observed_max && report.attained_at.size() < options.attained_cap) {
        report.attained_at.push_back(elements[i].w);
      }
    }
  }

  const AffineElement witness = split_witness(n);
  report.witness_length = affine_length(witness);
  report.witness_delta = max_delta(witness, options.class_budget);
  report.witness_ok = Rational(report.witness_delta) == report.bound;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["max_len"] = max_len;
  doc["bound"] = format_rational(bound);
  doc["observed_max"] = observed_max;
  doc["scanned"] = scanned;
  std::vector<std::string> attained;
  for (const auto& w : attained_at) attained.push_back(format_element(w));
  doc["attained_at"] = attained;
  doc["witness_length"] = witness_length;
  doc["witness_delta"] = witness_delta;
  doc["witness_ok"] = witness_ok;
  doc["elapsed"] = elapsed_seconds;
  return doc.dump(2);
}

}  // namespace adlv
