#pragma once

// Quantum Bruhat graph of S_n, length-positive sets and the dimension
// bound for the gap between virtual and actual dimension.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adlv/isocrystal.hpp"
#include "adlv/weyl.hpp"

namespace adlv {

enum class EdgeKind { kBruhat, kQuantum };

struct QbgEdge {
  Permutation source;
  Permutation target;  // source * s_alpha
  Root alpha;
  EdgeKind kind;
};

class QuantumBruhatGraph {
 public:
  /// Builds the graph and all-pairs distances eagerly; 2 <= n <= 7.
  explicit QuantumBruhatGraph(int n);

  int rank() const { return n_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Permutation>& vertices() const { return vertices_; }
  const std::vector<QbgEdge>& edges() const { return edges_; }

  /// Length of a shortest directed path from u to v.
  int distance(const Permutation& u, const Permutation& v) const;
  bool strongly_connected() const;

 private:
  int n_;
  std::vector<Permutation> vertices_;  // indexed by Lehmer rank
  std::vector<QbgEdge> edges_;
  std::vector<std::uint8_t> dist_;     // row-major, source-major
};

/// Shared per-rank graph, built on first use.
const QuantumBruhatGraph& quantum_bruhat_graph(int n);

/// v in S_n with <z^{-1} lam, v alpha> + delta(z v alpha) - delta(v alpha) >= 0
/// for every positive root alpha.
std::vector<Permutation> lp_set(const AffineElement& w);

/// l(w) - min_{v in LP(w)} d(v, z v).
int generic_floor_pairing(const AffineElement& w);

/// (l(w_0) - l_R(w_0)) / 2 with the reflection length computed directly.
Rational theorem_bound(int n);

/// t^{2 rho^vee} w_0.
AffineElement split_witness(int n);

struct BoundReport {
  int n = 0;
  int max_len = 0;
  Rational bound;
  int observed_max = 0;
  std::vector<AffineElement> attained_at;  // capped sample
  std::size_t scanned = 0;
  int witness_length = 0;
  int witness_delta = 0;
  bool witness_ok = false;
  double elapsed_seconds = 0.0;

  /// Fixed-key JSON document.
  std::string to_json() const;
};

struct BoundOptions {
  std::size_t class_budget = 2'000'000;
  int workers = 1;
  /// Skip the scan (max_len <= 0 has the same effect).
  bool witness_only = false;
  std::size_t attained_cap = 16;
};

/// Scans all w with l(w) < max_len and checks the witness.
BoundReport verify_bound(int n, int max_len, const BoundOptions& options = {});

/// Largest d_w(nu) - dim over the support of w, evaluated from scratch.
int max_delta(const AffineElement& w, std::size_t class_budget = 2'000'000);

}  // namespace adlv
