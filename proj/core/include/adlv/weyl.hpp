#pragma once

// The finite Weyl group S_n and the affine Weyl group of type A_{n-1}.
//
// Conventions:
//   * permutations are stored by their images, 0-based internally;
//     (uv)(i) = u(v(i));
//   * (z mu)_i = mu_{z^{-1}(i)};
//   * t^lam z . t^mu z' = t^{lam + z mu} zz';
//   * s_i (1 <= i < n) swaps i and i+1, s_0 = (1 n) t^{(-1,0,...,0,1)};
//   * a word [i_1, ..., i_r] is the product s_{i_1} ... s_{i_r}.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adlv/isocrystal.hpp"

namespace adlv {

inline constexpr int kMaxRank = 8;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);
  /// 0-based images; throws std::invalid_argument unless a bijection.
  static Permutation from_images(std::span<const int> images);
  /// s_i for 1 <= i < n.
  static Permutation simple_reflection(int n, int i);
  /// Swap of two 0-based points.
  static Permutation transposition(int n, int a, int b);
  static Permutation longest(int n);
  /// All of S_n in lexicographic order of images.
  static std::vector<Permutation> all(int n);

  int rank() const { return n_; }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  std::vector<int> images() const;

  Permutation operator*(const Permutation& o) const {
    Permutation r;
    r.n_ = n_;
    for (int i = 0; i < n_; ++i) r.img_[i] = img_[o.img_[i]];
    return r;
  }
  Permutation inverse() const {
    Permutation r;
    r.n_ = n_;
    for (int i = 0; i < n_; ++i) {
      const std::size_t j = img_[i];
      if (j >= kMaxRank) break;  // unreachable; keeps gcc's bounds analysis quiet
      r.img_[j] = static_cast<std::uint8_t>(i);
    }
    return r;
  }

  /// Number of inversions.
  int length() const;
  int cycle_count() const;
  bool is_identity() const;

  /// Reduced word in simple reflection indices 1..n-1; the product of the
  /// letters in order equals *this.
  std::vector<int> reduced_word() const;

  /// (z v)_i = v_{z^{-1}(i)}.
  template <class T>
  std::array<T, kMaxRank> act(const std::array<T, kMaxRank>& v) const {
    std::array<T, kMaxRank> out{};
    for (int i = 0; i < n_; ++i) out[img_[i]] = v[i];
    return out;
  }

  /// Lehmer-code rank in [0, n!).
  std::size_t lehmer_rank() const;
  static Permutation from_lehmer_rank(int n, std::size_t rank);

  std::string to_string() const;  // one-based images, e.g. "[3, 1, 2]"

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  friend class AffineElement;

  std::array<std::uint8_t, kMaxRank> img_{};
  std::uint8_t n_ = 0;
};

/// e_i - e_j, 0-based indices.
struct Root {
  int i = 0;
  int j = 0;
  bool positive() const { return i < j; }
  /// <alpha^vee, 2 rho> = 2 (j - i).
  int height2() const { return 2 * (j - i); }
};

/// delta(z alpha) for a positive root alpha: 1 when z alpha is negative.
inline int delta(const Permutation& z, Root a) { return z(a.i) > z(a.j) ? 1 : 0; }

/// Positive roots in lexicographic order (1,2), (1,3), ..., (n-1,n).
std::vector<Root> positive_roots(int n);

using Coweight = std::array<int, kMaxRank>;

class AffineElement {
 public:
  AffineElement() = default;

  static AffineElement identity(int n);
  static AffineElement translation(std::span<const int> lambda);
  /// Throws std::invalid_argument unless lambda sums to 0 and ranks agree.
  static AffineElement make(std::span<const int> lambda, const Permutation& z);
  /// s_i for 0 <= i < n.
  static AffineElement simple_reflection(int n, int i);
  /// s_{i_1} ... s_{i_r}, indices in 0..n-1.
  static AffineElement from_word(int n, std::span<const int> word);

  int rank() const { return z_.rank(); }
  const Permutation& finite() const { return z_; }
  std::span<const int> translation() const { return {lambda_.data(), static_cast<std::size_t>(rank())}; }
  const Coweight& translation_array() const { return lambda_; }

  AffineElement operator*(const AffineElement& o) const {
    AffineElement r;
    r.z_ = z_ * o.z_;
    const Coweight moved = z_.act(o.lambda_);
    for (int i = 0; i < rank(); ++i) r.lambda_[static_cast<std::size_t>(i)] = lambda_[static_cast<std::size_t>(i)] + moved[static_cast<std::size_t>(i)];
    return r;
  }
  AffineElement inverse() const;
  AffineElement pow(int k) const;

  /// Conjugation s_i w s_i by a simple affine reflection.
  AffineElement conjugate_by_simple(int i) const;
  /// w s_i.
  AffineElement times_simple(int i) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
  /// Canonical order: translation first, then images.
  friend auto operator<=>(const AffineElement&, const AffineElement&) = default;

 private:
  Coweight lambda_{};
  Permutation z_;
};

/// w = x t^mu y with mu dominant and y minimal.
struct Decomposition {
  Permutation x;
  Coweight mu{};
  Permutation y;
  int n = 0;

  std::span<const int> mu_span() const { return {mu.data(), static_cast<std::size_t>(n)}; }
  /// eta(w) = y x.
  Permutation eta() const { return y * x; }
};

Decomposition decompose(const AffineElement& w);

/// <mu, 2 rho> + l(x) - l(y).
int affine_length(const AffineElement& w);

NewtonPoint newton_point(const AffineElement& w);

/// Minimal number of transpositions with product u.
int reflection_length(const Permutation& u);

struct DemazurePair {
  Permutation star;
  Permutation down;
};

/// a * b and a <| b, scanning a reduced word of b.
DemazurePair demazure_products(const Permutation& a, const Permutation& b);

enum class ShiftKind { kEqualLength, kLengthDrop };

struct ShiftNeighbor {
  int s = 0;
  AffineElement sws;
  ShiftKind kind = ShiftKind::kEqualLength;
};

/// s_i w s_i for every i with l(s_i w s_i) <= l(w).
std::vector<ShiftNeighbor> cyclic_shift_neighbors(const AffineElement& w);

/// Element grammar:
///   affine_Weyl([a1,...,an],[i1,...,ir])   t^a s_{i1} ... s_{ir}, 1 <= i < n
///   exp([i1,...,ir])                       s_{i1} ... s_{ir}, 0 <= i < n
///   t[a1,...,an] s<k> s<k> ...             t^a s_k ..., 0 <= k < n
///   Id
/// Throws std::invalid_argument on malformed input.
AffineElement parse_element(std::string_view text, int n);

/// affine_Weyl([lambda],[reduced word of z]).
std::string format_element(const AffineElement& w);

/// "[1,0,-1]" style, no spaces.
std::string format_int_list(std::span<const int> v);

}  // namespace adlv

template <>
struct std::hash<adlv::AffineElement> {
  std::size_t operator()(const adlv::AffineElement& w) const noexcept { return w.hash(); }
};
