#pragma once

// σ-conjugacy classes of SL_n, represented by their Newton points.
//
// Everything here is exact: coordinates are rationals with 64-bit
// numerators/denominators and Kostant partition counts are arbitrary
// precision integers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace adlv {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;

/// Lowest terms `p/q`; integers are rendered without a denominator.
std::string format_rational(const Rational& r);

/// Accepts `p`, `-p`, `p/q`. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Comma-separated rationals, optionally wrapped in brackets.
std::vector<Rational> parse_rational_list(std::string_view text);

/// Dominant rational vector with zero sum whose partial sums are integral
/// at every slope change. Identifies a σ-conjugacy class [b] of SL_n.
class NewtonPoint {
 public:
  NewtonPoint() = default;

  /// Validates dominance, zero sum and breakpoint integrality.
  /// Throws std::invalid_argument with the violated condition.
  static NewtonPoint make(std::vector<Rational> coords);

  /// Sorts into the dominant representative first.
  static NewtonPoint dominant_of(std::vector<Rational> coords);

  static NewtonPoint zero(int n);

  static NewtonPoint parse(std::string_view text);

  int rank() const { return static_cast<int>(coords_.size()); }
  std::span<const Rational> coords() const { return coords_; }
  const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  bool is_integral() const;

  /// `[1/2, 1/2, -1]`
  std::string to_string() const;

  friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
  /// Lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const NewtonPoint& a, const NewtonPoint& b);

 private:
  explicit NewtonPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  std::vector<Rational> coords_;
};

/// Reason the vector is not a Newton point, or nullopt when it is one.
std::optional<std::string> newton_point_violation(std::span<const Rational> coords);

/// ⟨v, 2ρ⟩ with 2ρ = (n-1, n-3, ..., 1-n).
Rational pair_2rho(std::span<const Rational> v);
std::int64_t pair_2rho(std::span<const int> v);

/// The integer vector whose partial sums are the floors of ν's partial sums.
std::vector<int> best_integral_approx(const NewtonPoint& nu);

/// ⟨ν - ⌊ν⌋, 2ρ⟩.
int defect(const NewtonPoint& nu);

/// Dominance (Mazur) order: every partial sum of μ - ν is nonnegative.
bool mazur_leq(const NewtonPoint& nu, std::span<const int> mu);
bool mazur_leq(const NewtonPoint& lower, const NewtonPoint& upper);

/// All Newton points ν ≤ μ, sorted lexicographically. μ must be dominant
/// with zero sum.
std::vector<NewtonPoint> enumerate_newton_leq(std::span<const int> mu);

/// dim V_μ(λ) as the Kostant partition value P(μ - λ); zero when μ - λ is
/// not a nonnegative combination of simple roots.
BigInt weight_multiplicity(std::span<const int> mu, std::span<const int> lambda);

/// Kostant partition function of a vector given in simple-root coordinates
/// (c_1, ..., c_{n-1}), i.e. of Σ c_k α_{k,k+1}. Memoized per thread.
BigInt kostant_partition(std::span<const int> simple_root_coords);

}  // namespace adlv

template <>
struct std::hash<adlv::NewtonPoint> {
  std::size_t operator()(const adlv::NewtonPoint& nu) const noexcept;
};
