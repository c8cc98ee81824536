#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "adlv/isocrystal.hpp"
#include "adlv/weyl.hpp"

namespace adlv {
namespace {

// Number of ways to write v (simple-root coordinates) as an unordered sum
// of positive roots e_i - e_j, by direct recursion over the root list.
long long brute_kostant(std::vector<int> v) {
  const int r = static_cast<int>(v.size());
  std::vector<std::pair<int, int>> roots;  // simple-root span [a, b)
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b <= r; ++b) roots.emplace_back(a, b);
  }
  std::function<long long(std::size_t)> rec = [&](std::size_t k) -> long long {
    if (k == roots.size()) {
      for (int c : v) {
        if (c != 0) return 0;
      }
      return 1;
    }
    long long total = rec(k + 1);
    const auto [a, b] = roots[k];
    int taken = 0;
    while (true) {
      bool ok = true;
      for (int i = a; i < b; ++i) ok = ok && v[static_cast<std::size_t>(i)] > 0;
      if (!ok) break;
      for (int i = a; i < b; ++i) --v[static_cast<std::size_t>(i)];
      ++taken;
      total += rec(k + 1);
    }
    for (int i = a; i < b; ++i) v[static_cast<std::size_t>(i)] += taken;
    return total;
  };
  return rec(0);
}

// Rank of J_b deficit: n minus the sum over slopes of multiplicity / denominator.
int defect_oracle(const NewtonPoint& nu) {
  std::map<Rational, int> mult;
  for (const Rational& c : nu.coords()) ++mult[c];
  int blocks = 0;
  for (const auto& [slope, m] : mult) blocks += m / static_cast<int>(slope.denominator());
  return nu.rank() - blocks;
}

// Dominant zero-sum rational vectors with denominators up to 5 that pass
// validation, generated by slope blocks.
std::vector<NewtonPoint> random_newton_points(std::mt19937_64& rng, int count) {
  std::vector<NewtonPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const int n = 2 + static_cast<int>(rng() % 6);
    std::vector<Rational> coords;
    int left = n;
    while (left > 0) {
      const int size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(left));
      const int num = static_cast<int>(rng() % 9) - 4;
      for (int i = 0; i < size; ++i) coords.emplace_back(num, size);
      left -= size;
    }
    Rational total(0);
    for (const auto& c : coords) total += c;
    if (total.numerator() != 0) continue;
    out.push_back(NewtonPoint::dominant_of(coords));
  }
  return out;
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_EQ(format_rational(Rational(-1, 3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(parse_rational_list("[1/2, 1/2, -1]").size(), 3u);
}

TEST(NewtonPoint, ValidatesConditions) {
  EXPECT_NO_THROW(NewtonPoint::parse("1/2,1/2,-1"));
  EXPECT_THROW(NewtonPoint::parse("1/2,-1/2,0"), std::invalid_argument);  // breakpoint at 1/2
  EXPECT_THROW(NewtonPoint::parse("-1,0,1"), std::invalid_argument);      // not dominant
  EXPECT_THROW(NewtonPoint::parse("1,0,0"), std::invalid_argument);       // sum
  EXPECT_THROW(NewtonPoint::parse("1/3,1/3,-2/3"), std::invalid_argument);
  EXPECT_EQ(NewtonPoint::parse("[1/3, 1/3, 1/3, -1/2, -1/2]").to_string(), "[1/3, 1/3, 1/3, -1/2, -1/2]");
}

TEST(NewtonPoint, ThreeByThreeExample) {
  const std::vector<int> mu{1, 0, -1};
  const auto below = enumerate_newton_leq(mu);
  std::vector<std::string> text;
  for (const auto& nu : below) text.push_back(nu.to_string());
  EXPECT_EQ(text, (std::vector<std::string>{"[0, 0, 0]", "[1/2, 1/2, -1]", "[1, -1/2, -1/2]", "[1, 0, -1]"}));
  EXPECT_EQ(defect(below[0]), 0);
  EXPECT_EQ(defect(below[1]), 1);
  EXPECT_EQ(defect(below[2]), 1);
  EXPECT_EQ(defect(below[3]), 0);
  EXPECT_EQ(pair_2rho(below[3].coords()), Rational(4));
  EXPECT_EQ(pair_2rho(below[1].coords()), Rational(3));
}

TEST(NewtonPoint, DefectMatchesCentralizerRank) {
  std::mt19937_64 rng(17);
  for (const NewtonPoint& nu : random_newton_points(rng, 400)) {
    EXPECT_EQ(defect(nu), defect_oracle(nu)) << nu.to_string();
  }
}

TEST(NewtonPoint, DefectIsBreakpointCount) {
  // Every Newton point below a dominant mu with entries in [-2, 2], n <= 5.
  std::size_t checked = 0;
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> mu(static_cast<std::size_t>(n), 0);
    std::function<void(int, int, int)> rec = [&](int i, int hi, int sum) {
      if (i == n - 1) {
        const int last = -sum;
        if (last > hi || last < -2) return;
        mu[static_cast<std::size_t>(i)] = last;
        for (const NewtonPoint& nu : enumerate_newton_leq(mu)) {
          int breaks = 0;
          Rational s(0);
          for (int k = 0; k + 1 < n; ++k) {
            s += nu[k];
            if (s.denominator() != 1) ++breaks;
          }
          ASSERT_EQ(defect(nu), breaks) << nu.to_string();
          ++checked;
        }
        return;
      }
      for (int v = std::min(hi, 2); v >= -2; --v) {
        mu[static_cast<std::size_t>(i)] = v;
        rec(i + 1, v, sum + v);
      }
    };
    rec(0, 2, 0);
  }
  EXPECT_GT(checked, 100u);
}

TEST(NewtonPoint, BestIntegralApproxIsBelowAndMaximal) {
  std::mt19937_64 rng(19);
  for (const NewtonPoint& nu : random_newton_points(rng, 300)) {
    const std::vector<int> lam = best_integral_approx(nu);
    Rational s(0);
    int t = 0;
    for (int i = 0; i < nu.rank(); ++i) {
      s += nu[i];
      t += lam[static_cast<std::size_t>(i)];
      EXPECT_LE(Rational(t), s);
      EXPECT_LT(s, Rational(t + 1));
    }
    EXPECT_EQ(t, 0);
  }
}

TEST(NewtonPoint, EnumerationIsExactlyTheMazurInterval) {
  const std::vector<int> mu{2, 1, 0, -3};
  const auto below = enumerate_newton_leq(mu);
  for (const auto& nu : below) EXPECT_TRUE(mazur_leq(nu, mu));
  EXPECT_TRUE(std::is_sorted(below.begin(), below.end()));
  // Every dominant zero-sum vector with denominators dividing 1..4 and
  // small numerators that is a Newton point below mu appears.
  std::size_t found = 0;
  std::mt19937_64 rng(23);
  for (const NewtonPoint& nu : random_newton_points(rng, 2000)) {
    if (nu.rank() != 4 || !mazur_leq(nu, mu)) continue;
    ++found;
    EXPECT_TRUE(std::binary_search(below.begin(), below.end(), nu)) << nu.to_string();
  }
  EXPECT_GT(found, 0u);
}

TEST(NewtonPoint, MazurOrder) {
  const NewtonPoint a = NewtonPoint::parse("1/2,1/2,-1");
  const NewtonPoint b = NewtonPoint::parse("1,0,-1");
  const NewtonPoint c = NewtonPoint::parse("1,-1/2,-1/2");
  EXPECT_TRUE(mazur_leq(a, b));
  EXPECT_FALSE(mazur_leq(b, a));
  EXPECT_FALSE(mazur_leq(a, c));
  EXPECT_FALSE(mazur_leq(c, a));
}

TEST(Kostant, MatchesBruteForce) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 5);
    std::vector<int> v(static_cast<std::size_t>(r));
    for (int& c : v) c = static_cast<int>(rng() % 5);
    EXPECT_EQ(kostant_partition(v), BigInt(brute_kostant(v)));
  }
  const std::vector<int> neg{1, -1};
  EXPECT_EQ(kostant_partition(neg), BigInt(0));
}

TEST(Kostant, WeightMultiplicityIsPartitionOfDifference) {
  // P(alpha_1 + alpha_2) = 2 and P(0) = 1.
  const std::vector<int> mu{1, 0, -1};
  EXPECT_EQ(weight_multiplicity(mu, std::vector<int>{0, 0, 0}), BigInt(2));
  EXPECT_EQ(weight_multiplicity(mu, std::vector<int>{1, 0, -1}), BigInt(1));
  EXPECT_EQ(weight_multiplicity(mu, std::vector<int>{2, -1, -1}), BigInt(0));
}

}  // namespace
}  // namespace adlv
