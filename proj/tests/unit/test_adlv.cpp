#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "adlv/adlv.hpp"
#include "adlv/enumeration.hpp"

namespace adlv {
namespace {

const char* kExample = "affine_Weyl([1,1,-2],[2,1])";

TEST(Table, WorkedExample) {
  TableComputer computer(3);
  const AdlvTable t = computer.table(parse_element(kExample, 3));
  EXPECT_EQ(t.listing(),
            "Newton point = [1/2, 1/2, -1], dim = 1, irr = 1\n"
            "Newton point = [0, 0, 0], dim = 3, irr = 1\n");
  const QueryResult basic = query(t, NewtonPoint::zero(3));
  ASSERT_TRUE(basic.dim.has_value());
  EXPECT_EQ(*basic.dim, 3);
  EXPECT_EQ(basic.irr, 1);
  const QueryResult outside = query(t, NewtonPoint::parse("1,0,-1"));
  EXPECT_FALSE(outside.dim.has_value());
  EXPECT_EQ(outside.irr, 0);
  EXPECT_EQ(generic_sigma_class(t).to_string(), "[1/2, 1/2, -1]");
}

TEST(Table, DominantTranslationsAreStraight) {
  // X_{t^mu}(b) is nonempty only for [b] = [t^mu], with dim 0 and one component.
  const std::vector<std::vector<int>> mus{{0, 0, 0}, {1, 0, -1}, {2, -1, -1}, {3, 1, -4}, {1, 1, 0, -2}};
  for (const auto& mu : mus) {
    TableComputer computer(static_cast<int>(mu.size()));
    const AdlvTable t = computer.table(AffineElement::translation(mu));
    ASSERT_EQ(t.size(), 1u);
    std::vector<Rational> c(mu.begin(), mu.end());
    EXPECT_EQ(t.entries()[0].first, NewtonPoint::make(c));
    EXPECT_EQ(t.entries()[0].second, (ComponentData{0, 1}));
  }
}

TEST(Table, SupportContainsOwnNewtonPointAndIsBoundedByGeneric) {
  const auto elements = enumerate_elements(3, 11);
  TableComputer computer(3);
  for (const auto& rec : elements) {
    const AdlvTable t = computer.table(rec.w);
    ASSERT_GT(t.size(), 0u);
    EXPECT_NE(t.find(newton_point(rec.w)), nullptr) << format_element(rec.w);
    const NewtonPoint top = generic_sigma_class(t);
    for (const auto& [nu, data] : t.entries()) {
      EXPECT_TRUE(mazur_leq(nu, top));
      EXPECT_GE(data.dim, 0);
      EXPECT_GE(data.irr, 1);
      // dim never exceeds the virtual dimension.
      EXPECT_LE(Rational(data.dim), virtual_dimension(rec.w, nu)) << format_element(rec.w) << ' ' << nu.to_string();
    }
  }
}

TEST(Table, ConjugateShiftsShareTables) {
  std::mt19937_64 rng(31);
  TableComputer computer(4);
  for (int trial = 0; trial < 60; ++trial) {
    AffineElement w = AffineElement::identity(4);
    for (int k = 0; k < 9; ++k) w = w.times_simple(static_cast<int>(rng() % 4));
    const AdlvTable t = computer.table(w);
    for (const ShiftNeighbor& nb : cyclic_shift_neighbors(w)) {
      if (nb.kind == ShiftKind::kEqualLength) EXPECT_EQ(computer.table(nb.sws), t);
    }
  }
}

TEST(Table, ShuffledTraversalIsDeterministic) {
  const auto elements = enumerate_elements(4, 9);
  TableComputer plain(4);
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    TableComputer shuffled(4, TableOptions{2'000'000, seed});
    for (std::size_t i = 0; i < elements.size(); i += 7) {
      EXPECT_EQ(shuffled.table(elements[i].w), plain.table(elements[i].w));
    }
  }
}

TEST(Table, ReductionTraceDropsLength) {
  TableComputer computer(3);
  const AffineElement w = parse_element("affine_Weyl([2,0,-2],[1,2,1])", 3);
  const auto trace = computer.reduction(w);
  if (trace) {
    EXPECT_EQ(affine_length(trace->lower), affine_length(trace->pivot) - 2);
    EXPECT_EQ(trace->upper, trace->pivot.times_simple(trace->s));
    EXPECT_EQ(trace->lower, trace->pivot.conjugate_by_simple(trace->s));
  }
  EXPECT_FALSE(computer.reduction(AffineElement::identity(3)).has_value());
}

TEST(Table, SaveLoadRoundTrip) {
  const auto elements = enumerate_elements(3, 9);
  TableComputer a(3);
  for (const auto& rec : elements) a.table(rec.w);
  std::stringstream buf;
  a.save(buf);
  TableComputer b(3);
  EXPECT_EQ(b.load(buf), a.cache_size());
  for (const auto& rec : elements) EXPECT_EQ(b.table(rec.w), a.table(rec.w));
  a.clear();
  EXPECT_EQ(a.cache_size(), 0u);
}

TEST(Table, BudgetIsEnforced) {
  TableComputer computer(4, TableOptions{1, std::nullopt});
  const AffineElement w = parse_element("affine_Weyl([2,1,-1,-2],[1,2,3,1])", 4);
  EXPECT_THROW(computer.table(w), BudgetExceeded);
}

TEST(Table, CordialityAgreesWithDelta) {
  const auto elements = enumerate_elements(3, 10);
  TableComputer computer(3);
  for (const auto& rec : elements) {
    const Cordiality c = cordiality(rec.w, computer.table(rec.w));
    EXPECT_EQ(c.cordial, c.max_delta == 0);
    EXPECT_GE(c.max_delta, 0);
  }
}

}  // namespace
}  // namespace adlv
