#include "sslocus/local_geometry.hpp"

#include <vector>

#include <gtest/gtest.h>

namespace sslocus {
namespace {

// Closed-form emptiness rules, restated independently of the table:
// split a != b always empty; inert (0,m) empty iff m*j odd; inert (1,2)
// empty iff j odd; everything else nonempty.
bool expected_empty(SplittingType splitting, SignaturePair sig, PolarizationIndex j) {
  if (splitting == SplittingType::split) return sig.a != sig.b;
  if (sig.a == 0) return (sig.b * j) % 2 != 0;
  if (sig == SignaturePair{1, 2}) return j % 2 != 0;
  return false;
}

const std::vector<SignaturePair>& all_signatures() {
  static const std::vector<SignaturePair> sigs{{0, 1}, {0, 2}, {1, 1}, {0, 3},
                                               {1, 2}, {0, 4}, {1, 3}, {2, 2}};
  return sigs;
}

TEST(QuasiIsogenyHeight, Examples) {
  EXPECT_EQ(quasi_isogeny_height(4, 3), 12);
  EXPECT_EQ(quasi_isogeny_height(1, 0), 0);
  EXPECT_EQ(quasi_isogeny_height(3, -2), -6);
}

TEST(LocalFactorGeometry, EmptinessMatrix) {
  for (SplittingType splitting : {SplittingType::split, SplittingType::inert}) {
    for (SignaturePair sig : all_signatures()) {
      for (PolarizationIndex j : {-3, -2, -1, 0, 1, 2, 3}) {
        const LocalGeometry geom = local_factor_geometry(splitting, sig, 3, j);
        EXPECT_EQ(geom.is_empty(), expected_empty(splitting, sig, j))
            << to_string(splitting) << " " << to_string(sig) << " j=" << j;
      }
    }
  }
}

TEST(LocalFactorGeometry, SplitUnbalancedEmptyForAllPAndJ) {
  for (long long p : {3, 5, 7, 11, 13}) {
    for (PolarizationIndex j : {0, 1}) {
      EXPECT_TRUE(local_factor_geometry(SplittingType::split, {1, 2}, p, j).is_empty());
      EXPECT_TRUE(local_factor_geometry(SplittingType::split, {0, 4}, p, j).is_empty());
    }
  }
}

TEST(LocalFactorGeometry, ExampleSplit12IsEmpty) {
  EXPECT_TRUE(local_factor_geometry(SplittingType::split, {1, 2}, 5, 0).is_empty());
}

TEST(LocalFactorGeometry, ExampleInert03OddJIsEmpty) {
  EXPECT_TRUE(local_factor_geometry(SplittingType::inert, {0, 3}, 3, 1).is_empty());
  EXPECT_FALSE(local_factor_geometry(SplittingType::inert, {0, 3}, 3, 2).is_empty());
}

TEST(LocalFactorGeometry, ZeroDimensionalRows) {
  for (auto [splitting, sig] : {std::pair{SplittingType::split, SignaturePair{1, 1}},
                                std::pair{SplittingType::inert, SignaturePair{1, 1}},
                                std::pair{SplittingType::inert, SignaturePair{0, 2}},
                                std::pair{SplittingType::inert, SignaturePair{0, 4}}}) {
    const LocalGeometry geom = local_factor_geometry(splitting, sig, 7, 1);
    EXPECT_EQ(geom.status, LocalStatus::zero_dimensional);
    EXPECT_EQ(geom.dimension, 0);
    EXPECT_EQ(geom.component_variety, ComponentVariety::point);
    EXPECT_FALSE(geom.points_per_component.has_value());
    EXPECT_FALSE(geom.components_per_point.has_value());
    ASSERT_EQ(geom.neighbor_counts.size(), 1u);
    EXPECT_EQ(geom.neighbor_counts.at(Relation::equal).value, 1);
  }
}

TEST(LocalFactorGeometry, Split22Row) {
  const LocalGeometry geom = local_factor_geometry(SplittingType::split, {2, 2}, 3, 7);
  EXPECT_EQ(geom.status, LocalStatus::positive_dimensional);
  EXPECT_EQ(geom.dimension, 1);
  EXPECT_EQ(geom.component_variety, ComponentVariety::projective_line);
  EXPECT_EQ(geom.points_per_component->value, 10);
  EXPECT_EQ(geom.points_per_component->formula, "p^2+1");
  EXPECT_EQ(geom.components_per_point->value, 10);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).value, 90);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).formula, "p^2(p^2+1)");
  EXPECT_EQ(geom.neighbor_counts.at(Relation::equal).value, 1);
  EXPECT_EQ(geom.neighbor_counts.count(Relation::line_intersection), 0u);
}

TEST(LocalFactorGeometry, ExampleInert12AtP3) {
  const LocalGeometry geom = local_factor_geometry(SplittingType::inert, {1, 2}, 3, 2);
  EXPECT_EQ(geom.status, LocalStatus::positive_dimensional);
  EXPECT_EQ(geom.dimension, 1);
  EXPECT_EQ(geom.component_variety, ComponentVariety::fermat_curve);
  EXPECT_EQ(geom.points_per_component->value, 28);
  EXPECT_EQ(geom.components_per_point->value, 4);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).value, 84);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).formula, "p(p^3+1)");
}

TEST(LocalFactorGeometry, Inert13AtP3) {
  const LocalGeometry geom = local_factor_geometry(SplittingType::inert, {1, 3}, 3, 1);
  EXPECT_EQ(geom.component_variety, ComponentVariety::fermat_curve);
  EXPECT_EQ(geom.points_per_component->value, 28);
  EXPECT_EQ(geom.components_per_point->value, 28);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).value, 756);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).formula, "p^3(p^3+1)");
}

TEST(LocalFactorGeometry, ExampleInert22AtP3) {
  const LocalGeometry geom = local_factor_geometry(SplittingType::inert, {2, 2}, 3, 5);
  EXPECT_EQ(geom.status, LocalStatus::positive_dimensional);
  EXPECT_EQ(geom.dimension, 2);
  EXPECT_EQ(geom.component_variety, ComponentVariety::fermat_surface);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).value, 280);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::line_intersection).value, 112);
  EXPECT_EQ(geom.neighbor_counts.at(Relation::line_intersection).formula, "(p^3+1)(p+1)");
  // The underlying results state only the neighbor counts for this row.
  EXPECT_FALSE(geom.points_per_component.has_value());
  EXPECT_FALSE(geom.components_per_point.has_value());
}

TEST(LocalFactorGeometry, DoubleCountingIdentity) {
  for (long long p : {3, 5, 7, 11, 13}) {
    for (const LocalRule& rule : local_rules()) {
      const LocalGeometry geom = local_factor_geometry(rule.splitting, rule.signature, p, 0);
      if (geom.is_empty() || !geom.points_per_component || !geom.components_per_point) continue;
      EXPECT_EQ(geom.neighbor_counts.at(Relation::point_intersection).value,
                geom.points_per_component->value * (geom.components_per_point->value - 1))
          << to_string(rule.splitting) << " " << to_string(rule.signature) << " p=" << p;
    }
  }
}

TEST(LocalFactorGeometry, ExactCountsAtLargePrimes) {
  for (long long p : {999983LL, 1000003LL}) {
    ASSERT_TRUE(is_odd_prime(p));
    const bigint bp = p;
    const bigint p3 = bp * bp * bp;
    const LocalGeometry curve = local_factor_geometry(SplittingType::inert, {1, 3}, p, 0);
    EXPECT_EQ(curve.neighbor_counts.at(Relation::point_intersection).value, p3 * (p3 + 1));
    EXPECT_GT(curve.neighbor_counts.at(Relation::point_intersection).value, ipow(bigint(2), 64));
    const LocalGeometry surface = local_factor_geometry(SplittingType::inert, {2, 2}, p, 0);
    EXPECT_EQ(surface.neighbor_counts.at(Relation::line_intersection).value, (p3 + 1) * (bp + 1));
  }
}

TEST(LocalFactorGeometry, StatusFieldInvariants) {
  for (const LocalRule& rule : local_rules()) {
    for (PolarizationIndex j : {0, 1}) {
      const LocalGeometry geom = local_factor_geometry(rule.splitting, rule.signature, 5, j);
      switch (geom.status) {
        case LocalStatus::empty:
          EXPECT_FALSE(geom.dimension.has_value());
          EXPECT_FALSE(geom.component_variety.has_value());
          EXPECT_FALSE(geom.points_per_component.has_value());
          EXPECT_FALSE(geom.components_per_point.has_value());
          EXPECT_TRUE(geom.neighbor_counts.empty());
          break;
        case LocalStatus::zero_dimensional:
          EXPECT_EQ(geom.dimension, 0);
          EXPECT_EQ(geom.component_variety, ComponentVariety::point);
          break;
        case LocalStatus::positive_dimensional:
          ASSERT_TRUE(geom.dimension.has_value());
          EXPECT_GE(*geom.dimension, 1);
          EXPECT_LE(*geom.dimension, 2);
          EXPECT_NE(geom.component_variety, ComponentVariety::point);
          break;
      }
      if (!geom.is_empty()) {
        EXPECT_EQ(geom.neighbor_counts.at(Relation::equal).value, 1);
      }
    }
  }
}

TEST(LocalFactorGeometry, AllCountsPositive) {
  for (long long p : {3, 13}) {
    for (const LocalRule& rule : local_rules()) {
      const LocalGeometry geom = local_factor_geometry(rule.splitting, rule.signature, p, 0);
      if (geom.points_per_component) {
        EXPECT_GT(geom.points_per_component->value, 0);
      }
      if (geom.components_per_point) {
        EXPECT_GT(geom.components_per_point->value, 0);
      }
      for (const auto& [relation, count] : geom.neighbor_counts) EXPECT_GT(count.value, 0);
    }
  }
}

TEST(LocalFactorGeometry, UnsupportedSignatureThrows) {
  try {
    local_factor_geometry(SplittingType::inert, {2, 3}, 3, 0);
    FAIL() << "expected an error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unsupported_signature);
  }
}

TEST(LocalFactorGeometry, UnnormalizedSignatureThrows) {
  try {
    local_factor_geometry(SplittingType::inert, {3, 1}, 3, 0);
    FAIL() << "expected an error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::unnormalized_signature);
  }
}

TEST(LocalRules, CoversAllSixteenCases) {
  EXPECT_EQ(local_rules().size(), 16u);
  for (SplittingType splitting : {SplittingType::split, SplittingType::inert}) {
    for (SignaturePair sig : all_signatures()) {
      EXPECT_NO_THROW(local_rule(splitting, sig));
    }
  }
}

}  // namespace
}  // namespace sslocus
