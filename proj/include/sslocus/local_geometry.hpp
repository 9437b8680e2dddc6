#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "sslocus/bigint.hpp"
#include "sslocus/errors.hpp"
#include "sslocus/model.hpp"

namespace sslocus {

/// Isomorphism type of an irreducible component of one local factor.
enum class ComponentVariety { point, projective_line, fermat_curve, fermat_surface };

inline const char* to_string(ComponentVariety v) noexcept {
  switch (v) {
    case ComponentVariety::point: return "point";
    case ComponentVariety::projective_line: return "projective line";
    case ComponentVariety::fermat_curve: return "fermat curve";
    case ComponentVariety::fermat_surface: return "fermat surface";
  }
  return "?";
}

/// How two irreducible components of one local factor meet. Line
/// intersections occur only on the inert (2,2) factor.
enum class Relation { equal, point_intersection, line_intersection };

inline const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::point_intersection: return "point";
    case Relation::line_intersection: return "line";
  }
  return "?";
}

/// The incidence constants that appear in the descriptor table, as symbolic
/// expressions in p. Keeping them symbolic lets reports show both the
/// formula and its value, and lets the verification oracle diff against the
/// very same rows the descriptors are built from.
enum class CountFormula {
  one,
  p_plus_1,
  p2_plus_1,
  p3_plus_1,
  p_times_p3_plus_1,
  p3_times_p3_plus_1,
  p2_times_p2_plus_1,
  p3_plus_1_times_p2_plus_1,
  p3_plus_1_times_p_plus_1,
};

inline const char* formula_text(CountFormula f) noexcept {
  switch (f) {
    case CountFormula::one: return "1";
    case CountFormula::p_plus_1: return "p+1";
    case CountFormula::p2_plus_1: return "p^2+1";
    case CountFormula::p3_plus_1: return "p^3+1";
    case CountFormula::p_times_p3_plus_1: return "p(p^3+1)";
    case CountFormula::p3_times_p3_plus_1: return "p^3(p^3+1)";
    case CountFormula::p2_times_p2_plus_1: return "p^2(p^2+1)";
    case CountFormula::p3_plus_1_times_p2_plus_1: return "(p^3+1)(p^2+1)";
    case CountFormula::p3_plus_1_times_p_plus_1: return "(p^3+1)(p+1)";
  }
  return "?";
}

inline bigint formula_value(CountFormula f, long long p) {
  const bigint bp = p;
  const bigint p2 = bp * bp;
  const bigint p3 = p2 * bp;
  switch (f) {
    case CountFormula::one: return 1;
    case CountFormula::p_plus_1: return bp + 1;
    case CountFormula::p2_plus_1: return p2 + 1;
    case CountFormula::p3_plus_1: return p3 + 1;
    case CountFormula::p_times_p3_plus_1: return bp * (p3 + 1);
    case CountFormula::p3_times_p3_plus_1: return p3 * (p3 + 1);
    case CountFormula::p2_times_p2_plus_1: return p2 * (p2 + 1);
    case CountFormula::p3_plus_1_times_p2_plus_1: return (p3 + 1) * (p2 + 1);
    case CountFormula::p3_plus_1_times_p_plus_1: return (p3 + 1) * (bp + 1);
  }
  return 0;
}

/// An exact count together with the symbolic expression it was evaluated
/// from, for auditable reporting.
struct Count {
  bigint value;
  std::string formula;

  friend bool operator==(const Count& x, const Count& y) {
    return x.value == y.value && x.formula == y.formula;
  }
};

inline Count make_count(CountFormula f, long long p) {
  return Count{formula_value(f, p), formula_text(f)};
}

enum class LocalStatus { empty, zero_dimensional, positive_dimensional };

/// Geometry descriptor of one local factor at a fixed polarization index.
/// Fields that the underlying results do not state are absent rather than
/// guessed; in particular the inert (2,2) factor carries neighbor counts
/// but no points-per-component or components-per-point.
struct LocalGeometry {
  LocalStatus status = LocalStatus::empty;
  std::optional<int> dimension;
  std::optional<ComponentVariety> component_variety;
  std::optional<Count> points_per_component;
  std::optional<Count> components_per_point;
  std::map<Relation, Count> neighbor_counts;

  bool is_empty() const noexcept { return status == LocalStatus::empty; }

  friend bool operator==(const LocalGeometry&, const LocalGeometry&) = default;
};

/// When a factor's piece at polarization index j is empty.
enum class EmptinessRule { never, always, odd_j, odd_mj };

/// One declarative row of the descriptor table.
struct LocalRule {
  SplittingType splitting;
  SignaturePair signature;
  EmptinessRule emptiness;
  int dimension;  // of the nonempty piece
  ComponentVariety variety;
  std::optional<CountFormula> points_per_component;
  std::optional<CountFormula> components_per_point;
  std::optional<CountFormula> point_neighbors;
  std::optional<CountFormula> line_neighbors;
};

/// The full table for m <= 4, one row per (splitting, normalized signature).
inline std::span<const LocalRule> local_rules() {
  using CF = CountFormula;
  using enum SplittingType;
  using enum ComponentVariety;
  using enum EmptinessRule;
  static const LocalRule rows[] = {
      // split places: empty unless the signature is balanced
      {split, {0, 1}, always, 0, point, {}, {}, {}, {}},
      {split, {0, 2}, always, 0, point, {}, {}, {}, {}},
      {split, {1, 1}, never, 0, point, {}, {}, {}, {}},
      {split, {0, 3}, always, 0, point, {}, {}, {}, {}},
      {split, {1, 2}, always, 0, point, {}, {}, {}, {}},
      {split, {0, 4}, always, 0, point, {}, {}, {}, {}},
      {split, {1, 3}, always, 0, point, {}, {}, {}, {}},
      {split, {2, 2}, never, 1, projective_line, CF::p2_plus_1, CF::p2_plus_1,
       CF::p2_times_p2_plus_1, {}},
      // inert places
      {inert, {0, 1}, odd_mj, 0, point, {}, {}, {}, {}},
      {inert, {0, 2}, odd_mj, 0, point, {}, {}, {}, {}},
      {inert, {1, 1}, never, 0, point, {}, {}, {}, {}},
      {inert, {0, 3}, odd_mj, 0, point, {}, {}, {}, {}},
      {inert, {1, 2}, odd_j, 1, fermat_curve, CF::p3_plus_1, CF::p_plus_1,
       CF::p_times_p3_plus_1, {}},
      {inert, {0, 4}, odd_mj, 0, point, {}, {}, {}, {}},
      {inert, {1, 3}, never, 1, fermat_curve, CF::p3_plus_1, CF::p3_plus_1,
       CF::p3_times_p3_plus_1, {}},
      {inert, {2, 2}, never, 2, fermat_surface, {}, {}, CF::p3_plus_1_times_p2_plus_1,
       CF::p3_plus_1_times_p_plus_1},
  };
  return rows;
}

inline const LocalRule& local_rule(SplittingType splitting, SignaturePair sig) {
  if (!sig.is_normalized()) {
    throw error(errc::unnormalized_signature,
                "signature " + to_string(sig) + " must satisfy 0 <= a <= b");
  }
  for (const LocalRule& rule : local_rules()) {
    if (rule.splitting == splitting && rule.signature == sig) return rule;
  }
  throw error(errc::unsupported_signature, "no descriptor for " +
                                               std::string(to_string(splitting)) + " " +
                                               to_string(sig) + " (need 1 <= a+b <= 4)");
}

inline bool rule_empty_at(const LocalRule& rule, PolarizationIndex j) {
  switch (rule.emptiness) {
    case EmptinessRule::never: return false;
    case EmptinessRule::always: return true;
    case EmptinessRule::odd_j: return j % 2 != 0;
    case EmptinessRule::odd_mj: return (rule.signature.sum() * j) % 2 != 0;
  }
  return false;
}

/// Instantiate the table row for one local factor at (p, j).
inline LocalGeometry local_factor_geometry(SplittingType splitting, SignaturePair sig,
                                           long long p, PolarizationIndex j) {
  const LocalRule& rule = local_rule(splitting, sig);
  LocalGeometry geom;
  if (rule_empty_at(rule, j)) return geom;

  geom.status = rule.dimension == 0 ? LocalStatus::zero_dimensional
                                    : LocalStatus::positive_dimensional;
  geom.dimension = rule.dimension;
  geom.component_variety = rule.variety;
  if (rule.points_per_component) geom.points_per_component = make_count(*rule.points_per_component, p);
  if (rule.components_per_point) geom.components_per_point = make_count(*rule.components_per_point, p);
  geom.neighbor_counts.emplace(Relation::equal, make_count(CountFormula::one, p));
  if (rule.point_neighbors) {
    geom.neighbor_counts.emplace(Relation::point_intersection, make_count(*rule.point_neighbors, p));
  }
  if (rule.line_neighbors) {
    geom.neighbor_counts.emplace(Relation::line_intersection, make_count(*rule.line_neighbors, p));
  }
  return geom;
}

/// Height of a quasi-isogeny in terms of the polarization index: m * j.
inline long long quasi_isogeny_height(int m, PolarizationIndex j) noexcept {
  return static_cast<long long>(m) * j;
}

}  // namespace sslocus
