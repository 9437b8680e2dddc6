#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sslocus/bigint.hpp"
#include "sslocus/errors.hpp"
#include "sslocus/local_geometry.hpp"
#include "sslocus/model.hpp"

namespace sslocus {

/// Tally of the factor varieties of an irreducible component of the product
/// geometry. Its dimension is curves + 2*surfaces + lines.
struct ComponentProfile {
  int curves = 0;
  int surfaces = 0;
  int lines = 0;
  int zero_dim_factors = 0;

  int dimension() const noexcept { return curves + 2 * surfaces + lines; }
  int total() const noexcept { return curves + surfaces + lines + zero_dim_factors; }

  friend bool operator==(const ComponentProfile&, const ComponentProfile&) = default;
};

/// Per-coordinate relation assignment between two irreducible components of
/// the product: one Relation per place, with equal forced on
/// zero-dimensional coordinates.
using IntersectionPattern = std::vector<Relation>;

/// Summary of a pattern up to reordering within each factor kind. The
/// intersection it describes is C^r x S^s1 x (P1)^(s2+t) where r counts
/// equal curve coordinates, s1 equal surfaces, s2 surfaces meeting in a
/// line, and t equal lines.
struct IntersectionClass {
  int equal_curves = 0;     // r
  int equal_surfaces = 0;   // s1
  int line_surfaces = 0;    // s2
  int equal_lines = 0;      // t

  std::string type_string() const {
    std::string out;
    auto append = [&out](const char* symbol, int exponent) {
      if (exponent == 0) return;
      if (!out.empty()) out += " x ";
      out += symbol;
      out += "^";
      out += std::to_string(exponent);
    };
    append("C", equal_curves);
    append("S", equal_surfaces);
    append("P1", line_surfaces + equal_lines);
    return out.empty() ? "point" : out;
  }

  friend bool operator==(const IntersectionClass&, const IntersectionClass&) = default;
};

enum class GlobalStatus { empty, nonempty };
enum class ReportLevel { rz_space, shimura_ss };

/// One row of the class table: the class, the count of components meeting a
/// fixed one in a given pattern of that class, and the number of patterns in
/// the class. Counts are absent in Shimura-level reports.
struct ClassCount {
  IntersectionClass cls;
  std::optional<Count> per_pattern;
  std::optional<bigint> pattern_multiplicity;

  friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

/// Geometry descriptor of the product space (at a fixed polarization index)
/// or of the supersingular locus it uniformizes.
struct GlobalGeometry {
  GlobalStatus status = GlobalStatus::empty;
  ReportLevel report_level = ReportLevel::rz_space;
  int dimension = 0;
  ComponentProfile profile;
  std::vector<LocalGeometry> factors;        // one per place, in input order
  std::vector<std::size_t> empty_factors;    // indices of empty factors
  std::vector<ClassCount> classes;

  std::string component_type() const {
    std::string out;
    auto append = [&out](const char* symbol, int exponent) {
      if (exponent == 0) return;
      if (!out.empty()) out += " x ";
      out += symbol;
      out += "^";
      out += std::to_string(exponent);
    };
    append("C", profile.curves);
    append("S", profile.surfaces);
    append("P1", profile.lines);
    return out.empty() ? "point" : out;
  }

  friend bool operator==(const GlobalGeometry&, const GlobalGeometry&) = default;
};

namespace detail {

inline void require_valid(const GlobalSpec& spec) {
  ValidationResult validation = validate_spec(spec);
  if (validation.ok()) return;
  std::string joined;
  for (const Violation& v : validation.violations) {
    if (!joined.empty()) joined += "; ";
    joined += errc_name(v.code);
    joined += ": ";
    joined += v.message;
  }
  throw error(errc::invalid_spec, joined);
}

/// Product of symbolic counts with exponents, rendered as e.g.
/// "p^3(p^3+1) * ((p^3+1)(p+1))^2"; the empty product is "1".
class CountProduct {
 public:
  void multiply(const Count& factor, int exponent) {
    if (exponent == 0) return;
    value_ *= ipow(factor.value, static_cast<unsigned>(exponent));
    for (auto& [formula, exp] : formula_factors_) {
      if (formula == factor.formula) {
        exp += exponent;
        return;
      }
    }
    formula_factors_.emplace_back(factor.formula, exponent);
  }

  Count result() const {
    std::string formula;
    for (const auto& [text, exp] : formula_factors_) {
      if (!formula.empty()) formula += " * ";
      if (exp == 1) {
        formula += text;
      } else {
        formula += "(" + text + ")^" + std::to_string(exp);
      }
    }
    if (formula.empty()) formula = "1";
    return Count{value_, formula};
  }

 private:
  bigint value_ = 1;
  std::vector<std::pair<std::string, int>> formula_factors_;
};

inline const Count& neighbor_count(const LocalGeometry& factor, Relation relation,
                                   std::size_t coordinate) {
  auto it = factor.neighbor_counts.find(relation);
  if (it == factor.neighbor_counts.end()) {
    throw error(errc::inconsistent_pattern,
                "coordinate " + std::to_string(coordinate + 1) + " (" +
                    std::string(factor.component_variety
                                    ? to_string(*factor.component_variety)
                                    : "empty") +
                    ") admits no " + to_string(relation) + " intersection");
  }
  return it->second;
}

}  // namespace detail

/// Geometry of the product space for one polarization index: empty when any
/// factor is empty, otherwise equi-dimensional with every component a
/// product of the factor varieties.
inline GlobalGeometry rz_geometry(const GlobalSpec& spec, PolarizationIndex j) {
  detail::require_valid(spec);

  GlobalGeometry geom;
  geom.report_level = ReportLevel::rz_space;
  geom.factors.reserve(spec.places.size());
  for (std::size_t i = 0; i < spec.places.size(); ++i) {
    const PlaceSpec& place = spec.places[i];
    geom.factors.push_back(local_factor_geometry(place.splitting, place.signature, spec.p, j));
    if (geom.factors.back().is_empty()) geom.empty_factors.push_back(i);
  }
  if (!geom.empty_factors.empty()) {
    geom.status = GlobalStatus::empty;
    return geom;
  }

  geom.status = GlobalStatus::nonempty;
  const LocalGeometry* curve_row = nullptr;
  const LocalGeometry* surface_row = nullptr;
  const LocalGeometry* line_row = nullptr;
  for (const LocalGeometry& factor : geom.factors) {
    geom.dimension += *factor.dimension;
    switch (*factor.component_variety) {
      case ComponentVariety::point: ++geom.profile.zero_dim_factors; break;
      case ComponentVariety::fermat_curve:
        ++geom.profile.curves;
        curve_row = &factor;
        break;
      case ComponentVariety::fermat_surface:
        ++geom.profile.surfaces;
        surface_row = &factor;
        break;
      case ComponentVariety::projective_line:
        ++geom.profile.lines;
        line_row = &factor;
        break;
    }
  }

  const ComponentProfile& prof = geom.profile;
  for (int r = 0; r <= prof.curves; ++r) {
    for (int s1 = 0; s1 <= prof.surfaces; ++s1) {
      for (int s2 = 0; s1 + s2 <= prof.surfaces; ++s2) {
        for (int t = 0; t <= prof.lines; ++t) {
          detail::CountProduct product;
          if (curve_row != nullptr) {
            product.multiply(detail::neighbor_count(*curve_row, Relation::point_intersection, 0),
                             prof.curves - r);
          }
          if (surface_row != nullptr) {
            product.multiply(
                detail::neighbor_count(*surface_row, Relation::point_intersection, 0),
                prof.surfaces - s1 - s2);
            product.multiply(detail::neighbor_count(*surface_row, Relation::line_intersection, 0),
                             s2);
          }
          if (line_row != nullptr) {
            product.multiply(detail::neighbor_count(*line_row, Relation::point_intersection, 0),
                             prof.lines - t);
          }
          ClassCount row;
          row.cls = IntersectionClass{r, s1, s2, t};
          row.per_pattern = product.result();
          row.pattern_multiplicity =
              binomial(static_cast<unsigned>(prof.curves), static_cast<unsigned>(r)) *
              trinomial(static_cast<unsigned>(prof.surfaces), static_cast<unsigned>(s1),
                        static_cast<unsigned>(s2)) *
              binomial(static_cast<unsigned>(prof.lines), static_cast<unsigned>(t));
          geom.classes.push_back(std::move(row));
        }
      }
    }
  }
  return geom;
}

/// Number of irreducible components X' meeting a fixed component X in the
/// given per-coordinate pattern: the product, over coordinates, of that
/// coordinate's neighbor count for its relation (equal contributes 1).
inline Count neighbor_count_per_pattern(const GlobalSpec& spec, PolarizationIndex j,
                                        const IntersectionPattern& pattern) {
  GlobalGeometry geom = rz_geometry(spec, j);
  if (geom.status == GlobalStatus::empty) {
    throw error(errc::inconsistent_pattern, "the geometry is empty at j = " + std::to_string(j));
  }
  if (pattern.size() != geom.factors.size()) {
    throw error(errc::inconsistent_pattern,
                "pattern has " + std::to_string(pattern.size()) + " coordinates, spec has " +
                    std::to_string(geom.factors.size()) + " places");
  }
  detail::CountProduct product;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == Relation::equal) continue;
    const LocalGeometry& factor = geom.factors[i];
    if (factor.status == LocalStatus::zero_dimensional) {
      throw error(errc::inconsistent_pattern,
                  "coordinate " + std::to_string(i + 1) +
                      " is zero-dimensional; distinct points are disjoint, so only "
                      "the equal relation is allowed there");
    }
    product.multiply(detail::neighbor_count(factor, pattern[i], i), 1);
  }
  return product.result();
}

/// Per-pattern count and pattern multiplicity for a whole intersection
/// class. The per-pattern count is well defined because all coordinates of
/// one factor kind share a descriptor row; the multiplicity counts the
/// relation patterns whose summary is this class.
inline std::pair<Count, bigint> neighbor_count_per_class(const GlobalSpec& spec,
                                                         PolarizationIndex j,
                                                         const IntersectionClass& cls) {
  GlobalGeometry geom = rz_geometry(spec, j);
  if (geom.status == GlobalStatus::empty) {
    throw error(errc::invalid_class, "the geometry is empty at j = " + std::to_string(j));
  }
  const ComponentProfile& prof = geom.profile;
  const bool in_range = cls.equal_curves >= 0 && cls.equal_surfaces >= 0 &&
                        cls.line_surfaces >= 0 && cls.equal_lines >= 0 &&
                        cls.equal_curves <= prof.curves &&
                        cls.equal_surfaces + cls.line_surfaces <= prof.surfaces &&
                        cls.equal_lines <= prof.lines;
  if (!in_range) {
    throw error(errc::invalid_class,
                "class (r,s1,s2,t)=(" + std::to_string(cls.equal_curves) + "," +
                    std::to_string(cls.equal_surfaces) + "," + std::to_string(cls.line_surfaces) +
                    "," + std::to_string(cls.equal_lines) + ") is out of range for profile (d,e,f)=(" +
                    std::to_string(prof.curves) + "," + std::to_string(prof.surfaces) + "," +
                    std::to_string(prof.lines) + ")");
  }
  for (const ClassCount& row : geom.classes) {
    if (row.cls == cls) return {*row.per_pattern, *row.pattern_multiplicity};
  }
  throw error(errc::invalid_class, "class not enumerated");  // unreachable for in-range classes
}

/// Shimura-level descriptor: same local factors and class list as the
/// product geometry at an even polarization index, with all counts omitted
/// because the quotient by the arithmetic group can identify components.
inline GlobalGeometry shimura_ss_geometry(const GlobalSpec& spec) {
  // j = 0 realizes the nonempty parity whenever any parity is nonempty:
  // the only factors empty at j = 0 are the split ones with a != b, and
  // those are empty for every j.
  GlobalGeometry geom = rz_geometry(spec, 0);
  geom.report_level = ReportLevel::shimura_ss;
  for (ClassCount& row : geom.classes) {
    row.per_pattern.reset();
    row.pattern_multiplicity.reset();
  }
  return geom;
}

}  // namespace sslocus
