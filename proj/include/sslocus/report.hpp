#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sslocus/decomposition.hpp"
#include "sslocus/errors.hpp"
#include "sslocus/hermitian_oracle.hpp"
#include "sslocus/model.hpp"

namespace sslocus {

enum class ReportKind { rz, shimura };

inline const char* to_string(ReportKind kind) noexcept {
  return kind == ReportKind::rz ? "rz" : "shimura";
}

/// Parsed spec file: the global data plus which report to produce.
/// "all-parities" runs the rz report at both j = 0 and j = 1; it exists
/// because for odd m the geometry depends only on j mod 2.
struct SpecFile {
  GlobalSpec spec;
  ReportKind kind = ReportKind::rz;
  PolarizationIndex j = 0;
  bool all_parities = false;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline const ordered_json& require_field(const ordered_json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw error(errc::parse_error, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

inline long long require_int(const ordered_json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw error(errc::parse_error, where + " must be an integer");
  }
  return value.get<long long>();
}

}  // namespace detail

inline SpecFile parse_spec_text(const std::string& text) {
  detail::ordered_json doc;
  try {
    doc = detail::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
  if (!doc.is_object()) throw error(errc::parse_error, "spec file must be a JSON object");

  SpecFile out;
  out.spec.p = detail::require_int(detail::require_field(doc, "p"), "\"p\"");

  const detail::ordered_json& report = detail::require_field(doc, "report");
  if (report == "rz") {
    out.kind = ReportKind::rz;
  } else if (report == "shimura") {
    out.kind = ReportKind::shimura;
  } else {
    throw error(errc::parse_error, "\"report\" must be \"rz\" or \"shimura\"");
  }

  const detail::ordered_json& places = detail::require_field(doc, "places");
  if (!places.is_array()) throw error(errc::parse_error, "\"places\" must be an array");
  for (std::size_t i = 0; i < places.size(); ++i) {
    const detail::ordered_json& entry = places[i];
    const std::string where = "places[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw error(errc::parse_error, where + " must be an object");
    const detail::ordered_json& splitting = detail::require_field(entry, "splitting");
    PlaceSpec place;
    if (splitting == "split") {
      place.splitting = SplittingType::split;
    } else if (splitting == "inert") {
      place.splitting = SplittingType::inert;
    } else {
      throw error(errc::parse_error, where + ".splitting must be \"split\" or \"inert\"");
    }
    const detail::ordered_json& signature = detail::require_field(entry, "signature");
    if (!signature.is_array() || signature.size() != 2) {
      throw error(errc::parse_error, where + ".signature must be a 2-element array [a, b]");
    }
    place.signature.a = static_cast<int>(detail::require_int(signature[0], where + ".signature[0]"));
    place.signature.b = static_cast<int>(detail::require_int(signature[1], where + ".signature[1]"));
    out.spec.places.push_back(place);
  }

  if (auto it = doc.find("j"); it != doc.end()) {
    if (it->is_string() && *it == "all-parities") {
      if (out.kind != ReportKind::rz) {
        throw error(errc::parse_error, "\"all-parities\" is only legal for report = \"rz\"");
      }
      out.all_parities = true;
    } else if (it->is_number_integer()) {
      out.j = it->get<long long>();
    } else {
      throw error(errc::parse_error, "\"j\" must be an integer or \"all-parities\"");
    }
  }
  return out;
}

inline SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, "cannot open spec file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

/// A fully evaluated describe report: inputs echoed plus one geometry per
/// requested polarization index.
struct Report {
  ReportKind kind = ReportKind::rz;
  long long p = 0;
  int m = 0;
  std::optional<PolarizationIndex> j;  // absent for shimura reports
  bool all_parities = false;
  std::vector<PlaceSpec> places;
  std::vector<std::pair<PolarizationIndex, GlobalGeometry>> geometries;
  std::vector<std::string> warnings;
};

inline Report build_report(const SpecFile& input) {
  Report report;
  report.kind = input.kind;
  report.p = input.spec.p;
  report.m = input.spec.m();
  report.places = input.spec.places;

  if (input.kind == ReportKind::shimura) {
    report.geometries.emplace_back(0, shimura_ss_geometry(input.spec));
  } else if (input.all_parities) {
    report.all_parities = true;
    report.geometries.emplace_back(0, rz_geometry(input.spec, 0));
    report.geometries.emplace_back(1, rz_geometry(input.spec, 1));
  } else {
    report.j = input.j;
    report.geometries.emplace_back(input.j, rz_geometry(input.spec, input.j));
  }

  if (input.kind == ReportKind::shimura) {
    report.warnings.push_back(
        "component and neighbor counts are omitted: the quotient by the arithmetic group "
        "can identify components and change incidence counts");
  } else {
    bool counted_factors = false;
    for (const auto& [j, geometry] : report.geometries) {
      if (geometry.status == GlobalStatus::nonempty &&
          (geometry.profile.curves > 0 || geometry.profile.lines > 0)) {
        counted_factors = true;
      }
    }
    if (counted_factors) {
      report.warnings.push_back(
          "components-per-point constants entering curve and line neighbor counts are "
          "table-only (checked via the double-counting identity; see the verify subcommand)");
    }
  }
  for (const PlaceSpec& place : report.places) {
    if (place.splitting == SplittingType::split && place.signature == SignaturePair{1, 1}) {
      report.warnings.push_back(
          "split (1,1) factors assumed nonempty for every polarization index "
          "(reduced GL2 moduli comparison)");
      break;
    }
  }
  return report;
}

namespace detail {

inline std::string count_text(const Count& count, long long p) {
  return count.value.str() + " = " + count.formula + " @ p=" + std::to_string(p);
}

inline ordered_json count_json(const Count& count) {
  ordered_json out;
  out["value"] = count.value.str();
  out["formula"] = count.formula;
  return out;
}

inline ordered_json geometry_json(const GlobalGeometry& geometry,
                                  const std::vector<PlaceSpec>& places, bool with_counts) {
  ordered_json out;
  if (geometry.status == GlobalStatus::empty) {
    out["status"] = "empty";
    ordered_json empties = ordered_json::array();
    for (std::size_t index : geometry.empty_factors) empties.push_back(index + 1);
    out["empty_factors"] = std::move(empties);
    return out;
  }

  out["status"] = "nonempty";
  out["dimension"] = geometry.dimension;
  {
    ordered_json profile;
    profile["curves"] = geometry.profile.curves;
    profile["surfaces"] = geometry.profile.surfaces;
    profile["lines"] = geometry.profile.lines;
    profile["zero_dimensional"] = geometry.profile.zero_dim_factors;
    out["profile"] = std::move(profile);
  }
  out["component_type"] = geometry.component_type();

  ordered_json factors = ordered_json::array();
  for (std::size_t i = 0; i < geometry.factors.size(); ++i) {
    const LocalGeometry& factor = geometry.factors[i];
    ordered_json entry;
    entry["place"] = i + 1;
    entry["splitting"] = to_string(places[i].splitting);
    entry["signature"] = {places[i].signature.a, places[i].signature.b};
    entry["variety"] = to_string(*factor.component_variety);
    entry["dimension"] = *factor.dimension;
    if (with_counts) {
      if (factor.points_per_component) {
        entry["points_per_component"] = count_json(*factor.points_per_component);
      }
      if (factor.components_per_point) {
        entry["components_per_point"] = count_json(*factor.components_per_point);
      }
      ordered_json neighbors;
      for (const auto& [relation, count] : factor.neighbor_counts) {
        if (relation == Relation::equal) continue;
        neighbors[to_string(relation)] = count_json(count);
      }
      if (!neighbors.is_null()) entry["neighbors"] = std::move(neighbors);
    }
    factors.push_back(std::move(entry));
  }
  out["factors"] = std::move(factors);

  ordered_json classes = ordered_json::array();
  for (const ClassCount& row : geometry.classes) {
    ordered_json entry;
    entry["r"] = row.cls.equal_curves;
    entry["s1"] = row.cls.equal_surfaces;
    entry["s2"] = row.cls.line_surfaces;
    entry["t"] = row.cls.equal_lines;
    entry["intersection_type"] = row.cls.type_string();
    if (with_counts && row.per_pattern) {
      entry["per_pattern_count"] = count_json(*row.per_pattern);
      entry["pattern_multiplicity"] = row.pattern_multiplicity->str();
    }
    classes.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  return out;
}

}  // namespace detail

inline std::string render_json(const Report& report) {
  detail::ordered_json doc;
  doc["report"] = to_string(report.kind);
  doc["p"] = report.p;
  doc["m"] = report.m;
  if (report.all_parities) {
    doc["j"] = "all-parities";
  } else if (report.j) {
    doc["j"] = *report.j;
  }
  {
    detail::ordered_json places = detail::ordered_json::array();
    for (const PlaceSpec& place : report.places) {
      detail::ordered_json entry;
      entry["splitting"] = to_string(place.splitting);
      entry["signature"] = {place.signature.a, place.signature.b};
      places.push_back(std::move(entry));
    }
    doc["places"] = std::move(places);
  }

  const bool with_counts = report.kind == ReportKind::rz;
  if (report.all_parities) {
    detail::ordered_json by_parity;
    by_parity["even"] = detail::geometry_json(report.geometries[0].second, report.places, with_counts);
    by_parity["odd"] = detail::geometry_json(report.geometries[1].second, report.places, with_counts);
    doc["geometry_by_parity"] = std::move(by_parity);
  } else {
    doc["geometry"] = detail::geometry_json(report.geometries[0].second, report.places, with_counts);
  }

  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

namespace detail {

struct TextStyle {
  bool color = false;
  std::string good(const std::string& text) const {
    return color ? "\033[32m" + text + "\033[0m" : text;
  }
  std::string bad(const std::string& text) const {
    return color ? "\033[31m" + text + "\033[0m" : text;
  }
};

inline void geometry_text(std::ostringstream& out, const GlobalGeometry& geometry,
                          const std::vector<PlaceSpec>& places, long long p, bool with_counts,
                          const TextStyle& style) {
  if (geometry.status == GlobalStatus::empty) {
    out << "  status: " << style.bad("empty") << "\n";
    out << "  empty factors:";
    for (std::size_t index : geometry.empty_factors) {
      out << " " << index + 1 << " (" << to_string(places[index].splitting) << " "
          << to_string(places[index].signature) << ")";
    }
    out << "\n";
    return;
  }

  out << "  status: " << style.good("nonempty") << "\n";
  out << "  dimension: " << geometry.dimension << "\n";
  out << "  profile: curves=" << geometry.profile.curves
      << " surfaces=" << geometry.profile.surfaces << " lines=" << geometry.profile.lines
      << " zero-dimensional=" << geometry.profile.zero_dim_factors << "\n";
  out << "  component type: " << geometry.component_type() << "\n";
  out << "  factors:\n";
  for (std::size_t i = 0; i < geometry.factors.size(); ++i) {
    const LocalGeometry& factor = geometry.factors[i];
    out << "    " << i + 1 << ": " << to_string(places[i].splitting) << " "
        << to_string(places[i].signature) << " -> " << to_string(*factor.component_variety)
        << " (dim " << *factor.dimension << ")\n";
    if (!with_counts) continue;
    if (factor.points_per_component) {
      out << "       points per component: " << count_text(*factor.points_per_component, p) << "\n";
    }
    if (factor.components_per_point) {
      out << "       components per point: " << count_text(*factor.components_per_point, p) << "\n";
    }
    for (const auto& [relation, count] : factor.neighbor_counts) {
      if (relation == Relation::equal) continue;
      out << "       " << to_string(relation) << "-neighbors: " << count_text(count, p) << "\n";
    }
  }
  out << "  intersection classes (r = equal curves, s1 = equal surfaces, s2 = surfaces "
         "meeting in a line, t = equal lines):\n";
  for (const ClassCount& row : geometry.classes) {
    out << "    (r,s1,s2,t)=(" << row.cls.equal_curves << "," << row.cls.equal_surfaces << ","
        << row.cls.line_surfaces << "," << row.cls.equal_lines << ")  type: " << row.cls.type_string();
    if (with_counts && row.per_pattern) {
      out << "  per-pattern: " << count_text(*row.per_pattern, p)
          << "  multiplicity: " << row.pattern_multiplicity->str();
    }
    out << "\n";
  }
}

}  // namespace detail

inline std::string render_text(const Report& report, bool color = false) {
  const detail::TextStyle style{color};
  std::ostringstream out;
  out << "report: " << to_string(report.kind) << "\n";
  out << "p: " << report.p << "\n";
  out << "m: " << report.m << "\n";
  if (report.all_parities) {
    out << "j: all-parities\n";
  } else if (report.j) {
    out << "j: " << *report.j << "\n";
  }
  out << "places:\n";
  for (std::size_t i = 0; i < report.places.size(); ++i) {
    out << "  " << i + 1 << ": " << to_string(report.places[i].splitting) << " "
        << to_string(report.places[i].signature) << "\n";
  }

  const bool with_counts = report.kind == ReportKind::rz;
  for (const auto& [j, geometry] : report.geometries) {
    out << "\n";
    if (report.kind == ReportKind::shimura) {
      out << "supersingular locus:\n";
    } else {
      out << "geometry at j = " << j << ":\n";
    }
    detail::geometry_text(out, geometry, report.places, report.p, with_counts, style);
  }

  if (!report.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const std::string& warning : report.warnings) out << "  - " << warning << "\n";
  }
  return out.str();
}

inline std::string render_verification_text(const VerificationReport& report, bool color = false) {
  const detail::TextStyle style{color};
  std::ostringstream out;
  out << "verification report for p = " << report.p << "\n";
  std::size_t passed = 0;
  for (const VerificationCheck& check : report.checks) {
    if (check.pass) ++passed;
    out << "  " << check.name << ": expected " << check.expected.formula << " = "
        << check.expected.value.str() << ", observed " << check.observed.str() << " ["
        << (check.pass ? style.good("pass") : style.bad("FAIL")) << "]";
    if (check.table_only) out << " (table-only)";
    out << "\n";
  }
  out << "checks: " << passed << "/" << report.checks.size() << " passed\n";
  out << "assumptions:\n";
  for (const std::string& assumption : report.assumptions) out << "  - " << assumption << "\n";
  out << "elapsed: " << report.elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace sslocus
