#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sslocus/bigint.hpp"
#include "sslocus/errors.hpp"
#include "sslocus/local_geometry.hpp"

namespace sslocus {

/// Element a + b*w of GF(p^2), where w^2 is the least quadratic nonresidue
/// mod p. Coordinates are reduced mod p.
struct Fq2Elem {
  std::uint32_t re = 0;
  std::uint32_t im = 0;

  bool is_zero() const noexcept { return re == 0 && im == 0; }
  friend bool operator==(const Fq2Elem&, const Fq2Elem&) = default;
};

namespace detail {

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1;
  base %= mod;
  while (exp != 0) {
    if (exp & 1u) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1u;
  }
  return result;
}

}  // namespace detail

/// GF(p^2) as the prime field with a square root of the least quadratic
/// nonresidue adjoined. Conjugation (a,b) -> (a,-b) agrees with the
/// Frobenius x -> x^p, and the norm x * conj(x) lands in the prime field.
class Fq2 {
 public:
  explicit Fq2(long long p) {
    if (!is_odd_prime(p)) {
      throw error(errc::not_an_odd_prime, "cannot build GF(p^2) for p = " + std::to_string(p));
    }
    p_ = static_cast<std::uint64_t>(p);
    nu_ = 2;
    while (detail::mod_pow(nu_, (p_ - 1) / 2, p_) != p_ - 1) ++nu_;
  }

  std::uint32_t characteristic() const noexcept { return static_cast<std::uint32_t>(p_); }
  std::uint32_t nonresidue() const noexcept { return static_cast<std::uint32_t>(nu_); }
  std::uint64_t size() const noexcept { return p_ * p_; }

  Fq2Elem zero() const noexcept { return {0, 0}; }
  Fq2Elem one() const noexcept { return {1, 0}; }

  Fq2Elem element(std::uint64_t index) const noexcept {
    return {static_cast<std::uint32_t>(index / p_), static_cast<std::uint32_t>(index % p_)};
  }
  std::uint64_t index(Fq2Elem x) const noexcept { return std::uint64_t{x.re} * p_ + x.im; }

  Fq2Elem add(Fq2Elem x, Fq2Elem y) const noexcept {
    return {static_cast<std::uint32_t>((x.re + std::uint64_t{y.re}) % p_),
            static_cast<std::uint32_t>((x.im + std::uint64_t{y.im}) % p_)};
  }
  Fq2Elem neg(Fq2Elem x) const noexcept {
    return {static_cast<std::uint32_t>((p_ - x.re) % p_),
            static_cast<std::uint32_t>((p_ - x.im) % p_)};
  }
  Fq2Elem sub(Fq2Elem x, Fq2Elem y) const noexcept { return add(x, neg(y)); }

  Fq2Elem mul(Fq2Elem x, Fq2Elem y) const noexcept {
    const std::uint64_t re = (std::uint64_t{x.re} * y.re + nu_ * (std::uint64_t{x.im} * y.im % p_)) % p_;
    const std::uint64_t im = (std::uint64_t{x.re} * y.im + std::uint64_t{x.im} * y.re) % p_;
    return {static_cast<std::uint32_t>(re), static_cast<std::uint32_t>(im)};
  }

  Fq2Elem conj(Fq2Elem x) const noexcept {
    return {x.re, static_cast<std::uint32_t>((p_ - x.im) % p_)};
  }

  /// x * conj(x) = re^2 - nu * im^2, an element of the prime field.
  std::uint32_t norm(Fq2Elem x) const noexcept {
    const std::uint64_t pos = std::uint64_t{x.re} * x.re % p_;
    const std::uint64_t negpart = nu_ * (std::uint64_t{x.im} * x.im % p_) % p_;
    return static_cast<std::uint32_t>((pos + p_ - negpart % p_) % p_);
  }

  bool in_prime_field(Fq2Elem x) const noexcept { return x.im == 0; }

  Fq2Elem inv(Fq2Elem x) const {
    if (x.is_zero()) throw std::invalid_argument("zero has no inverse");
    const std::uint64_t n_inv = detail::mod_pow(norm(x), p_ - 2, p_);
    const Fq2Elem scale{static_cast<std::uint32_t>(n_inv), 0};
    return mul(conj(x), scale);
  }

  Fq2Elem pow(Fq2Elem x, std::uint64_t exp) const noexcept {
    Fq2Elem result = one();
    while (exp != 0) {
      if (exp & 1u) result = mul(result, x);
      x = mul(x, x);
      exp >>= 1u;
    }
    return result;
  }

 private:
  std::uint64_t p_ = 3;
  std::uint64_t nu_ = 2;
};

inline Fq2 build_field(long long p) { return Fq2(p); }

/// A point of projective space in canonical coordinates: the first nonzero
/// coordinate is 1, so each point has exactly one representative.
struct ProjectivePoint {
  std::vector<Fq2Elem> coords;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

inline ProjectivePoint canonicalize(const Fq2& field, std::vector<Fq2Elem> coords) {
  for (const Fq2Elem& c : coords) {
    if (!c.is_zero()) {
      const Fq2Elem scale = field.inv(c);
      for (Fq2Elem& x : coords) x = field.mul(x, scale);
      return ProjectivePoint{std::move(coords)};
    }
  }
  throw std::invalid_argument("the zero vector spans no projective point");
}

/// Visit every canonical point of P^(k-1) over the field, in a fixed order.
template <typename Visitor>
void for_each_projective_point(const Fq2& field, int k, Visitor&& visit) {
  const std::uint64_t q = field.size();
  std::vector<Fq2Elem> coords(static_cast<std::size_t>(k));
  for (int lead = 0; lead < k; ++lead) {
    for (int i = 0; i < k; ++i) coords[static_cast<std::size_t>(i)] = field.zero();
    coords[static_cast<std::size_t>(lead)] = field.one();
    const int free_count = k - lead - 1;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(free_count), 0);
    while (true) {
      for (int t = 0; t < free_count; ++t) {
        coords[static_cast<std::size_t>(lead + 1 + t)] = field.element(digits[static_cast<std::size_t>(t)]);
      }
      visit(static_cast<const std::vector<Fq2Elem>&>(coords));
      int pos = free_count - 1;
      while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == q) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
}

/// |P^(k-1)(F_q)| by explicit enumeration; the closed form (q^k-1)/(q-1) is
/// the cross-check, not the implementation.
inline bigint count_projective_points(const Fq2& field, int k) {
  bigint count = 0;
  for_each_projective_point(field, k, [&count](const std::vector<Fq2Elem>&) { ++count; });
  return count;
}

/// Number of canonical points of P^(vars-1) on the hypersurface
/// x_0^(p+1) + ... + x_(vars-1)^(p+1) = 0, by exhaustive evaluation.
/// Each x^(p+1) equals norm(x), so the sum is evaluated in the prime field.
inline bigint fermat_point_count(const Fq2& field, int vars) {
  const std::uint64_t q = field.size();
  const std::uint32_t p = field.characteristic();
  std::vector<std::uint32_t> norms(q);
  for (std::uint64_t i = 0; i < q; ++i) norms[i] = field.norm(field.element(i));

  bigint count = 0;
  for_each_projective_point(field, vars, [&](const std::vector<Fq2Elem>& coords) {
    std::uint32_t sum = 0;
    for (const Fq2Elem& c : coords) sum = (sum + norms[field.index(c)]) % p;
    if (sum == 0) ++count;
  });
  return count;
}

/// A line of P^3 as the reduced row echelon form of the 2x4 matrix of a
/// spanning pair; the representative is unique per line.
struct ProjectiveLine {
  std::array<Fq2Elem, 4> u{};  // pivot 1 at pivot0, zero at pivot1
  std::array<Fq2Elem, 4> v{};  // pivot 1 at pivot1
  int pivot0 = 0;
  int pivot1 = 1;

  /// All q+1 points of the line: v, and u + t*v for every t in the field.
  std::vector<ProjectivePoint> points(const Fq2& field) const {
    std::vector<ProjectivePoint> pts;
    pts.reserve(field.size() + 1);
    pts.push_back(canonicalize(field, {v.begin(), v.end()}));
    for (std::uint64_t ti = 0; ti < field.size(); ++ti) {
      const Fq2Elem t = field.element(ti);
      std::vector<Fq2Elem> coords(4);
      for (int i = 0; i < 4; ++i) coords[static_cast<std::size_t>(i)] = field.add(u[static_cast<std::size_t>(i)], field.mul(t, v[static_cast<std::size_t>(i)]));
      pts.push_back(canonicalize(field, std::move(coords)));
    }
    return pts;
  }
};

/// Index-addressable enumeration of all lines of P^3 over the field,
/// grouped by pivot columns of the echelon form. Index access makes the
/// enumeration trivially partitionable across workers.
class LineEnumerator {
 public:
  explicit LineEnumerator(const Fq2& field) : field_(&field) {
    const std::uint64_t q = field.size();
    std::uint64_t base = 0;
    int g = 0;
    for (int c1 = 0; c1 < 4; ++c1) {
      for (int c2 = c1 + 1; c2 < 4; ++c2) {
        Group& group = groups_[static_cast<std::size_t>(g++)];
        group.pivot0 = c1;
        group.pivot1 = c2;
        for (int col = c1 + 1; col < 4; ++col) {
          if (col != c2) group.u_free[static_cast<std::size_t>(group.u_free_count++)] = col;
        }
        for (int col = c2 + 1; col < 4; ++col) {
          group.v_free[static_cast<std::size_t>(group.v_free_count++)] = col;
        }
        group.base = base;
        std::uint64_t size = 1;
        for (int i = 0; i < group.u_free_count + group.v_free_count; ++i) size *= q;
        group.size = size;
        base += size;
      }
    }
    total_ = base;
  }

  std::uint64_t total() const noexcept { return total_; }

  ProjectiveLine line_at(std::uint64_t index) const {
    const std::uint64_t q = field_->size();
    for (const Group& group : groups_) {
      if (index >= group.base + group.size) continue;
      std::uint64_t local = index - group.base;
      ProjectiveLine line;
      line.pivot0 = group.pivot0;
      line.pivot1 = group.pivot1;
      for (auto& c : line.u) c = field_->zero();
      for (auto& c : line.v) c = field_->zero();
      line.u[static_cast<std::size_t>(group.pivot0)] = field_->one();
      line.v[static_cast<std::size_t>(group.pivot1)] = field_->one();
      for (int i = group.v_free_count - 1; i >= 0; --i) {
        line.v[static_cast<std::size_t>(group.v_free[static_cast<std::size_t>(i)])] = field_->element(local % q);
        local /= q;
      }
      for (int i = group.u_free_count - 1; i >= 0; --i) {
        line.u[static_cast<std::size_t>(group.u_free[static_cast<std::size_t>(i)])] = field_->element(local % q);
        local /= q;
      }
      return line;
    }
    throw std::out_of_range("line index " + std::to_string(index) + " out of range");
  }

 private:
  struct Group {
    int pivot0 = 0;
    int pivot1 = 0;
    std::array<int, 2> u_free{};
    std::array<int, 2> v_free{};
    int u_free_count = 0;
    int v_free_count = 0;
    std::uint64_t base = 0;
    std::uint64_t size = 0;
  };

  const Fq2* field_;
  std::array<Group, 6> groups_{};
  std::uint64_t total_ = 0;
};

namespace detail {

struct SurfaceLineScan {
  std::uint64_t lines_on_surface = 0;
  // Points per counted line re-evaluated through literal exponentiation
  // x -> x^(p+1); stays q+1 unless the two evaluation routes disagree.
  std::uint64_t min_points_on_counted_line = 0;
};

/// One pass over all lines of P^3. Membership uses the norm table; when
/// pow_check is set, every fully-contained line is re-verified point by
/// point with the literal Fermat exponent.
inline SurfaceLineScan scan_surface_lines(const Fq2& field, unsigned workers, bool pow_check) {
  const std::uint64_t q = field.size();
  const std::uint32_t p = field.characteristic();
  std::vector<std::uint32_t> norms(q);
  for (std::uint64_t i = 0; i < q; ++i) norms[i] = field.norm(field.element(i));

  const LineEnumerator lines(field);
  const std::uint64_t total = lines.total();
  if (workers == 0) workers = 1;
  if (workers > total) workers = static_cast<unsigned>(total);

  auto norm_sum_is_zero = [&](const std::array<Fq2Elem, 4>& pt) {
    std::uint32_t sum = 0;
    for (const Fq2Elem& c : pt) sum = (sum + norms[field.index(c)]) % p;
    return sum == 0;
  };
  auto pow_sum_is_zero = [&](const std::array<Fq2Elem, 4>& pt) {
    Fq2Elem sum = field.zero();
    for (const Fq2Elem& c : pt) sum = field.add(sum, field.pow(c, static_cast<std::uint64_t>(p) + 1));
    return sum.is_zero();
  };

  std::vector<SurfaceLineScan> partial(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    SurfaceLineScan& out = partial[w];
    out.min_points_on_counted_line = q + 1;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const ProjectiveLine line = lines.line_at(idx);
      bool contained = norm_sum_is_zero(line.v);
      if (contained) {
        for (std::uint64_t ti = 0; ti < q; ++ti) {
          const Fq2Elem t = field.element(ti);
          std::array<Fq2Elem, 4> pt;
          for (std::size_t i = 0; i < 4; ++i) pt[i] = field.add(line.u[i], field.mul(t, line.v[i]));
          if (!norm_sum_is_zero(pt)) {
            contained = false;
            break;
          }
        }
      }
      if (!contained) continue;
      ++out.lines_on_surface;
      if (pow_check) {
        std::uint64_t on = pow_sum_is_zero(line.v) ? 1 : 0;
        for (std::uint64_t ti = 0; ti < q; ++ti) {
          const Fq2Elem t = field.element(ti);
          std::array<Fq2Elem, 4> pt;
          for (std::size_t i = 0; i < 4; ++i) pt[i] = field.add(line.u[i], field.mul(t, line.v[i]));
          if (pow_sum_is_zero(pt)) ++on;
        }
        if (on < out.min_points_on_counted_line) out.min_points_on_counted_line = on;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (std::thread& th : threads) th.join();
  }

  SurfaceLineScan result;
  result.min_points_on_counted_line = q + 1;
  for (const SurfaceLineScan& part : partial) {
    result.lines_on_surface += part.lines_on_surface;
    if (part.lines_on_surface > 0 && part.min_points_on_counted_line < result.min_points_on_counted_line) {
      result.min_points_on_counted_line = part.min_points_on_counted_line;
    }
  }
  return result;
}

}  // namespace detail

/// Number of lines of P^3 lying entirely on the Fermat surface, by
/// enumerating every line and testing all of its q+1 points.
inline bigint lines_on_fermat_surface(const Fq2& field, unsigned workers = 1) {
  return detail::scan_surface_lines(field, workers, /*pow_check=*/false).lines_on_surface;
}

struct VerificationCheck {
  std::string name;
  Count expected;
  bigint observed;
  bool pass = false;
  // Set when the observed value comes from the table itself rather than
  // from enumeration (consistency checks between rows or identities).
  bool table_only = false;
};

/// Outcome of diffing the enumeration against the descriptor table.
struct VerificationReport {
  long long p = 0;
  std::vector<VerificationCheck> checks;
  std::vector<std::string> assumptions;
  std::int64_t elapsed_ms = 0;

  bool all_passed() const noexcept {
    for (const VerificationCheck& check : checks) {
      if (!check.pass) return false;
    }
    return true;
  }

  bool same_results(const VerificationReport& other) const {
    if (p != other.p || assumptions != other.assumptions) return false;
    if (checks.size() != other.checks.size()) return false;
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const VerificationCheck& a = checks[i];
      const VerificationCheck& b = other.checks[i];
      if (a.name != b.name || !(a.expected == b.expected) || a.observed != b.observed ||
          a.pass != b.pass || a.table_only != b.table_only) {
        return false;
      }
    }
    return true;
  }
};

struct VerifyOptions {
  long long max_p = 7;       // keeps the line enumeration fast by default
  unsigned workers = 1;
  bool corrupt_table = false;  // self-test: perturb one table constant
};

/// Diff the finite-geometry enumeration against the descriptor table rows.
/// What enumeration cannot see (components-per-point constants) is checked
/// through the double-counting identity and flagged as an assumption.
inline VerificationReport verify_counts(long long p, const VerifyOptions& options = {}) {
  if (!is_odd_prime(p)) {
    throw error(errc::not_an_odd_prime, "verify requires an odd prime, got " + std::to_string(p));
  }
  if (p > options.max_p) {
    throw error(errc::bound_exceeded, "p = " + std::to_string(p) + " exceeds the enumeration bound " +
                                          std::to_string(options.max_p) + " (raise it with --max-p)");
  }

  const auto start = std::chrono::steady_clock::now();
  const Fq2 field = build_field(p);
  const bigint q = bigint(p) * p;

  LocalGeometry split22 = local_factor_geometry(SplittingType::split, {2, 2}, p, 0);
  LocalGeometry inert12 = local_factor_geometry(SplittingType::inert, {1, 2}, p, 0);
  LocalGeometry inert13 = local_factor_geometry(SplittingType::inert, {1, 3}, p, 0);
  LocalGeometry inert22 = local_factor_geometry(SplittingType::inert, {2, 2}, p, 0);
  if (options.corrupt_table) {
    // Deliberate mutation: shift one row constant so the diff must fail.
    inert12.points_per_component->value += 1;
    inert12.points_per_component->formula += " [corrupted]";
  }

  VerificationReport report;
  report.p = p;
  auto add_check = [&report](std::string name, Count expected, bigint observed, bool table_only = false) {
    VerificationCheck check;
    check.name = std::move(name);
    check.pass = expected.value == observed;
    check.expected = std::move(expected);
    check.observed = std::move(observed);
    check.table_only = table_only;
    report.checks.push_back(std::move(check));
  };

  // Enumeration sanity: explicit counts against closed forms.
  add_check("projective_line_points_closed_form", Count{q + 1, "p^2+1"},
            count_projective_points(field, 2));
  add_check("projective_plane_points_closed_form", Count{(q * q * q - 1) / (q - 1), "(p^6-1)/(p^2-1)"},
            count_projective_points(field, 3));
  add_check("projective_space_points_closed_form",
            Count{(q * q * q * q - 1) / (q - 1), "(p^8-1)/(p^2-1)"}, count_projective_points(field, 4));
  add_check("projective_line_count_closed_form",
            Count{(q * q + 1) * (q * q + q + 1), "(p^4+1)(p^4+p^2+1)"},
            bigint(LineEnumerator(field).total()));

  // Table rows vs enumeration.
  add_check("projective_line_points", *split22.points_per_component,
            count_projective_points(field, 2));
  add_check("fermat_curve_points", *inert12.points_per_component, fermat_point_count(field, 3));
  add_check("curve_rows_agree", *inert12.points_per_component,
            inert13.points_per_component->value, /*table_only=*/true);
  add_check("fermat_surface_points", inert22.neighbor_counts.at(Relation::point_intersection),
            fermat_point_count(field, 4));

  const detail::SurfaceLineScan scan = detail::scan_surface_lines(field, options.workers, /*pow_check=*/true);
  add_check("fermat_surface_lines", inert22.neighbor_counts.at(Relation::line_intersection),
            bigint(scan.lines_on_surface));
  add_check("surface_line_points_full", Count{q + 1, "p^2+1"},
            bigint(scan.min_points_on_counted_line));

  // Double-counting identity: point-neighbors = points * (components-per-point - 1).
  auto add_double_counting = [&](const char* name, const LocalGeometry& row) {
    add_check(name, row.neighbor_counts.at(Relation::point_intersection),
              row.points_per_component->value * (row.components_per_point->value - 1),
              /*table_only=*/true);
  };
  add_double_counting("double_counting_split_2_2", split22);
  add_double_counting("double_counting_inert_1_2", inert12);
  add_double_counting("double_counting_inert_1_3", inert13);

  report.assumptions = {
      "components-per-point constants are table-only, identity-checked: p+1 (inert (1,2)), "
      "p^3+1 (inert (1,3)) and p^2+1 (split (2,2)) come from the vertex-lattice model and are "
      "validated here only through the double-counting identity",
      "split (1,1) factors are taken to be nonempty for every polarization index, via the "
      "comparison with the reduced GL2 moduli space",
  };

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace sslocus
