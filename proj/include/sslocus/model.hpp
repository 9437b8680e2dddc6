#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sslocus/errors.hpp"

namespace sslocus {

/// Behavior of a place of the totally real field in the CM extension.
/// The ambient prime is unramified, so these two cases are exhaustive.
enum class SplittingType { split, inert };

inline const char* to_string(SplittingType s) noexcept {
  return s == SplittingType::split ? "split" : "inert";
}

/// Multiplicities (a, b) of the two eigencharacters of the CM action on the
/// Lie algebra of one local factor; a + b = m. Stored and consumed in the
/// normalized orientation a <= b.
struct SignaturePair {
  int a = 0;
  int b = 0;

  int sum() const noexcept { return a + b; }
  bool is_normalized() const noexcept { return a >= 0 && a <= b; }
  SignaturePair normalized() const noexcept { return a <= b ? *this : SignaturePair{b, a}; }

  friend auto operator<=>(const SignaturePair&, const SignaturePair&) = default;
};

inline std::string to_string(const SignaturePair& s) {
  return "(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
}

/// One place above p: its splitting behavior plus the local signature there.
struct PlaceSpec {
  SplittingType splitting = SplittingType::inert;
  SignaturePair signature;

  friend auto operator<=>(const PlaceSpec&, const PlaceSpec&) = default;
};

/// The shadow of the global data that the descriptors depend on: the odd
/// prime p and the list of places with their signatures. The common
/// signature sum m is derived from the first place.
struct GlobalSpec {
  long long p = 0;
  std::vector<PlaceSpec> places;

  int m() const noexcept { return places.empty() ? 0 : places.front().signature.sum(); }
  std::size_t size() const noexcept { return places.size(); }
};

/// ord_p of the scalar comparing a polarization with the pullback of the
/// basepoint polarization. Any integer is legal; only parity matters to
/// the descriptors.
using PolarizationIndex = long long;

inline bool is_odd_prime(long long p) noexcept {
  if (p < 3 || p % 2 == 0) return false;
  for (long long d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

struct Violation {
  errc code;
  std::string message;
};

/// Outcome of validate_spec: all violations found, not just the first.
struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(errc code) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [code](const Violation& v) { return v.code == code; });
  }
};

inline ValidationResult validate_spec(const GlobalSpec& spec) {
  ValidationResult result;
  auto report = [&result](errc code, std::string message) {
    result.violations.push_back({code, std::move(message)});
  };

  if (!is_odd_prime(spec.p)) {
    report(errc::non_odd_prime, "p = " + std::to_string(spec.p) + " is not an odd prime");
  }
  if (spec.places.empty()) {
    report(errc::empty_places, "the list of places is empty");
    return result;
  }

  const int m = spec.m();
  if (m < 1 || m > 4) {
    report(errc::unsupported_m, "signature sum m = " + std::to_string(m) + " is outside 1..4");
  }
  for (std::size_t i = 0; i < spec.places.size(); ++i) {
    const SignaturePair sig = spec.places[i].signature;
    if (!sig.is_normalized()) {
      report(errc::unnormalized_signature,
             "places[" + std::to_string(i) + "] signature " + to_string(sig) +
                 " must satisfy 0 <= a <= b");
    }
    if (sig.sum() != m) {
      report(errc::mixed_signature_sum,
             "places[" + std::to_string(i) + "] signature " + to_string(sig) + " sums to " +
                 std::to_string(sig.sum()) + ", expected m = " + std::to_string(m));
    }
  }
  return result;
}

/// The bijection Hom(E, Q-bar) -> Hom(E, Q-bar_p) induced by a choice of
/// embedding, reduced to what the descriptors see: a permutation of the
/// places plus a per-place flag recording whether the two embeddings over
/// that place were exchanged.
class SignatureMatching {
 public:
  SignatureMatching(std::vector<std::size_t> permutation, std::vector<bool> conjugated)
      : permutation_(std::move(permutation)), conjugated_(std::move(conjugated)) {
    if (permutation_.size() != conjugated_.size()) {
      throw error(errc::length_mismatch,
                  "permutation has " + std::to_string(permutation_.size()) +
                      " entries, conjugation flags have " + std::to_string(conjugated_.size()));
    }
    std::vector<bool> seen(permutation_.size(), false);
    for (std::size_t image : permutation_) {
      if (image >= permutation_.size() || seen[image]) {
        throw error(errc::invalid_matching, "permutation is not a bijection on 0.." +
                                                std::to_string(permutation_.size()) + "-1");
      }
      seen[image] = true;
    }
  }

  static SignatureMatching identity(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    return SignatureMatching(std::move(perm), std::vector<bool>(n, false));
  }

  std::size_t size() const noexcept { return permutation_.size(); }
  std::size_t source_of(std::size_t i) const { return permutation_[i]; }
  bool conjugated_at(std::size_t i) const { return conjugated_[i]; }

 private:
  std::vector<std::size_t> permutation_;
  std::vector<bool> conjugated_;
};

/// Transport a tuple of signatures along a matching. Output i is the input
/// at the permuted index, swapped when the conjugation flag is set, then
/// re-normalized to a <= b; as a multiset the signatures are unchanged.
inline std::vector<SignaturePair> localize_signatures(const std::vector<SignaturePair>& global,
                                                      const SignatureMatching& matching) {
  if (global.size() != matching.size()) {
    throw error(errc::length_mismatch, "got " + std::to_string(global.size()) +
                                           " signatures for a matching on " +
                                           std::to_string(matching.size()) + " places");
  }
  std::vector<SignaturePair> local;
  local.reserve(global.size());
  for (std::size_t i = 0; i < global.size(); ++i) {
    SignaturePair sig = global[matching.source_of(i)];
    if (matching.conjugated_at(i)) sig = SignaturePair{sig.b, sig.a};
    local.push_back(sig.normalized());
  }
  return local;
}

}  // namespace sslocus
