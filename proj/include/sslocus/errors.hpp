#pragma once

#include <stdexcept>
#include <string>

namespace sslocus {

/// Failure codes shared by the whole library. CLI error messages start with
/// the code name so callers (and exit-code tests) can match on it.
enum class errc {
  non_odd_prime,
  mixed_signature_sum,
  unsupported_m,
  empty_places,
  unnormalized_signature,
  length_mismatch,
  invalid_matching,
  unsupported_signature,
  inconsistent_pattern,
  invalid_class,
  invalid_spec,
  not_an_odd_prime,
  bound_exceeded,
  parse_error,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::non_odd_prime: return "NonOddPrime";
    case errc::mixed_signature_sum: return "MixedSignatureSum";
    case errc::unsupported_m: return "UnsupportedM";
    case errc::empty_places: return "EmptyPlaces";
    case errc::unnormalized_signature: return "UnnormalizedSignature";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::invalid_matching: return "InvalidMatching";
    case errc::unsupported_signature: return "UnsupportedSignature";
    case errc::inconsistent_pattern: return "InconsistentPattern";
    case errc::invalid_class: return "InvalidClass";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::not_an_odd_prime: return "NotAnOddPrime";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace sslocus
