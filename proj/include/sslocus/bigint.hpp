#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sslocus {

/// Every count in the library is an exact integer of unbounded size.
using bigint = boost::multiprecision::cpp_int;

inline bigint ipow(const bigint& base, unsigned exp) {
  bigint result = 1;
  bigint b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

inline bigint factorial(unsigned n) {
  bigint result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

inline bigint binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  bigint result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// n! / (k1! k2! (n-k1-k2)!), the number of ways to assign k1+k2 marked
/// slots of two kinds among n positions.
inline bigint trinomial(unsigned n, unsigned k1, unsigned k2) {
  if (k1 + k2 > n) return 0;
  return factorial(n) / (factorial(k1) * factorial(k2) * factorial(n - k1 - k2));
}

}  // namespace sslocus
