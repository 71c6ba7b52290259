#pragma once

#include <vector>

namespace x0p2 {

// Trial-division primality; all uses here stay far below 64-bit limits.
inline bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> primes_in(long lo, long hi) {
  std::vector<long> out;
  for (long n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline long totient(long n) {
  long result = n;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    while (n % d == 0) n /= d;
    result -= result / d;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace x0p2
