#pragma once

#include <string>
#include <vector>

namespace x0p2 {

struct VerifyOptions {
  long pmax = 199;
  std::vector<int> classes = {1, 5, 7, 11};  // residues of p mod 12
  int jobs = 1;
  bool verbose = false;
};

struct VerifyResult {
  std::string csv;        // data rows plus trailing '#' summary lines
  long primes_checked = 0;
  int violations = 0;     // hard failures (status flags without warn: prefix)
  int warnings = 0;
};

// Checks every prime 7 <= p <= pmax in the requested residue classes:
// model validity, kernel rank, node/length closed forms, the genus identity,
// tau bounds and reference-point independence, the resistance metric,
// orthogonal-divisor residuals, table fixtures, and pairing symmetry.
// Output is byte-identical regardless of the job count.
VerifyResult run_verification(const VerifyOptions& opt);

}  // namespace x0p2
