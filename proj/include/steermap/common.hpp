#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace steermap {

// Absolute tolerances shared by all modules. One record so the CLI and the
// config file can override them in a single place.
struct Tolerances {
  double hermiticity = 1e-12;    // entrywise |A - A'| for Hermitian inputs
  double psd = 1e-10;            // allowed negative slack on min eigenvalues
  double reconstruction = 1e-10; // eigensolver round-trip, per dimension
  double no_signalling = 1e-9;   // ensemble row sums and unit trace
  double zset_relation = 1e-9;   // completeness relations of a Z-set
  double detection = 1e-9;       // margin before a criterion counts as violated
  double near_boundary = 1e-7;   // band for "inconclusive-near-boundary"
  double deflation = 1e-12;      // Gram eigenvalues treated as zero in the SVD
};

// Invalid inputs (bad dimensions, non-Hermitian data, malformed files).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One named check of a validation pass, with the worst observed violation.
struct CheckResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace steermap
