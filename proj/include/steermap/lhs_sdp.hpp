#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steermap/common.hpp"
#include "steermap/ensemble.hpp"
#include "steermap/steering_map.hpp"

namespace steermap {

struct LhsOptions {
  double tol = 1e-8;          // steerable iff margin < -tol; must be >= 1e-8
  int max_iterations = 10000; // projection iterations per bisection level
  int bisection_depth = 40;
  Tolerances tolerances{};
};

enum class LhsOutcome { non_steerable, steerable, undecided };

// Decision with a certified margin bracket. The margin is the best
// achievable minimum block eigenvalue over all hidden-state solutions:
// nonnegative margins admit a positive semidefinite model (non-steerable),
// negative margins do not. lower comes from an explicit feasible model,
// upper from a dual certificate, so margin is pinned to [lower, upper].
struct LhsVerdict {
  LhsOutcome outcome = LhsOutcome::undecided;
  double margin = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double residual = 0.0;  // bracket width
  long iterations = 0;
  std::optional<ZSet> witness;            // present iff steerable and verified
  std::optional<HiddenStateModel> model;  // best recovered model when non-steerable
  std::string note;

  bool steerable() const { return outcome == LhsOutcome::steerable; }
};

// Exact steerability decision for an ensemble, via alternating projections
// between the hidden-state affine subspace and the eigenvalue-shifted
// positive cone, wrapped in bisection over the shift.
LhsVerdict decide(const Ensemble& e, const LhsOptions& options = {});

// Turn a dual certificate (one PSD operator per outcome tuple, annihilating
// every homogeneous direction) into a steering-map witness normalized to a
// unit-trace mapped operator. Returns nothing when the normalization cannot
// be repaired; the steerable verdict stands either way.
std::optional<ZSet> extract_witness(const Ensemble& e,
                                    const std::vector<HermitianOperator>& dual_blocks,
                                    const Tolerances& tol = {});

}  // namespace steermap
