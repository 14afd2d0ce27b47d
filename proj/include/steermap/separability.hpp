#pragma once

#include <string>
#include <vector>

#include "steermap/common.hpp"
#include "steermap/ensemble.hpp"
#include "steermap/steering_map.hpp"

namespace steermap {

// Outcome of one separability criterion applied to a mapped operator.
// detected means the value violates the threshold in the criterion's
// direction by more than the detection margin.
struct CriterionVerdict {
  std::string criterion;
  double value = 0.0;
  double threshold = 0.0;
  bool detected = false;
  std::string detail;
};

// Minimum eigenvalue of the partial transpose; if the operator itself is not
// positive semidefinite that is already a detection and is reported with the
// "not-a-quantum-state" detail instead.
CriterionVerdict ppt(const SigmaOperator& s, const Tolerances& tol = {});

// Trace norm of the local-basis correlation matrix against 1. Defaults to
// the normalized identity plus generalized Gell-Mann bases on both sides.
CriterionVerdict ccnr(const SigmaOperator& s, const Tolerances& tol = {});
CriterionVerdict ccnr_with_bases(const SigmaOperator& s,
                                 const std::vector<HermitianOperator>& basis_a,
                                 const std::vector<HermitianOperator>& basis_b,
                                 const Tolerances& tol = {});

// Flip-operator expectation sum_i tr(Z_i omega_i) on the special solution;
// negative values certify steering. Requires dimA equal to Bob's d.
CriterionVerdict swap_witness(const ZSet& z, const Ensemble& e,
                              const Tolerances& tol = {});

// Orthonormal Hermitian basis of dim x dim operators under the
// Hilbert-Schmidt inner product; the normalized identity comes first.
std::vector<HermitianOperator> orthonormal_hermitian_basis(std::size_t dim);

// V |ij> = |ji>; tr(V A (x) B) = tr(AB).
ComplexMatrix swap_operator(std::size_t d);

}  // namespace steermap
