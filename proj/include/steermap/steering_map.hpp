#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "steermap/common.hpp"
#include "steermap/ensemble.hpp"
#include "steermap/linalg.hpp"

namespace steermap {

// A steering map: one positive semidefinite operator per outcome tuple,
// subject to the completeness relations that make the mapped bipartite
// operator independent of the particular hidden-state solution. The operator
// dimension dimA is a free design parameter, unrelated to Bob's d.
class ZSet {
 public:
  ZSet(int n, int m, std::vector<HermitianOperator> zs);

  int n() const { return params_.n; }
  int m() const { return params_.m; }
  std::size_t dim_a() const { return params_.d; }
  const ScenarioParams& params() const { return params_; }

  const HermitianOperator& z(std::size_t flat) const { return zs_.at(flat); }
  const HermitianOperator& z(std::span<const int> tuple) const {
    return zs_.at(tuple_to_flat(tuple, params_.m));
  }
  std::size_t size() const { return zs_.size(); }

  ZSet scaled(double factor) const;

 private:
  ScenarioParams params_;  // d carries dimA
  std::vector<HermitianOperator> zs_;
};

// The mapped bipartite operator Sigma. Hermitian by construction but not
// necessarily positive semidefinite: non-positivity itself certifies
// steering.
struct SigmaOperator {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  HermitianOperator matrix;
  double trace = 0.0;
};

// Shift/phase operator pair on Fourier-connected mutually unbiased bases,
// plus the seed operator data for the two-setting, d-outcome steering map.
struct MubConstruction {
  std::size_t d = 0;
  ComplexMatrix fourier;                 // psi_k = F phi_k
  std::vector<ComplexMatrix> shift_ops;  // U_x, x = 0..d-1
  std::vector<ComplexMatrix> phase_ops;  // V_y, y = 0..d-1
  ComplexMatrix chi_plus;                // column vectors, normalized
  ComplexMatrix chi_minus;
  double mu1 = 0.0;
  double mu2 = 0.0;

  ZSet zset() const;
};

// Positivity of every member plus the completeness relations checked against
// the anchor tuple (m,...,m); the anchored relations imply the general ones.
ValidationReport validate_zset(const ZSet& z, const Tolerances& tol = {});

// Sigma = sum_i Z_i (x) omega_i for an explicit hidden-state model.
SigmaOperator map_sigma(const ZSet& z, const HiddenStateModel& model);

// Sigma built from the special solution of the ensemble (the canonical
// choice; any other solution gives the same operator for a valid Z-set).
SigmaOperator build_sigma(const ZSet& z, const Ensemble& e, const Tolerances& tol = {});

double sigma_trace(const SigmaOperator& s);

// Eight qubit projectors whose Bloch vectors point at the cube corners;
// n = 3 dichotomic settings, dimA = 2.
ZSet cube_zset();

// Two-setting, d-outcome construction from Fourier-connected mutually
// unbiased bases.
MubConstruction mub_construction(std::size_t d);
ZSet mub_zset(std::size_t d);

// "cube" or "mub:<d>".
ZSet named_zset(const std::string& name);

}  // namespace steermap
