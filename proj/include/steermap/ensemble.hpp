#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "steermap/common.hpp"
#include "steermap/linalg.hpp"

namespace steermap {

// Steering scenario shape: n settings with m outcomes each on the
// uncharacterized side, Hilbert dimension d on the characterized side.
struct ScenarioParams {
  int n = 1;
  int m = 2;
  std::size_t d = 2;

  ScenarioParams() = default;
  ScenarioParams(int n_, int m_, std::size_t d_);

  // Number of outcome tuples (i1..in), i.e. m^n.
  std::size_t tuple_count() const;
  bool operator==(const ScenarioParams&) const = default;
};

// Outcome tuples use labels 1..m; (i1..in) is flattened with i1 slowest.
std::size_t tuple_to_flat(std::span<const int> tuple, int m);
std::vector<int> flat_to_tuple(std::size_t flat, int n, int m);
std::string tuple_label(std::span<const int> tuple);

// The unnormalized conditional states rho_{a|x}; trace of each equals the
// outcome probability. Construction checks shape and hermiticity only;
// physical validity (positivity, no-signalling) is reported by validate().
class Ensemble {
 public:
  Ensemble(ScenarioParams params, std::vector<HermitianOperator> states);

  const ScenarioParams& params() const { return params_; }
  // a in 1..m, x in 1..n
  const HermitianOperator& state(int a, int x) const;
  double probability(int a, int x) const;
  // Average over settings of sum_a rho_{a|x}.
  HermitianOperator reduced_state() const;

 private:
  ScenarioParams params_;
  std::vector<HermitianOperator> states_;  // index (x-1)*m + (a-1)
};

// Positive operators summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> elements,
                const Tolerances& tol = {});

  std::size_t dim() const { return elements_.front().dim(); }
  int outcome_count() const { return static_cast<int>(elements_.size()); }
  const HermitianOperator& element(int a) const { return elements_.at(a - 1); }

 private:
  std::vector<HermitianOperator> elements_;
};

// A candidate local-hidden-state decomposition: one operator per outcome
// tuple. Entries are only positive semidefinite when the feasibility solver
// produced them; the special solution generally is not.
struct HiddenStateModel {
  ScenarioParams params;
  std::vector<HermitianOperator> omegas;  // flat-indexed, size m^n

  const HermitianOperator& omega(std::size_t flat) const { return omegas.at(flat); }
  const HermitianOperator& omega(std::span<const int> tuple) const {
    return omegas.at(tuple_to_flat(tuple, params.m));
  }
};

// Integer basis of the homogeneous solutions of the hidden-state linear
// system. Admissible k-tuples have at least two coordinates below m; the
// basis has m^n - [n(m-1)+1] vectors with entries in {-(n-1),...,n-1}.
struct HomogeneousBasis {
  ScenarioParams params;
  std::vector<std::size_t> k_indices;       // flat index of each k-tuple
  std::vector<std::vector<int>> vectors;    // each of length m^n
};

// rho_{a|x} = tr_A[(M_{a|x} (x) 1) rho_AB] for a shared state on dA*dB.
Ensemble assemble(const HermitianOperator& state, const std::vector<Povm>& alice_povms,
                  const Tolerances& tol = {});

// The sparse particular solution of the hidden-state system: zero except at
// the n(m-1)+1 entries with at most one outcome below m.
HiddenStateModel special_solution(const Ensemble& e);

HomogeneousBasis homogeneous_basis(const ScenarioParams& params);

// Worst violation per invariant: positivity, no-signalling, unit trace.
ValidationReport validate(const Ensemble& e, const Tolerances& tol = {});

// Max-norm residual of the hidden-state equations for a candidate model.
double lhs_residual(const HiddenStateModel& model, const Ensemble& e);

}  // namespace steermap
