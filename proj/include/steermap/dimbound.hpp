#pragma once

#include <string>
#include <vector>

#include "steermap/common.hpp"
#include "steermap/separability.hpp"
#include "steermap/steering_map.hpp"

namespace steermap {

// Correlators and marginals for dichotomic measurements on both sides,
// indexed by settings x = 1..nA, y = 1..nB.
struct CorrelatorTable {
  int na = 0;
  int nb = 0;
  std::vector<std::vector<double>> corr;  // corr[x-1][y-1] = <A_x B_y>
  std::vector<double> marg_a;             // <A_x>
  std::vector<double> marg_b;             // <B_y>

  CorrelatorTable(int na_, int nb_, std::vector<std::vector<double>> corr_,
                  std::vector<double> marg_a_, std::vector<double> marg_b_);
};

// The (nB+1) x (nB+1) matrix of weighted correlators whose determinant is
// bounded for non-steerable data.
struct DataMatrix {
  ComplexMatrix entries;
  std::string provenance;

  std::size_t size() const { return entries.rows(); }
};

enum class BoundRule {
  identity_span,  // tighter bound; needs nB > sqrt(dA dB) - 1 and 1 in span{G_k}
  generic,        // fallback from the arithmetic-geometric mean estimate
};

std::string to_string(BoundRule rule);

struct DetBoundVerdict {
  double det_d = 0.0;  // signed determinant of the data matrix
  double bound = 0.0;
  BoundRule bound_rule = BoundRule::generic;
  bool detected = false;
  double ccnr_lower = 0.0;  // certified lower bound on the correlation trace norm
  std::string detail;
};

// Three dichotomic settings against the cube map with the normalized
// identity-plus-pauli operator basis; exactly the published 4x4 layout.
DataMatrix data_matrix(const CorrelatorTable& table);

// General route: any dichotomic-Alice Z-set together with nB+1 operators on
// its side. Entries are sums of tr(G_k Z_i) tr(B_y omega_i) over the special
// solution, with the omega traces read off the correlator table.
DataMatrix data_matrix(const CorrelatorTable& table, const ZSet& z,
                       const std::vector<HermitianOperator>& basis_a);

// Determinant bound for non-steerable data and the rule that produced it.
std::pair<double, BoundRule> det_bound(std::size_t da, std::size_t db, int nb,
                                       bool identity_in_span);

// Certified lower bound on the correlation-matrix trace norm implied by a
// data-matrix determinant; values above 1 certify steering.
double ccnr_lower_bound(double det_d, std::size_t da, std::size_t db, int nb,
                        bool identity_in_span);

DetBoundVerdict dim_bound_verdict(const DataMatrix& d, std::size_t da, std::size_t db,
                                  bool identity_in_span, const Tolerances& tol = {});

}  // namespace steermap
