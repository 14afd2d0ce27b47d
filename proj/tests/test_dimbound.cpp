#include <cmath>
#include <random>

#include "doctest.h"
#include "steermap/dimbound.hpp"
#include "test_util.hpp"

using namespace steermap;

namespace {

CorrelatorTable diagonal_table(double plambda) {
  std::vector<std::vector<double>> corr(3, std::vector<double>(3, 0.0));
  for (int s = 0; s < 3; ++s) corr[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = -plambda;
  return CorrelatorTable(3, 3, std::move(corr), {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0});
}

CorrelatorTable random_table(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> corr(3, std::vector<double>(3));
  std::vector<double> ma(3), mb(3);
  for (auto& row : corr)
    for (auto& v : row) v = u(rng);
  for (auto& v : ma) v = u(rng);
  for (auto& v : mb) v = u(rng);
  return CorrelatorTable(3, 3, std::move(corr), std::move(ma), std::move(mb));
}

// Identity-first pauli basis scaled to unit Hilbert-Schmidt norm.
std::vector<HermitianOperator> pauli_basis() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<HermitianOperator> basis{inv_sqrt2 * HermitianOperator::identity(2)};
  for (int s = 1; s <= 3; ++s) basis.push_back(inv_sqrt2 * test_util::pauli(s));
  return basis;
}

}  // namespace

TEST_CASE("correlator table: rejects out-of-range and incomplete data") {
  CHECK_THROWS_AS(CorrelatorTable(1, 1, {{1.5}}, {0.0}, {0.0}), ValidationError);
  CHECK_THROWS_AS(CorrelatorTable(2, 1, {{0.0}}, {0.0, 0.0}, {0.0}), ValidationError);
}

TEST_CASE("data matrix: diagonal correlators give the diagonal matrix") {
  const auto d = data_matrix(diagonal_table(1.0));
  const auto expect = ComplexMatrix::diagonal(std::vector<double>{
      1.0 / std::sqrt(2.0), -1.0 / std::sqrt(6.0), -1.0 / std::sqrt(6.0),
      -1.0 / std::sqrt(6.0)});
  CHECK((d.entries - expect).max_abs() < 1e-15);
}

TEST_CASE("data matrix: determinant scales cubically in the visibility") {
  const auto d0 = data_matrix(diagonal_table(0.0));
  CHECK(std::abs(determinant(d0.entries)) == 0.0);

  const auto d9 = data_matrix(diagonal_table(0.9));
  const double det = determinant(d9.entries).real();
  CHECK(std::abs(det) ==
        doctest::Approx(std::pow(0.9, 3) / (12.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("data matrix: the generic route reproduces the cube layout") {
  std::mt19937_64 rng(606);
  const auto basis = pauli_basis();
  for (int rep = 0; rep < 5; ++rep) {
    const auto table = random_table(rng);
    const auto direct = data_matrix(table);
    const auto generic = data_matrix(table, cube_zset(), basis);
    CHECK((direct.entries - generic.entries).max_abs() < 1e-12);
  }
}

TEST_CASE("data matrix: determinant magnitude is invariant under basis rotations") {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> dist(0.0, 1.0);
  const auto basis = pauli_basis();
  const auto table = random_table(rng);
  const double reference = std::abs(determinant(data_matrix(table, cube_zset(), basis).entries));

  for (int rep = 0; rep < 5; ++rep) {
    // Random orthogonal mixing of the four basis elements.
    std::vector<std::vector<double>> q(4, std::vector<double>(4));
    for (auto& row : q)
      for (auto& v : row) v = dist(rng);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < 4; ++k) dot += q[i][k] * q[j][k];
        for (std::size_t k = 0; k < 4; ++k) q[i][k] -= dot * q[j][k];
      }
      double norm = 0.0;
      for (double v : q[i]) norm += v * v;
      norm = std::sqrt(norm);
      for (auto& v : q[i]) v /= norm;
    }
    std::vector<HermitianOperator> rotated;
    for (std::size_t i = 0; i < 4; ++i) {
      ComplexMatrix sum(2, 2);
      for (std::size_t k = 0; k < 4; ++k)
        sum += Complex(q[i][k], 0.0) * basis[k].matrix();
      rotated.emplace_back(std::move(sum), 1e-12);
    }
    const double value =
        std::abs(determinant(data_matrix(table, cube_zset(), rotated).entries));
    CHECK(std::abs(value - reference) < 1e-9);
  }
}

TEST_CASE("data matrix: shape and basis mismatches are rejected") {
  const auto table = diagonal_table(0.5);
  CHECK_THROWS_AS(data_matrix(CorrelatorTable(2, 2, {{0.0, 0.0}, {0.0, 0.0}},
                                              {0.0, 0.0}, {0.0, 0.0})),
                  ValidationError);
  CHECK_THROWS_AS(data_matrix(table, mub_zset(3), pauli_basis()), ValidationError);
  auto short_basis = pauli_basis();
  short_basis.pop_back();
  CHECK_THROWS_AS(data_matrix(table, cube_zset(), short_basis), ValidationError);
}

TEST_CASE("det bound: qubit values are exact") {
  const auto [tight, tight_rule] = det_bound(2, 2, 3, true);
  CHECK(tight == 1.0 / 108.0);
  CHECK(tight * 108.0 == 1.0);
  CHECK(tight_rule == BoundRule::identity_span);

  const auto [fallback, fallback_rule] = det_bound(2, 2, 3, false);
  CHECK(fallback == 0.015625);  // 1/64
  CHECK(fallback_rule == BoundRule::generic);

  const auto [two, two_rule] = det_bound(2, 2, 2, true);
  CHECK(two == doctest::Approx(1.0 / (8.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(two_rule == BoundRule::identity_span);

  // nB = 1 fails the strict inequality nB > sqrt(dA dB) - 1.
  CHECK(det_bound(2, 2, 1, true).second == BoundRule::generic);
}

TEST_CASE("ccnr lower bound: boundary and detection values") {
  CHECK(ccnr_lower_bound(0.0, 2, 2, 3, true) <= 1.0);
  CHECK(std::abs(ccnr_lower_bound(1.0 / 108.0, 2, 2, 3, true) - 1.0) < 1e-12);
  const double at_full = ccnr_lower_bound(1.0 / (12.0 * std::sqrt(3.0)), 2, 2, 3, true);
  CHECK(at_full == doctest::Approx((1.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-12));
  CHECK(at_full > 1.0);
  // The refinement can only strengthen the plain estimate.
  for (double det : {1e-4, 1e-3, 1e-2, 0.04}) {
    CHECK(ccnr_lower_bound(det, 2, 2, 3, true) >=
          ccnr_lower_bound(det, 2, 2, 3, false) - 1e-15);
  }
}

TEST_CASE("verdict: detection across the visibility range") {
  const auto strong = dim_bound_verdict(data_matrix(diagonal_table(1.0)), 2, 2, true);
  CHECK(strong.detected);
  CHECK(std::abs(strong.det_d) ==
        doctest::Approx(1.0 / (12.0 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(strong.bound == 1.0 / 108.0);
  CHECK(strong.bound_rule == BoundRule::identity_span);
  CHECK(strong.ccnr_lower > 1.0);

  const auto weak = dim_bound_verdict(data_matrix(diagonal_table(0.5)), 2, 2, true);
  CHECK_FALSE(weak.detected);
  CHECK(std::abs(weak.det_d) == doctest::Approx(0.125 / (12.0 * std::sqrt(3.0))).epsilon(1e-12));

  const auto zero = dim_bound_verdict(data_matrix(diagonal_table(0.0)), 2, 2, true);
  CHECK_FALSE(zero.detected);
  CHECK(zero.detail.find("not certified") != std::string::npos);
}

TEST_CASE("verdict: detection flips at the inverse square root of 3") {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    const auto v = dim_bound_verdict(data_matrix(diagonal_table(mid)), 2, 2, true);
    (v.detected ? hi : lo) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("verdict: near-boundary band is flagged") {
  // Visibility chosen so |det D| sits within 1e-7 of the bound.
  const double p_star = 1.0 / std::sqrt(3.0);
  const auto v = dim_bound_verdict(data_matrix(diagonal_table(p_star)), 2, 2, true);
  CHECK(v.detail.find("inconclusive-near-boundary") != std::string::npos);
}
