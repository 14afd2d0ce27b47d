#include <cmath>
#include <random>

#include "doctest.h"
#include "steermap/linalg.hpp"

using namespace steermap;

namespace {

const Complex I(0.0, 1.0);

HermitianOperator pauli(int s) {
  ComplexMatrix m(2, 2);
  switch (s) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -I; m(1, 0) = I; break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v(dist(rng), dist(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return HermitianOperator(std::move(m));
}

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

// |psi-><psi-| for two qubits, built entry by entry.
HermitianOperator singlet_projector() {
  ComplexMatrix m(4, 4);
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  return HermitianOperator(std::move(m));
}

}  // namespace

TEST_CASE("eig: identity has unit eigenvalues") {
  const auto r = eig_hermitian(HermitianOperator::identity(2));
  CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig: diagonal pauli") {
  const auto r = eig_hermitian(pauli(3));
  CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eig: sigma_1 closed form") {
  const auto r = eig_hermitian(pauli(1));
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-13));
  // Eigenvectors are (|0> +- |1>)/sqrt(2) up to phase: components of each
  // column have equal magnitude 1/sqrt(2).
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t col = 0; col < 2; ++col) {
    CHECK(std::abs(r.eigenvectors(0, col)) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(std::abs(r.eigenvectors(1, col)) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  }
  // And sigma_1 v = lambda v.
  const auto prod = pauli(1).matrix() * r.eigenvectors;
  for (std::size_t col = 0; col < 2; ++col)
    for (std::size_t row = 0; row < 2; ++row)
      CHECK(std::abs(prod(row, col) - r.eigenvalues[col] * r.eigenvectors(row, col)) < 1e-12);
}

TEST_CASE("eig: reconstruction of random hermitian matrices") {
  std::mt19937_64 rng(12345);
  for (std::size_t n : {2, 3, 5, 8, 16}) {
    const auto a = random_hermitian(n, rng);
    const auto r = eig_hermitian(a);
    ComplexMatrix lambda(n, n);
    for (std::size_t i = 0; i < n; ++i) lambda(i, i) = r.eigenvalues[i];
    const auto rebuilt = r.eigenvectors * lambda * r.eigenvectors.adjoint();
    CHECK((rebuilt - a.matrix()).max_abs() <= 1e-10 * static_cast<double>(n));
    // Descending order.
    for (std::size_t i = 0; i + 1 < n; ++i)
      CHECK(r.eigenvalues[i] >= r.eigenvalues[i + 1]);
  }
}

TEST_CASE("eig: rejects non-hermitian input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;  // nilpotent shift
  CHECK_THROWS_AS(HermitianOperator{std::move(m)}, ValidationError);
}

TEST_CASE("svd: zero matrix") {
  const auto s = singular_values(ComplexMatrix(3, 2));
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
}

TEST_CASE("svd: diagonal sign pattern") {
  const double a = 1.0 / std::sqrt(2.0);
  const double b = -1.0 / std::sqrt(6.0);
  const auto s = singular_values(ComplexMatrix::diagonal(std::vector<double>{a, b, b, b}));
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(s[i] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("svd: nilpotent shift") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  const auto s = singular_values(m);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s[1] == 0.0);
}

TEST_CASE("svd: matches gram-eigenvalue route and bounds |tr|") {
  std::mt19937_64 rng(777);
  for (int rep = 0; rep < 5; ++rep) {
    const auto m = random_matrix(6, 6, rng);
    const auto s = singular_values(m);

    // Independent route: eigenvalues of M^dagger M via the hermitian solver.
    const auto gram = HermitianOperator(m.adjoint() * m, 1e-9);
    const auto ev = eig_values(gram);
    double sum_s = 0.0, sum_e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      sum_s += s[i];
      sum_e += std::sqrt(std::max(ev[i], 0.0));
    }
    CHECK(std::abs(sum_s - sum_e) <= 1e-10 * std::max(1.0, sum_s));
    CHECK(sum_s + 1e-10 >= std::abs(m.trace()));
  }
}

TEST_CASE("partial transpose: product state, side A") {
  std::mt19937_64 rng(99);
  const auto p = random_hermitian(2, rng);
  const auto q = random_hermitian(3, rng);
  const auto pt = partial_transpose(kron(p, q), 2, 3, Side::A);
  const auto expect = kron(HermitianOperator(p.matrix().transpose(), 1e-9), q);
  CHECK((pt.matrix() - expect.matrix()).max_abs() < 1e-13);
}

TEST_CASE("partial transpose: singlet has minimum eigenvalue -1/2") {
  const auto pt = partial_transpose(singlet_projector(), 2, 2, Side::B);
  const auto ev = eig_values(pt);
  // Closed form spectrum {1/2, 1/2, 1/2, -1/2}.
  CHECK(ev[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ev[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose: involution, trace and hermiticity preserved") {
  std::mt19937_64 rng(4242);
  const auto a = random_hermitian(6, rng);
  for (Side side : {Side::A, Side::B}) {
    const auto pt = partial_transpose(a, 2, 3, side);
    CHECK(pt.matrix().hermiticity_error() == 0.0);
    CHECK(pt.matrix().trace() == a.matrix().trace());
    const auto back = partial_transpose(pt, 2, 3, side);
    CHECK((back.matrix() - a.matrix()).max_abs() == 0.0);
  }
}

TEST_CASE("partial transpose: dimension mismatch") {
  std::mt19937_64 rng(5);
  CHECK_THROWS_AS(partial_transpose(random_hermitian(5, rng), 2, 3, Side::A),
                  ValidationError);
}

TEST_CASE("partial trace: product state factors") {
  std::mt19937_64 rng(31);
  const auto p = random_hermitian(2, rng);
  const auto q = random_hermitian(3, rng);
  const auto full = kron(p, q).matrix();
  const auto tb = partial_trace(full, 2, 3, Side::B);
  const auto ta = partial_trace(full, 2, 3, Side::A);
  CHECK((tb - q.matrix().trace() * p.matrix()).max_abs() < 1e-12);
  CHECK((ta - p.matrix().trace() * q.matrix()).max_abs() < 1e-12);
}

TEST_CASE("kron: pauli_3 with itself") {
  const auto k = kron(pauli(3), pauli(3));
  const auto expect = ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0, -1.0, 1.0});
  CHECK((k.matrix() - expect).max_abs() == 0.0);
}

TEST_CASE("determinant: identity and diagonal closed form") {
  CHECK(determinant(ComplexMatrix::identity(4)) == Complex(1.0, 0.0));

  const double a = 1.0 / std::sqrt(2.0);
  const double b = -1.0 / std::sqrt(6.0);
  const auto d = determinant(ComplexMatrix::diagonal(std::vector<double>{a, b, b, b}));
  // Product of the diagonal: -1/(12 sqrt(3)).
  CHECK(d.real() == doctest::Approx(-1.0 / (12.0 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(std::abs(d.imag()) < 1e-15);
}

TEST_CASE("determinant: multiplicative on random pairs") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = random_matrix(8, 8, rng);
    const auto b = random_matrix(8, 8, rng);
    const auto lhs = determinant(a * b);
    const auto rhs = determinant(a) * determinant(b);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
  }
}

TEST_CASE("determinant: rejects non-square input") {
  CHECK_THROWS_AS(determinant(ComplexMatrix(2, 3)), ValidationError);
}
