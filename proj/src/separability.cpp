#include "steermap/separability.hpp"

#include <cmath>

namespace steermap {

namespace {

void append_detail(std::string& detail, const std::string& code) {
  if (!detail.empty()) detail += "; ";
  detail += code;
}

void flag_near_boundary(CriterionVerdict& v, const Tolerances& tol) {
  if (std::abs(v.value - v.threshold) < tol.near_boundary)
    append_detail(v.detail, "inconclusive-near-boundary");
}

}  // namespace

CriterionVerdict ppt(const SigmaOperator& s, const Tolerances& tol) {
  CriterionVerdict v{"ppt", 0.0, 0.0, false, ""};
  const double direct_min = min_eigenvalue(s.matrix);
  if (direct_min < -tol.detection) {
    // Entangled or no quantum state at all; nothing left to transpose.
    v.value = direct_min;
    v.detected = true;
    append_detail(v.detail, "not-a-quantum-state");
    flag_near_boundary(v, tol);
    return v;
  }
  const auto pt = partial_transpose(s.matrix, s.dim_a, s.dim_b, Side::B);
  v.value = min_eigenvalue(pt);
  v.detected = v.value < -tol.detection;
  flag_near_boundary(v, tol);
  return v;
}

CriterionVerdict ccnr_with_bases(const SigmaOperator& s,
                                 const std::vector<HermitianOperator>& basis_a,
                                 const std::vector<HermitianOperator>& basis_b,
                                 const Tolerances& tol) {
  for (const auto& g : basis_a)
    if (g.dim() != s.dim_a) throw ValidationError("ccnr: basis A dimension mismatch");
  for (const auto& g : basis_b)
    if (g.dim() != s.dim_b) throw ValidationError("ccnr: basis B dimension mismatch");

  const std::size_t da = s.dim_a, db = s.dim_b;
  ComplexMatrix corr(basis_a.size(), basis_b.size());
  for (std::size_t k = 0; k < basis_a.size(); ++k)
    for (std::size_t l = 0; l < basis_b.size(); ++l) {
      // tr[(G_k (x) G_l) Sigma], real for Hermitian inputs.
      Complex t = 0.0;
      for (std::size_t a = 0; a < da; ++a)
        for (std::size_t ap = 0; ap < da; ++ap) {
          const Complex ga = basis_a[k].matrix()(a, ap);
          if (ga == Complex(0.0, 0.0)) continue;
          for (std::size_t b = 0; b < db; ++b)
            for (std::size_t bp = 0; bp < db; ++bp) {
              const Complex gb = basis_b[l].matrix()(b, bp);
              if (gb == Complex(0.0, 0.0)) continue;
              t += ga * gb * s.matrix.matrix()(ap * db + bp, a * db + b);
            }
        }
      corr(k, l) = t.real();
    }

  CriterionVerdict v{"ccnr", trace_norm(corr), 1.0, false, ""};
  v.detected = v.value > 1.0 + tol.detection;
  flag_near_boundary(v, tol);
  return v;
}

CriterionVerdict ccnr(const SigmaOperator& s, const Tolerances& tol) {
  return ccnr_with_bases(s, orthonormal_hermitian_basis(s.dim_a),
                         orthonormal_hermitian_basis(s.dim_b), tol);
}

CriterionVerdict swap_witness(const ZSet& z, const Ensemble& e, const Tolerances& tol) {
  if (z.n() != e.params().n || z.m() != e.params().m)
    throw ValidationError("swap witness: Z-set and ensemble shapes differ");
  if (z.dim_a() != e.params().d)
    throw ValidationError("swap witness: requires dimA equal to the characterized dimension");

  const auto model = special_solution(e);
  double value = 0.0;
  for (std::size_t flat = 0; flat < z.size(); ++flat) {
    const auto& omega = model.omegas[flat].matrix();
    if (omega.max_abs() == 0.0) continue;
    value += (z.z(flat).matrix() * omega).trace().real();
  }

  CriterionVerdict v{"swap", value, 0.0, false, ""};
  v.detected = value < -tol.detection;
  flag_near_boundary(v, tol);
  return v;
}

std::vector<HermitianOperator> orthonormal_hermitian_basis(std::size_t dim) {
  std::vector<HermitianOperator> basis;
  basis.reserve(dim * dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  ComplexMatrix eye = ComplexMatrix::identity(dim);
  eye *= Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0);
  basis.emplace_back(HermitianOperator::unchecked_t{}, std::move(eye));

  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      ComplexMatrix sym(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.emplace_back(HermitianOperator::unchecked_t{}, std::move(sym));

      ComplexMatrix asym(dim, dim);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      basis.emplace_back(HermitianOperator::unchecked_t{}, std::move(asym));
    }

  for (std::size_t l = 1; l < dim; ++l) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    ComplexMatrix diag(dim, dim);
    for (std::size_t j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -norm * static_cast<double>(l);
    basis.emplace_back(HermitianOperator::unchecked_t{}, std::move(diag));
  }

  return basis;
}

ComplexMatrix swap_operator(std::size_t d) {
  ComplexMatrix v(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

}  // namespace steermap
