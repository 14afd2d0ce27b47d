#include "steermap/steering_map.hpp"

#include <cmath>
#include <numbers>

namespace steermap {

ZSet::ZSet(int n, int m, std::vector<HermitianOperator> zs)
    : params_(n, m, zs.empty() ? 2 : zs.front().dim()), zs_(std::move(zs)) {
  if (zs_.size() != params_.tuple_count())
    throw ValidationError("zset: expected one operator per outcome tuple");
  for (const auto& z : zs_)
    if (z.dim() != params_.d)
      throw ValidationError("zset: member dimensions differ");
}

ZSet ZSet::scaled(double factor) const {
  std::vector<HermitianOperator> zs;
  zs.reserve(zs_.size());
  for (const auto& z : zs_) zs.push_back(factor * z);
  return ZSet(params_.n, params_.m, std::move(zs));
}

ValidationReport validate_zset(const ZSet& z, const Tolerances& tol) {
  ValidationReport report;
  const int n = z.n();
  const int m = z.m();

  CheckResult positivity{"positivity", 0.0, tol.psd, true, ""};
  double worst_eig = 0.0;
  for (std::size_t flat = 0; flat < z.size(); ++flat) {
    const double lo = min_eigenvalue(z.z(flat));
    if (lo < worst_eig) {
      worst_eig = lo;
      positivity.detail =
          "Z(" + tuple_label(flat_to_tuple(flat, n, m)) + ") has eigenvalue " +
          std::to_string(lo);
    }
  }
  positivity.worst = -worst_eig;
  positivity.passed = worst_eig >= -tol.psd;
  report.checks.push_back(positivity);

  // Z_i = sum_x Z_(anchor with i_x at slot x) - (n-1) Z_anchor.
  const std::vector<int> anchor(static_cast<std::size_t>(n), m);
  const auto& z_anchor = z.z(anchor);
  CheckResult relation{"completeness-relations", 0.0, tol.zset_relation, true, ""};
  for (std::size_t flat = 0; flat < z.size(); ++flat) {
    const auto tuple = flat_to_tuple(flat, n, m);
    ComplexMatrix rhs(z.dim_a(), z.dim_a());
    for (int slot = 0; slot < n; ++slot) {
      auto single = anchor;
      single[static_cast<std::size_t>(slot)] = tuple[static_cast<std::size_t>(slot)];
      rhs += z.z(single).matrix();
    }
    rhs -= Complex(static_cast<double>(n - 1), 0.0) * z_anchor.matrix();
    const double dev = (z.z(flat).matrix() - rhs).max_abs();
    if (dev > relation.worst) {
      relation.worst = dev;
      relation.detail = "Z(" + tuple_label(tuple) + ")";
    }
  }
  relation.passed = relation.worst <= tol.zset_relation;
  report.checks.push_back(relation);

  return report;
}

SigmaOperator map_sigma(const ZSet& z, const HiddenStateModel& model) {
  if (z.n() != model.params.n || z.m() != model.params.m)
    throw ValidationError("sigma: Z-set and hidden-state model shapes differ");
  const std::size_t da = z.dim_a();
  const std::size_t db = model.params.d;
  ComplexMatrix sum(da * db, da * db);
  for (std::size_t flat = 0; flat < z.size(); ++flat) {
    if (model.omegas[flat].matrix().max_abs() == 0.0) continue;
    sum += kron(z.z(flat).matrix(), model.omegas[flat].matrix());
  }
  HermitianOperator matrix(HermitianOperator::unchecked_t{}, std::move(sum));
  const double trace = matrix.matrix().trace().real();
  return SigmaOperator{da, db, std::move(matrix), trace};
}

SigmaOperator build_sigma(const ZSet& z, const Ensemble& e, const Tolerances& tol) {
  if (z.n() != e.params().n || z.m() != e.params().m)
    throw ValidationError("sigma: Z-set and ensemble shapes differ");
  const auto report = validate_zset(z, tol);
  if (!report.valid()) throw ValidationError("sigma: Z-set is not a valid steering map");
  return map_sigma(z, special_solution(e));
}

double sigma_trace(const SigmaOperator& s) { return s.trace; }

ZSet cube_zset() {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  std::vector<ComplexMatrix> sigma(3, ComplexMatrix(2, 2));
  sigma[0](0, 1) = 1.0;
  sigma[0](1, 0) = 1.0;
  sigma[1](0, 1) = Complex(0.0, -1.0);
  sigma[1](1, 0) = Complex(0.0, 1.0);
  sigma[2](0, 0) = 1.0;
  sigma[2](1, 1) = -1.0;

  // Outcome label 1 is the + corner, label 2 the - corner.
  std::vector<HermitianOperator> zs;
  zs.reserve(8);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) {
        const double si = i == 1 ? 1.0 : -1.0;
        const double sj = j == 1 ? 1.0 : -1.0;
        const double sk = k == 1 ? 1.0 : -1.0;
        ComplexMatrix bloch =
            Complex(si, 0.0) * sigma[0] + Complex(sj, 0.0) * sigma[1] +
            Complex(sk, 0.0) * sigma[2];
        ComplexMatrix z = ComplexMatrix::identity(2) + Complex(inv_sqrt3, 0.0) * bloch;
        z *= Complex(0.5, 0.0);
        zs.emplace_back(std::move(z), 1e-15);
      }
  return ZSet(3, 2, std::move(zs));
}

MubConstruction mub_construction(std::size_t d) {
  if (d < 2) throw ValidationError("mub: dimension must be at least 2");
  const double sd = std::sqrt(static_cast<double>(d));

  MubConstruction out{d,
                      ComplexMatrix(d, d),
                      {},
                      {},
                      ComplexMatrix(d, 1),
                      ComplexMatrix(d, 1),
                      0.0,
                      0.0};

  const double theta = 2.0 * std::numbers::pi / static_cast<double>(d);
  auto q_pow = [&](long e) {
    const long r = ((e % static_cast<long>(d)) + static_cast<long>(d)) %
                   static_cast<long>(d);
    const double angle = theta * static_cast<double>(r);
    return Complex(std::cos(angle), std::sin(angle));
  };

  // psi_k = F phi_k with F_{lk} = q^{kl} / sqrt(d).
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k)
      out.fourier(l, k) = q_pow(static_cast<long>(k * l)) / sd;

  // U shifts the phi basis, V phases it; powers give the two cyclic families.
  out.shift_ops.reserve(d);
  out.phase_ops.reserve(d);
  for (std::size_t x = 0; x < d; ++x) {
    ComplexMatrix u(d, d);
    ComplexMatrix v(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      u((k + x) % d, k) = 1.0;
      v(k, k) = q_pow(static_cast<long>(x * k));
    }
    out.shift_ops.push_back(std::move(u));
    out.phase_ops.push_back(std::move(v));
  }

  // chi_pm proportional to phi_0 +- psi_0; <phi_0|psi_0> = 1/sqrt(d), so the
  // squared norms are 2 +- 2/sqrt(d).
  const double norm_plus = std::sqrt(2.0 + 2.0 / sd);
  const double norm_minus = std::sqrt(2.0 - 2.0 / sd);
  for (std::size_t l = 0; l < d; ++l) {
    const Complex phi0 = l == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    const Complex psi0 = out.fourier(l, 0);
    out.chi_plus(l, 0) = (phi0 + psi0) / norm_plus;
    out.chi_minus(l, 0) = (phi0 - psi0) / norm_minus;
  }

  const double denom = sd * (sd - 1.0) * (sd + 2.0);
  out.mu1 = 2.0 / denom;
  out.mu2 = (1.0 + sd) / denom;
  return out;
}

ZSet MubConstruction::zset() const {
  const auto proj = [](const ComplexMatrix& v) { return v * v.adjoint(); };
  ComplexMatrix z00 = Complex(mu1, 0.0) * proj(chi_minus);
  z00 += Complex(mu2, 0.0) *
         (ComplexMatrix::identity(d) - proj(chi_plus) - proj(chi_minus));

  std::vector<HermitianOperator> zs;
  zs.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix w = shift_ops[k] * phase_ops[l];
      zs.emplace_back(w * z00 * w.adjoint(), 1e-10);
    }
  return ZSet(2, static_cast<int>(d), std::move(zs));
}

ZSet mub_zset(std::size_t d) { return mub_construction(d).zset(); }

ZSet named_zset(const std::string& name) {
  if (name == "cube") return cube_zset();
  if (name.rfind("mub:", 0) == 0) {
    const auto arg = name.substr(4);
    std::size_t pos = 0;
    const unsigned long d = std::stoul(arg, &pos);
    if (pos != arg.size() || d < 2)
      throw ValidationError("zset name: expected mub:<d> with d >= 2");
    return mub_zset(d);
  }
  throw ValidationError("unknown built-in Z-set '" + name + "' (try cube or mub:<d>)");
}

}  // namespace steermap
