#include "steermap/lhs_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "steermap/separability.hpp"

namespace steermap {

namespace {

// Flat array of m^n Hermitian d x d blocks.
struct Blocks {
  std::size_t count = 0, d = 0;
  std::vector<Complex> data;

  Blocks() = default;
  Blocks(std::size_t c, std::size_t dim)
      : count(c), d(dim), data(c * dim * dim, Complex(0.0, 0.0)) {}

  Complex* block(std::size_t i) { return data.data() + i * d * d; }
  const Complex* block(std::size_t i) const { return data.data() + i * d * d; }
};

double gap_norm(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += std::norm(a.data[i] - b.data[i]);
  return std::sqrt(s);
}

// Orthonormalize the integer homogeneous directions (modified Gram-Schmidt,
// two passes; the vectors are linearly independent by construction).
std::vector<std::vector<double>> orthonormal_directions(const HomogeneousBasis& basis) {
  std::vector<std::vector<double>> us;
  us.reserve(basis.vectors.size());
  for (const auto& vi : basis.vectors) {
    std::vector<double> u(vi.begin(), vi.end());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& prev : us) {
        double dot = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * prev[i];
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= dot * prev[i];
      }
    double norm = 0.0;
    for (double v : u) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : u) v /= norm;
    us.push_back(std::move(u));
  }
  return us;
}

struct Solver {
  ScenarioParams params;
  std::size_t count = 0, d = 0, bs = 0;
  Blocks omega0;
  std::vector<double> omega0_traces;
  std::vector<std::vector<double>> us;

  // scratch
  std::vector<Complex> eig_buf;
  std::vector<double> evals;
  std::vector<Complex> evecs;
  std::vector<Complex> coef;

  explicit Solver(const Ensemble& e) : params(e.params()) {
    count = params.tuple_count();
    d = params.d;
    bs = d * d;
    omega0 = Blocks(count, d);
    const auto model = special_solution(e);
    omega0_traces.resize(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      const auto& m = model.omegas[i].matrix();
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) omega0.block(i)[r * d + c] = m(r, c);
      omega0_traces[i] = m.trace().real();
    }
    us = orthonormal_directions(homogeneous_basis(params));
  }

  // Orthogonal projection onto the solution subspace of the hidden-state
  // equations: omega0 plus the span of the homogeneous directions.
  void project_affine(Blocks& b) {
    const std::size_t k = us.size();
    coef.assign(k * bs, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
      Complex* cj = coef.data() + j * bs;
      for (std::size_t i = 0; i < count; ++i) {
        const double w = us[j][i];
        if (w == 0.0) continue;
        const Complex* bi = b.block(i);
        const Complex* oi = omega0.block(i);
        for (std::size_t e = 0; e < bs; ++e) cj[e] += w * (bi[e] - oi[e]);
      }
    }
    b.data = omega0.data;
    for (std::size_t j = 0; j < k; ++j) {
      const Complex* cj = coef.data() + j * bs;
      for (std::size_t i = 0; i < count; ++i) {
        const double w = us[j][i];
        if (w == 0.0) continue;
        Complex* bi = b.block(i);
        for (std::size_t e = 0; e < bs; ++e) bi[e] += w * cj[e];
      }
    }
  }

  double block_min_eig(const Complex* blk) {
    if (d == 2) {
      const double a = blk[0].real(), b2 = blk[3].real();
      const double mean = 0.5 * (a + b2), half = 0.5 * (a - b2);
      return mean - std::sqrt(half * half + std::norm(blk[1]));
    }
    eig_buf.assign(blk, blk + bs);
    detail::jacobi_hermitian(eig_buf, d, evals, nullptr);
    return evals.back();
  }

  double min_eig(const Blocks& b) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) lo = std::min(lo, block_min_eig(b.block(i)));
    return lo;
  }

  // Clamp every block to eigenvalues >= t; returns the minimum eigenvalue
  // seen before clamping.
  double clamp_blocks(Blocks& b, double t) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      Complex* blk = b.block(i);
      if (d == 2) {
        const double a = blk[0].real(), b2 = blk[3].real();
        const double mean = 0.5 * (a + b2), half = 0.5 * (a - b2);
        const double r = std::sqrt(half * half + std::norm(blk[1]));
        lo = std::min(lo, mean - r);
        if (mean - r >= t) continue;
        const double l1 = std::max(mean + r, t), l2 = t;
        if (r < 1e-300) {
          blk[0] = l1;
          blk[3] = l1;
          blk[1] = blk[2] = 0.0;
        } else {
          const double s = 0.5 * (l1 + l2), f = 0.5 * (l1 - l2) / r;
          blk[0] = s + f * half;
          blk[3] = s - f * half;
          blk[1] *= f;
          blk[2] *= f;
        }
        continue;
      }
      eig_buf.assign(blk, blk + bs);
      detail::jacobi_hermitian(eig_buf, d, evals, &evecs);
      lo = std::min(lo, evals.back());
      if (evals.back() >= t) continue;
      for (double& v : evals) v = std::max(v, t);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          Complex s = 0.0;
          for (std::size_t k2 = 0; k2 < d; ++k2)
            s += evals[k2] * evecs[r * d + k2] * std::conj(evecs[c * d + k2]);
          blk[r * d + c] = s;
        }
    }
    return lo;
  }

  // Remove the component along the homogeneous directions, then shift by a
  // multiple of the identity (the all-ones direction is orthogonal to every
  // homogeneous vector) until every block is positive semidefinite.
  void clean_dual(Blocks& z) {
    for (const auto& uj : us) {
      coef.assign(bs, Complex(0.0, 0.0));
      for (std::size_t i = 0; i < count; ++i) {
        const double w = uj[i];
        if (w == 0.0) continue;
        const Complex* zi = z.block(i);
        for (std::size_t e = 0; e < bs; ++e) coef[e] += w * zi[e];
      }
      for (std::size_t i = 0; i < count; ++i) {
        const double w = uj[i];
        if (w == 0.0) continue;
        Complex* zi = z.block(i);
        for (std::size_t e = 0; e < bs; ++e) zi[e] -= w * coef[e];
      }
    }
    double shift = 0.0;
    double scale = 0.0;
    for (const auto& v : z.data) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < count; ++i)
      shift = std::max(shift, -block_min_eig(z.block(i)));
    shift += 1e-15 * (1.0 + scale);
    for (std::size_t i = 0; i < count; ++i) {
      Complex* zi = z.block(i);
      for (std::size_t r = 0; r < d; ++r) zi[r * d + r] += shift;
    }
  }

  // Normalized objective of a cleaned dual candidate: a certified upper
  // bound on the feasibility margin by weak duality.
  std::optional<double> dual_value(const Blocks& z) const {
    double trace_sum = 0.0;
    double objective = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Complex* zi = z.block(i);
      for (std::size_t r = 0; r < d; ++r) trace_sum += zi[r * d + r].real();
      const Complex* oi = omega0.block(i);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          objective += (zi[r * d + c] * oi[c * d + r]).real();
    }
    if (trace_sum < 1e-14) return std::nullopt;
    return objective / trace_sum;
  }

  std::vector<HermitianOperator> to_hermitians(const Blocks& b) const {
    std::vector<HermitianOperator> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      ComplexMatrix m(d, d);
      const Complex* bi = b.block(i);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          m(r, c) = 0.5 * (bi[r * d + c] + std::conj(bi[c * d + r]));
      out.emplace_back(HermitianOperator::unchecked_t{}, std::move(m));
    }
    return out;
  }
};

struct PassResult {
  double best_primal = -std::numeric_limits<double>::infinity();
  bool reached = false;
  int iterations = 0;
};

// Alternate projections between the affine subspace and the shifted cone.
// y stays in the subspace; z holds the latest cone projection, so z - y is
// the displacement that seeds the dual certificate.
PassResult feasibility_pass(Solver& s, double t, Blocks& y, Blocks& z, int budget,
                            Blocks* best_blocks) {
  PassResult res;
  s.project_affine(y);

  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(std::max(budget, 1)));
  for (int iter = 1; iter <= budget; ++iter) {
    res.iterations = iter;
    z = y;
    const double lo = s.clamp_blocks(z, t);
    if (lo > res.best_primal) {
      res.best_primal = lo;
      if (best_blocks) *best_blocks = y;
    }
    if (lo >= t - 1e-13) {
      res.reached = true;
      break;
    }
    const double gap = gap_norm(y, z);
    gaps.push_back(gap);
    const std::size_t n = gaps.size();
    if (n > 120 && gaps[n - 101] - gap < 1e-6 * gap + 1e-18) break;  // stalled
    y = z;
    s.project_affine(y);
  }
  return res;
}

}  // namespace

std::optional<ZSet> extract_witness(const Ensemble& e,
                                    const std::vector<HermitianOperator>& dual_blocks,
                                    const Tolerances& tol) {
  const auto& p = e.params();
  if (dual_blocks.size() != p.tuple_count())
    throw ValidationError("witness: expected one dual block per outcome tuple");
  for (const auto& b : dual_blocks)
    if (b.dim() != p.d) throw ValidationError("witness: dual block dimension mismatch");

  Solver s(e);
  Blocks z(s.count, s.d);
  for (std::size_t i = 0; i < s.count; ++i) {
    const auto& m = dual_blocks[i].matrix();
    for (std::size_t r = 0; r < s.d; ++r)
      for (std::size_t c = 0; c < s.d; ++c) z.block(i)[r * s.d + c] = m(r, c);
  }
  s.clean_dual(z);

  const auto model = special_solution(e);
  auto evaluate = [&](const Blocks& blocks) {
    double objective = 0.0, sigma_trace_value = 0.0;
    for (std::size_t i = 0; i < s.count; ++i) {
      const Complex* zi = blocks.block(i);
      double ztr = 0.0;
      for (std::size_t r = 0; r < s.d; ++r) ztr += zi[r * s.d + r].real();
      sigma_trace_value += ztr * s.omega0_traces[i];
      const Complex* oi = s.omega0.block(i);
      for (std::size_t r = 0; r < s.d; ++r)
        for (std::size_t c = 0; c < s.d; ++c)
          objective += (zi[r * s.d + c] * oi[c * s.d + r]).real();
    }
    return std::pair{objective, sigma_trace_value};
  };

  auto [objective, sigma_tr] = evaluate(z);
  if (objective >= -1e-15) return std::nullopt;  // does not separate

  if (sigma_tr <= 1e-12) {
    // Shift along an outcome indicator (orthogonal to every homogeneous
    // direction) to make the mapped trace positive while keeping the
    // objective negative.
    bool repaired = false;
    for (int x = 1; x <= p.n && !repaired; ++x)
      for (int a = 1; a < p.m && !repaired; ++a) {
        const double tau = e.probability(a, x);
        if (tau < 1e-9) continue;
        const double lower = std::max(0.0, -sigma_tr) / (static_cast<double>(s.d) * tau);
        const double upper = -objective / tau;
        if (!(lower < upper)) continue;
        const double eps = 0.5 * (lower + upper);
        for (std::size_t flat = 0; flat < s.count; ++flat) {
          const auto tuple = flat_to_tuple(flat, p.n, p.m);
          if (tuple[static_cast<std::size_t>(x - 1)] != a) continue;
          Complex* zi = z.block(flat);
          for (std::size_t r = 0; r < s.d; ++r) zi[r * s.d + r] += eps;
        }
        repaired = true;
      }
    if (!repaired) return std::nullopt;
    std::tie(objective, sigma_tr) = evaluate(z);
    if (sigma_tr <= 0.0 || objective >= 0.0) return std::nullopt;
  }

  const double inv = 1.0 / sigma_tr;
  for (auto& v : z.data) v *= inv;

  ZSet witness(p.n, p.m, s.to_hermitians(z));
  if (!validate_zset(witness, tol).valid()) return std::nullopt;
  if (swap_witness(witness, e, tol).value >= 0.0) return std::nullopt;
  return witness;
}

LhsVerdict decide(const Ensemble& e, const LhsOptions& options) {
  if (options.tol < 1e-8)
    throw ValidationError("decide: tolerance below the supported resolution of 1e-8");
  if (!validate(e, options.tolerances).valid())
    throw ValidationError("decide: ensemble fails validation; run validate() for details");

  Solver s(e);
  LhsVerdict verdict;

  double t_lo = s.min_eig(s.omega0);
  double t_hi = min_eigenvalue(e.reduced_state()) / static_cast<double>(s.count) + 1e-12;
  t_hi = std::max(t_hi, t_lo);

  Blocks best_primal = s.omega0;

  if (s.us.empty()) {
    // Single-setting scenarios have a unique solution; the margin is exact.
    t_hi = t_lo;
  } else {
    const double target = std::clamp(options.tol / 10.0, 1e-12, 1e-9);
    Blocks y = s.omega0, z(s.count, s.d);
    int stalls = 0;
    for (int depth = 0; depth < options.bisection_depth; ++depth) {
      if (t_hi - t_lo <= target) break;
      const double width_before = t_hi - t_lo;
      const double t_mid = 0.5 * (t_lo + t_hi);

      const auto pass =
          feasibility_pass(s, t_mid, y, z, options.max_iterations, &best_primal);
      verdict.iterations += pass.iterations;
      if (pass.best_primal > t_lo) t_lo = pass.best_primal;
      if (!pass.reached) {
        Blocks w = z;
        for (std::size_t i = 0; i < w.data.size(); ++i) w.data[i] -= y.data[i];
        s.clean_dual(w);
        if (const auto cert = s.dual_value(w))
          t_hi = std::max(t_lo, std::min(t_hi, *cert));
      }
      if (t_hi - t_lo > 0.9 * width_before) {
        if (++stalls >= 2) {
          verdict.note = "projection stalled before reaching the target resolution";
          break;
        }
      } else {
        stalls = 0;
      }
    }
  }

  verdict.lower = t_lo;
  verdict.upper = t_hi;
  verdict.margin = 0.5 * (t_lo + t_hi);
  verdict.residual = t_hi - t_lo;

  if (t_hi < -options.tol) {
    verdict.outcome = LhsOutcome::steerable;
  } else if (t_lo >= -options.tol) {
    verdict.outcome = LhsOutcome::non_steerable;
    verdict.model = HiddenStateModel{s.params, s.to_hermitians(best_primal)};
  } else {
    verdict.outcome = LhsOutcome::undecided;
    if (verdict.note.empty())
      verdict.note = "margin bracket straddles the decision tolerance";
  }

  if (verdict.outcome == LhsOutcome::steerable) {
    // Rerun at a shift strictly between the margin and zero: the limiting
    // displacement of an infeasible level is the dual certificate.
    for (double factor : {0.9, 0.5, 0.2}) {
      const double t_w = t_hi * factor;
      Blocks y = s.omega0, z(s.count, s.d);
      const auto pass = feasibility_pass(s, t_w, y, z, options.max_iterations, nullptr);
      verdict.iterations += pass.iterations;
      if (pass.reached) continue;
      Blocks w = z;
      for (std::size_t i = 0; i < w.data.size(); ++i) w.data[i] -= y.data[i];
      s.clean_dual(w);
      if (auto witness = extract_witness(e, s.to_hermitians(w), options.tolerances)) {
        verdict.witness = std::move(witness);
        break;
      }
    }
    if (!verdict.witness)
      verdict.note = verdict.note.empty() ? "witness-unavailable"
                                          : verdict.note + "; witness-unavailable";
  }

  return verdict;
}

}  // namespace steermap
