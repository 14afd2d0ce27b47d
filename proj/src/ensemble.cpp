#include "steermap/ensemble.hpp"

#include <cmath>
#include <string>

namespace steermap {

namespace {

constexpr std::size_t kMaxTuples = 1 << 20;

std::string state_label(int a, int x) {
  return "rho(" + std::to_string(a) + "|" + std::to_string(x) + ")";
}

}  // namespace

ScenarioParams::ScenarioParams(int n_, int m_, std::size_t d_) : n(n_), m(m_), d(d_) {
  if (n < 1) throw ValidationError("scenario: need at least one setting");
  if (m < 2) throw ValidationError("scenario: need at least two outcomes per setting");
  if (d < 2) throw ValidationError("scenario: Hilbert dimension must be at least 2");
  tuple_count();  // overflow guard
}

std::size_t ScenarioParams::tuple_count() const {
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<std::size_t>(m);
    if (count > kMaxTuples)
      throw ValidationError("scenario: m^n exceeds the supported desk scale");
  }
  return count;
}

std::size_t tuple_to_flat(std::span<const int> tuple, int m) {
  std::size_t flat = 0;
  for (int v : tuple) {
    if (v < 1 || v > m) throw ValidationError("outcome tuple entry out of range");
    flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(v - 1);
  }
  return flat;
}

std::vector<int> flat_to_tuple(std::size_t flat, int n, int m) {
  std::vector<int> tuple(static_cast<std::size_t>(n));
  for (int slot = n - 1; slot >= 0; --slot) {
    tuple[static_cast<std::size_t>(slot)] =
        static_cast<int>(flat % static_cast<std::size_t>(m)) + 1;
    flat /= static_cast<std::size_t>(m);
  }
  return tuple;
}

std::string tuple_label(std::span<const int> tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tuple[i]);
  }
  return out;
}

Ensemble::Ensemble(ScenarioParams params, std::vector<HermitianOperator> states)
    : params_(params), states_(std::move(states)) {
  const std::size_t expected =
      static_cast<std::size_t>(params_.n) * static_cast<std::size_t>(params_.m);
  if (states_.size() != expected)
    throw ValidationError("ensemble: expected " + std::to_string(expected) + " states");
  for (const auto& s : states_)
    if (s.dim() != params_.d)
      throw ValidationError("ensemble: state dimension does not match scenario");
}

const HermitianOperator& Ensemble::state(int a, int x) const {
  if (a < 1 || a > params_.m || x < 1 || x > params_.n)
    throw ValidationError("ensemble: outcome or setting index out of range");
  return states_[static_cast<std::size_t>(x - 1) * static_cast<std::size_t>(params_.m) +
                 static_cast<std::size_t>(a - 1)];
}

double Ensemble::probability(int a, int x) const {
  return state(a, x).matrix().trace().real();
}

HermitianOperator Ensemble::reduced_state() const {
  ComplexMatrix sum(params_.d, params_.d);
  for (int x = 1; x <= params_.n; ++x)
    for (int a = 1; a <= params_.m; ++a) sum += state(a, x).matrix();
  sum *= Complex(1.0 / params_.n, 0.0);
  return HermitianOperator(HermitianOperator::unchecked_t{}, std::move(sum));
}

Povm::Povm(std::vector<HermitianOperator> elements, const Tolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.size() < 2) throw ValidationError("povm: need at least two elements");
  const std::size_t d = elements_.front().dim();
  ComplexMatrix sum(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) throw ValidationError("povm: element dimensions differ");
    if (min_eigenvalue(e) < -tol.psd)
      throw ValidationError("povm: element is not positive semidefinite");
    sum += e.matrix();
  }
  if ((sum - ComplexMatrix::identity(d)).max_abs() > tol.psd)
    throw ValidationError("povm: elements do not sum to the identity");
}

Ensemble assemble(const HermitianOperator& state, const std::vector<Povm>& alice_povms,
                  const Tolerances& tol) {
  if (alice_povms.empty()) throw ValidationError("assemble: need at least one POVM");
  const std::size_t da = alice_povms.front().dim();
  const int m = alice_povms.front().outcome_count();
  for (const auto& p : alice_povms) {
    if (p.dim() != da) throw ValidationError("assemble: POVM dimensions differ");
    if (p.outcome_count() != m)
      throw ValidationError("assemble: POVM outcome counts differ");
  }
  if (state.dim() % da != 0)
    throw ValidationError("assemble: state dimension is not divisible by the POVM dimension");
  const std::size_t db = state.dim() / da;
  if (db < 2) throw ValidationError("assemble: characterized side must have dimension >= 2");
  if (min_eigenvalue(state) < -tol.psd)
    throw ValidationError("assemble: state is not positive semidefinite");
  if (std::abs(state.matrix().trace().real() - 1.0) > tol.no_signalling ||
      std::abs(state.matrix().trace().imag()) > tol.no_signalling)
    throw ValidationError("assemble: state must have unit trace");

  const ScenarioParams params(static_cast<int>(alice_povms.size()), m, db);
  const auto eye_b = ComplexMatrix::identity(db);
  std::vector<HermitianOperator> states;
  states.reserve(params.tuple_count());
  for (const auto& povm : alice_povms)
    for (int a = 1; a <= m; ++a) {
      auto cond = partial_trace(kron(povm.element(a).matrix(), eye_b) * state.matrix(),
                                da, db, Side::A);
      states.emplace_back(std::move(cond), 1e-10);
    }
  return Ensemble(params, std::move(states));
}

HiddenStateModel special_solution(const Ensemble& e) {
  const auto& p = e.params();
  const std::size_t count = p.tuple_count();
  std::vector<HermitianOperator> omegas(count, HermitianOperator::zero(p.d));

  std::vector<int> tuple(static_cast<std::size_t>(p.n), p.m);
  for (int x = 1; x <= p.n; ++x) {
    for (int a = 1; a < p.m; ++a) {
      tuple[static_cast<std::size_t>(x - 1)] = a;
      omegas[tuple_to_flat(tuple, p.m)] = e.state(a, x);
    }
    tuple[static_cast<std::size_t>(x - 1)] = p.m;
  }

  // Anchor entry: sum_x rho_{m|x} - (n-1) rho.
  ComplexMatrix anchor(p.d, p.d);
  for (int x = 1; x <= p.n; ++x) anchor += e.state(p.m, x).matrix();
  anchor -= Complex(static_cast<double>(p.n - 1), 0.0) * e.reduced_state().matrix();
  omegas[tuple_to_flat(tuple, p.m)] =
      HermitianOperator(HermitianOperator::unchecked_t{}, std::move(anchor));

  return HiddenStateModel{p, std::move(omegas)};
}

HomogeneousBasis homogeneous_basis(const ScenarioParams& params) {
  const std::size_t count = params.tuple_count();
  HomogeneousBasis basis{params, {}, {}};

  std::vector<int> anchor(static_cast<std::size_t>(params.n), params.m);
  const std::size_t anchor_flat = tuple_to_flat(anchor, params.m);

  for (std::size_t k = 0; k < count; ++k) {
    const auto tuple = flat_to_tuple(k, params.n, params.m);
    int below = 0;
    for (int v : tuple) below += v < params.m ? 1 : 0;
    if (below < 2) continue;

    std::vector<int> v(count, 0);
    v[k] += 1;
    for (int slot = 0; slot < params.n; ++slot) {
      auto single = anchor;
      single[static_cast<std::size_t>(slot)] = tuple[static_cast<std::size_t>(slot)];
      v[tuple_to_flat(single, params.m)] -= 1;
    }
    v[anchor_flat] += params.n - 1;

    basis.k_indices.push_back(k);
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

ValidationReport validate(const Ensemble& e, const Tolerances& tol) {
  const auto& p = e.params();
  ValidationReport report;

  CheckResult positivity{"positivity", 0.0, tol.psd, true, ""};
  double worst_eig = 0.0;
  for (int x = 1; x <= p.n; ++x)
    for (int a = 1; a <= p.m; ++a) {
      const double lo = min_eigenvalue(e.state(a, x));
      if (lo < worst_eig) {
        worst_eig = lo;
        positivity.detail = state_label(a, x) + " has eigenvalue " + std::to_string(lo);
      }
    }
  positivity.worst = -worst_eig;
  positivity.passed = worst_eig >= -tol.psd;
  report.checks.push_back(positivity);

  const auto rho = e.reduced_state();
  CheckResult nosig{"no-signalling", 0.0, tol.no_signalling, true, ""};
  for (int x = 1; x <= p.n; ++x) {
    ComplexMatrix row(p.d, p.d);
    for (int a = 1; a <= p.m; ++a) row += e.state(a, x).matrix();
    const double dev = (row - rho.matrix()).max_abs();
    if (dev > nosig.worst) {
      nosig.worst = dev;
      nosig.detail = "setting " + std::to_string(x);
    }
  }
  nosig.passed = nosig.worst <= tol.no_signalling;
  report.checks.push_back(nosig);

  CheckResult trace{"unit-trace", std::abs(rho.matrix().trace().real() - 1.0),
                    tol.no_signalling, true, ""};
  trace.passed = trace.worst <= tol.no_signalling;
  report.checks.push_back(trace);

  return report;
}

double lhs_residual(const HiddenStateModel& model, const Ensemble& e) {
  const auto& p = e.params();
  if (!(model.params == p)) throw ValidationError("hidden-state model shape mismatch");
  const std::size_t count = p.tuple_count();

  double worst = 0.0;
  for (int x = 1; x <= p.n; ++x)
    for (int a = 1; a <= p.m; ++a) {
      ComplexMatrix sum(p.d, p.d);
      for (std::size_t flat = 0; flat < count; ++flat) {
        const auto tuple = flat_to_tuple(flat, p.n, p.m);
        if (tuple[static_cast<std::size_t>(x - 1)] == a)
          sum += model.omegas[flat].matrix();
      }
      worst = std::max(worst, (sum - e.state(a, x).matrix()).max_abs());
    }
  return worst;
}

}  // namespace steermap
