#include "steermap/dimbound.hpp"

#include <cmath>

namespace steermap {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// base^(k/2), taking the exact integer power when k is even so that
// rational bounds like 1/108 come out bit-exact.
double half_power(std::size_t base, int k) {
  const double b = static_cast<double>(base);
  if (k % 2 == 0) return ipow(b, k / 2);
  return ipow(b, k / 2) * std::sqrt(b);
}

// tr(B_y rho_{a|x}) for dichotomic outcomes, read off the table.
// y = 0 corresponds to B_0 = 1.
double b_on_state(const CorrelatorTable& t, int y, int a, int x) {
  const double sign = a == 1 ? 1.0 : -1.0;
  if (y == 0) return 0.5 * (1.0 + sign * t.marg_a[static_cast<std::size_t>(x - 1)]);
  return 0.5 * (t.marg_b[static_cast<std::size_t>(y - 1)] +
                sign * t.corr[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)]);
}

double b_on_reduced(const CorrelatorTable& t, int y) {
  return y == 0 ? 1.0 : t.marg_b[static_cast<std::size_t>(y - 1)];
}

}  // namespace

CorrelatorTable::CorrelatorTable(int na_, int nb_, std::vector<std::vector<double>> corr_,
                                 std::vector<double> marg_a_, std::vector<double> marg_b_)
    : na(na_), nb(nb_), corr(std::move(corr_)), marg_a(std::move(marg_a_)),
      marg_b(std::move(marg_b_)) {
  if (na < 1 || nb < 1) throw ValidationError("correlator table: need at least one setting per side");
  if (corr.size() != static_cast<std::size_t>(na) ||
      marg_a.size() != static_cast<std::size_t>(na) ||
      marg_b.size() != static_cast<std::size_t>(nb))
    throw ValidationError("correlator table: incomplete for the declared settings");
  auto in_range = [](double v) { return v >= -1.0 && v <= 1.0; };
  for (const auto& row : corr) {
    if (row.size() != static_cast<std::size_t>(nb))
      throw ValidationError("correlator table: incomplete for the declared settings");
    for (double v : row)
      if (!in_range(v)) throw ValidationError("correlator table: correlator outside [-1, 1]");
  }
  for (double v : marg_a)
    if (!in_range(v)) throw ValidationError("correlator table: marginal outside [-1, 1]");
  for (double v : marg_b)
    if (!in_range(v)) throw ValidationError("correlator table: marginal outside [-1, 1]");
}

std::string to_string(BoundRule rule) {
  return rule == BoundRule::identity_span ? "identity_span" : "generic";
}

DataMatrix data_matrix(const CorrelatorTable& table) {
  if (table.na != 3 || table.nb != 3)
    throw ValidationError("data matrix: the cube scenario needs 3 settings on each side");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  ComplexMatrix d(4, 4);
  d(0, 0) = inv_sqrt2;
  for (int y = 1; y <= 3; ++y)
    d(0, static_cast<std::size_t>(y)) =
        inv_sqrt2 * table.marg_b[static_cast<std::size_t>(y - 1)];
  for (int x = 1; x <= 3; ++x) {
    d(static_cast<std::size_t>(x), 0) =
        inv_sqrt6 * table.marg_a[static_cast<std::size_t>(x - 1)];
    for (int y = 1; y <= 3; ++y)
      d(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
          inv_sqrt6 *
          table.corr[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)];
  }
  return DataMatrix{std::move(d), "zset=cube basis=identity+pauli/sqrt2"};
}

DataMatrix data_matrix(const CorrelatorTable& table, const ZSet& z,
                       const std::vector<HermitianOperator>& basis_a) {
  if (z.m() != 2)
    throw ValidationError("data matrix: the bound derivation needs dichotomic settings");
  if (z.n() != table.na)
    throw ValidationError("data matrix: Z-set and table disagree on the setting count");
  if (basis_a.size() != static_cast<std::size_t>(table.nb) + 1)
    throw ValidationError("data matrix: need nB+1 operators on the uncharacterized side");
  for (const auto& g : basis_a)
    if (g.dim() != z.dim_a())
      throw ValidationError("data matrix: operator basis dimension mismatch");

  const int n = table.na;
  // Weights tr(G_k Z_i) at the special indices; the anchor tuple (m..m)
  // comes last.
  std::vector<int> anchor(static_cast<std::size_t>(n), 2);
  const std::size_t rows = basis_a.size();
  ComplexMatrix d(rows, static_cast<std::size_t>(table.nb) + 1);

  for (std::size_t k = 0; k < rows; ++k) {
    const auto& g = basis_a[k].matrix();
    for (int y = 0; y <= table.nb; ++y) {
      double entry = 0.0;
      // Special indices with outcome 1 at one slot.
      for (int x = 1; x <= n; ++x) {
        auto tuple = anchor;
        tuple[static_cast<std::size_t>(x - 1)] = 1;
        const double weight = (g * z.z(tuple).matrix()).trace().real();
        entry += weight * b_on_state(table, y, 1, x);
      }
      // Anchor: omega = sum_x rho_{2|x} - (n-1) rho.
      double anchor_term = -(static_cast<double>(n) - 1.0) * b_on_reduced(table, y);
      for (int x = 1; x <= n; ++x) anchor_term += b_on_state(table, y, 2, x);
      entry += (g * z.z(anchor).matrix()).trace().real() * anchor_term;
      d(k, static_cast<std::size_t>(y)) = entry;
    }
  }
  return DataMatrix{std::move(d), "zset=custom basis=custom"};
}

std::pair<double, BoundRule> det_bound(std::size_t da, std::size_t db, int nb,
                                       bool identity_in_span) {
  if (da < 2 || db < 2) throw ValidationError("det bound: dimensions must be at least 2");
  if (nb < 1) throw ValidationError("det bound: need at least one setting");
  const double s = std::sqrt(static_cast<double>(da * db));
  if (identity_in_span && static_cast<double>(nb) > s - 1.0) {
    const double bound =
        ipow(s - 1.0, nb) / (ipow(static_cast<double>(nb), nb) * half_power(da, nb + 1));
    return {bound, BoundRule::identity_span};
  }
  const double bound = half_power(db, nb + 1) / ipow(static_cast<double>(nb) + 1.0, nb + 1);
  return {bound, BoundRule::generic};
}

double ccnr_lower_bound(double det_d, std::size_t da, std::size_t db, int nb,
                        bool identity_in_span) {
  const double ad = std::abs(det_d);
  const double root = std::pow(ad, 1.0 / (nb + 1));
  const double plain = (static_cast<double>(nb) + 1.0) /
                       std::sqrt(static_cast<double>(db)) * root;
  if (!identity_in_span) return plain;
  if (root >= 1.0 / std::sqrt(static_cast<double>(da))) return plain;

  // Largest singular value is at least q = 1/sqrt(dA dB); split estimate.
  const double q = 1.0 / std::sqrt(static_cast<double>(da * db));
  const double inner = std::pow(
      std::sqrt(static_cast<double>(da)) * std::pow(static_cast<double>(db), -0.5 * nb) * ad,
      1.0 / nb);
  const double refined =
      std::min(q + static_cast<double>(nb) * inner, (static_cast<double>(nb) + 1.0) * q);
  return std::max(plain, refined);
}

DetBoundVerdict dim_bound_verdict(const DataMatrix& d, std::size_t da, std::size_t db,
                                  bool identity_in_span, const Tolerances& tol) {
  if (!d.entries.is_square()) throw ValidationError("verdict: data matrix must be square");
  const int nb = static_cast<int>(d.size()) - 1;

  DetBoundVerdict v;
  v.det_d = determinant(d.entries).real();
  const auto [bound, rule] = det_bound(da, db, nb, identity_in_span);
  v.bound = bound;
  v.bound_rule = rule;
  const double ad = std::abs(v.det_d);
  v.detected = ad > bound + 1e-12;
  v.ccnr_lower = ccnr_lower_bound(v.det_d, da, db, nb, identity_in_span);

  if (ad == 0.0)
    v.detail = "B linear independence not certified (zero determinant)";
  else if (ad < 1e-10)
    v.detail = "B linear independence ill-conditioned (tiny determinant)";
  if (std::abs(ad - bound) < tol.near_boundary) {
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += "inconclusive-near-boundary";
  }
  return v;
}

}  // namespace steermap
