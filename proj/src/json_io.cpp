#include "steermap/json_io.hpp"

#include <cstdint>
#include <fstream>

namespace steermap::io {

namespace {

json complex_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("matrix entry must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ValidationError("matrix must be a non-empty nested array");
  ComplexMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (j[r].size() != m.cols()) throw ValidationError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json ensemble_to_json(const Ensemble& e) {
  json states = json::object();
  for (int x = 1; x <= e.params().n; ++x)
    for (int a = 1; a <= e.params().m; ++a)
      states[std::to_string(a) + "|" + std::to_string(x)] =
          matrix_to_json(e.state(a, x).matrix());
  return json{{"n", e.params().n},
              {"m", e.params().m},
              {"d", e.params().d},
              {"states", std::move(states)}};
}

Ensemble ensemble_from_json(const json& j) {
  const ScenarioParams params(j.at("n").get<int>(), j.at("m").get<int>(),
                              j.at("d").get<std::size_t>());
  const auto& states = j.at("states");
  std::vector<HermitianOperator> ops;
  ops.reserve(static_cast<std::size_t>(params.n * params.m));
  for (int x = 1; x <= params.n; ++x)
    for (int a = 1; a <= params.m; ++a) {
      const std::string key = std::to_string(a) + "|" + std::to_string(x);
      if (!states.contains(key))
        throw ValidationError("ensemble: missing state \"" + key + "\"");
      ops.emplace_back(matrix_from_json(states.at(key)), 1e-9);
    }
  return Ensemble(params, std::move(ops));
}

json povm_to_json(const Povm& p) {
  json elements = json::array();
  for (int a = 1; a <= p.outcome_count(); ++a)
    elements.push_back(matrix_to_json(p.element(a).matrix()));
  return json{{"dim", p.dim()}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const json& j) {
  std::vector<HermitianOperator> elements;
  for (const auto& e : j.at("elements")) elements.emplace_back(matrix_from_json(e), 1e-9);
  const auto dim = j.at("dim").get<std::size_t>();
  for (const auto& e : elements)
    if (e.dim() != dim) throw ValidationError("povm: element dimension disagrees with header");
  return Povm(std::move(elements));
}

json zset_to_json(const ZSet& z) {
  json zs = json::object();
  for (std::size_t flat = 0; flat < z.size(); ++flat)
    zs[tuple_label(flat_to_tuple(flat, z.n(), z.m()))] = matrix_to_json(z.z(flat).matrix());
  return json{{"n", z.n()}, {"m", z.m()}, {"dA", z.dim_a()}, {"zs", std::move(zs)}};
}

ZSet zset_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const auto da = j.at("dA").get<std::size_t>();
  const ScenarioParams params(n, m, da);
  const auto& zs = j.at("zs");
  std::vector<HermitianOperator> ops;
  ops.reserve(params.tuple_count());
  for (std::size_t flat = 0; flat < params.tuple_count(); ++flat) {
    const std::string key = tuple_label(flat_to_tuple(flat, n, m));
    if (!zs.contains(key)) throw ValidationError("zset: missing member \"" + key + "\"");
    ops.emplace_back(matrix_from_json(zs.at(key)), 1e-9);
  }
  ZSet out(n, m, std::move(ops));
  if (out.dim_a() != da) throw ValidationError("zset: member dimension disagrees with header");
  return out;
}

json correlators_to_json(const CorrelatorTable& t) {
  return json{{"nA", t.na}, {"nB", t.nb}, {"corr", t.corr},
              {"margA", t.marg_a}, {"margB", t.marg_b}};
}

CorrelatorTable correlators_from_json(const json& j) {
  return CorrelatorTable(j.at("nA").get<int>(), j.at("nB").get<int>(),
                         j.at("corr").get<std::vector<std::vector<double>>>(),
                         j.at("margA").get<std::vector<double>>(),
                         j.at("margB").get<std::vector<double>>());
}

json verdict_to_json(const CriterionVerdict& v) {
  return json{{"criterion", v.criterion},
              {"value", v.value},
              {"threshold", v.threshold},
              {"detected", v.detected},
              {"detail", v.detail}};
}

json verdict_to_json(const DetBoundVerdict& v) {
  return json{{"detD", v.det_d},        {"bound", v.bound},
              {"bound_rule", to_string(v.bound_rule)}, {"detected", v.detected},
              {"ccnr_lower", v.ccnr_lower},            {"detail", v.detail}};
}

json verdict_to_json(const LhsVerdict& v) {
  json out{{"outcome", v.outcome == LhsOutcome::steerable      ? "steerable"
                       : v.outcome == LhsOutcome::non_steerable ? "non_steerable"
                                                                : "undecided"},
           {"steerable", v.steerable()},
           {"margin", v.margin},
           {"lower", v.lower},
           {"upper", v.upper},
           {"residual", v.residual},
           {"iterations", v.iterations}};
  if (!v.note.empty()) out["note"] = v.note;
  out["witness"] = v.witness ? zset_to_json(*v.witness) : json(nullptr);
  return out;
}

json validation_to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"worst", c.worst},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed},
                          {"detail", c.detail}});
  return json{{"valid", r.valid()}, {"checks", std::move(checks)}};
}

std::string input_hash(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace steermap::io
