#include <cmath>

#include "doctest.h"
#include "steermap/json_io.hpp"
#include "steermap/scenarios.hpp"
#include "test_util.hpp"

using namespace steermap;

TEST_CASE("noisy singlet model: parameter ranges") {
  CHECK_THROWS_AS(NoisySingletModel(-0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(NoisySingletModel(0.5, 1.1), ValidationError);
}

TEST_CASE("reassigned probabilities: normalized and anticorrelated on matching settings") {
  const NoisySingletModel model(0.8, 0.9);
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y) {
      const auto p = reassigned_probabilities(model, x, y);
      CHECK(p[0] + p[1] + p[2] + p[3] == 1.0);  // exact by construction
      if (x == y) {
        CHECK(p[1] == doctest::Approx(0.25 * (1.0 + 0.72)).epsilon(1e-15));
        CHECK(p[0] == doctest::Approx(0.25 * (1.0 - 0.72)).epsilon(1e-15));
      } else {
        for (double v : p) CHECK(v == 0.25);
      }
    }
}

TEST_CASE("vienna correlators: perfect and vacuum limits") {
  const auto perfect = vienna_correlators(NoisySingletModel(1.0, 1.0));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(perfect.corr[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ==
            (x == y ? -1.0 : 0.0));

  const auto vacuum = vienna_correlators(NoisySingletModel(0.0, 1.0));
  for (const auto& row : vacuum.corr)
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("vienna visibilities from the loophole-free setup are detected") {
  for (double plambda : {0.74, 0.73}) {
    const auto table = vienna_correlators(NoisySingletModel(plambda, 1.0));
    const auto v = dim_bound_verdict(data_matrix(table), 2, 2, true);
    CHECK(v.detected);
  }
  const auto below = dim_bound_verdict(
      data_matrix(vienna_correlators(NoisySingletModel(0.5, 1.0))), 2, 2, true);
  CHECK_FALSE(below.detected);
}

TEST_CASE("sampled correlators: deterministic per seed and consistent in the limit") {
  const NoisySingletModel model(0.9, 0.9);
  const auto a = sample_vienna_correlators(model, 2000, 42);
  const auto b = sample_vienna_correlators(model, 2000, 42);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(a.corr[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] ==
            b.corr[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);

  const auto big = sample_vienna_correlators(model, 200000, 7);
  for (int s = 0; s < 3; ++s)
    CHECK(big.corr[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] ==
          doctest::Approx(-0.81).epsilon(0.03));
}

TEST_CASE("werner ensemble: endpoints") {
  const auto mixed = werner_ensemble(0.0, {1, 2, 3});
  for (int x = 1; x <= 3; ++x)
    for (int a = 1; a <= 2; ++a) {
      const auto expect = Complex(0.25, 0.0) * ComplexMatrix::identity(2);
      CHECK((mixed.state(a, x).matrix() - expect).max_abs() < 1e-12);
    }

  const auto singlet = werner_ensemble(1.0, {3});
  const auto plus = 0.25 * (HermitianOperator::identity(2) - pauli(3));
  const auto minus = 0.25 * (HermitianOperator::identity(2) + pauli(3));
  CHECK((singlet.state(1, 1).matrix() - plus.matrix()).max_abs() < 1e-12);
  CHECK((singlet.state(2, 1).matrix() - minus.matrix()).max_abs() < 1e-12);
}

TEST_CASE("vienna report: end-to-end detection decisions") {
  const auto detected = vienna_report(NoisySingletModel(0.74, 1.0));
  CHECK(detected.results.at("detected").get<bool>());
  CHECK(detected.results.at("verdicts").at("dimbound").at("detected").get<bool>());
  CHECK(detected.results.at("verdicts").at("lhs").at("steerable").get<bool>());
  CHECK(detected.results.at("verdicts").at("ppt").at("detected").get<bool>());
  const double thr =
      detected.results.at("thresholds").at("dimbound_visibility").get<double>();
  CHECK(thr == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(detected.results.at("constants").at("det_bound").get<double>() == 1.0 / 108.0);

  const auto missed = vienna_report(NoisySingletModel(0.5, 1.0));
  CHECK_FALSE(missed.results.at("detected").get<bool>());
  CHECK_FALSE(missed.results.at("verdicts").at("lhs").at("steerable").get<bool>());

  // Identical inputs hash identically; different inputs do not.
  CHECK(detected.input_hash ==
        vienna_report(NoisySingletModel(0.74, 1.0)).input_hash);
  CHECK(detected.input_hash != missed.input_hash);
}

TEST_CASE("werner sweep: all three-setting criteria share the threshold") {
  SweepOptions options;
  options.grid_points = 13;
  const auto report =
      sweep_werner(3, {"ppt", "ccnr", "swap", "lhs", "dimbound"}, 0.4, 0.8, options);
  for (const auto& entry : report.results.at("criteria")) {
    INFO("criterion ", entry.at("criterion").get<std::string>());
    REQUIRE_FALSE(entry.contains("error"));
    REQUIRE(entry.at("thresholds").size() == 1);
    CHECK(entry.at("monotone").get<bool>());
    CHECK(entry.at("thresholds")[0].get<double>() ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(2e-3));
  }
}

TEST_CASE("werner sweep: two settings reach the joint-measurability point") {
  SweepOptions options;
  options.grid_points = 9;
  const auto report = sweep_werner(2, {"lhs"}, 0.5, 0.9, options);
  const auto& entry = report.results.at("criteria")[0];
  REQUIRE(entry.at("thresholds").size() == 1);
  CHECK(entry.at("thresholds")[0].get<double>() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-2));
}

TEST_CASE("werner sweep: per-criterion errors do not abort the report") {
  SweepOptions options;
  options.grid_points = 5;
  const auto report = sweep_werner(2, {"dimbound", "swap"}, 0.5, 0.9, options);
  const auto& entries = report.results.at("criteria");
  CHECK(entries[0].contains("error"));
  CHECK_FALSE(entries[1].contains("error"));
}

TEST_CASE("json round trips") {
  const auto e = werner_ensemble(0.7, {1, 3});
  const auto e2 = io::ensemble_from_json(io::ensemble_to_json(e));
  for (int x = 1; x <= 2; ++x)
    for (int a = 1; a <= 2; ++a)
      CHECK((e.state(a, x).matrix() - e2.state(a, x).matrix()).max_abs() == 0.0);

  const auto z = mub_zset(3);
  const auto z2 = io::zset_from_json(io::zset_to_json(z));
  REQUIRE(z2.size() == z.size());
  for (std::size_t flat = 0; flat < z.size(); ++flat)
    CHECK((z.z(flat).matrix() - z2.z(flat).matrix()).max_abs() == 0.0);

  const auto p = pauli_projectors(2);
  const auto p2 = io::povm_from_json(io::povm_to_json(p));
  CHECK((p.element(1).matrix() - p2.element(1).matrix()).max_abs() == 0.0);

  const auto t = vienna_correlators(NoisySingletModel(0.6, 0.9));
  const auto t2 = io::correlators_from_json(io::correlators_to_json(t));
  CHECK(t2.corr == t.corr);
  CHECK(t2.marg_a == t.marg_a);

  // Malformed payloads surface as validation errors.
  CHECK_THROWS_AS(io::ensemble_from_json(nlohmann::json{{"n", 2}, {"m", 2}, {"d", 2}}),
                  nlohmann::json::exception);
  CHECK_THROWS_AS(io::matrix_from_json(nlohmann::json::array()), ValidationError);
}

TEST_CASE("verdict json carries the documented fields") {
  const auto e = werner_ensemble(0.8, {1, 2, 3});
  const auto verdict = decide(e);
  const auto j = io::verdict_to_json(verdict);
  CHECK(j.at("steerable").get<bool>());
  CHECK(j.at("margin").get<double>() < 0.0);
  CHECK(j.contains("iterations"));
  CHECK(j.contains("residual"));
  CHECK_FALSE(j.at("witness").is_null());

  const auto d = dim_bound_verdict(
      data_matrix(vienna_correlators(NoisySingletModel(0.9, 1.0))), 2, 2, true);
  const auto dj = io::verdict_to_json(d);
  CHECK(dj.at("bound_rule").get<std::string>() == "identity_span");
  CHECK(dj.at("detected").get<bool>());
}
