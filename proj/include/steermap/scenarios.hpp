#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "steermap/dimbound.hpp"
#include "steermap/ensemble.hpp"
#include "steermap/lhs_sdp.hpp"

namespace steermap {

// Noisy singlet behind a lossy channel on the uncharacterized side:
// transmission probability p, visibility lambda. Inconclusive outcomes are
// reassigned evenly to +/-, which leaves correlators -p*lambda on matching
// settings and nothing else.
struct NoisySingletModel {
  double p = 1.0;
  double lambda = 1.0;

  NoisySingletModel(double p_, double lambda_);
};

HermitianOperator pauli(int s);  // s in {1,2,3}
Povm pauli_projectors(int s);    // outcome 1 is the + projector
HermitianOperator singlet_projector();
HermitianOperator werner_state(double p);

// Werner state measured with projective Pauli settings.
Ensemble werner_ensemble(double p, const std::vector<int>& settings);

// Reassigned outcome probabilities {P(++), P(+-), P(-+), P(--)} for a
// setting pair; they sum to one exactly.
std::array<double, 4> reassigned_probabilities(const NoisySingletModel& model, int x, int y);

// The analytic correlator table after reassignment.
CorrelatorTable vienna_correlators(const NoisySingletModel& model);

// Finite-shot demonstration mode: multinomial sampling of the reassigned
// distribution per setting pair.
CorrelatorTable sample_vienna_correlators(const NoisySingletModel& model,
                                          long shots_per_pair, std::uint64_t seed);

struct Report {
  std::string scenario;
  nlohmann::json inputs;
  std::string input_hash;
  nlohmann::json results;
  double elapsed_seconds = 0.0;

  nlohmann::json to_json() const;
};

// All four detection routes on the noisy singlet model, plus the visibility
// thresholds of the closed-form criteria.
Report vienna_report(const NoisySingletModel& model, const LhsOptions& lhs = {},
                     const Tolerances& tol = {});

struct SweepOptions {
  int grid_points = 50;
  double bisect_tol = 1e-6;
  LhsOptions lhs{};
  Tolerances tol{};
};

// Detection thresholds of the named criteria ("ppt", "ccnr", "swap", "lhs",
// "dimbound") for the Werner family with 2 or 3 settings, found on a grid
// and refined by bisection. Non-monotone detection reports every flip.
Report sweep_werner(int settings, const std::vector<std::string>& criteria,
                    double from, double to, const SweepOptions& options = {});

}  // namespace steermap
