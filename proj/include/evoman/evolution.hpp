#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evoman/bosses.hpp"
#include "evoman/controllers.hpp"
#include "evoman/rng.hpp"

namespace evoman {

enum class Aggregation { Mean, HarmonicMean };

/// Arithmetic or harmonic mean. HarmonicMean throws std::domain_error on a
/// non-positive gain.
double aggregate(std::span<const double> gains, Aggregation aggregation);

enum class EvoModeKind { Individual, Generalist, MultiObjective };

struct EvoMode {
  EvoModeKind kind = EvoModeKind::Generalist;
  std::vector<int> bosses{1, 2, 3, 4};
  Aggregation aggregation = Aggregation::HarmonicMean;

  static EvoMode individual(int boss_id) { return {EvoModeKind::Individual, {boss_id}, Aggregation::Mean}; }
  static EvoMode generalist(std::vector<int> bosses, Aggregation agg = Aggregation::HarmonicMean) {
    return {EvoModeKind::Generalist, std::move(bosses), agg};
  }
  static EvoMode multi_objective(std::vector<int> bosses) {
    return {EvoModeKind::MultiObjective, std::move(bosses), Aggregation::HarmonicMean};
  }

  bool operator==(const EvoMode&) const = default;
};

struct EvoConfig {
  int population_size = 50;
  int generations = 100;
  int tournament_k = 3;
  double crossover_rate = 0.9;
  double mutation_rate = 0.04;
  double mutation_sigma = 0.3;
  int elitism_count = 1;
  std::uint64_t seed = 0;
  int repetitions_per_boss = 1;
  double init_range = 1.0;    // initial weights uniform in [-init_range, init_range]
  double weight_limit = 5.0;  // mutated weights clamped to [-weight_limit, weight_limit]
  EvoMode mode;
  unsigned threads = 0;  // fitness workers, 0 = hardware concurrency

  bool operator==(const EvoConfig&) const = default;
};

/// Throws std::invalid_argument on any violated range.
void validate(const EvoConfig& cfg);

struct FitnessRecord {
  std::size_t index = 0;
  std::vector<double> gains;       // per boss of the training set, in set order
  double fitness = 0.0;            // scalar used for selection / reporting
  std::vector<double> objectives;  // multi-objective mode only
};

struct GenerationRecord {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double worst = 0.0;
  Genome best_genome;
};

struct EvoHistory {
  std::vector<GenerationRecord> generations;
};

struct EvoResult {
  Genome best;
  FitnessRecord best_record;
  EvoHistory history;
  std::vector<Genome> front;  // final non-dominated front (multi-objective mode)
};

/// Seed of one training match.
std::uint64_t training_seed(std::uint64_t run_seed, int generation, std::size_t index, int boss_id, int repetition);

/// Mean gain per boss over cfg.repetitions_per_boss matches.
std::vector<double> evaluate_genome(const Genome& genome, std::span<const int> bosses, const EvoConfig& cfg,
                                    const MatchConfig& match, int generation, std::size_t index,
                                    const Roster& roster = default_roster());

/// Samples min(k, n) distinct indices and returns the one with the highest
/// fitness; ties go to the lowest index.
std::size_t tournament_select(std::span<const double> fitness, int k, Rng& rng);

/// Same sampling, with `better(i, j)` deciding whether i beats j.
std::size_t tournament_select(std::size_t n, int k, Rng& rng,
                              const std::function<bool(std::size_t, std::size_t)>& better);

/// Uniform crossover with probability `rate`, otherwise a copy of `a`.
Genome crossover(const Genome& a, const Genome& b, double rate, Rng& rng);

/// Per-gene Gaussian perturbation, clamped to +-cfg.weight_limit.
Genome mutate(const Genome& g, const EvoConfig& cfg, Rng& rng);

/// Maximization on every objective. Front 0 holds indices dominated by
/// none; members of each front are in ascending index order. Throws
/// std::invalid_argument on ragged input.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> objectives);

/// Crowding distance of each member of `front` (same order). Boundary
/// points get +infinity.
std::vector<double> crowding_distance(std::span<const std::vector<double>> objectives,
                                      std::span<const std::size_t> front);

using GenerationCallback = std::function<void(const GenerationRecord&)>;

EvoResult evolve(const EvoConfig& cfg, const MlpTopology& topology, const MatchConfig& match = {},
                 const Roster& roster = default_roster(), const GenerationCallback& on_generation = {});

/// One line per generation: format_version, generation, best, mean, worst,
/// best_genome (genome file object).
std::string history_to_jsonl(const EvoHistory& history);

}  // namespace evoman
