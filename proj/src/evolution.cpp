#include "evoman/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "evoman/evaluation.hpp"
#include "evoman/match.hpp"
#include "evoman/parallel.hpp"

namespace evoman {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("evolution config: " + what);
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly = true;
  }
  return strictly;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Population {
  std::vector<Genome> genomes;
  std::vector<FitnessRecord> records;
};

class Trainer {
 public:
  Trainer(const EvoConfig& cfg, const MlpTopology& topology, const MatchConfig& match, const Roster& roster)
      : cfg_(cfg), topology_(topology), match_(match), roster_(roster),
        rng_(derive_seed(cfg.seed, {0x65766f6c7665ULL})) {}

  EvoResult run(const GenerationCallback& on_generation) {
    Population pop;
    const auto n = static_cast<std::size_t>(cfg_.population_size);
    const auto params = parameter_count(topology_);
    for (std::size_t i = 0; i < n; ++i) {
      Genome g{topology_, std::vector<float>(params)};
      for (auto& w : g.weights) w = static_cast<float>(rng_.uniform(-cfg_.init_range, cfg_.init_range));
      pop.genomes.push_back(std::move(g));
    }
    pop.records = evaluate(pop.genomes, 0, 0);
    if (multi()) rank(pop);
    record(pop, 0, on_generation);

    for (int gen = 1; gen <= cfg_.generations; ++gen) {
      pop = multi() ? next_multi(pop, gen) : next_single(pop, gen);
      record(pop, gen, on_generation);
    }

    EvoResult result;
    const auto best = best_index(pop.records);
    result.best = pop.genomes[best];
    result.best_record = pop.records[best];
    result.history = std::move(history_);
    if (multi()) {
      std::vector<std::vector<double>> objs;
      for (const auto& r : pop.records) objs.push_back(r.objectives);
      const auto fronts = non_dominated_sort(objs);
      for (auto i : fronts.front()) result.front.push_back(pop.genomes[i]);
    }
    return result;
  }

 private:
  bool multi() const { return cfg_.mode.kind == EvoModeKind::MultiObjective; }

  std::vector<FitnessRecord> evaluate(const std::vector<Genome>& genomes, std::size_t from, int generation) {
    std::vector<FitnessRecord> out(genomes.size() - from);
    parallel_for(out.size(), cfg_.threads, [&](std::size_t k) {
      const std::size_t idx = from + k;
      auto& r = out[k];
      r.index = idx;
      r.gains = evaluate_genome(genomes[idx], cfg_.mode.bosses, cfg_, match_, generation, idx, roster_);
      switch (cfg_.mode.kind) {
        case EvoModeKind::Individual: r.fitness = r.gains.front(); break;
        case EvoModeKind::Generalist: r.fitness = aggregate(r.gains, cfg_.mode.aggregation); break;
        case EvoModeKind::MultiObjective:
          r.objectives = r.gains;
          r.fitness = harmonic_mean(r.gains);
          break;
      }
    });
    return out;
  }

  static std::size_t best_index(const std::vector<FitnessRecord>& recs) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < recs.size(); ++i)
      if (recs[i].fitness > recs[best].fitness) best = i;
    return best;
  }

  std::vector<std::size_t> by_fitness(const std::vector<FitnessRecord>& recs) const {
    std::vector<std::size_t> order(recs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return recs[a].fitness > recs[b].fitness; });
    return order;
  }

  Genome breed(const Population& pop, const std::function<std::size_t()>& select) {
    const auto a = select();
    const auto b = select();
    return mutate(crossover(pop.genomes[a], pop.genomes[b], cfg_.crossover_rate, rng_), cfg_, rng_);
  }

  Population next_single(const Population& pop, int gen) {
    const auto n = pop.genomes.size();
    const auto elites = static_cast<std::size_t>(cfg_.elitism_count);
    std::vector<double> fit;
    for (const auto& r : pop.records) fit.push_back(r.fitness);

    Population next;
    for (auto i : by_fitness(pop.records)) {
      if (next.genomes.size() == elites) break;
      next.genomes.push_back(pop.genomes[i]);
      next.records.push_back(pop.records[i]);
      next.records.back().index = next.genomes.size() - 1;
    }
    auto select = [&] { return tournament_select(fit, cfg_.tournament_k, rng_); };
    while (next.genomes.size() < n) next.genomes.push_back(breed(pop, select));
    auto fresh = evaluate(next.genomes, elites, gen);
    next.records.insert(next.records.end(), fresh.begin(), fresh.end());
    return next;
  }

  void rank(Population& pop) {
    std::vector<std::vector<double>> objs;
    for (const auto& r : pop.records) objs.push_back(r.objectives);
    rank_.assign(pop.records.size(), 0);
    crowd_.assign(pop.records.size(), 0.0);
    const auto fronts = non_dominated_sort(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      const auto cd = crowding_distance(objs, fronts[f]);
      for (std::size_t k = 0; k < fronts[f].size(); ++k) {
        rank_[fronts[f][k]] = f;
        crowd_[fronts[f][k]] = cd[k];
      }
    }
  }

  Population next_multi(const Population& pop, int gen) {
    const auto n = pop.genomes.size();
    auto better = [&](std::size_t i, std::size_t j) {
      if (rank_[i] != rank_[j]) return rank_[i] < rank_[j];
      return crowd_[i] > crowd_[j];
    };
    Population combined = pop;
    auto select = [&] { return tournament_select(n, cfg_.tournament_k, rng_, better); };
    for (std::size_t i = 0; i < n; ++i) combined.genomes.push_back(breed(pop, select));
    auto fresh = evaluate(combined.genomes, n, gen);
    combined.records.insert(combined.records.end(), fresh.begin(), fresh.end());

    std::vector<std::vector<double>> objs;
    for (const auto& r : combined.records) objs.push_back(r.objectives);
    std::vector<bool> taken(combined.genomes.size(), false);
    std::vector<std::size_t> chosen;
    for (auto i : by_fitness(combined.records)) {
      if (chosen.size() == static_cast<std::size_t>(cfg_.elitism_count)) break;
      chosen.push_back(i);
      taken[i] = true;
    }
    for (const auto& front : non_dominated_sort(objs)) {
      if (chosen.size() == n) break;
      const auto cd = crowding_distance(objs, front);
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
      for (auto k : order) {
        if (chosen.size() == n) break;
        if (!taken[front[k]]) {
          chosen.push_back(front[k]);
          taken[front[k]] = true;
        }
      }
    }
    std::sort(chosen.begin(), chosen.end());

    Population next;
    for (auto i : chosen) {
      next.genomes.push_back(combined.genomes[i]);
      next.records.push_back(combined.records[i]);
      next.records.back().index = next.genomes.size() - 1;
    }
    rank(next);
    return next;
  }

  void record(const Population& pop, int gen, const GenerationCallback& cb) {
    GenerationRecord rec;
    rec.generation = gen;
    const auto best = best_index(pop.records);
    rec.best = pop.records[best].fitness;
    rec.worst = rec.best;
    double sum = 0.0;
    for (const auto& r : pop.records) {
      rec.worst = std::min(rec.worst, r.fitness);
      sum += r.fitness;
    }
    rec.mean = sum / static_cast<double>(pop.records.size());
    rec.best_genome = pop.genomes[best];
    if (cb) cb(rec);
    history_.generations.push_back(std::move(rec));
  }

  const EvoConfig& cfg_;
  MlpTopology topology_;
  const MatchConfig& match_;
  const Roster& roster_;
  Rng rng_;
  EvoHistory history_;
  std::vector<std::size_t> rank_;
  std::vector<double> crowd_;
};

}  // namespace

double aggregate(std::span<const double> gains, Aggregation aggregation) {
  return aggregation == Aggregation::HarmonicMean ? harmonic_mean(gains) : arithmetic_mean(gains);
}

void validate(const EvoConfig& c) {
  require(c.population_size >= 1, "population_size must be >= 1");
  require(c.generations >= 0, "generations must be >= 0");
  require(c.tournament_k >= 2, "tournament_k must be >= 2");
  require(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0, "crossover_rate must be in [0, 1]");
  require(c.mutation_rate >= 0.0 && c.mutation_rate <= 1.0, "mutation_rate must be in [0, 1]");
  require(c.mutation_sigma > 0.0, "mutation_sigma must be > 0");
  require(c.elitism_count >= 0 && c.elitism_count < c.population_size, "elitism_count must be in [0, population_size)");
  require(c.repetitions_per_boss >= 1, "repetitions_per_boss must be >= 1");
  require(c.init_range > 0.0, "init_range must be > 0");
  require(c.weight_limit > 0.0, "weight_limit must be > 0");
  require(!c.mode.bosses.empty(), "training set must not be empty");
  for (std::size_t i = 0; i < c.mode.bosses.size(); ++i) {
    const int b = c.mode.bosses[i];
    require(b >= 1 && b <= kBossCount, "training set must be a subset of 1..8");
    for (std::size_t j = 0; j < i; ++j) require(c.mode.bosses[j] != b, "training set has duplicate boss ids");
  }
  if (c.mode.kind == EvoModeKind::Individual) require(c.mode.bosses.size() == 1, "individual mode takes one boss");
}

std::uint64_t training_seed(std::uint64_t run_seed, int generation, std::size_t index, int boss_id, int repetition) {
  return derive_seed(run_seed, {static_cast<std::uint64_t>(generation), index, static_cast<std::uint64_t>(boss_id),
                                static_cast<std::uint64_t>(repetition)});
}

std::vector<double> evaluate_genome(const Genome& genome, std::span<const int> bosses, const EvoConfig& cfg,
                                    const MatchConfig& match, int generation, std::size_t index,
                                    const Roster& roster) {
  MlpPolicy policy(genome, match);
  std::vector<double> out;
  out.reserve(bosses.size());
  for (int boss : bosses) {
    double sum = 0.0;
    for (int rep = 0; rep < cfg.repetitions_per_boss; ++rep) {
      const auto r = run_match(policy, boss, match, training_seed(cfg.seed, generation, index, boss, rep), roster);
      sum += gain(r);
    }
    out.push_back(sum / cfg.repetitions_per_boss);
  }
  return out;
}

std::size_t tournament_select(std::size_t n, int k, Rng& rng,
                              const std::function<bool(std::size_t, std::size_t)>& better) {
  if (n == 0) throw std::invalid_argument("tournament_select on an empty population");
  const std::size_t draws = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(k, 1)));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::size_t winner = n;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
    const auto c = pool[i];
    if (winner == n || better(c, winner) || (!better(winner, c) && c < winner)) winner = c;
  }
  return winner;
}

std::size_t tournament_select(std::span<const double> fitness, int k, Rng& rng) {
  return tournament_select(fitness.size(), k, rng, [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
}

Genome crossover(const Genome& a, const Genome& b, double rate, Rng& rng) {
  if (a.topology != b.topology || a.weights.size() != b.weights.size())
    throw std::invalid_argument("crossover: parents have different topologies");
  Genome child = a;
  if (!rng.bernoulli(rate)) return child;
  for (std::size_t i = 0; i < child.weights.size(); ++i)
    if (rng.bernoulli(0.5)) child.weights[i] = b.weights[i];
  return child;
}

Genome mutate(const Genome& g, const EvoConfig& cfg, Rng& rng) {
  Genome out = g;
  if (cfg.mutation_rate <= 0.0) return out;
  const double lim = cfg.weight_limit;
  for (auto& w : out.weights) {
    if (!rng.bernoulli(cfg.mutation_rate)) continue;
    const double v = std::clamp(static_cast<double>(w) + cfg.mutation_sigma * rng.normal(), -lim, lim);
    w = static_cast<float>(v);
  }
  return out;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const std::vector<double>> objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;
  const std::size_t m = objectives[0].size();
  for (const auto& v : objectives)
    if (v.size() != m) throw std::invalid_argument("non_dominated_sort: ragged objective vectors");

  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(objectives[p], objectives[q])) {
        dominated[p].push_back(q);
      } else if (dominates(objectives[q], objectives[p])) {
        ++count[p];
      }
    }
    if (count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto p : current)
      for (auto q : dominated[p])
        if (--count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const std::vector<double>> objectives,
                                      std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    return dist;
  }
  const std::size_t m = objectives[front[0]].size();
  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objectives[front[a]][obj] < objectives[front[b]][obj];
    });
    const double lo = objectives[front[order.front()]][obj];
    const double hi = objectives[front[order.back()]][obj];
    dist[order.front()] = std::numeric_limits<double>::infinity();
    dist[order.back()] = std::numeric_limits<double>::infinity();
    if (hi <= lo) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double gap = objectives[front[order[k + 1]]][obj] - objectives[front[order[k - 1]]][obj];
      dist[order[k]] += gap / (hi - lo);
    }
  }
  return dist;
}

EvoResult evolve(const EvoConfig& cfg, const MlpTopology& topology, const MatchConfig& match, const Roster& roster,
                 const GenerationCallback& on_generation) {
  validate(cfg);
  validate(topology);
  validate(match);
  return Trainer(cfg, topology, match, roster).run(on_generation);
}

std::string history_to_jsonl(const EvoHistory& history) {
  std::string out;
  for (const auto& r : history.generations) {
    std::string genome = encode_genome(r.best_genome);
    if (!genome.empty() && genome.back() == '\n') genome.pop_back();
    out += "{\"format_version\":1,\"generation\":" + std::to_string(r.generation) + ",\"best\":" + num(r.best) +
           ",\"mean\":" + num(r.mean) + ",\"worst\":" + num(r.worst) + ",\"best_genome\":" + genome + "}\n";
  }
  return out;
}

}  // namespace evoman
