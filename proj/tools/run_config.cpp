#include "run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include "evoman/controllers.hpp"
#include "evoman/serialization.hpp"

namespace evoman::cli {
namespace {

using Setter = std::function<void(const nlohmann::json&)>;
using ojson = nlohmann::ordered_json;

void apply(const nlohmann::json& doc, const std::map<std::string, Setter>& fields, const std::string& what) {
  if (!doc.is_object()) throw std::invalid_argument(what + " must be an object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("unknown key '" + key + "' in " + what);
    try {
      it->second(value);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("bad value for '" + key + "' in " + what);
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("'" + key + "' in " + what + ": " + err.what());
    }
  }
}

template <class T>
Setter set(T& field) {
  return [&field](const nlohmann::json& v) {
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.get<std::int64_t>() < 0) throw std::invalid_argument("expected a non-negative integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw std::invalid_argument("expected a number");
    } else {
      if (!v.is_string()) throw std::invalid_argument("expected a string");
    }
    field = v.get<T>();
  };
}

std::string_view to_string(Aggregation a) { return a == Aggregation::Mean ? "mean" : "harmonic_mean"; }

Aggregation aggregation_from_string(const std::string& s) {
  if (s == "mean") return Aggregation::Mean;
  if (s == "harmonic_mean") return Aggregation::HarmonicMean;
  throw std::invalid_argument("aggregation must be mean or harmonic_mean");
}

}  // namespace

EvoModeKind mode_from_string(const std::string& s) {
  if (s == "individual") return EvoModeKind::Individual;
  if (s == "generalist") return EvoModeKind::Generalist;
  if (s == "multi") return EvoModeKind::MultiObjective;
  throw std::invalid_argument("mode must be individual, generalist or multi");
}

std::string_view to_string(EvoModeKind kind) {
  switch (kind) {
    case EvoModeKind::Individual: return "individual";
    case EvoModeKind::Generalist: return "generalist";
    case EvoModeKind::MultiObjective: return "multi";
  }
  return "unknown";
}

ojson to_json(const RunConfig& c) {
  const auto& e = c.evolution;
  ojson evo;
  evo["mode"] = to_string(e.mode.kind);
  evo["bosses"] = e.mode.bosses;
  evo["aggregation"] = to_string(e.mode.aggregation);
  evo["hidden"] = c.hidden;
  evo["population_size"] = e.population_size;
  evo["generations"] = e.generations;
  evo["tournament_k"] = e.tournament_k;
  evo["crossover_rate"] = e.crossover_rate;
  evo["mutation_rate"] = e.mutation_rate;
  evo["mutation_sigma"] = e.mutation_sigma;
  evo["elitism_count"] = e.elitism_count;
  evo["seed"] = e.seed;
  evo["repetitions_per_boss"] = e.repetitions_per_boss;
  evo["init_range"] = e.init_range;
  evo["weight_limit"] = e.weight_limit;
  evo["threads"] = e.threads;

  ojson j;
  j["format_version"] = kRunConfigVersion;
  j["match"] = evoman::to_json(c.match);
  j["evolution"] = std::move(evo);
  j["roster"] = evoman::to_json(c.roster);
  j["evaluation"] = ojson{{"repetitions", c.eval.repetitions}, {"seed", c.eval.seed}, {"threads", c.eval.threads}};
  j["server"] = ojson{{"bind_address", c.server.bind_address},
                      {"port", c.server.port},
                      {"action_timeout_ms", c.server.action_timeout_ms}};
  j["output"] = ojson{{"genome", c.output.genome},
                      {"history", c.output.history},
                      {"report", c.output.report},
                      {"replay", c.output.replay}};
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& doc, const RunConfig& base) {
  RunConfig c = base;
  auto& e = c.evolution;
  const std::map<std::string, Setter> evo{
      {"mode", [&](const nlohmann::json& v) { e.mode.kind = mode_from_string(v.get<std::string>()); }},
      {"bosses", [&](const nlohmann::json& v) { e.mode.bosses = v.get<std::vector<int>>(); }},
      {"aggregation", [&](const nlohmann::json& v) { e.mode.aggregation = aggregation_from_string(v.get<std::string>()); }},
      {"hidden", set(c.hidden)},
      {"population_size", set(e.population_size)},
      {"generations", set(e.generations)},
      {"tournament_k", set(e.tournament_k)},
      {"crossover_rate", set(e.crossover_rate)},
      {"mutation_rate", set(e.mutation_rate)},
      {"mutation_sigma", set(e.mutation_sigma)},
      {"elitism_count", set(e.elitism_count)},
      {"seed", set(e.seed)},
      {"repetitions_per_boss", set(e.repetitions_per_boss)},
      {"init_range", set(e.init_range)},
      {"weight_limit", set(e.weight_limit)},
      {"threads", set(e.threads)},
  };
  const std::map<std::string, Setter> eval{
      {"repetitions", set(c.eval.repetitions)},
      {"seed", set(c.eval.seed)},
      {"threads", set(c.eval.threads)},
  };
  const std::map<std::string, Setter> server{
      {"bind_address", set(c.server.bind_address)},
      {"port", set(c.server.port)},
      {"action_timeout_ms", set(c.server.action_timeout_ms)},
  };
  const std::map<std::string, Setter> output{
      {"genome", set(c.output.genome)},
      {"history", set(c.output.history)},
      {"report", set(c.output.report)},
      {"replay", set(c.output.replay)},
  };
  const std::map<std::string, Setter> top{
      {"format_version",
       [&](const nlohmann::json& v) {
         if (v != kRunConfigVersion) throw std::invalid_argument("unsupported config format_version");
       }},
      {"match", [&](const nlohmann::json& v) { c.match = match_config_from_json(v, c.match); }},
      {"evolution", [&](const nlohmann::json& v) { apply(v, evo, "evolution"); }},
      {"roster", [&](const nlohmann::json& v) { c.roster = roster_from_json(v, c.roster); }},
      {"evaluation", [&](const nlohmann::json& v) { apply(v, eval, "evaluation"); }},
      {"server", [&](const nlohmann::json& v) { apply(v, server, "server"); }},
      {"output", [&](const nlohmann::json& v) { apply(v, output, "output"); }},
  };
  apply(doc, top, "config");

  validate(MlpTopology{static_cast<int>(kSensorCount), c.hidden, kActionCount});
  if (c.eval.repetitions < 1) throw std::invalid_argument("evaluation.repetitions must be >= 1");
  if (c.server.action_timeout_ms < 0) throw std::invalid_argument("server.action_timeout_ms must be >= 0");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(path.string() + ": " + err.what());
  }
  try {
    return run_config_from_json(doc, base);
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument(path.string() + ": " + err.what());
  }
}

}  // namespace evoman::cli
