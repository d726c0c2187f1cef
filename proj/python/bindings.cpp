#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evoman/controllers.hpp"
#include "evoman/evaluation.hpp"
#include "evoman/evolution.hpp"
#include "evoman/replay.hpp"
#include "evoman/sensors.hpp"
#include "evoman/sim.hpp"

namespace py = pybind11;
using namespace evoman;

namespace {

std::vector<double> to_list(const SensorVector& v) { return {v.values.begin(), v.values.end()}; }

SensorVector from_list(const std::vector<double>& v) {
  if (v.size() != kSensorCount) throw py::value_error("expected 20 sensor values");
  SensorVector s;
  std::copy(v.begin(), v.end(), s.values.begin());
  return s;
}

EvoModeKind mode_kind(const std::string& s) {
  if (s == "individual") return EvoModeKind::Individual;
  if (s == "generalist") return EvoModeKind::Generalist;
  if (s == "multi") return EvoModeKind::MultiObjective;
  throw py::value_error("mode must be individual, generalist or multi");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic boss-fight simulator and neuroevolution toolkit";

  py::enum_<Outcome>(m, "Outcome")
      .value("ONGOING", Outcome::Ongoing)
      .value("PLAYER_WON", Outcome::PlayerWon)
      .value("ENEMY_WON", Outcome::EnemyWon)
      .value("TIMEOUT", Outcome::Timeout);

  py::class_<MatchConfig>(m, "MatchConfig")
      .def(py::init<>())
      .def_readwrite("damage_per_hit", &MatchConfig::damage_per_hit)
      .def_readwrite("max_ticks", &MatchConfig::max_ticks)
      .def_readwrite("contact_iframe_ticks", &MatchConfig::contact_iframe_ticks)
      .def_readonly("arena_width", &MatchConfig::arena_width)
      .def_readonly("arena_height", &MatchConfig::arena_height);

  py::class_<ActionSet>(m, "ActionSet")
      .def(py::init([](bool left, bool right, bool jump, bool shoot, bool release) {
             return ActionSet{left, right, jump, shoot, release};
           }),
           py::arg("left") = false, py::arg("right") = false, py::arg("jump") = false, py::arg("shoot") = false,
           py::arg("release") = false)
      .def_readwrite("left", &ActionSet::left)
      .def_readwrite("right", &ActionSet::right)
      .def_readwrite("jump", &ActionSet::jump)
      .def_readwrite("shoot", &ActionSet::shoot)
      .def_readwrite("release", &ActionSet::release)
      .def(py::self == py::self)
      .def("__repr__", [](const ActionSet& a) {
        std::string s = "ActionSet(";
        for (bool b : action_bits(a)) s += b ? '1' : '0';
        return s + ")";
      });

  py::class_<SimState>(m, "SimState")
      .def_readonly("tick", &SimState::tick)
      .def_readonly("player_energy", &SimState::player_energy)
      .def_readonly("enemy_energy", &SimState::enemy_energy)
      .def_readonly("outcome", &SimState::outcome)
      .def_readonly("boss_id", &SimState::boss_id)
      .def_property_readonly("player_pos", [](const SimState& s) { return py::make_tuple(s.player.pos_x.to_px(), s.player.pos_y.to_px()); })
      .def_property_readonly("enemy_pos", [](const SimState& s) { return py::make_tuple(s.enemy.pos_x.to_px(), s.enemy.pos_y.to_px()); })
      .def(py::self == py::self);

  m.def(
      "new_match", [](int boss, const MatchConfig& c, std::uint64_t seed) { return new_match(boss, c, seed); },
      py::arg("boss_id"), py::arg("config") = MatchConfig{}, py::arg("seed") = 0);
  m.def(
      "step", [](const SimState& s, const ActionSet& a, const MatchConfig& c) { return step(s, a, c); },
      py::arg("state"), py::arg("action"), py::arg("config") = MatchConfig{});
  m.def("state_hash", &state_hash);
  m.def("mirror_state", &mirror_state, py::arg("state"), py::arg("config") = MatchConfig{});
  m.def("sensors", [](const SimState& s) { return to_list(extract_sensors(s)); }, "Raw 20-value sensor vector");
  m.def(
      "normalize", [](const std::vector<double>& v, const MatchConfig& c) { return to_list(normalize(from_list(v), c)); },
      py::arg("raw"), py::arg("config") = MatchConfig{});

  m.def("gain", py::overload_cast<double, double>(&gain), py::arg("ep"), py::arg("ee"));
  m.def("harmonic_mean", [](const std::vector<double>& v) { return harmonic_mean(v); });

  py::class_<Genome>(m, "Genome")
      .def(py::init([](int hidden, std::vector<float> weights) {
             Genome g{MlpTopology{.hidden = hidden}, std::move(weights)};
             validate(g.topology);
             if (g.weights.size() != parameter_count(g.topology)) throw py::value_error("wrong weight count");
             return g;
           }),
           py::arg("hidden"), py::arg("weights"))
      .def_property_readonly("hidden", [](const Genome& g) { return g.topology.hidden; })
      .def_readonly("weights", &Genome::weights)
      .def("encode", &encode_genome)
      .def_static("decode", &decode_genome)
      .def_static("load", [](const std::string& p) { return load_genome(p); })
      .def("save", [](const Genome& g, const std::string& p) { save_genome(g, p); })
      .def("digest", &genome_digest)
      .def(py::self == py::self);

  m.def("parameter_count", [](int hidden) { return parameter_count({.hidden = hidden}); });
  m.def("zero_genome", [](int hidden) { return zero_genome({.hidden = hidden}); });
  m.def("mlp_outputs", [](const Genome& g, const std::vector<double>& x) { return mlp_outputs(g, from_list(x)); });
  m.def("mlp_forward", [](const Genome& g, const std::vector<double>& x) { return mlp_forward(g, from_list(x)); });

  py::class_<BossGain>(m, "BossGain")
      .def_readonly("boss_id", &BossGain::boss_id)
      .def_readonly("mean_gain", &BossGain::mean_gain)
      .def_readonly("wins", &BossGain::wins);

  py::class_<GainReport>(m, "GainReport")
      .def_readonly("agent_name", &GainReport::agent_name)
      .def_readonly("per_boss", &GainReport::per_boss)
      .def_readonly("harmonic_mean", &GainReport::harmonic_mean)
      .def("gains", &GainReport::gains)
      .def("wins", &GainReport::wins)
      .def("render", [](const GainReport& r) { return render_report(std::span(&r, 1)); });

  m.def(
      "evaluate_all",
      [](const Genome& g, const MatchConfig& config, int repetitions, std::uint64_t seed, unsigned threads,
         std::vector<int> bosses) {
        EvalOptions opts;
        opts.repetitions = repetitions;
        opts.seed = seed;
        opts.threads = threads;
        opts.bosses = std::move(bosses);
        py::gil_scoped_release release;
        MlpPolicy policy(g, config);
        return evaluate_all(policy, config, opts);
      },
      py::arg("genome"), py::arg("config") = MatchConfig{}, py::arg("repetitions") = 1, py::arg("seed") = 0,
      py::arg("threads") = 0, py::arg("bosses") = std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});

  py::class_<GenerationRecord>(m, "GenerationRecord")
      .def_readonly("generation", &GenerationRecord::generation)
      .def_readonly("best", &GenerationRecord::best)
      .def_readonly("mean", &GenerationRecord::mean)
      .def_readonly("worst", &GenerationRecord::worst)
      .def_readonly("best_genome", &GenerationRecord::best_genome);

  m.def(
      "evolve",
      [](const std::string& mode, std::vector<int> bosses, int hidden, int population_size, int generations,
         std::uint64_t seed, unsigned threads, const MatchConfig& match) {
        EvoConfig cfg;
        cfg.mode.kind = mode_kind(mode);
        cfg.mode.bosses = std::move(bosses);
        if (cfg.mode.kind == EvoModeKind::Individual) cfg.mode.aggregation = Aggregation::Mean;
        cfg.population_size = population_size;
        cfg.generations = generations;
        cfg.seed = seed;
        cfg.threads = threads;
        EvoResult r;
        {
          py::gil_scoped_release release;
          r = evolve(cfg, {.hidden = hidden}, match);
        }
        return py::make_tuple(r.best, r.best_record.fitness, r.history.generations);
      },
      py::arg("mode") = "generalist", py::arg("bosses") = std::vector<int>{1, 2, 3, 4}, py::arg("hidden") = 10,
      py::arg("population_size") = 50, py::arg("generations") = 100, py::arg("seed") = 0, py::arg("threads") = 0,
      py::arg("match") = MatchConfig{});

  m.def(
      "verify_replay_file",
      [](const std::string& path, const MatchConfig& config) {
        const auto v = verify_replay(load_replay(path), config);
        return std::string(to_string(v.status));
      },
      py::arg("path"), py::arg("config") = MatchConfig{});
}
