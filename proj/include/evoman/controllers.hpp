#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evoman/sensors.hpp"
#include "evoman/state.hpp"

namespace evoman {

inline constexpr int kActionCount = 5;

/// Fixed-topology perceptron: 20 inputs, 0/10/50 hidden tanh units,
/// 5 sigmoid outputs thresholded at 0.5 (left, right, jump, shoot, release).
struct MlpTopology {
  int inputs = static_cast<int>(kSensorCount);
  int hidden = 0;
  int outputs = kActionCount;

  bool operator==(const MlpTopology&) const = default;
};

/// Throws std::invalid_argument unless inputs=20, outputs=5, hidden in {0,10,50}.
void validate(const MlpTopology& t);

/// (inputs+1)*hidden + (hidden+1)*outputs, or (inputs+1)*outputs when hidden=0.
std::size_t parameter_count(const MlpTopology& t);

/// Flat weights. Layout is layer by layer; within a layer each neuron lists
/// its input weights in input order followed by its bias.
struct Genome {
  MlpTopology topology;
  std::vector<float> weights;

  bool operator==(const Genome&) const = default;
};

Genome zero_genome(const MlpTopology& t);

/// Pre-threshold output activations. Throws std::invalid_argument on a
/// weight count that does not match the topology.
std::array<double, kActionCount> mlp_outputs(const Genome& g, const SensorVector& normalized);

/// Action bit i is set iff output i > 0.5.
ActionSet mlp_forward(const Genome& g, const SensorVector& normalized);

ActionSet action_from_bits(const std::array<bool, kActionCount>& bits);
std::array<bool, kActionCount> action_bits(const ActionSet& a);

/// Genome file text:
///   {"format_version":1,"topology":{"inputs":..,"hidden":..,"outputs":..},"weights":[...]}
/// Weights are written with 9 significant digits, enough to round-trip float.
std::string encode_genome(const Genome& g);
/// Throws ParseError naming the offending field.
Genome decode_genome(std::string_view text);

void save_genome(const Genome& g, const std::filesystem::path& path);
Genome load_genome(const std::filesystem::path& path);

/// FNV-1a over encode_genome.
std::uint64_t genome_digest(const Genome& g);

/// Maps one observation to one action. Receives the full state as well as
/// the raw sensors so scripted and relay controllers can see the tick.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual ActionSet act(const SimState& state, const SensorVector& raw_sensors) = 0;
  /// True if act() may be called concurrently from several matches.
  virtual bool shareable() const { return false; }
};

class IdleController final : public Controller {
 public:
  ActionSet act(const SimState&, const SensorVector&) override { return {}; }
  bool shareable() const override { return true; }
};

/// Plays actions[tick]; past the end it repeats the sequence when `loop` is
/// set, otherwise idles.
class ScriptedController final : public Controller {
 public:
  explicit ScriptedController(std::vector<ActionSet> actions, bool loop = false)
      : actions_(std::move(actions)), loop_(loop) {}

  ActionSet act(const SimState& state, const SensorVector&) override;
  bool shareable() const override { return true; }

 private:
  std::vector<ActionSet> actions_;
  bool loop_;
};

/// Immutable perceptron policy; normalizes sensors with the arena size.
class MlpPolicy final : public Controller {
 public:
  MlpPolicy(Genome genome, const MatchConfig& config);

  ActionSet act(const SimState& state, const SensorVector& raw_sensors) override;
  bool shareable() const override { return true; }

  const Genome& genome() const { return genome_; }

 private:
  Genome genome_;
  MatchConfig config_;
};

}  // namespace evoman
