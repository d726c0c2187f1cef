#include "evoman/controllers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "evoman/errors.hpp"
#include "evoman/hash.hpp"

namespace evoman {
namespace {

constexpr int kGenomeFormatVersion = 1;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_length(const Genome& g) {
  validate(g.topology);
  if (g.weights.size() != parameter_count(g.topology))
    throw std::invalid_argument("genome has " + std::to_string(g.weights.size()) + " weights, topology needs " +
                                std::to_string(parameter_count(g.topology)));
}

// One dense layer. `w` advances past the consumed weights.
template <typename Act>
void dense(const float*& w, const double* in, int n_in, double* out, int n_out, Act act) {
  for (int j = 0; j < n_out; ++j) {
    double z = 0.0;
    for (int i = 0; i < n_in; ++i) z += static_cast<double>(w[i]) * in[i];
    z += static_cast<double>(w[n_in]);
    w += n_in + 1;
    out[j] = act(z);
  }
}

int int_field(const nlohmann::json& obj, const char* key, const char* path) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field '") + path + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + path + "' must be an integer");
  return v.get<int>();
}

}  // namespace

void validate(const MlpTopology& t) {
  if (t.inputs != static_cast<int>(kSensorCount)) throw std::invalid_argument("topology inputs must be 20");
  if (t.outputs != kActionCount) throw std::invalid_argument("topology outputs must be 5");
  if (t.hidden != 0 && t.hidden != 10 && t.hidden != 50)
    throw std::invalid_argument("topology hidden must be 0, 10 or 50, got " + std::to_string(t.hidden));
}

std::size_t parameter_count(const MlpTopology& t) {
  const auto in = static_cast<std::size_t>(t.inputs);
  const auto hid = static_cast<std::size_t>(t.hidden);
  const auto out = static_cast<std::size_t>(t.outputs);
  if (hid == 0) return (in + 1) * out;
  return (in + 1) * hid + (hid + 1) * out;
}

Genome zero_genome(const MlpTopology& t) {
  validate(t);
  return Genome{t, std::vector<float>(parameter_count(t), 0.0f)};
}

std::array<double, kActionCount> mlp_outputs(const Genome& g, const SensorVector& s) {
  check_length(g);
  const float* w = g.weights.data();
  std::array<double, kActionCount> out{};
  if (g.topology.hidden == 0) {
    dense(w, s.values.data(), g.topology.inputs, out.data(), kActionCount, sigmoid);
    return out;
  }
  std::array<double, 50> hidden{};
  dense(w, s.values.data(), g.topology.inputs, hidden.data(), g.topology.hidden,
        [](double z) { return std::tanh(z); });
  dense(w, hidden.data(), g.topology.hidden, out.data(), kActionCount, sigmoid);
  return out;
}

ActionSet mlp_forward(const Genome& g, const SensorVector& normalized) {
  const auto out = mlp_outputs(g, normalized);
  std::array<bool, kActionCount> bits{};
  for (int i = 0; i < kActionCount; ++i) bits[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] > 0.5;
  return action_from_bits(bits);
}

ActionSet action_from_bits(const std::array<bool, kActionCount>& b) { return {b[0], b[1], b[2], b[3], b[4]}; }

std::array<bool, kActionCount> action_bits(const ActionSet& a) { return {a.left, a.right, a.jump, a.shoot, a.release}; }

std::string encode_genome(const Genome& g) {
  check_length(g);
  std::string out = "{\"format_version\":" + std::to_string(kGenomeFormatVersion) +
                    ",\"topology\":{\"inputs\":" + std::to_string(g.topology.inputs) +
                    ",\"hidden\":" + std::to_string(g.topology.hidden) +
                    ",\"outputs\":" + std::to_string(g.topology.outputs) + "},\"weights\":[";
  char buf[32];
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(g.weights[i]));
    out += buf;
  }
  out += "]}\n";
  return out;
}

Genome decode_genome(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("genome file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("genome file must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "format_version" && key != "topology" && key != "weights")
      throw ParseError("unknown field '" + key + "'");

  const int version = int_field(doc, "format_version", "format_version");
  if (version != kGenomeFormatVersion)
    throw ParseError("unsupported format_version " + std::to_string(version));

  if (!doc.contains("topology") || !doc["topology"].is_object()) throw ParseError("missing field 'topology'");
  const auto& topo = doc["topology"];
  Genome g;
  g.topology.inputs = int_field(topo, "inputs", "topology.inputs");
  g.topology.hidden = int_field(topo, "hidden", "topology.hidden");
  g.topology.outputs = int_field(topo, "outputs", "topology.outputs");
  try {
    validate(g.topology);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'topology': ") + e.what());
  }

  if (!doc.contains("weights") || !doc["weights"].is_array()) throw ParseError("missing field 'weights'");
  const auto& ws = doc["weights"];
  const auto need = parameter_count(g.topology);
  if (ws.size() != need)
    throw ParseError("field 'weights': length mismatch, expected " + std::to_string(need) + " got " +
                     std::to_string(ws.size()));
  g.weights.reserve(need);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (!ws[i].is_number()) throw ParseError("field 'weights[" + std::to_string(i) + "]' is not a number");
    const double v = ws[i].get<double>();
    const auto f = static_cast<float>(v);
    if (!std::isfinite(v) || !std::isfinite(f))
      throw ParseError("field 'weights[" + std::to_string(i) + "]' is not finite");
    g.weights.push_back(f);
  }
  return g;
}

void save_genome(const Genome& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << encode_genome(g);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Genome load_genome(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_genome(buf.str());
}

std::uint64_t genome_digest(const Genome& g) { return fnv1a64(encode_genome(g)); }

ActionSet ScriptedController::act(const SimState& state, const SensorVector&) {
  if (actions_.empty()) return {};
  if (state.tick < actions_.size()) return actions_[state.tick];
  return loop_ ? actions_[state.tick % actions_.size()] : ActionSet{};
}

MlpPolicy::MlpPolicy(Genome genome, const MatchConfig& config) : genome_(std::move(genome)), config_(config) {
  check_length(genome_);
}

ActionSet MlpPolicy::act(const SimState&, const SensorVector& raw_sensors) {
  return mlp_forward(genome_, normalize(raw_sensors, config_));
}

}  // namespace evoman
