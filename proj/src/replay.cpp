#include "evoman/replay.hpp"

#include <fstream>
#include <sstream>

#include "evoman/errors.hpp"
#include "evoman/evaluation.hpp"
#include "evoman/hash.hpp"
#include "evoman/serialization.hpp"
#include "evoman/wire.hpp"

namespace evoman {
namespace {

using ojson = nlohmann::ordered_json;

std::string bits_string(const ActionSet& a) {
  std::string s;
  for (bool b : action_bits(a)) s += b ? '1' : '0';
  return s;
}

ActionSet bits_from(const std::string& s, std::size_t line) {
  if (s.size() != kActionCount) throw ParseError("action bits must be 5 characters", line);
  std::array<bool, kActionCount> bits{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ParseError("action bits must be '0' or '1'", line);
    bits[i] = s[i] == '1';
  }
  return action_from_bits(bits);
}

ojson header_json(const ReplayHeader& h) {
  return ojson{{"type", "header"},
               {"format_version", h.format_version},
               {"roster_version", h.roster_version},
               {"boss", h.boss_id},
               {"seed", h.seed},
               {"config_digest", hex64(h.config_digest)},
               {"genome_digest", h.agent}};
}

ojson trailer_json(const ReplayTrailer& t) {
  return ojson{{"type", "trailer"},
               {"ep", t.player_energy},
               {"ee", t.enemy_energy},
               {"outcome", to_string(t.outcome)},
               {"state_hash", hex64(t.state_hash)}};
}

}  // namespace

std::uint64_t config_digest(const MatchConfig& config, const Roster& roster) {
  const ojson doc{{"match", to_json(config)}, {"roster", to_json(roster)}};
  return fnv1a64(doc.dump());
}

RecordedMatch record_replay(Controller& controller, int boss_id, const MatchConfig& config, std::uint64_t seed,
                            std::string agent, const Roster& roster) {
  RecordedMatch rec;
  auto& r = rec.replay;
  r.header.roster_version = roster.version;
  r.header.boss_id = boss_id;
  r.header.seed = seed;
  r.header.config_digest = config_digest(config, roster);
  r.header.agent = std::move(agent);
  rec.result = run_match(controller, boss_id, config, seed, roster,
                         [&](const SimState&, const ActionSet& a, const SimState&) { r.actions.push_back(a); });
  r.trailer = {rec.result.player_energy, rec.result.enemy_energy, rec.result.outcome, rec.result.state_hash};
  return rec;
}

std::string write_replay(const Replay& replay) {
  std::string out = header_json(replay.header).dump() + '\n';
  for (std::size_t t = 0; t < replay.actions.size(); ++t)
    out += ojson{{"type", "action"}, {"tick", t}, {"bits", bits_string(replay.actions[t])}}.dump() + '\n';
  out += trailer_json(replay.trailer).dump() + '\n';
  return out;
}

Replay read_replay(std::string_view text) {
  Replay r;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_trailer = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (pos >= text.size()) break;
      throw ParseError("empty line", line_no);
    }
    if (have_trailer) throw ParseError("trailing garbage after trailer", line_no);

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError("not a JSON object", line_no);
    }
    try {
      const auto type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw ParseError("first line must be the header", line_no);
        r.header.format_version = j.at("format_version").get<int>();
        if (r.header.format_version != kReplayFormatVersion)
          throw ParseError("unsupported format_version " + std::to_string(r.header.format_version), line_no);
        r.header.roster_version = j.at("roster_version").get<std::string>();
        r.header.boss_id = j.at("boss").get<int>();
        r.header.seed = j.at("seed").get<std::uint64_t>();
        r.header.config_digest = parse_hex64(j.at("config_digest").get<std::string>());
        r.header.agent = j.at("genome_digest").get<std::string>();
        have_header = true;
      } else if (type == "action") {
        const auto tick = j.at("tick").get<std::uint64_t>();
        if (tick != r.actions.size())
          throw ParseError("tick gap: expected " + std::to_string(r.actions.size()) + ", got " + std::to_string(tick),
                           line_no);
        r.actions.push_back(bits_from(j.at("bits").get<std::string>(), line_no));
      } else if (type == "trailer") {
        r.trailer.player_energy = j.at("ep").get<std::int32_t>();
        r.trailer.enemy_energy = j.at("ee").get<std::int32_t>();
        r.trailer.outcome = outcome_from_string(j.at("outcome").get<std::string>());
        r.trailer.state_hash = parse_hex64(j.at("state_hash").get<std::string>());
        have_trailer = true;
      } else {
        throw ParseError("unexpected record type '" + type + "'", line_no);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("empty replay");
  if (!have_trailer) throw ParseError("missing trailer", line_no);
  return r;
}

void save_replay(const Replay& replay, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_replay(replay);
}

Replay load_replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_replay(buf.str());
}

std::string_view to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Verified: return "Verified";
    case VerifyStatus::HashMismatch: return "HashMismatch";
    case VerifyStatus::ConfigMismatch: return "ConfigMismatch";
  }
  return "unknown";
}

VerifyResult verify_replay(const Replay& replay, const MatchConfig& config, const Roster& roster) {
  const auto& h = replay.header;
  if (h.roster_version != roster.version)
    return {VerifyStatus::ConfigMismatch, std::nullopt, "unknown roster version '" + h.roster_version + "'"};
  if (h.config_digest != config_digest(config, roster))
    return {VerifyStatus::ConfigMismatch, std::nullopt, "config digest differs from the local config"};
  if (h.boss_id < 1 || h.boss_id > kBossCount)
    return {VerifyStatus::ConfigMismatch, std::nullopt, "boss id out of range"};

  SimState s = new_match(h.boss_id, config, h.seed, roster);
  for (std::size_t t = 0; t < replay.actions.size(); ++t) {
    if (s.outcome != Outcome::Ongoing)
      return {VerifyStatus::HashMismatch, static_cast<std::uint32_t>(t), "match ended before the action log"};
    s = step(s, replay.actions[t], config, roster);
  }
  if (s.outcome == Outcome::Ongoing)
    return {VerifyStatus::HashMismatch, s.tick, "action log ended before the match"};
  const auto& tr = replay.trailer;
  if (state_hash(s) != tr.state_hash || s.player_energy != tr.player_energy || s.enemy_energy != tr.enemy_energy ||
      s.outcome != tr.outcome)
    return {VerifyStatus::HashMismatch, std::nullopt, "final state differs from the trailer"};
  return {VerifyStatus::Verified, std::nullopt, {}};
}

nlohmann::ordered_json export_replay_json(const Replay& replay, const MatchConfig& config, const Roster& roster) {
  const auto v = verify_replay(replay, config, roster);
  if (!v.ok()) throw IllegalStateError("replay does not verify: " + v.detail);

  ojson doc;
  doc["format_version"] = kReplayFormatVersion;
  doc["header"] = header_json(replay.header);
  doc["arena"] = ojson{{"width", config.arena_width}, {"height", config.arena_height}, {"floor_y", config.floor_y}};
  auto frames = ojson::array();
  SimState s = new_match(replay.header.boss_id, config, replay.header.seed, roster);
  frames.push_back(wire::to_json(wire::make_state(s)));
  for (const auto& a : replay.actions) {
    s = step(s, a, config, roster);
    frames.push_back(wire::to_json(wire::make_state(s)));
  }
  doc["frames"] = std::move(frames);
  doc["trailer"] = trailer_json(replay.trailer);
  doc["gain"] = gain(replay.trailer.player_energy, replay.trailer.enemy_energy);
  return doc;
}

}  // namespace evoman
