#include "evoman/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evoman/errors.hpp"
#include "evoman/parallel.hpp"
#include "evoman/rng.hpp"

namespace evoman {
namespace {

constexpr int kReportFormatVersion = 1;

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

double gain(double ep, double ee) {
  if (!(ep >= 0.0 && ep <= kMaxEnergy)) throw std::invalid_argument("gain: ep must be in [0, 100]");
  if (!(ee >= 0.0 && ee <= kMaxEnergy)) throw std::invalid_argument("gain: ee must be in [0, 100]");
  return kGainOffset + ep - ee;
}

double gain(const MatchResult& r) { return gain(r.player_energy, r.enemy_energy); }

double harmonic_mean(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("harmonic_mean of an empty list");
  double inv = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw std::domain_error("harmonic_mean requires strictly positive values");
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

double arithmetic_mean(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("mean of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

int GainReport::wins() const {
  return static_cast<int>(
      std::count_if(per_boss.begin(), per_boss.end(), [&](const BossGain& b) { return b.wins == repetitions; }));
}

std::vector<double> GainReport::gains() const {
  std::vector<double> out;
  out.reserve(per_boss.size());
  for (const auto& b : per_boss) out.push_back(b.mean_gain);
  return out;
}

GainReport make_report(std::string agent_name, std::span<const double> per_boss_gains, int repetitions) {
  GainReport r;
  r.agent_name = std::move(agent_name);
  r.repetitions = repetitions;
  for (std::size_t i = 0; i < per_boss_gains.size(); ++i)
    r.per_boss.push_back({static_cast<int>(i) + 1, per_boss_gains[i], 0});
  if (!per_boss_gains.empty()) r.harmonic_mean = harmonic_mean(per_boss_gains);
  return r;
}

std::uint64_t evaluation_seed(std::uint64_t seed, int boss_id, int repetition) {
  return derive_seed(seed, {0x6576616cULL, static_cast<std::uint64_t>(boss_id), static_cast<std::uint64_t>(repetition)});
}

GainReport evaluate_all(Controller& controller, const MatchConfig& config, const EvalOptions& options,
                        const Roster& roster) {
  if (options.repetitions < 1) throw std::invalid_argument("evaluate_all: repetitions must be >= 1");
  if (options.bosses.empty()) throw std::invalid_argument("evaluate_all: empty boss list");
  const auto reps = static_cast<std::size_t>(options.repetitions);
  const std::size_t total = options.bosses.size() * reps;
  std::vector<MatchResult> results(total);
  const unsigned threads = controller.shareable() ? options.threads : 1;
  parallel_for(total, threads, [&](std::size_t i) {
    const int boss = options.bosses[i / reps];
    const auto seed = evaluation_seed(options.seed, boss, static_cast<int>(i % reps));
    results[i] = run_match(controller, boss, config, seed, roster);
  });

  GainReport report;
  report.agent_name = options.agent_name;
  report.roster_version = roster.version;
  report.repetitions = options.repetitions;
  for (std::size_t b = 0; b < options.bosses.size(); ++b) {
    std::vector<double> gains;
    int wins = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& m = results[b * reps + r];
      gains.push_back(gain(m));
      wins += m.enemy_energy == 0;
    }
    report.per_boss.push_back({options.bosses[b], arithmetic_mean(gains), wins});
  }
  const auto g = report.gains();
  report.harmonic_mean = harmonic_mean(g);
  return report;
}

std::string render_report(std::span<const GainReport> reports) {
  std::size_t rows = 0;
  for (const auto& r : reports) rows = std::max(rows, r.per_boss.size());

  const std::size_t first = 6;
  std::vector<std::size_t> widths;
  for (const auto& r : reports) widths.push_back(std::max<std::size_t>(r.agent_name.size(), 7));

  std::ostringstream out;
  auto emit_row = [&](const std::string& label, auto cell) {
    std::string line = pad(label, first);
    for (std::size_t c = 0; c < reports.size(); ++c) line += " | " + pad(cell(c), widths[c]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit_row("Boss", [&](std::size_t c) { return reports[c].agent_name; });
  std::string rule(first, '-');
  for (auto w : widths) rule += "-+-" + std::string(w, '-');
  out << rule << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    int id = static_cast<int>(i) + 1;
    for (const auto& r : reports)
      if (i < r.per_boss.size()) id = r.per_boss[i].boss_id;
    emit_row(std::to_string(id), [&](std::size_t c) {
      const auto& pb = reports[c].per_boss;
      return i < pb.size() ? fixed2(pb[i].mean_gain) : std::string("-");
    });
  }
  if (rows > 0) emit_row("Mean", [&](std::size_t c) { return fixed2(reports[c].harmonic_mean); });
  return out.str();
}

nlohmann::ordered_json report_to_json(const GainReport& report) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kReportFormatVersion;
  doc["agent_name"] = report.agent_name;
  doc["roster_version"] = report.roster_version;
  doc["repetitions"] = report.repetitions;
  auto per_boss = nlohmann::ordered_json::array();
  for (const auto& b : report.per_boss) {
    nlohmann::ordered_json e;
    e["boss"] = b.boss_id;
    e["mean_gain"] = b.mean_gain;
    e["wins"] = b.wins;
    per_boss.push_back(std::move(e));
  }
  doc["per_boss"] = std::move(per_boss);
  doc["harmonic_mean"] = report.harmonic_mean;
  return doc;
}

GainReport report_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format_version").get<int>() != kReportFormatVersion) throw ParseError("unsupported format_version");
    GainReport r;
    r.agent_name = doc.at("agent_name").get<std::string>();
    r.roster_version = doc.at("roster_version").get<std::string>();
    r.repetitions = doc.at("repetitions").get<int>();
    for (const auto& e : doc.at("per_boss"))
      r.per_boss.push_back({e.at("boss").get<int>(), e.at("mean_gain").get<double>(), e.at("wins").get<int>()});
    r.harmonic_mean = doc.at("harmonic_mean").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

void save_report(const GainReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report_to_json(report).dump(2) << '\n';
}

GainReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return report_from_json(doc);
}

}  // namespace evoman
