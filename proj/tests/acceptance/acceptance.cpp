// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "baseline_gains.hpp"
#include "cli.hpp"
#include "evoman/evaluation.hpp"
#include "evoman/evolution.hpp"
#include "evoman/match.hpp"
#include "evoman/replay.hpp"
#include "evoman/sensors.hpp"
#include "evoman/sim.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace evoman;
namespace et = evoman::testing;

namespace {

struct Outcome_ {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && out_.pass) out_.detail = what;
    out_.pass = out_.pass && ok;
  }
  void note(const std::string& text) {
    if (out_.pass) out_.detail = text;
  }
  Outcome_ result() const { return out_; }

 private:
  Outcome_ out_;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome_ mean_row_oracle() {
  Check c;
  std::string got;
  for (const auto& col : et::kBaselineGains) {
    const double h = harmonic_mean(col.gains);
    got += fmt("%s=%.2f ", std::string(col.name).c_str(), h);
    c.require(std::abs(h - col.mean_row) <= et::kMeanRowTolerance,
              fmt("%s: %.4f vs %.2f", std::string(col.name).c_str(), h, col.mean_row));
  }
  c.note(got);
  return c.result();
}

Outcome_ gain_formula() {
  Check c;
  c.require(std::abs(gain(0, 100) - 0.01) <= 1e-9, "gain(0,100)");
  c.require(std::abs(gain(90, 0) - 190.01) <= 1e-9, "gain(90,0)");
  for (int x = 0; x <= 100; ++x) c.require(std::abs(gain(x, x) - 100.01) <= 1e-9, fmt("gain(%d,%d)", x, x));
  c.note("gain(0,100)=0.01 gain(90,0)=190.01 gain(x,x)=100.01 for x in 0..100");
  return c.result();
}

std::vector<std::uint64_t> hash_trace(int boss, std::uint64_t seed, const std::vector<ActionSet>& script) {
  ScriptedController ctl(script);
  std::vector<std::uint64_t> trace;
  run_match(ctl, boss, {}, seed, default_roster(),
            [&](const SimState&, const ActionSet&, const SimState& after) { trace.push_back(state_hash(after)); });
  return trace;
}

Outcome_ determinism() {
  Check c;
  Rng rng(2024);
  std::size_t ticks = 0;
  for (int i = 0; i < 100; ++i) {
    const int boss = static_cast<int>(rng.below(kBossCount)) + 1;
    const auto seed = rng.next();
    const auto script = et::random_script(rng, 3000);
    const auto a = hash_trace(boss, seed, script);
    const auto b = hash_trace(boss, seed, script);
    c.require(a == b, fmt("match %d (boss %d) diverged", i, boss));
    ticks += a.size();
  }
  et::TempDir dir("accept-det");
  EvoConfig cfg;
  cfg.population_size = 12;
  cfg.generations = 5;
  cfg.seed = 77;
  cfg.mode = EvoMode::generalist({1, 2, 3, 4});
  MatchConfig match;
  match.max_ticks = 1000;
  std::vector<std::string> bytes;
  for (int threads : {1, 4, 4}) {
    cfg.threads = threads;
    const auto path = dir.file("h" + std::to_string(threads) + ".jsonl");
    std::ofstream(path, std::ios::binary) << history_to_jsonl(evolve(cfg, {20, 10, 5}, match).history);
    std::ifstream in(path, std::ios::binary);
    bytes.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  c.require(bytes[0] == bytes[1] && bytes[1] == bytes[2], "evolve history files differ");
  c.note(fmt("100 matches, %zu hashed ticks; 3 history files byte-identical", ticks));
  return c.result();
}

ActionSet flip(ActionSet a, int bit) {
  auto bits = action_bits(a);
  bits[static_cast<std::size_t>(bit)] = !bits[static_cast<std::size_t>(bit)];
  return action_from_bits(bits);
}

Outcome_ replay_round_trip() {
  Check c;
  Rng rng(99);
  const MatchConfig cfg;
  std::size_t flips = 0;
  for (int i = 0; i < 50; ++i) {
    const int boss = i % kBossCount + 1;
    ScriptedController ctl(et::random_script(rng, 3000));
    const auto rec = record_replay(ctl, boss, cfg, rng.next());
    const auto text = write_replay(rec.replay);
    const auto back = read_replay(text);
    c.require(back == rec.replay, fmt("match %d: text round-trip differs", i));
    c.require(verify_replay(back, cfg).ok(), fmt("match %d: does not verify", i));
    // Every tick of the first 100, plus random positions across the rest.
    const std::size_t n = back.actions.size();
    std::vector<std::size_t> ticks;
    for (std::size_t t = 0; t < std::min<std::size_t>(n, 100); ++t) ticks.push_back(t);
    for (int k = 0; k < 20 && n > 0; ++k) ticks.push_back(static_cast<std::size_t>(rng.below(n)));
    for (auto t : ticks) {
      auto bad = back;
      const int bit = static_cast<int>(rng.below(kActionCount));
      bad.actions[t] = flip(bad.actions[t], bit);
      c.require(verify_replay(bad, cfg).status == VerifyStatus::HashMismatch,
                fmt("match %d: flipped bit %d at tick %zu not detected", i, bit, t));
      ++flips;
    }
  }
  c.note(fmt("50 replays verified, %zu single-bit flips all HashMismatch", flips));
  return c.result();
}

Outcome_ sensor_invariants() {
  Check c;
  const MatchConfig cfg;
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto s = i % 2 ? et::random_state(rng, cfg) : et::random_reachable_state(rng, cfg, 300);
    const auto a = extract_sensors(s);
    const auto b = extract_sensors(mirror_state(s, cfg));
    c.require(a.size() == 20, "sensor vector length");
    for (std::size_t k = 0; k < 18; k += 2)
      c.require(b[k] == -a[k] && b[k + 1] == a[k + 1], fmt("state %d: mirror component %zu", i, k));
    c.require(b[18] == -a[18] && b[19] == -a[19], fmt("state %d: mirrored facing", i));
  }
  // Golden layout: one enemy bullet in slot 2.
  auto s = new_match(1, cfg, 1);
  s.player.pos_x = Fixed::from_px(100);
  s.player.pos_y = Fixed::from_px(400);
  s.player.facing = 1;
  s.enemy.pos_x = Fixed::from_px(300);
  s.enemy.pos_y = Fixed::from_px(350);
  s.enemy.facing = -1;
  s.bullets[2].alive = true;
  s.bullets[2].pos_x = Fixed::from_px(90);
  s.bullets[2].pos_y = Fixed::from_px(410);
  const std::array<double, 20> golden{0, 0, 0, 0, -10, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 200, -50, 1, -1};
  c.require(extract_sensors(s).values == golden, "golden layout");
  c.note("10000 fuzzed states, length 20, exact dx antisymmetry, golden layout");
  return c.result();
}

Outcome_ oracle_equivalences() {
  Check c;
  Rng rng(5);
  std::vector<std::vector<double>> v(200, std::vector<double>(4));
  for (auto& x : v)
    for (auto& y : x) y = static_cast<double>(rng.below(8));
  c.require(non_dominated_sort(v) == et::brute_fronts(v), "non_dominated_sort differs from brute force");
  for (auto& x : v)
    for (auto& y : x) y = rng.uniform(0.01, 200.01);
  c.require(non_dominated_sort(v) == et::brute_fronts(v), "non_dominated_sort differs on continuous objectives");

  for (int i = 0; i < 1000; ++i) {
    const int hidden = std::array{0, 10, 50}[static_cast<std::size_t>(i % 3)];
    const auto g = et::random_genome(rng, hidden, 2.0);
    SensorVector x;
    for (auto& e : x.values) e = rng.uniform(-1.0, 1.0);
    const auto z = et::oracle_logits(g, x);
    const auto out = mlp_outputs(g, x);
    const auto bits = action_bits(mlp_forward(g, x));
    for (std::size_t j = 0; j < 5; ++j) {
      c.require(std::abs(out[j] - et::sigmoid(z[j])) <= 1e-12, fmt("genome %d output %zu", i, j));
      if (std::abs(z[j]) > 1e-9) c.require(bits[j] == (z[j] > 0), fmt("genome %d action %zu", i, j));
    }
  }
  c.require(parameter_count({20, 0, 5}) == 105 && parameter_count({20, 10, 5}) == 265 &&
                parameter_count({20, 50, 5}) == 1305,
            "parameter counts");
  c.note("NDS on 2x200 vectors, MLP on 1000 genomes, counts 105/265/1305");
  return c.result();
}

Outcome_ training_smoke() {
  Check c;
  int wins = 0, improved = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EvoConfig cfg;
    cfg.population_size = 30;
    cfg.generations = 25;
    cfg.seed = seed;
    cfg.mode = EvoMode::individual(3);  // Gunner
    const auto r = evolve(cfg, {20, 10, 5});
    const double initial = r.history.generations.front().best;
    const double best = r.best_record.fitness;
    const bool up = best - initial >= 20.0, won = best > 100.01;
    improved += up;
    wins += up && won;
    per_seed += fmt("s%llu %.1f->%.1f ", static_cast<unsigned long long>(seed), initial, best);
  }
  c.require(wins >= 4, fmt("only %d/5 seeds improved by 20 and won: %s", wins, per_seed.c_str()));
  c.note(fmt("%d/5 seeds qualify: %s", wins, per_seed.c_str()));
  return c.result();
}

Outcome_ generalist_pipeline() {
  Check c;
  et::TempDir dir("accept-gen");
  std::ostringstream out, err;
  const int train = cli::run_cli({"train", "--mode", "generalist", "--bosses", "1,2,3,4", "--pop", "12", "--gens", "5",
                                  "--seed", "1", "--out", dir.file("g.json"), "--history", dir.file("h.jsonl")},
                                 out, err);
  c.require(train == 0, "train failed: " + err.str());
  if (train != 0) return c.result();
  std::ostringstream eout;
  const int eval = cli::run_cli({"eval", "--genome", dir.file("g.json"), "--out", dir.file("r.json")}, eout, err);
  c.require(eval == 0, "eval failed: " + err.str());
  if (eval != 0) return c.result();

  std::vector<std::string> lines;
  std::istringstream in(eout.str());
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  c.require(lines.size() >= 11 && lines[0].rfind("Boss", 0) == 0 && lines[10].rfind("Mean", 0) == 0,
            "report is not 8 boss rows plus Mean");
  if (!c.result().pass) return c.result();
  for (int b = 1; b <= 8; ++b)
    c.require(lines[static_cast<std::size_t>(b + 1)].rfind(std::to_string(b) + " ", 0) == 0, fmt("row %d", b));
  const auto report = load_report(dir.file("r.json"));
  const double printed = std::stod(lines[10].substr(lines[10].find('|') + 1));
  const double expect = harmonic_mean(report.gains());
  c.require(fmt("%.2f", printed) == fmt("%.2f", expect), fmt("Mean %.2f vs harmonic mean %.4f", printed, expect));
  c.note(fmt("Mean %.2f = harmonic mean of 8 entries, %d wins", printed, report.wins()));
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome_()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {"mean-row oracle", mean_row_oracle, 1},
      {"gain formula", gain_formula, 1},
      {"determinism", determinism, 60},
      {"replay round-trip", replay_round_trip, 60},
      {"sensor invariants", sensor_invariants, 60},
      {"oracle equivalences", oracle_equivalences, 60},
      {"training smoke", training_smoke, 300},
      {"generalist pipeline", generalist_pipeline, 300},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && secs > c.budget_s) r = {false, fmt("over budget: %.1fs > %.0fs", secs, c.budget_s)};
    failed += !r.pass;
    std::printf("%s  %-20s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", c.name, secs, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
