#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "evoman/controllers.hpp"
#include "evoman/evaluation.hpp"
#include "evoman/evolution.hpp"
#include "evoman/hash.hpp"
#include "evoman/match.hpp"
#include "evoman/replay.hpp"
#include "evoman/server.hpp"
#include "run_config.hpp"

namespace evoman::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::vector<int> parse_bosses(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError("--bosses expects a comma-separated list of ids");
    out.push_back(id);
    pos = end + 1;
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure("cannot write " + path);
}

// Counted options only override when they appear on the command line.
template <class T>
void override_if(const CLI::Option* opt, T& field, const T& value) {
  if (opt->count() > 0) field = value;
}

struct Flags {
  std::string config_path;
  bool print_config = false;

  // train
  std::string mode;
  std::string bosses;
  int hidden = 0, pop = 0, gens = 0, reps = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out, history;
  // eval / record / report
  std::string genome, name, report_out;
  std::vector<std::string> inputs;
  int boss = 1;
  // replay
  std::string replay_path, export_out;
  // play / serve
  int port = 0;
  std::string bind;
  std::int64_t timeout_ms = 0;
};

struct Options {
  CLI::Option *mode, *bosses, *hidden, *pop, *gens, *seed, *threads, *out, *history, *reps;
  CLI::Option *eval_reps, *eval_seed, *eval_threads, *eval_out, *name;
  CLI::Option *rec_seed, *rec_out, *rec_genome, *rec_boss;
  CLI::Option *play_port, *play_bind, *serve_port, *serve_bind, *serve_timeout, *serve_boss;
};

RunConfig build_config(const Flags& f, const Options& o, const CLI::App* cmd) {
  RunConfig c;
  std::string path = f.config_path;
  if (path.empty())
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  if (!path.empty()) c = load_run_config(path, c);

  auto& e = c.evolution;
  const std::string sub = cmd ? cmd->get_name() : "";
  if (sub == "train") {
    if (o.mode->count()) e.mode.kind = mode_from_string(f.mode);
    if (o.bosses->count()) e.mode.bosses = parse_bosses(f.bosses);
    if (e.mode.kind == EvoModeKind::Individual && !o.bosses->count() && e.mode.bosses.size() > 1)
      e.mode.bosses.resize(1);
    override_if(o.hidden, c.hidden, f.hidden);
    override_if(o.pop, e.population_size, f.pop);
    override_if(o.gens, e.generations, f.gens);
    override_if(o.seed, e.seed, f.seed);
    override_if(o.threads, e.threads, f.threads);
    override_if(o.reps, e.repetitions_per_boss, f.reps);
    override_if(o.out, c.output.genome, f.out);
    override_if(o.history, c.output.history, f.history);
    validate(MlpTopology{static_cast<int>(kSensorCount), c.hidden, kActionCount});
  } else if (sub == "eval") {
    override_if(o.eval_reps, c.eval.repetitions, f.reps);
    override_if(o.eval_seed, c.eval.seed, f.seed);
    override_if(o.eval_threads, c.eval.threads, f.threads);
    override_if(o.eval_out, c.output.report, f.report_out);
    if (c.eval.repetitions < 1) throw UsageError("--reps must be >= 1");
  } else if (sub == "record") {
    override_if(o.rec_out, c.output.replay, f.out);
  } else if (sub == "play") {
    if (o.play_port->count()) c.server.port = static_cast<std::uint16_t>(f.port);
    override_if(o.play_bind, c.server.bind_address, f.bind);
  } else if (sub == "serve") {
    if (o.serve_port->count()) c.server.port = static_cast<std::uint16_t>(f.port);
    override_if(o.serve_bind, c.server.bind_address, f.bind);
    override_if(o.serve_timeout, c.server.action_timeout_ms, f.timeout_ms);
  }
  return c;
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  try {
    validate(c.evolution);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const MlpTopology topology{static_cast<int>(kSensorCount), c.hidden, kActionCount};
  const auto result = evolve(c.evolution, topology, c.match, c.roster, [&](const GenerationRecord& g) {
    out << format("gen %4d  best %9.4f  mean %9.4f", g.generation, g.best, g.mean) << std::endl;
  });
  save_genome(result.best, c.output.genome);
  write_file(c.output.history, history_to_jsonl(result.history));
  out << format("best fitness %.4f", result.best_record.fitness) << '\n';
  out << "genome: " << c.output.genome << '\n' << "history: " << c.output.history << '\n';
  return kOk;
}

Genome read_genome_or_usage(const std::string& path) {
  try {
    return load_genome(path);
  } catch (const std::exception& e) {
    throw UsageError("unreadable genome " + path + ": " + e.what());
  }
}

int cmd_eval(const RunConfig& c, const Flags& f, std::ostream& out) {
  const Genome genome = read_genome_or_usage(f.genome);
  MlpPolicy policy(genome, c.match);
  EvalOptions opts;
  opts.repetitions = c.eval.repetitions;
  opts.seed = c.eval.seed;
  opts.threads = c.eval.threads;
  opts.agent_name = f.name.empty() ? std::filesystem::path(f.genome).stem().string() : f.name;
  const auto report = evaluate_all(policy, c.match, opts, c.roster);
  out << render_report(std::span(&report, 1));
  out << "Wins: " << report.wins() << "/" << report.per_boss.size() << '\n';
  save_report(report, c.output.report);
  out << "report: " << c.output.report << '\n';
  return kOk;
}

int cmd_record(const RunConfig& c, const Flags& f, std::ostream& out) {
  if (f.boss < 1 || f.boss > kBossCount) throw UsageError("--boss must be in 1..8");
  std::unique_ptr<Controller> controller;
  std::string agent = "idle";
  if (!f.genome.empty()) {
    auto g = read_genome_or_usage(f.genome);
    agent = hex64(genome_digest(g));
    controller = std::make_unique<MlpPolicy>(std::move(g), c.match);
  } else {
    controller = std::make_unique<IdleController>();
  }
  const auto rec = record_replay(*controller, f.boss, c.match, f.seed, agent, c.roster);
  save_replay(rec.replay, c.output.replay);
  const auto& r = rec.result;
  out << format("boss %d seed %llu: %s ep=%d ee=%d ticks=%u gain=%.2f", r.boss_id,
                static_cast<unsigned long long>(r.seed), std::string(to_string(r.outcome)).c_str(), r.player_energy,
                r.enemy_energy, r.ticks, gain(r))
      << '\n';
  out << "replay: " << c.output.replay << '\n';
  return kOk;
}

Replay read_replay_or_fail(const std::string& path) {
  try {
    return load_replay(path);
  } catch (const std::exception& e) {
    throw Failure("corrupt replay " + path + ": " + e.what());
  }
}

int cmd_verify(const RunConfig& c, const Flags& f, std::ostream& out) {
  const auto replay = read_replay_or_fail(f.replay_path);
  const auto v = verify_replay(replay, c.match, c.roster);
  if (v.ok()) {
    out << "Verified\n";
    return kOk;
  }
  std::string line(to_string(v.status));
  if (v.tick) line += " at tick " + std::to_string(*v.tick);
  if (!v.detail.empty()) line += ": " + v.detail;
  out << line << '\n';
  return kFailure;
}

int cmd_export(const RunConfig& c, const Flags& f, std::ostream& out) {
  const auto replay = read_replay_or_fail(f.replay_path);
  std::string text;
  try {
    text = export_replay_json(replay, c.match, c.roster).dump() + "\n";
  } catch (const IllegalStateError& e) {
    throw Failure(e.what());
  }
  if (f.export_out.empty())
    out << text;
  else
    write_file(f.export_out, text);
  return kOk;
}

int cmd_report(const Flags& f, std::ostream& out) {
  std::vector<GainReport> reports;
  for (const auto& path : f.inputs) {
    try {
      reports.push_back(load_report(path));
    } catch (const std::exception& e) {
      throw UsageError("unreadable report " + path + ": " + e.what());
    }
  }
  out << render_report(reports);
  return kOk;
}

int cmd_serve(const RunConfig& c, int boss, bool human, std::ostream& out) {
  if (boss < 1 || boss > kBossCount) throw UsageError("--boss must be in 1..8");
  ServerOptions opts;
  opts.bind_address = c.server.bind_address;
  opts.port = c.server.port;
  opts.session.config = c.match;
  opts.session.roster = &c.roster;
  opts.session.default_boss = boss;
  if (human || c.server.action_timeout_ms == 0)
    opts.session.action_timeout = std::nullopt;
  else
    opts.session.action_timeout = std::chrono::milliseconds(c.server.action_timeout_ms);
  std::unique_ptr<StepServer> server;
  try {
    server = std::make_unique<StepServer>(opts);
  } catch (const std::system_error& e) {
    throw UsageError(std::string("cannot listen: ") + e.what());
  }
  out << "listening on " << opts.bind_address << ":" << server->port() << " (boss " << boss << ")" << std::endl;
  server->serve();
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"EvoMan boss-fight simulator and neuroevolution toolkit", "evoman"};
  app.require_subcommand(1);
  Flags f;
  Options o{};
  app.add_option("--config", f.config_path, "JSON run config (default: $EVOMAN_CONFIG)");
  app.add_flag("--print-config", f.print_config, "print the merged run config and exit");

  auto* train = app.add_subcommand("train", "evolve a controller");
  o.mode = train->add_option("--mode", f.mode, "individual, generalist or multi");
  o.bosses = train->add_option("--bosses", f.bosses, "training set, e.g. 1,2,3,4");
  o.hidden = train->add_option("--hidden", f.hidden, "hidden neurons: 0, 10 or 50");
  o.pop = train->add_option("--pop", f.pop, "population size");
  o.gens = train->add_option("--gens", f.gens, "generations");
  o.seed = train->add_option("--seed", f.seed, "run seed");
  o.threads = train->add_option("--threads", f.threads, "fitness workers (0 = all cores)");
  o.reps = train->add_option("--reps", f.reps, "matches per boss per evaluation");
  o.out = train->add_option("--out", f.out, "best genome file");
  o.history = train->add_option("--history", f.history, "generation history (JSON lines)");

  auto* eval = app.add_subcommand("eval", "evaluate a genome against every boss");
  eval->add_option("--genome", f.genome, "genome file")->required();
  o.eval_reps = eval->add_option("--reps", f.reps, "repetitions per boss");
  o.eval_seed = eval->add_option("--seed", f.seed, "evaluation seed");
  o.eval_threads = eval->add_option("--threads", f.threads, "workers (0 = all cores)");
  o.eval_out = eval->add_option("--out", f.report_out, "structured report file");
  o.name = eval->add_option("--name", f.name, "agent name in the report");

  auto* record = app.add_subcommand("record", "record one match to a replay file");
  o.rec_boss = record->add_option("--boss", f.boss, "boss id 1..8");
  o.rec_seed = record->add_option("--seed", f.seed, "match seed");
  o.rec_genome = record->add_option("--genome", f.genome, "genome file (idle player when omitted)");
  o.rec_out = record->add_option("--out", f.out, "replay file (.evr)");

  auto* replay = app.add_subcommand("replay", "check or export replay files");
  replay->require_subcommand(1);
  auto* verify = replay->add_subcommand("verify", "re-simulate and compare with the trailer");
  verify->add_option("path", f.replay_path, "replay file")->required();
  auto* export_json = replay->add_subcommand("export-json", "expand a replay into per-tick frames");
  export_json->add_option("path", f.replay_path, "replay file")->required();
  export_json->add_option("--out", f.export_out, "output file (default: standard output)");

  auto* report = app.add_subcommand("report", "merge structured reports into one table");
  report->add_option("--inputs", f.inputs, "report files")->required()->expected(1, -1);

  auto* play = app.add_subcommand("play", "serve human play for the browser client");
  play->add_option("--boss", f.boss, "boss id 1..8");
  o.play_port = play->add_option("--port", f.port, "listen port")->check(CLI::Range(0, 65535));
  o.play_bind = play->add_option("--bind", f.bind, "listen address");

  auto* serve = app.add_subcommand("serve", "serve lockstep matches for remote agents");
  o.serve_boss = serve->add_option("--boss", f.boss, "boss used when a reset names none");
  o.serve_port = serve->add_option("--port", f.port, "listen port")->check(CLI::Range(0, 65535));
  o.serve_bind = serve->add_option("--bind", f.bind, "listen address");
  o.serve_timeout = serve->add_option("--timeout-ms", f.timeout_ms, "per-action timeout, 0 disables");

  app.add_subcommand("config", "print the merged run config");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const RunConfig config = build_config(f, o, cmd);
    if (f.print_config || cmd->get_name() == "config") {
      out << to_json(config).dump(2) << '\n';
      return kOk;
    }
    const std::string name = cmd->get_name();
    if (name == "train") return cmd_train(config, out);
    if (name == "eval") return cmd_eval(config, f, out);
    if (name == "record") return cmd_record(config, f, out);
    if (name == "report") return cmd_report(f, out);
    if (name == "play") return cmd_serve(config, f.boss, true, out);
    if (name == "serve") return cmd_serve(config, f.boss, false, out);
    if (name == "replay") {
      if (verify->parsed()) return cmd_verify(config, f, out);
      return cmd_export(config, f, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace evoman::cli
