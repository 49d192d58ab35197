// Command-line driver: run programs under either semantics, check the
// metatheory on concrete inputs, run the application security suites, and
// dump the circuits of secure blocks.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "wysx/apps.hpp"
#include "wysx/circuit.hpp"
#include "wysx/ds.hpp"
#include "wysx/error.hpp"
#include "wysx/inputs.hpp"
#include "wysx/json_io.hpp"
#include "wysx/machine.hpp"
#include "wysx/sexpr.hpp"
#include "wysx/suites.hpp"

namespace {

using namespace wysx;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string program;
  std::vector<std::string> inputs;
  std::string backend = "ideal";
  unsigned width = 32;
  std::uint64_t dealer_seed = 1;
  std::size_t fuel = kDefaultFuel;
};

void add_common(CLI::App* cmd, Common& c, bool with_backend) {
  cmd->add_option("program", c.program, "Program file, or the name of a bundled program")->required();
  cmd->add_option("--inputs", c.inputs, "Per-party input files, PRINCIPAL=FILE")->expected(1, -1);
  cmd->add_option("--fuel", c.fuel, "Step budget")->capture_default_str();
  cmd->add_option("--width", c.width, "Integer width of circuits")->capture_default_str()->check(CLI::Range(2, 64));
  if (with_backend) {
    cmd->add_option("--backend", c.backend, "Secure-block backend")
        ->capture_default_str()
        ->check(CLI::IsMember({"ideal", "gmw"}));
    cmd->add_option("--dealer-seed", c.dealer_seed, "Seed of the GMW triple dealer")->capture_default_str();
  }
}

ExprPtr load_program(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_program(read_file(spec));
  for (const auto& name : apps::program_names()) {
    if (name == spec) return apps::program(name);
  }
  throw UsageError("no such program file or bundled program: " + spec);
}

InputBundle load_bundle(const Common& c) {
  if (c.inputs.empty()) throw UsageError("--inputs is required");
  return load_inputs(c.inputs);
}

SecBackend backend_of(const Common& c) {
  if (c.backend == "gmw") return SecBackend::with_gmw(GmwOptions{c.width, c.dealer_seed});
  return SecBackend::ideal();
}

Scheduler scheduler_of(const std::string& s) {
  if (s == "rr") return Scheduler::round_robin();
  if (s.rfind("rand:", 0) == 0) {
    try {
      return Scheduler::seeded(std::stoull(s.substr(5)));
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--sched expects rr or rand:SEED, got " + s);
}

int report_stuck(const std::string& rule, const std::string& reason, Errc code) {
  std::cerr << "stuck at " << rule << ": " << reason << " (" << to_string(code) << ")\n";
  return kFailure;
}

int cmd_run(const Common& c, const std::string& mode, const std::string& sched) {
  ExprPtr e = load_program(c.program);
  InputBundle in = load_bundle(c);
  if (mode == "st") {
    StRun r = st_run(e, in.logical, in.parties, c.fuel);
    if (r.status == StRun::Status::OutOfFuel) {
      std::cerr << "out of fuel after " << r.stats.steps << " steps\n";
      return kFailure;
    }
    if (r.status == StRun::Status::Stuck) return report_stuck(r.stuck.rule, r.stuck.reason, r.stuck.code);
    Json out{{"value", value_to_json(r.value())}, {"trace", trace_to_json(r.trace())}};
    std::cout << canonical(out) << '\n';
    return kOk;
  }
  DsRun r = ds_run(e, in.views, scheduler_of(sched), backend_of(c), c.fuel);
  if (r.status == DsRun::Status::OutOfFuel) {
    std::cerr << "out of fuel after " << r.stats.total() << " protocol steps\n";
    return kFailure;
  }
  if (r.status == DsRun::Status::Stuck) return report_stuck(r.stuck.rule, r.stuck.reason, r.stuck.code);
  Json out = Json::object();
  for (const auto& [p, cfg] : r.final.par) {
    out[p.name] = Json{{"value", value_to_json(cfg.value())}, {"trace", trace_to_json(cfg.trace)}};
  }
  std::cout << canonical(out) << '\n';
  return kOk;
}

int print_verdict(const Verdict& v) {
  std::cout << to_string(v.status);
  if (!v.detail.empty()) std::cout << ": " << v.detail;
  std::cout << '\n';
  return v.pass() ? kOk : kFailure;
}

int cmd_check(const std::string& what, const Common& c, std::size_t seeds) {
  ExprPtr e = load_program(c.program);
  InputBundle in = load_bundle(c);
  if (what == "sim") return print_verdict(check_simulation(e, in.logical, in.parties, c.fuel, backend_of(c)));
  std::vector<std::uint64_t> s;
  for (std::size_t i = 1; i <= seeds; ++i) s.push_back(i);
  return print_verdict(check_confluence(e, in.logical, in.parties, s, c.fuel, backend_of(c)));
}

int cmd_security(const std::string& suite, int domain, std::size_t max_len) {
  if (suite == "median") return print_verdict(apps::check_median_security(1, domain > 0 ? domain : 8));
  if (suite == "psi") {
    return print_verdict(apps::check_psi_security(max_len > 0 ? max_len : 3, 1, domain > 0 ? domain : 5));
  }
  return print_verdict(apps::check_cards(max_len > 0 ? max_len : 4, (domain > 0 ? domain : 8) - 1, 5));
}

int cmd_dump(const Common& c) {
  ExprPtr e = load_program(c.program);
  InputBundle in = load_bundle(c);
  Config cfg = Config::initial(Mode::par(in.parties), in.logical, e);
  std::size_t blocks = 0;
  for (std::size_t step = 0; step < c.fuel; ++step) {
    StepOutcome out = st_step(std::move(cfg));
    if (auto* s = std::get_if<Stuck>(&out)) return report_stuck(s->rule, s->reason, s->code);
    if (std::holds_alternative<Done>(out)) {
      if (blocks == 0) std::cerr << "program has no secure blocks\n";
      return kOk;
    }
    auto& next = std::get<Next>(out);
    cfg = std::move(next.config);
    if (next.rule != "S-assec") continue;
    const auto* body = std::get_if<ExprPtr>(&cfg.term);
    if (body == nullptr) continue;
    Circuit circuit = compile_sec_thunk(cfg.env, *body, cfg.mode.ps, c.width, cfg.shares ? cfg.shares->created : 0);
    std::cout << "# block " << blocks++ << " among " << cfg.mode.ps.to_string() << " at step " << step << '\n'
              << dump(circuit);
  }
  std::cerr << "out of fuel\n";
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wysx: mixed-mode secure computation interpreter"};
  app.require_subcommand(1);

  Common run_opts;
  std::string mode = "st", sched = "rr";
  auto* run = app.add_subcommand("run", "Run a program and print per-party values and traces as JSON");
  add_common(run, run_opts, true);
  run->add_option("--mode", mode, "Semantics")->capture_default_str()->check(CLI::IsMember({"st", "ds"}));
  run->add_option("--sched", sched, "Distributed scheduler: rr or rand:SEED")->capture_default_str();

  auto* check = app.add_subcommand("check", "Check simulation, confluence or an application suite");
  check->require_subcommand(1);
  Common sim_opts, conf_opts;
  std::size_t seeds = 100;
  auto* sim = check->add_subcommand("sim", "Distributed run agrees with the sliced single-threaded run");
  add_common(sim, sim_opts, true);
  auto* conf = check->add_subcommand("confluence", "Seeded schedules reach the same final protocol");
  add_common(conf, conf_opts, true);
  conf->add_option("--seeds", seeds, "Number of seeded schedules")->capture_default_str();
  std::string suite;
  int domain = 0;
  std::size_t max_len = 0;
  auto* sec = check->add_subcommand("security", "Exhaustive security/property suite of an application");
  sec->add_option("--suite", suite, "Suite")->required()->check(CLI::IsMember({"median", "psi", "cards"}));
  sec->add_option("--domain", domain, "Largest value (median: 1..N, psi: 1..N, cards: 0..N-1)");
  sec->add_option("--max-len", max_len, "Longest list (psi) or card history (cards)");

  Common dump_opts;
  auto* dump_cmd = app.add_subcommand("dump-circuit", "Print the circuit of every secure block of an ST run");
  add_common(dump_cmd, dump_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, mode, sched);
    if (sim->parsed()) return cmd_check("sim", sim_opts, seeds);
    if (conf->parsed()) return cmd_check("confluence", conf_opts, seeds);
    if (sec->parsed()) return cmd_security(suite, domain, max_len);
    if (dump_cmd->parsed()) return cmd_dump(dump_opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::ParseError || e.code() == Errc::InputError ? kUsage : kFailure;
  }
  return kUsage;
}
