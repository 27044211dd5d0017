// codedswitch: command-line front end for the switch simulator.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "codedswitch/analysis.hpp"
#include "codedswitch/codec.hpp"
#include "codedswitch/conditions.hpp"
#include "codedswitch/ensemble.hpp"
#include "codedswitch/json_io.hpp"
#include "codedswitch/placement.hpp"
#include "codedswitch/solvers.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace codedswitch;
using codedswitch::cli::RunManifest;

namespace {

constexpr int kUsageExit = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::vector<std::string> argv;
};

int default_threads() {
  if (const char* env = std::getenv("CODEDSWITCH_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw UsageError("CODEDSWITCH_THREADS must be a positive integer");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

RunManifest start_manifest(const Globals& g) {
  RunManifest m;
  m.command_line = g.argv;
  return m;
}

std::uint64_t resolve_seed(const Globals& g, RunManifest& m) {
  if (g.seed) {
    m.seed = *g.seed;
    m.seed_source = "flag";
  } else {
    std::random_device rd;
    m.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    m.seed_source = "entropy";
  }
  return *m.seed;
}

std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

BlockDesign load_design(const std::string& path) {
  BlockDesign d = read_design_file(path);
  verify_packing(d);
  return d;
}

// ---- generate

struct GenerateArgs {
  std::string policy;
  std::optional<int> N, n;
  int k = 1;
  int L = 0;
  std::string design;
  bool distinct = false;
  std::string out = "instance.json";
};

int run_generate(const Globals& g, const GenerateArgs& a) {
  RunManifest m = start_manifest(g);
  PlacementRng rng(resolve_seed(g, m));
  const PlacementTag policy = placement_from_string(a.policy);
  Instance inst;
  switch (policy) {
    case PlacementTag::uniform:
    case PlacementTag::cyclic:
      if (!a.N || !a.n) throw UsageError("--N and --n are required for " + a.policy);
      inst = policy == PlacementTag::uniform ? draw_uniform(*a.N, *a.n, a.L, rng) : draw_cyclic(*a.N, *a.n, a.L, rng);
      break;
    case PlacementTag::design: {
      if (a.design.empty()) throw UsageError("--design is required for design placement");
      const BlockDesign d = load_design(a.design);
      if ((a.N && *a.N != d.N) || (a.n && *a.n != d.n)) {
        throw SwitchError(ErrorCode::BadParams, "--N/--n differ from the design");
      }
      inst = draw_design(d, a.L, rng, !a.distinct);
      m.inputs.push_back(a.design);
      break;
    }
    case PlacementTag::custom: throw UsageError("custom placement cannot be generated");
  }
  inst.k = a.k;
  validate_instance(inst);
  write_json_file(a.out, to_json(inst));
  m.outputs.push_back(a.out);
  m.write(manifest_path_for(a.out));
  return 0;
}

// ---- check

int run_check(const std::string& in, int hall_cap) {
  const Instance inst = instance_from_json(read_json_file(in));
  validate_instance(inst);
  ordered_json r;
  r["L"] = inst.L();
  r["union_size"] = union_size(inst, inst.L() >= 32 ? ~0u : (1u << inst.L()) - 1);
  r["coverage"] = coverage_holds(inst);
  if (inst.L() >= 2) {
    const Rational t = t_max(inst.n, inst.k, inst.L());
    r["t_max"] = std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
    r["t_max_floor"] = t_max_floor(inst.n, inst.k, inst.L());
    r["pairwise"] = pairwise_holds(inst);
  } else {
    r["t_max"] = nullptr;
    r["t_max_floor"] = nullptr;
    r["pairwise"] = true;
  }
  r["hall_full_throughput"] = inst.L() <= hall_cap ? ordered_json(hall_full_throughput(inst, hall_cap)) : nullptr;
  std::cout << r.dump(2) << '\n';
  return 0;
}

// ---- solve

struct SolveArgs {
  std::string algo, in, design;
  std::string out = "solution.json";
};

int run_solve(const Globals& g, const SolveArgs& a) {
  RunManifest m = start_manifest(g);
  const SolverKind kind = solver_from_string(a.algo);
  const Instance inst = instance_from_json(read_json_file(a.in));
  validate_instance(inst);
  m.inputs.push_back(a.in);
  std::optional<BlockDesign> design;
  if (kind == SolverKind::design_opt) {
    if (a.design.empty()) throw UsageError("--design is required for --algo design");
    design = load_design(a.design);
    m.inputs.push_back(a.design);
  }
  std::optional<PlacementRng> rng;
  if (kind == SolverKind::greedy) rng.emplace(resolve_seed(g, m));
  const Solution sol = solve(kind, inst, design ? &*design : nullptr, rng ? &*rng : nullptr);
  validate_solution(inst, sol);
  write_json_file(a.out, to_json(sol, inst));
  m.outputs.push_back(a.out);
  m.write(manifest_path_for(a.out));
  std::cout << "l_star=" << sol.l_star() << " rho=" << sol.rho().numerator() << '/' << sol.rho().denominator() << '\n';
  return 0;
}

// ---- design

struct DesignBuildArgs {
  std::optional<int> q, N, n, t_max;
  std::string out = "design.txt";
};

int run_design_build(const Globals& g, const DesignBuildArgs& a) {
  RunManifest m = start_manifest(g);
  BlockDesign d;
  if (a.q) {
    d = build_projective_plane(*a.q);
  } else if (a.N && a.n && a.t_max) {
    d = build_lexicographic_packing(*a.N, *a.n, *a.t_max);
  } else {
    throw UsageError("give --q, or all of --N, --n and --t-max");
  }
  verify_packing(d);
  write_design_file(a.out, d);
  m.outputs.push_back(a.out);
  m.write(manifest_path_for(a.out));
  std::cout << "N=" << d.N << " n=" << d.n << " t=" << d.t << " b=" << d.b() << '\n';
  return 0;
}

int run_design_verify(const std::string& in) {
  const BlockDesign d = read_design_file(in);
  verify_packing(d);
  std::cout << "ok N=" << d.N << " n=" << d.n << " t=" << d.t << " b=" << d.b() << '\n';
  return 0;
}

// ---- analyze

struct AnalyzeArgs {
  std::string what, policy, design;
  std::optional<int> N, n, k, L, t, b;
  std::int64_t samples = 1'000'000;
  bool header = false;
};

int need(const std::optional<int>& v, const char* flag, const std::string& what) {
  if (!v) throw UsageError(std::string(flag) + " is required for --what " + what);
  return *v;
}

int run_analyze(const Globals& g, const AnalyzeArgs& a) {
  RunManifest m = start_manifest(g);
  const auto mc = [&] { return MonteCarloOptions{a.samples, resolve_seed(g, m), g.threads}; };
  ProbabilityEstimate e;
  const std::string& w = a.what;
  if (w == "cover-uni") {
    e = p_cover_uniform(need(a.N, "--N", w), need(a.n, "--n", w), need(a.k, "--k", w), need(a.L, "--L", w));
  } else if (w == "pair-cyc") {
    const int n = need(a.n, "--n", w), L = need(a.L, "--L", w);
    const int t = a.t ? *a.t : t_max_floor(n, need(a.k, "--k or --t", w), L);
    e = p_pair_cyclic(need(a.N, "--N", w), n, t, L);
  } else if (w == "pair-des") {
    e = p_pair_design(need(a.b, "--b", w), need(a.L, "--L", w));
  } else if (w == "cover-cyc") {
    e = p_cover_cyclic(need(a.N, "--N", w), need(a.n, "--n", w), need(a.k, "--k", w), need(a.L, "--L", w), mc());
  } else if (w == "full-tp") {
    if (a.policy.empty()) throw UsageError("--policy is required for --what full-tp");
    const PlacementTag policy = placement_from_string(a.policy);
    std::optional<BlockDesign> d;
    int N = 0, n = 0;
    if (policy == PlacementTag::design) {
      if (a.design.empty()) throw UsageError("--design is required for design placement");
      d = load_design(a.design);
      N = d->N;
      n = d->n;
    } else {
      N = need(a.N, "--N", w);
      n = need(a.n, "--n", w);
    }
    FullThroughputOptions opts;
    opts.mc = mc();
    e = p_full_throughput_exact(policy, N, n, need(a.k, "--k", w), need(a.L, "--L", w), d ? &*d : nullptr, opts);
  } else {
    throw UsageError("unknown --what '" + w + "'");
  }
  if (a.header) std::cout << "value,method,stderr\n";
  std::cout << std::setprecision(15) << e.value << ',' << to_string(e.method) << ',' << e.standard_error << '\n';
  return 0;
}

// ---- simulate / reproduce

struct SimulateArgs {
  std::string spec;
  std::string out = "report.csv";
};

int run_simulate(const Globals& g, const SimulateArgs& a, bool threads_given) {
  RunManifest m = start_manifest(g);
  const ordered_json j = read_json_file(a.spec);
  m.inputs.push_back(a.spec);
  ExperimentSpec spec = spec_from_json(j);
  if (g.seed) {
    spec.seed = *g.seed;
    m.seed = spec.seed;
    m.seed_source = "flag";
  } else if (j.contains("seed")) {
    m.seed = spec.seed;
    m.seed_source = "spec";
  } else {
    spec.seed = resolve_seed(g, m);
  }
  if (threads_given || !j.contains("threads")) spec.threads = g.threads;
  write_text_file(a.out, report_csv(run_ensemble(spec)));
  m.outputs.push_back(a.out);
  m.write(manifest_path_for(a.out));
  return 0;
}

struct ReproduceArgs {
  int figure = 0;
  std::string out = "figures";
  std::int64_t trials = 100'000;
};

int run_reproduce(const Globals& g, const ReproduceArgs& a) {
  RunManifest m = start_manifest(g);
  const FigureOptions opts{a.trials, resolve_seed(g, m), g.threads};
  fs::create_directories(a.out);
  m.outputs = reproduce_figure(a.figure, a.out, opts);
  m.write((fs::path(a.out) / ("fig" + std::to_string(a.figure) + "_manifest.json")).string());
  for (const auto& f : m.outputs) std::cout << f << '\n';
  return 0;
}

// ---- codec demo

struct CodecArgs {
  int k = 2, n = 4, B = 64;
  std::string family = "cyclic";
  std::string generator;
  std::string out;
};

std::string bits(std::uint64_t v, int width) {
  std::string s;
  for (int i = 0; i < width; ++i) s += (v >> i & 1u) ? '1' : '0';
  return s;
}

int run_codec_demo(const Globals& g, const CodecArgs& a) {
  RunManifest m = start_manifest(g);
  CodecConfig cfg{a.k, a.n, a.B, code_family_from_string(a.family), 0};
  if (!a.generator.empty()) cfg.generator = std::stoull(a.generator, nullptr, 0);
  validate_config(cfg);
  PlacementRng rng(resolve_seed(g, m));

  std::cout << "family=" << to_string(cfg.family) << " k=" << cfg.k << " n=" << cfg.n << " B=" << cfg.B << '\n';
  std::vector<std::vector<bool>> patterns;
  if (cfg.family == CodeFamily::binary_cyclic) {
    const std::uint64_t gen = cfg.generator ? cfg.generator : *binary_cyclic_generator(cfg.n, cfg.k);
    std::cout << "generator (coefficients x^0..x^" << cfg.n - cfg.k << ")=" << bits(gen, cfg.n - cfg.k + 1) << '\n';
    if (cfg.k <= 8) {
      // Bit-level codebook: bit 0 of each byte carries one codeword.
      std::cout << "\nmessage,codeword\n";
      const CodecConfig bitcfg{cfg.k, cfg.n, 1, cfg.family, cfg.generator};
      for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << cfg.k); ++msg) {
        std::vector<Bytes> data(cfg.k);
        for (int j = 0; j < cfg.k; ++j) data[j] = Bytes{static_cast<std::uint8_t>(msg >> j & 1u)};
        const ChunkSet c = encode(data, bitcfg);
        std::uint64_t word = 0;
        for (int i = 0; i < cfg.n; ++i) word |= static_cast<std::uint64_t>(c.chunks[i][0] & 1u) << i;
        std::cout << bits(msg, cfg.k) << ',' << bits(word, cfg.n) << '\n';
      }
    }
    for (int s = 0; s < cfg.n; ++s) {
      std::vector<bool> keep(cfg.n, true);
      for (int e = 0; e < cfg.n - cfg.k; ++e) keep[(s + e) % cfg.n] = false;
      patterns.push_back(keep);
    }
  } else {
    const auto gm = mds_generator(cfg.k, cfg.n);
    std::cout << "generator rows (hex)\n";
    for (const auto& row : gm) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::cout << (j ? " " : "") << std::hex << std::setw(2) << std::setfill('0') << int(row[j]);
      }
      std::cout << std::dec << '\n';
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cfg.n) && patterns.size() < 64; ++mask) {
      if (std::popcount(mask) != cfg.k) continue;
      std::vector<bool> keep(cfg.n);
      for (int i = 0; i < cfg.n; ++i) keep[i] = mask >> i & 1u;
      patterns.push_back(keep);
    }
  }

  std::vector<Bytes> data(cfg.k, Bytes(cfg.B));
  for (auto& d : data) {
    for (auto& byte : d) byte = static_cast<std::uint8_t>(rng.below(256));
  }
  const ChunkSet coded = encode(data, cfg);
  std::cout << "\nerased,recovered\n";
  for (const auto& keep : patterns) {
    std::string erased;
    for (int i = 0; i < cfg.n; ++i) {
      if (!keep[i]) erased += (erased.empty() ? "" : " ") + std::to_string(i);
    }
    bool ok = false;
    try {
      ok = decode(coded.restricted_to(keep), cfg) == data;
    } catch (const SwitchError&) {
    }
    std::cout << (erased.empty() ? "-" : erased) << ',' << (ok ? "yes" : "no") << '\n';
  }

  if (!a.out.empty()) {
    fs::create_directories(a.out);
    for (int i = 0; i < cfg.n; ++i) {
      const std::string path = (fs::path(a.out) / ("chunk_" + std::to_string(i) + ".bin")).string();
      write_chunk_file(path, ChunkFile{cfg.k, cfg.n, cfg.B, i, coded.chunks[i]});
      m.outputs.push_back(path);
    }
    m.write((fs::path(a.out) / "manifest.json").string());
  }
  return 0;
}

bool is_usage_code(ErrorCode c) {
  return c == ErrorCode::WrongParams || c == ErrorCode::BadParams || c == ErrorCode::IncompatibleSolver ||
         c == ErrorCode::UnknownFigure || c == ErrorCode::BadConfig;
}

CLI::App* deepest_subcommand(CLI::App* app) {
  for (CLI::App* sub : app->get_subcommands()) return deepest_subcommand(sub);
  return app;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded shared-memory switch simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.argv.assign(argv, argv + argc);
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (drawn from entropy and recorded when omitted)");
  auto* threads_opt = app.add_option("--threads", g.threads, "Worker threads (default: CODEDSWITCH_THREADS or all cores)")
                          ->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Draw a random instance and write it as JSON");
  generate->add_option("--policy", gen.policy, "uniform, cyclic or design")
      ->required()
      ->check(CLI::IsMember({"uniform", "cyclic", "design"}));
  generate->add_option("--N", gen.N, "Number of memory units");
  generate->add_option("--n", gen.n, "Chunks per packet");
  generate->add_option("--k", gen.k, "Chunks needed to decode (default 1)");
  generate->add_option("--L", gen.L, "Number of packets")->required()->check(CLI::PositiveNumber);
  generate->add_option("--design", gen.design, "Block design file (design policy)");
  generate->add_flag("--distinct", gen.distinct, "Draw distinct blocks (design policy)");
  generate->add_option("--out", gen.out, "Output instance file");

  std::string check_in;
  int hall_cap = kHallDefaultCap;
  auto* check = app.add_subcommand("check", "Evaluate the throughput conditions of an instance");
  check->add_option("--in", check_in, "Instance JSON")->required();
  check->add_option("--hall-max-L", hall_cap, "Skip the Hall test above this many packets");

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a maximum read schedule");
  solve_cmd->add_option("--algo", sol.algo, "oracle, greedy, k1, k2n2, cyclic or design")
      ->required()
      ->check(CLI::IsMember({"oracle", "greedy", "k1", "k2n2", "cyclic", "design"}));
  solve_cmd->add_option("--in", sol.in, "Instance JSON")->required();
  solve_cmd->add_option("--out", sol.out, "Output solution file");
  solve_cmd->add_option("--design", sol.design, "Block design file (design solver)");

  auto* design = app.add_subcommand("design", "Build or verify block designs");
  design->require_subcommand(1);
  DesignBuildArgs build_args;
  auto* build = design->add_subcommand("build", "Construct a projective plane or lexicographic packing");
  build->add_option("--q", build_args.q, "Prime order of the projective plane");
  build->add_option("--N", build_args.N, "Points (packing)");
  build->add_option("--n", build_args.n, "Block size (packing)");
  build->add_option("--t-max", build_args.t_max, "Largest pairwise intersection (packing)");
  build->add_option("--out", build_args.out, "Output design file");
  std::string verify_in;
  auto* verify = design->add_subcommand("verify", "Check the packing property of a design file");
  verify->add_option("--in", verify_in, "Design file")->required();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Evaluate a throughput probability");
  analyze->add_option("--what", an.what, "cover-uni, pair-cyc, pair-des, cover-cyc or full-tp")
      ->required()
      ->check(CLI::IsMember({"cover-uni", "pair-cyc", "pair-des", "cover-cyc", "full-tp"}));
  analyze->add_option("--N", an.N, "Memory units");
  analyze->add_option("--n", an.n, "Chunks per packet");
  analyze->add_option("--k", an.k, "Chunks needed to decode");
  analyze->add_option("--L", an.L, "Packets");
  analyze->add_option("--t", an.t, "Pairwise intersection bound (pair-cyc; default floor of t_max)");
  analyze->add_option("--b", an.b, "Number of blocks (pair-des)");
  analyze->add_option("--policy", an.policy, "Placement policy (full-tp)")
      ->check(CLI::IsMember({"uniform", "cyclic", "design"}));
  analyze->add_option("--design", an.design, "Block design file (full-tp with design policy)");
  analyze->add_option("--samples", an.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  analyze->add_flag("--header", an.header, "Print a CSV header line");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run an ensemble experiment from a JSON spec");
  simulate->add_option("--spec", sim.spec, "Experiment spec JSON")->required();
  simulate->add_option("--out", sim.out, "Output report CSV");

  ReproduceArgs rep;
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate one of the figures as CSV and SVG");
  reproduce->add_option("--figure", rep.figure, "Figure number (4 to 8)")->required();
  reproduce->add_option("--out", rep.out, "Output directory");
  reproduce->add_option("--trials", rep.trials, "Trials per simulated point")->check(CLI::PositiveNumber);

  auto* codec = app.add_subcommand("codec", "Erasure code utilities");
  codec->require_subcommand(1);
  CodecArgs ca;
  auto* demo = codec->add_subcommand("demo", "Print a codebook and erasure-recovery table");
  demo->add_option("--k", ca.k, "Data chunks")->check(CLI::PositiveNumber);
  demo->add_option("--n", ca.n, "Coded chunks")->check(CLI::PositiveNumber);
  demo->add_option("--family", ca.family, "mds or cyclic")->check(CLI::IsMember({"mds", "cyclic", "binary_cyclic"}));
  demo->add_option("--B", ca.B, "Bytes per chunk")->check(CLI::PositiveNumber);
  demo->add_option("--generator", ca.generator, "Cyclic generator polynomial as an integer (bit i = x^i)");
  demo->add_option("--out", ca.out, "Write the coded chunks of one random message to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << deepest_subcommand(&app)->help();
    return kUsageExit;
  }

  try {
    if (seed_opt->count()) g.seed = seed;
    if (!threads_opt->count()) g.threads = default_threads();
    if (*generate) return run_generate(g, gen);
    if (*check) return run_check(check_in, hall_cap);
    if (*solve_cmd) return run_solve(g, sol);
    if (*build) return run_design_build(g, build_args);
    if (*verify) return run_design_verify(verify_in);
    if (*analyze) return run_analyze(g, an);
    if (*simulate) return run_simulate(g, sim, threads_opt->count() > 0);
    if (*reproduce) return run_reproduce(g, rep);
    if (*demo) return run_codec_demo(g, ca);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << deepest_subcommand(&app)->help();
    return kUsageExit;
  } catch (const SwitchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_usage_code(e.code()) ? kUsageExit : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageExit;
}
