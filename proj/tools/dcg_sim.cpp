// dcg_sim: command line driver for diffusion CG experiments.
//
//   dcg_sim run --config exp.json --out results/
//   dcg_sim preset --preset fig3-atc --out results/ --runs 20
//   dcg_sim complexity --complexity 10,5,20
//   dcg_sim topology --nodes 20 --extra-edges 20 --topology-seed 7 --out results/
//
// Exit status: 0 success, 2 configuration or usage error, 3 runtime error.

#include "dcg/dcg.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

/// I/O and other failures that are not the user's configuration.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw RuntimeFailure("cannot create output directory " + dir.string());
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw RuntimeFailure("cannot write " + path.string());
  return os;
}

void write_outputs(const fs::path& dir, const std::string& stem, const std::vector<dcg::MsdTrace>& traces,
                   const dcg::Metadata& meta, const dcg::Topology& topo) {
  ensure_dir(dir);
  {
    auto os = open_out(dir / (stem + ".csv"));
    dcg::write_csv(os, traces);
  }
  {
    auto os = open_out(dir / (stem + ".meta"));
    dcg::write_metadata(os, meta);
  }
  {
    auto os = open_out(dir / (stem + ".edges"));
    dcg::write_edge_list(os, topo);
  }
  std::cout << "wrote " << (dir / (stem + ".csv")).string() << '\n';
}

std::string file_stem_for(const std::string& label) {
  std::string out;
  for (char ch : label) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '-' || ch == '_' || ch == '.';
    out += ok ? ch : '_';
  }
  return out.empty() ? "experiment" : out;
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> iterations;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed override");
  cmd->add_option("--runs", o.runs, "Monte-Carlo run count override")->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", o.iterations, "Time instants per run override")
      ->check(CLI::PositiveNumber);
}

void report_summary(const std::vector<dcg::MsdTrace>& traces) {
  for (const auto& t : traces) {
    std::cout << "  " << t.label << ": final " << t.values.back() << " dB, steady state "
              << dcg::steady_state_db(t) << " dB\n";
  }
}

int cmd_run(const fs::path& config_path, const fs::path& out, const Overrides& o) {
  dcg::ExperimentConfig cfg = dcg::load_config(config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.runs) cfg.runs = *o.runs;
  if (o.iterations) cfg.iterations = *o.iterations;
  cfg.validate();

  const dcg::MsdTrace trace = dcg::run_experiment(cfg);
  dcg::Metadata meta;
  meta.emplace_back("command", "run");
  meta.emplace_back("config_file", config_path.filename().string());
  meta.emplace_back("columns", trace.label);
  dcg::describe_definitions(meta);
  dcg::describe_config(meta, trace.label + ".", cfg);
  write_outputs(out, file_stem_for(cfg.label), {trace}, meta, dcg::resolve_topology(cfg));
  report_summary({trace});
  return 0;
}

int cmd_preset(const std::string& name, const fs::path& out, const Overrides& o) {
  const dcg::PresetOverrides po{o.seed, o.runs, o.iterations, std::nullopt};
  const dcg::PresetResult res = dcg::run_preset(name, po);
  dcg::Metadata meta;
  meta.emplace_back("command", "preset");
  meta.emplace_back("preset", res.name);
  std::string columns;
  for (const auto& t : res.traces) columns += (columns.empty() ? "" : ",") + t.label;
  meta.emplace_back("columns", columns);
  dcg::describe_definitions(meta);
  for (const auto& c : res.configs) dcg::describe_config(meta, c.label + ".", c);
  write_outputs(out, res.name, res.traces, meta, dcg::resolve_topology(res.configs.front()));
  report_summary(res.traces);
  return 0;
}

dcg::ComplexityInputs parse_mjl(const std::string& spec) {
  std::vector<std::int64_t> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw dcg::ConfigError("complexity", "expected M,J,L integers, got \"" + spec + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (parts.size() != 3) throw dcg::ConfigError("complexity", "expected exactly three values M,J,L");
  dcg::ComplexityInputs in{parts[0], parts[1], parts[2]};
  try {
    in.validate();
  } catch (const std::invalid_argument& e) {
    throw dcg::ConfigError("complexity", e.what());
  }
  return in;
}

int cmd_complexity(const std::string& mjl, const std::optional<fs::path>& out) {
  const std::string table = dcg::emit_complexity_table(parse_mjl(mjl));
  std::cout << table;
  if (out) {
    ensure_dir(*out);
    auto os = open_out(*out / "complexity.txt");
    os << table;
  }
  return 0;
}

struct TopologyArgs {
  std::optional<fs::path> config;
  int nodes = 20;
  int extra_edges = 20;
  std::uint64_t seed = 7;
};

int cmd_topology(const TopologyArgs& a, const fs::path& out) {
  dcg::Topology topo;
  if (a.config) {
    topo = dcg::resolve_topology(dcg::load_config(*a.config));
  } else {
    try {
      topo = dcg::build_topology(a.nodes, a.extra_edges, a.seed);
    } catch (const std::invalid_argument& e) {
      throw dcg::ConfigError("topology", e.what());
    }
  }
  ensure_dir(out);
  const fs::path path = out / "topology.edges";
  auto os = open_out(path);
  dcg::write_edge_list(os, topo);
  std::cout << "wrote " << path.string() << " (" << topo.size() << " nodes, " << topo.edge_count()
            << " edges)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion conjugate-gradient estimation over sensor networks"};
  app.require_subcommand(1);

  Overrides run_overrides;
  fs::path config_path;
  fs::path run_out = "out";
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", run_out, "Output directory");
  add_override_flags(run, run_overrides);

  Overrides preset_overrides;
  std::string preset_name;
  fs::path preset_out = "out";
  auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
  preset->add_option("--preset,name", preset_name, "fig2-cta, fig3-atc or fig4-compare")->required();
  preset->add_option("--out", preset_out, "Output directory");
  add_override_flags(preset, preset_overrides);

  std::string mjl;
  std::optional<fs::path> complexity_out;
  auto* complexity = app.add_subcommand("complexity", "Print per-instant operation counts");
  complexity->add_option("--complexity,mjl", mjl, "M,J,L")->required();
  complexity->add_option("--out", complexity_out, "Also write complexity.txt here");

  TopologyArgs topo_args;
  fs::path topo_out = "out";
  auto* topology = app.add_subcommand("topology", "Export a network graph as an edge list");
  topology->add_option("--config", topo_args.config, "Take the graph from this experiment config");
  topology->add_option("--nodes", topo_args.nodes, "Node count")->check(CLI::PositiveNumber);
  topology->add_option("--extra-edges", topo_args.extra_edges, "Random chords on top of the ring")
      ->check(CLI::NonNegativeNumber);
  topology->add_option("--topology-seed", topo_args.seed, "Seed for chord placement");
  topology->add_option("--out", topo_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, run_out, run_overrides);
    if (*preset) return cmd_preset(preset_name, preset_out, preset_overrides);
    if (*complexity) return cmd_complexity(mjl, complexity_out);
    if (*topology) return cmd_topology(topo_args, topo_out);
  } catch (const dcg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
