#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmt/errors.hpp"
#include "rmt/experiment.hpp"

namespace {

struct CommonOpts {
  int n = 0;
  int reps = 1;
  std::string dist = "gaussian";
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::string> params;
  std::string out;
  std::string format = "json";
  bool force = false;
};

std::string default_out_dir() {
  const char* env = std::getenv("RMTLAB_OUT");
  return env != nullptr ? std::string(env) : std::string("out");
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_matrix) {
  if (needs_matrix) {
    cmd->add_option("--n", o.n, "matrix dimension")->required();
    cmd->add_option("--reps", o.reps, "replicate count")->required();
    cmd->add_option("--dist", o.dist,
                    "distribution spec: gaussian | goe | gue | rademacher | uniform | "
                    "student_t:<dof> | tridiag:<beta>");
  } else {
    cmd->add_option("--reps", o.reps, "ignored for table output");
  }
  cmd->add_option("--seed", o.seed, "64-bit master seed");
  cmd->add_option("--workers", o.workers, "parallel replicate workers");
  cmd->add_option("--param", o.params, "kind-specific key=value parameter (repeatable)");
  cmd->add_option("--out", o.out, "output directory (default $RMTLAB_OUT or ./out)");
  cmd->add_option("--format", o.format, "report format: csv | json | plot")
      ->check(CLI::IsMember({"csv", "json", "plot"}));
  cmd->add_flag("--force", o.force, "overwrite existing artifacts");
}

rmt::ExperimentConfig to_config(rmt::ExperimentKind kind, const CommonOpts& o) {
  rmt::ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n = o.n;
  cfg.reps = o.reps;
  cfg.dist = o.dist;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw rmt::ConfigError("--param expects key=value, got '" + kv + "'");
    }
    cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return cfg;
}

// exit 0: all configured tolerances met; 1: statistical failure; 2: error
int run_one(const rmt::ExperimentConfig& cfg, const std::string& out, const std::string& format,
            bool force) {
  const rmt::Report report = rmt::run_experiment(cfg);
  rmt::emit(report, out, format, force);

  std::cout << rmt::kind_name(cfg.kind) << ": " << (report.pass ? "PASS" : "FAIL") << "  ("
            << report.wall_seconds << " s, " << format << " -> " << out << ")\n";
  if (report.metadata.contains("warnings")) {
    for (const auto& w : report.metadata["warnings"]) {
      std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
  }
  for (const auto& check : report.summary["checks"]) {
    std::cout << "  " << (check["pass"].get<bool>() ? "ok  " : "FAIL") << " "
              << check["name"].get<std::string>() << " = " << check["value"].get<double>() << " ("
              << check["relation"].get<std::string>() << " " << check["threshold"].get<double>()
              << ")\n";
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtlab - Wigner random matrix universality laboratory"};
  app.require_subcommand(1);

  const std::vector<std::string> kinds = {
      "semicircle",       "bulk-clt",       "universality",    "edge-tw",
      "edge-measure",     "trace-moment",   "pair-correlation", "gap-correlation",
      "prop-shell",       "prop-volume-ratio", "tw-table",
  };

  std::map<std::string, CommonOpts> opts;
  for (const std::string& kind : kinds) {
    CLI::App* cmd = app.add_subcommand(kind, "run the " + kind + " experiment");
    add_common(cmd, opts[kind], kind != "tw-table");
  }

  std::string config_path;
  CommonOpts run_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "run every experiment in a config file");
  run_cmd->add_option("config", config_path, "sectioned key=value config file")->required();
  run_cmd->add_option("--out", run_opts.out, "output directory root");
  run_cmd->add_option("--format", run_opts.format, "report format: csv | json | plot")
      ->check(CLI::IsMember({"csv", "json", "plot"}));
  run_cmd->add_flag("--force", run_opts.force, "overwrite existing artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      std::ifstream f(config_path);
      if (!f) throw rmt::IoError("cannot open config file " + config_path);
      std::stringstream buffer;
      buffer << f.rdbuf();
      const auto experiments = rmt::parse_config_file(buffer.str());
      if (experiments.empty()) throw rmt::ConfigError("config file has no [sections]");
      const std::string root = run_opts.out.empty() ? default_out_dir() : run_opts.out;
      int worst = 0;
      for (const auto& [name, cfg] : experiments) {
        const std::filesystem::path dir = std::filesystem::path(root) / name;
        std::cout << "[" << name << "]\n";
        worst = std::max(worst, run_one(cfg, dir.string(), run_opts.format, run_opts.force));
      }
      return worst;
    }

    for (const std::string& kind : kinds) {
      CLI::App* cmd = app.get_subcommand(kind);
      if (cmd->parsed()) {
        const CommonOpts& o = opts[kind];
        const std::string out = o.out.empty() ? default_out_dir() : o.out;
        return run_one(to_config(rmt::parse_kind(kind), o), out, o.format, o.force);
      }
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
