#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/spectrum.hpp"

namespace rmt {

enum class ExperimentKind {
  semicircle,
  bulk_clt,
  universality,
  edge_tw,
  edge_measure,
  trace_moment,
  pair_correlation,
  gap_correlation,
  prop_shell,
  prop_volume_ratio,
  tw_table,
};

ExperimentKind parse_kind(const std::string& name);
std::string kind_name(ExperimentKind kind);

// Declarative experiment description. Kind-specific parameters live in
// `params` as strings; validate() enforces the per-kind required set and
// rejects unknown keys, naming the parameter in the message.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::semicircle;
  int n = 0;
  int reps = 1;
  std::string dist = "gaussian";
  std::uint64_t seed = 0;
  int workers = 1;
  std::map<std::string, std::string> params;

  void validate() const;

  bool has_param(const std::string& key) const { return params.count(key) > 0; }
  double num_param(const std::string& key, double fallback) const;
  double required_num_param(const std::string& key) const;
  std::string str_param(const std::string& key, const std::string& fallback) const;
};

// Deterministic result set: identical config+seed (any worker count) gives
// byte-identical serializations. Wall time is kept out of the serialized
// bytes for exactly that reason.
struct Report {
  nlohmann::json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json summary;
  bool pass = false;
  double wall_seconds = 0.0;  // display only, never serialized

  bool csv_skip_rep_column = false;  // tw-table emits a bare two-column table

  std::string to_csv() const;
  std::string to_json() const;
  std::string to_plot() const;

 private:
  friend Report run_experiment(const ExperimentConfig&);
  std::string plot_text_;
};

// Runs the replicates on `config.workers` threads with per-replicate derived
// seeds and reduces deterministically (rows ordered by replicate index).
// Throws if more than 0.1% of replicates error.
Report run_experiment(const ExperimentConfig& config);

// Writes report.<format> plus manifest.json under out_dir. Refuses to
// overwrite existing artifacts unless force is set.
void emit(const Report& report, const std::filesystem::path& out_dir, const std::string& format,
          bool force);

// One law-correct n-eigenvalue spectrum draw (GUE embeddings are deduped).
Spectrum sample_ensemble_spectrum(const EnsembleSpec& spec, int n, std::uint64_t seed);

// Flat sectioned key-value config text: `[name]` headers, `key = value`
// lines, '#' comments.
std::vector<std::pair<std::string, ExperimentConfig>> parse_config_file(const std::string& text);

}  // namespace rmt
