#include "rmt/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "rmt/eigensolver.hpp"
#include "rmt/errors.hpp"
#include "rmt/estimators.hpp"
#include "rmt/ks.hpp"
#include "rmt/laws.hpp"
#include "rmt/oracles.hpp"
#include "rmt/reference_cdf.hpp"
#include "rmt/rng.hpp"
#include "rmt/tracy_widom.hpp"

namespace rmt {

namespace {

constexpr const char* kArtifactVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, ExperimentKind>& kind_table() {
  static const std::map<std::string, ExperimentKind> table = {
      {"semicircle", ExperimentKind::semicircle},
      {"bulk-clt", ExperimentKind::bulk_clt},
      {"universality", ExperimentKind::universality},
      {"edge-tw", ExperimentKind::edge_tw},
      {"edge-measure", ExperimentKind::edge_measure},
      {"trace-moment", ExperimentKind::trace_moment},
      {"pair-correlation", ExperimentKind::pair_correlation},
      {"gap-correlation", ExperimentKind::gap_correlation},
      {"prop-shell", ExperimentKind::prop_shell},
      {"prop-volume-ratio", ExperimentKind::prop_volume_ratio},
      {"tw-table", ExperimentKind::tw_table},
  };
  return table;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "' is not a number: '" + value + "'");
  }
}

// allowed parameter keys per kind; the first group is required
struct ParamSchema {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const ParamSchema& schema_for(ExperimentKind kind) {
  static const std::map<ExperimentKind, ParamSchema> schemas = {
      {ExperimentKind::semicircle, {{}, {"tol"}}},
      {ExperimentKind::bulk_clt, {{"k"}, {"tol"}}},
      {ExperimentKind::universality, {{}, {"dist_b", "k", "b", "c", "p_min"}}},
      {ExperimentKind::edge_tw, {{}, {"dist_b", "tol", "p_min"}}},
      {ExperimentKind::edge_measure, {{"r_exponent"}, {"bins", "x_max", "tol"}}},
      {ExperimentKind::trace_moment, {{}, {"p", "tol"}}},
      {ExperimentKind::pair_correlation, {{}, {"half_width", "bins", "y_max", "tol"}}},
      {ExperimentKind::gap_correlation, {{"k1"}, {"thetas", "tol"}}},
      {ExperimentKind::prop_shell, {{"m1", "m2"}, {}}},
      {ExperimentKind::prop_volume_ratio, {{"m1", "m2", "a", "b"}, {"k"}}},
      {ExperimentKind::tw_table, {{}, {"grid"}}},
  };
  return schemas.at(kind);
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
  const auto& table = kind_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [k, v] : table) {
      if (!known.empty()) known += " | ";
      known += k;
    }
    throw ConfigError("unknown experiment kind '" + name + "' (expected " + known + ")");
  }
  return it->second;
}

std::string kind_name(ExperimentKind kind) {
  for (const auto& [k, v] : kind_table()) {
    if (v == kind) return k;
  }
  return "?";
}

double ExperimentConfig::num_param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  return parse_number(key, it->second);
}

double ExperimentConfig::required_num_param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw ConfigError("experiment '" + kind_name(kind) + "' requires parameter '" + key + "'");
  }
  return parse_number(key, it->second);
}

std::string ExperimentConfig::str_param(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
  if (reps < 1) throw ConfigError("reps must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");

  const ParamSchema& schema = schema_for(kind);
  for (const std::string& key : schema.required) {
    if (!has_param(key)) {
      throw ConfigError("experiment '" + kind_name(kind) + "' requires parameter '" + key + "'");
    }
  }
  for (const auto& [key, value] : params) {
    const bool known =
        std::find(schema.required.begin(), schema.required.end(), key) != schema.required.end() ||
        std::find(schema.optional.begin(), schema.optional.end(), key) != schema.optional.end();
    if (!known) {
      throw ConfigError("experiment '" + kind_name(kind) + "' does not take parameter '" + key +
                        "'");
    }
  }

  if (kind != ExperimentKind::tw_table) {
    if (n < 1) throw ConfigError("n must be >= 1");
    EnsembleSpec::parse(dist);  // surfaces bad distribution specs early
    if (has_param("dist_b")) EnsembleSpec::parse(str_param("dist_b", ""));
  }
}

Spectrum sample_ensemble_spectrum(const EnsembleSpec& spec, int n, std::uint64_t seed) {
  switch (spec.family) {
    case EnsembleSpec::Family::wigner:
      return eigenvalues(sample_wigner(n, spec.dist, seed));
    case EnsembleSpec::Family::goe:
      return eigenvalues(sample_goe(n, seed));
    case EnsembleSpec::Family::gue:
      return dedupe_embedded(eigenvalues(sample_gue_embedded(n, seed)));
    case EnsembleSpec::Family::beta_tridiagonal:
      return eigenvalues(sample_beta_tridiagonal(n, spec.beta, seed));
  }
  throw ConfigError("unknown ensemble family");
}

// ---------------------------------------------------------------------------
// replicate fan-out
// ---------------------------------------------------------------------------

namespace {

struct ReplicateOutput {
  std::vector<double> row;
  std::vector<double> pool;  // values folded into pooled summary statistics
  Spectrum spectrum;         // retained when the reducer needs whole spectra
};

struct RunOutcome {
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> pools;
  std::vector<Spectrum> spectra;
  std::map<int, std::string> errors;  // replicate -> message
};

template <typename Fn>
RunOutcome run_replicates(const ExperimentConfig& config, std::size_t columns, const Fn& replicate) {
  RunOutcome out;
  const int reps = config.reps;
  out.rows.assign(reps, {});
  out.pools.assign(reps, {});
  out.spectra.assign(reps, {});

  std::mutex error_mutex;
  std::atomic<int> next{0};
  const int nworkers = std::max(1, std::min(config.workers, reps));

  auto work = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        ReplicateOutput one = replicate(r);
        out.rows[r] = std::move(one.row);
        out.pools[r] = std::move(one.pool);
        out.spectra[r] = std::move(one.spectrum);
      } catch (const std::exception& e) {
        out.rows[r].assign(columns, kNaN);
        std::lock_guard<std::mutex> lock(error_mutex);
        out.errors[r] = e.what();
      }
    }
  };

  if (nworkers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  if (out.errors.size() * 1000 > static_cast<std::size_t>(reps)) {
    throw NumericError("experiment failed: " + std::to_string(out.errors.size()) + " of " +
                       std::to_string(reps) + " replicates errored (first: '" +
                       out.errors.begin()->second + "')");
  }
  return out;
}

std::vector<double> collect_column(const RunOutcome& run, std::size_t col) {
  std::vector<double> v;
  v.reserve(run.rows.size());
  for (std::size_t r = 0; r < run.rows.size(); ++r) {
    if (run.errors.count(static_cast<int>(r))) continue;
    v.push_back(run.rows[r][col]);
  }
  return v;
}

std::vector<Spectrum> collect_spectra(RunOutcome& run) {
  std::vector<Spectrum> v;
  v.reserve(run.spectra.size());
  for (std::size_t r = 0; r < run.spectra.size(); ++r) {
    if (run.errors.count(static_cast<int>(r))) continue;
    v.push_back(std::move(run.spectra[r]));
  }
  return v;
}

nlohmann::json make_check(const std::string& name, double value, const std::string& relation,
                          double threshold, bool pass) {
  return nlohmann::json{
      {"name", name}, {"value", value}, {"relation", relation}, {"threshold", threshold}, {"pass", pass}};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

std::string ecdf_vs_cdf_plot(std::vector<double> sample, const ReferenceCdf& cdf, double lo,
                             double hi, int points, const std::string& label) {
  std::sort(sample.begin(), sample.end());
  std::ostringstream os;
  os << "# t ecdf " << label << "\n";
  const double m = static_cast<double>(sample.size());
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    const auto it = std::upper_bound(sample.begin(), sample.end(), t);
    const double ecdf = static_cast<double>(it - sample.begin()) / m;
    os << fmt_double(t) << " " << fmt_double(ecdf) << " " << fmt_double(cdf(t)) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// per-kind experiment bodies
// ---------------------------------------------------------------------------

struct KindResult {
  std::vector<std::string> columns;
  RunOutcome run;
  nlohmann::json summary;
  bool pass = false;
  std::string plot;
  bool csv_skip_rep = false;
};

KindResult run_semicircle(const ExperimentConfig& cfg) {
  const double tol = cfg.num_param("tol", 0.02);
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);
  const ReferenceCdf ref = ReferenceCdf::semicircle();

  KindResult res;
  res.columns = {"ks_d"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    ReplicateOutput out;
    out.row = {ks_one_sample(s.values, ref).d};
    out.pool = std::move(s.values);
    return out;
  });

  std::vector<double> pooled;
  for (std::size_t r = 0; r < res.run.pools.size(); ++r) {
    if (res.run.errors.count(static_cast<int>(r))) continue;
    pooled.insert(pooled.end(), res.run.pools[r].begin(), res.run.pools[r].end());
  }
  const KsResult ks = ks_one_sample(pooled, ref);
  const bool pass = ks.d < tol;
  res.summary["pooled_ks_d"] = ks.d;
  res.summary["pooled_ks_p"] = ks.p_value;
  res.summary["pooled_count"] = pooled.size();
  res.summary["checks"] = nlohmann::json::array({make_check("pooled_ks_d", ks.d, "<", tol, pass)});
  res.pass = pass;
  res.plot = ecdf_vs_cdf_plot(std::move(pooled), ref, -1.1, 1.1, 221, "semicircle_cdf");
  return res;
}

KindResult run_bulk_clt(const ExperimentConfig& cfg) {
  const int k = static_cast<int>(cfg.required_num_param("k"));
  const double tol = cfg.num_param("tol", 0.05);
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);
  const ReferenceCdf ref = ReferenceCdf::std_normal();

  KindResult res;
  res.columns = {"x_norm"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    const Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    ReplicateOutput out;
    out.row = {normalize_bulk(s, k, cfg.n)};
    return out;
  });

  std::vector<double> xs = collect_column(res.run, 0);
  const KsResult ks = ks_one_sample(xs, ref);
  const double mean = mean_of(xs);
  const bool pass = ks.d < tol;
  res.summary["ks_d"] = ks.d;
  res.summary["ks_p"] = ks.p_value;
  res.summary["mean"] = mean;
  res.summary["sd"] = sd_of(xs, mean);
  res.summary["checks"] = nlohmann::json::array({make_check("ks_d", ks.d, "<", tol, pass)});
  res.pass = pass;
  res.plot = ecdf_vs_cdf_plot(std::move(xs), ref, -4.0, 4.0, 161, "std_normal_cdf");
  return res;
}

KindResult run_universality(const ExperimentConfig& cfg) {
  const EnsembleSpec spec_a = EnsembleSpec::parse(cfg.dist);
  const EnsembleSpec spec_b = EnsembleSpec::parse(cfg.str_param("dist_b", "goe"));
  const int k = static_cast<int>(cfg.num_param("k", cfg.n / 2));
  const double b = cfg.num_param("b", -1.0);
  const double c = cfg.num_param("c", 1.0);
  const double p_min = cfg.num_param("p_min", 0.01);

  KindResult res;
  res.columns = {"x_a", "x_b"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    const Spectrum sa = sample_ensemble_spectrum(spec_a, cfg.n, derive_seed(cfg.seed, 0, r));
    const Spectrum sb = sample_ensemble_spectrum(spec_b, cfg.n, derive_seed(cfg.seed, 1, r));
    ReplicateOutput out;
    out.row = {sa.kth(k), sb.kth(k)};
    return out;
  });

  const std::vector<double> xa = collect_column(res.run, 0);
  const std::vector<double> xb = collect_column(res.run, 1);
  const KsResult ks = ks_two_sample(xa, xb);
  const IntervalProbability pa = interval_probability(xa, b, c, cfg.n);
  const IntervalProbability pb = interval_probability(xb, b, c, cfg.n);
  const double diff = pa.p - pb.p;
  const double se_comb = std::sqrt(pa.std_err * pa.std_err + pb.std_err * pb.std_err);
  const bool ks_pass = ks.p_value > p_min;
  const bool interval_pass = std::abs(diff) <= 3.0 * se_comb;

  res.summary["ks_d"] = ks.d;
  res.summary["ks_p"] = ks.p_value;
  res.summary["interval_p_a"] = pa.p;
  res.summary["interval_p_b"] = pb.p;
  res.summary["interval_se_a"] = pa.std_err;
  res.summary["interval_se_b"] = pb.std_err;
  res.summary["interval_diff"] = diff;
  res.summary["interval_se_comb"] = se_comb;
  res.summary["checks"] = nlohmann::json::array(
      {make_check("two_sample_ks_p", ks.p_value, ">", p_min, ks_pass),
       make_check("interval_abs_diff", std::abs(diff), "<=", 3.0 * se_comb, interval_pass)});
  res.pass = ks_pass && interval_pass;
  return res;
}

KindResult run_edge_tw(const ExperimentConfig& cfg) {
  const EnsembleSpec spec_a = EnsembleSpec::parse(cfg.dist);
  const std::string dist_b = cfg.str_param("dist_b", "");
  const bool two_sample = !dist_b.empty();
  const double tol = cfg.num_param("tol", 0.08);
  const double p_min = cfg.num_param("p_min", 0.01);
  const ReferenceCdf ref = ReferenceCdf::tracy_widom_2();
  default_hastings_mcleod();  // build once before the fan-out

  KindResult res;
  res.columns = two_sample ? std::vector<std::string>{"s_a", "s_b"} : std::vector<std::string>{"s_a"};
  const EnsembleSpec spec_b = two_sample ? EnsembleSpec::parse(dist_b) : spec_a;
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    ReplicateOutput out;
    const Spectrum sa = sample_ensemble_spectrum(spec_a, cfg.n, derive_seed(cfg.seed, 0, r));
    out.row = {rescale_edge(sa, cfg.n)};
    if (two_sample) {
      const Spectrum sb = sample_ensemble_spectrum(spec_b, cfg.n, derive_seed(cfg.seed, 1, r));
      out.row.push_back(rescale_edge(sb, cfg.n));
    }
    return out;
  });

  std::vector<double> sa = collect_column(res.run, 0);
  const KsResult ks = ks_one_sample(sa, ref);
  const bool one_pass = ks.d < tol;
  res.summary["ks_d"] = ks.d;
  res.summary["ks_p"] = ks.p_value;
  auto checks = nlohmann::json::array({make_check("ks_d_vs_tw2", ks.d, "<", tol, one_pass)});
  res.pass = one_pass;
  if (two_sample) {
    const KsResult ks2 = ks_two_sample(sa, collect_column(res.run, 1));
    const bool two_pass = ks2.p_value > p_min;
    res.summary["two_sample_ks_d"] = ks2.d;
    res.summary["two_sample_ks_p"] = ks2.p_value;
    checks.push_back(make_check("two_sample_ks_p", ks2.p_value, ">", p_min, two_pass));
    res.pass = res.pass && two_pass;
  }
  res.summary["checks"] = checks;
  res.plot = ecdf_vs_cdf_plot(std::move(sa), ref, -6.0, 4.0, 201, "tw2_cdf");
  return res;
}

KindResult run_edge_measure(const ExperimentConfig& cfg) {
  const double r_exponent = cfg.required_num_param("r_exponent");
  const int bins = static_cast<int>(cfg.num_param("bins", 6));
  const double x_max = cfg.num_param("x_max", 2.0);
  const double tol = cfg.num_param("tol", 0.15);
  if (bins < 1) throw ConfigError("edge-measure: bins must be >= 1");
  const double r_n = std::pow(static_cast<double>(cfg.n), -r_exponent);
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);
  const double dx = x_max / bins;

  KindResult res;
  for (int b = 0; b < bins; ++b) res.columns.push_back("bin_" + std::to_string(b));
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    const Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    const EdgeMeasurePoints pts = edge_measure(s, r_n, x_max);
    ReplicateOutput out;
    out.row.assign(bins, 0.0);
    for (double theta : pts.thetas) {
      int b = static_cast<int>(theta / dx);
      if (b >= bins) b = bins - 1;  // theta == x_max exactly
      out.row[b] += 1.0;
    }
    return out;
  });

  const double mass = 1.0 / (static_cast<double>(cfg.n) * std::pow(r_n, 1.5));
  const long good_reps = static_cast<long>(cfg.reps) - static_cast<long>(res.run.errors.size());
  double l1 = 0.0;
  nlohmann::json bins_json = nlohmann::json::array();
  std::ostringstream plot;
  plot << "# theta density reference\n";
  const double c0 = 2.0 * std::sqrt(2.0) / std::numbers::pi;
  for (int b = 0; b < bins; ++b) {
    double count = 0.0;
    for (std::size_t r = 0; r < res.run.rows.size(); ++r) {
      if (res.run.errors.count(static_cast<int>(r))) continue;
      count += res.run.rows[r][b];
    }
    const double density = count * mass / (static_cast<double>(good_reps) * dx);
    const double lo = b * dx, hi = (b + 1) * dx;
    // bin average of (2 sqrt(2)/pi) sqrt(x)
    const double ref = c0 * (2.0 / 3.0) * (std::pow(hi, 1.5) - std::pow(lo, 1.5)) / dx;
    l1 += std::abs(density - ref) * dx;
    bins_json.push_back(nlohmann::json{{"lo", lo}, {"hi", hi}, {"density", density}, {"ref", ref}});
    plot << fmt_double(0.5 * (lo + hi)) << " " << fmt_double(density) << " " << fmt_double(ref)
         << "\n";
  }
  const bool pass = l1 < tol;
  res.summary["l1_error"] = l1;
  res.summary["r_n"] = r_n;
  res.summary["mass_per_point"] = mass;
  res.summary["bins"] = bins_json;
  res.summary["checks"] = nlohmann::json::array({make_check("l1_error", l1, "<", tol, pass)});
  res.pass = pass;
  res.plot = plot.str();
  return res;
}

KindResult run_trace_moment(const ExperimentConfig& cfg) {
  int p_default = 2 * static_cast<int>(std::floor(std::cbrt(static_cast<double>(cfg.n))));
  if (p_default < 2) p_default = 2;
  const int p = static_cast<int>(cfg.num_param("p", p_default));
  const double tol = cfg.num_param("tol", 0.15);
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);

  KindResult res;
  res.columns = {"trace_moment"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    const Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    ReplicateOutput out;
    out.row = {trace_moment(s, p)};
    return out;
  });

  const std::vector<double> stats = collect_column(res.run, 0);
  const double mean = mean_of(stats);
  const double se = sd_of(stats, mean) / std::sqrt(static_cast<double>(stats.size()));
  const double target = std::pow(2.0, 1.5) / std::sqrt(std::numbers::pi);
  const double rel_err = std::abs(mean - target) / target;
  const bool pass = rel_err < tol;
  res.summary["p"] = p;
  res.summary["mean"] = mean;
  res.summary["std_err"] = se;
  res.summary["target"] = target;
  res.summary["rel_err"] = rel_err;
  res.summary["checks"] = nlohmann::json::array({make_check("rel_err", rel_err, "<", tol, pass)});
  res.pass = pass;
  return res;
}

KindResult run_pair_correlation(const ExperimentConfig& cfg) {
  const double half_width = cfg.num_param("half_width", 0.05);
  const int bins = static_cast<int>(cfg.num_param("bins", 30));
  const double y_max = cfg.num_param("y_max", 3.0);
  const double tol = cfg.num_param("tol", 0.1);
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);

  KindResult res;
  res.columns = {"window_count"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    ReplicateOutput out;
    out.row = {static_cast<double>(counting_statistic(s, -half_width, half_width))};
    out.spectrum = std::move(s);
    return out;
  });

  const std::vector<Spectrum> spectra = collect_spectra(res.run);
  const CorrelationEstimate est = pair_correlation(spectra, half_width, bins, y_max);

  double max_dev = 0.0;
  int flagged = 0;
  nlohmann::json bins_json = nlohmann::json::array();
  std::ostringstream plot;
  plot << "# y r2_estimate r2_sine_kernel pairs flagged\n";
  for (int b = 0; b < bins; ++b) {
    const double y = est.bin_centers[b];
    const double ref = r_k_det({0.0, y}, 2);
    if (!est.flagged[b]) {
      max_dev = std::max(max_dev, std::abs(est.values[b] - ref));
    } else {
      ++flagged;
    }
    bins_json.push_back(nlohmann::json{{"y", y},
                                       {"r2", est.values[b]},
                                       {"ref", ref},
                                       {"pairs", est.counts[b]},
                                       {"flagged", static_cast<bool>(est.flagged[b])}});
    plot << fmt_double(y) << " " << fmt_double(est.values[b]) << " " << fmt_double(ref) << " "
         << est.counts[b] << " " << (est.flagged[b] ? 1 : 0) << "\n";
  }
  const bool pass = max_dev < tol;
  res.summary["max_dev"] = max_dev;
  res.summary["flagged_bins"] = flagged;
  res.summary["bins"] = bins_json;
  res.summary["checks"] =
      nlohmann::json::array({make_check("max_bin_deviation", max_dev, "<", tol, pass)});
  res.pass = pass;
  res.plot = plot.str();
  return res;
}

KindResult run_gap_correlation(const ExperimentConfig& cfg) {
  const int k1 = static_cast<int>(cfg.required_num_param("k1"));
  const double tol = cfg.num_param("tol", 0.15);
  const std::string thetas_str = cfg.str_param("thetas", "0.25,0.5,0.75");
  std::vector<double> thetas;
  {
    std::stringstream ss(thetas_str);
    std::string item;
    while (std::getline(ss, item, ',')) thetas.push_back(parse_number("thetas", item));
  }
  if (thetas.empty()) throw ConfigError("gap-correlation: empty thetas list");
  const EnsembleSpec spec = EnsembleSpec::parse(cfg.dist);

  std::vector<int> k2(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    k2[i] = k1 + static_cast<int>(std::floor(std::pow(static_cast<double>(cfg.n), thetas[i])));
    if (k2[i] >= cfg.n) throw ConfigError("gap-correlation: k2 beyond the spectrum");
  }

  KindResult res;
  res.columns = {"x_k1"};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    res.columns.push_back("x_k2_theta" + std::to_string(i));
  }
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    Spectrum s = sample_ensemble_spectrum(spec, cfg.n, derive_seed(cfg.seed, 0, r));
    ReplicateOutput out;
    out.row.push_back(normalize_bulk(s, k1, cfg.n));
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      out.row.push_back(normalize_bulk(s, k2[i], cfg.n));
    }
    out.spectrum = std::move(s);
    return out;
  });

  const std::vector<Spectrum> spectra = collect_spectra(res.run);
  nlohmann::json rho_json = nlohmann::json::array();
  std::vector<double> rho(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    rho[i] = gap_correlation(spectra, k1, k2[i], cfg.n);
    rho_json.push_back(nlohmann::json{
        {"theta", thetas[i]}, {"k2", k2[i]}, {"pearson", rho[i]}, {"target", 1.0 - thetas[i]}});
  }

  auto checks = nlohmann::json::array();
  bool pass = true;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (std::abs(thetas[i] - 0.5) < 1e-12) {
      const bool ok = std::abs(rho[i] - 0.5) < tol;
      checks.push_back(make_check("abs_pearson_minus_half_theta0.5", std::abs(rho[i] - 0.5), "<",
                                  tol, ok));
      pass = pass && ok;
    }
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
    if (!(rho[i] > rho[i + 1])) decreasing = false;
  }
  if (thetas.size() > 1) {
    checks.push_back(make_check("pearson_strictly_decreasing_in_theta", decreasing ? 1.0 : 0.0,
                                "==", 1.0, decreasing));
    pass = pass && decreasing;
  }
  res.summary["correlations"] = rho_json;
  res.summary["checks"] = checks;
  res.pass = pass;
  return res;
}

KindResult run_prop_shell(const ExperimentConfig& cfg) {
  ShellSpec shell{cfg.required_num_param("m2"), cfg.required_num_param("m1")};
  shell.validate();

  KindResult res;
  res.columns = {"in_shell", "sum_sq"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    auto rng = make_engine(derive_seed(cfg.seed, 0, r));
    SymmetricMatrix m(cfg.n);
    const bool in = shell_attempt(m, shell, rng);
    ReplicateOutput out;
    out.row = {in ? 1.0 : 0.0, m.sum_sq_raw()};
    return out;
  });

  const std::vector<double> inds = collect_column(res.run, 0);
  const double p_hat = mean_of(inds);
  const double p_ref = chi_shell_probability(cfg.n, shell);
  const double se_ref =
      std::sqrt(std::max(p_ref * (1.0 - p_ref), 0.0) / static_cast<double>(inds.size()));
  const double dev = std::abs(p_hat - p_ref);
  const bool pass = dev <= 3.0 * se_ref + 1e-15;
  res.summary["acceptance_rate"] = p_hat;
  res.summary["chi_shell_probability"] = p_ref;
  res.summary["se_under_reference"] = se_ref;
  res.summary["checks"] =
      nlohmann::json::array({make_check("abs_rate_deviation", dev, "<=", 3.0 * se_ref, pass)});
  res.pass = pass;
  return res;
}

KindResult run_prop_volume_ratio(const ExperimentConfig& cfg) {
  ShellSpec shell{cfg.required_num_param("m2"), cfg.required_num_param("m1")};
  shell.validate();
  const double a = cfg.required_num_param("a");
  const double b = cfg.required_num_param("b");
  if (!(a < b)) throw ConfigError("prop-volume-ratio: need a < b");
  const int k_default = (cfg.n + 1) / 2;
  const int k = static_cast<int>(cfg.num_param("k", k_default));

  KindResult res;
  res.columns = {"in_gaussian", "in_uniform"};
  res.run = run_replicates(cfg, res.columns.size(), [&](int r) {
    const SymmetricMatrix mg =
        sample_shell(cfg.n, shell, ShellMode::gaussian_conditioned, derive_seed(cfg.seed, 0, r));
    const SymmetricMatrix mu =
        sample_shell(cfg.n, shell, ShellMode::uniform_volume, derive_seed(cfg.seed, 1, r));
    const double xg = eigenvalues(mg).kth(k);
    const double xu = eigenvalues(mu).kth(k);
    ReplicateOutput out;
    out.row = {(xg >= a && xg <= b) ? 1.0 : 0.0, (xu >= a && xu <= b) ? 1.0 : 0.0};
    return out;
  });

  const std::vector<double> gi = collect_column(res.run, 0);
  const std::vector<double> ui = collect_column(res.run, 1);
  const double pg = mean_of(gi), pu = mean_of(ui);
  const double seg = std::sqrt(std::max(pg * (1.0 - pg), 0.0) / static_cast<double>(gi.size()));
  const double seu = std::sqrt(std::max(pu * (1.0 - pu), 0.0) / static_cast<double>(ui.size()));
  const double se_comb = std::sqrt(seg * seg + seu * seu);
  const double diff = std::abs(pg - pu);
  const bool pass = diff <= 3.0 * se_comb;
  res.summary["p_gaussian_conditioned"] = pg;
  res.summary["p_uniform_volume"] = pu;
  res.summary["se_gaussian"] = seg;
  res.summary["se_uniform"] = seu;
  res.summary["abs_diff"] = diff;
  res.summary["se_comb"] = se_comb;
  res.summary["k"] = k;
  res.summary["checks"] =
      nlohmann::json::array({make_check("abs_prob_diff", diff, "<=", 3.0 * se_comb, pass)});
  res.pass = pass;
  return res;
}

KindResult run_tw_table(const ExperimentConfig& cfg) {
  const std::string grid = cfg.str_param("grid", "-10:8:0.1");
  double lo = 0.0, hi = 0.0, step = 0.0;
  {
    std::stringstream ss(grid);
    std::string part;
    std::vector<double> parts;
    while (std::getline(ss, part, ':')) parts.push_back(parse_number("grid", part));
    if (parts.size() != 3) throw ConfigError("tw-table: grid must be lo:hi:step");
    lo = parts[0];
    hi = parts[1];
    step = parts[2];
    if (!(step > 0.0) || !(lo < hi)) throw ConfigError("tw-table: need lo < hi and step > 0");
  }
  default_hastings_mcleod();

  const int points = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  ExperimentConfig grid_cfg = cfg;
  grid_cfg.reps = points;

  KindResult res;
  res.columns = {"x", "F2(x)"};
  res.csv_skip_rep = true;
  res.run = run_replicates(grid_cfg, res.columns.size(), [&](int r) {
    const double x = lo + r * step;
    ReplicateOutput out;
    out.row = {x, tw2_cdf(x)};
    return out;
  });

  bool monotone = true;
  double prev = -1.0;
  std::ostringstream plot;
  plot << "# x tw2_cdf\n";
  for (std::size_t r = 0; r < res.run.rows.size(); ++r) {
    const double f = res.run.rows[r][1];
    if (f < prev) monotone = false;
    prev = f;
    plot << fmt_double(res.run.rows[r][0]) << " " << fmt_double(f) << "\n";
  }
  res.summary["points"] = points;
  res.summary["checks"] = nlohmann::json::array(
      {make_check("monotone_nondecreasing", monotone ? 1.0 : 0.0, "==", 1.0, monotone)});
  res.pass = monotone;
  res.plot = plot.str();
  return res;
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  KindResult result;
  switch (config.kind) {
    case ExperimentKind::semicircle:
      result = run_semicircle(config);
      break;
    case ExperimentKind::bulk_clt:
      result = run_bulk_clt(config);
      break;
    case ExperimentKind::universality:
      result = run_universality(config);
      break;
    case ExperimentKind::edge_tw:
      result = run_edge_tw(config);
      break;
    case ExperimentKind::edge_measure:
      result = run_edge_measure(config);
      break;
    case ExperimentKind::trace_moment:
      result = run_trace_moment(config);
      break;
    case ExperimentKind::pair_correlation:
      result = run_pair_correlation(config);
      break;
    case ExperimentKind::gap_correlation:
      result = run_gap_correlation(config);
      break;
    case ExperimentKind::prop_shell:
      result = run_prop_shell(config);
      break;
    case ExperimentKind::prop_volume_ratio:
      result = run_prop_volume_ratio(config);
      break;
    case ExperimentKind::tw_table:
      result = run_tw_table(config);
      break;
  }

  Report report;
  report.columns = std::move(result.columns);
  report.rows = std::move(result.run.rows);
  report.summary = std::move(result.summary);
  report.pass = result.pass;
  report.csv_skip_rep_column = result.csv_skip_rep;
  report.plot_text_ = std::move(result.plot);

  nlohmann::json cfg_json;
  cfg_json["kind"] = kind_name(config.kind);
  cfg_json["n"] = config.n;
  cfg_json["reps"] = config.reps;
  cfg_json["dist"] = config.dist;
  cfg_json["seed"] = config.seed;
  cfg_json["params"] = config.params;
  report.metadata["config"] = cfg_json;
  report.metadata["version"] = kArtifactVersion;
  if (config.kind != ExperimentKind::tw_table) {
    const EnsembleSpec spec = EnsembleSpec::parse(config.dist);
    if (spec.heavy_tail_warning()) {
      report.metadata["warnings"] = nlohmann::json::array(
          {"entry distribution tail exponent below 18; polynomial-tail edge theorems assume p >= 18"});
    }
  }
  if (!result.run.errors.empty()) {
    nlohmann::json errs;
    for (const auto& [rep, msg] : result.run.errors) errs[std::to_string(rep)] = msg;
    report.metadata["replicate_errors"] = errs;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

std::string Report::to_csv() const {
  std::ostringstream os;
  if (!csv_skip_rep_column) os << "rep";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0 || !csv_skip_rep_column) os << ",";
    os << columns[c];
  }
  os << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!csv_skip_rep_column) os << r;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0 || !csv_skip_rep_column) os << ",";
      os << fmt_double(rows[r][c]);
    }
    os << "\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["metadata"] = metadata;
  j["columns"] = columns;
  j["rows"] = rows;
  j["summary"] = summary;
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

std::string Report::to_plot() const { return plot_text_; }

void emit(const Report& report, const std::filesystem::path& out_dir, const std::string& format,
          bool force) {
  std::string payload;
  std::string filename;
  if (format == "csv") {
    payload = report.to_csv();
    filename = "report.csv";
  } else if (format == "json") {
    payload = report.to_json();
    filename = "report.json";
  } else if (format == "plot") {
    payload = report.to_plot();
    filename = "report.plot";
  } else {
    throw ConfigError("emit: format must be csv, json or plot, got '" + format + "'");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("emit: cannot create output directory " + out_dir.string());

  const std::filesystem::path target = out_dir / filename;
  const std::filesystem::path manifest_path = out_dir / "manifest.json";
  if (!force) {
    if (std::filesystem::exists(target)) {
      throw IoError("emit: refusing to overwrite " + target.string() + " (pass --force)");
    }
    if (std::filesystem::exists(manifest_path)) {
      throw IoError("emit: refusing to overwrite " + manifest_path.string() + " (pass --force)");
    }
  }

  {
    std::ofstream f(target, std::ios::binary);
    if (!f) throw IoError("emit: cannot open " + target.string());
    f << payload;
    if (!f) throw IoError("emit: write failed for " + target.string());
  }

  nlohmann::json manifest;
  manifest["artifacts"] = nlohmann::json::array({nlohmann::json{
      {"file", filename}, {"bytes", payload.size()}, {"fnv1a64", hex64(fnv1a64(payload))}}});
  {
    std::ofstream f(manifest_path, std::ios::binary);
    if (!f) throw IoError("emit: cannot open " + manifest_path.string());
    f << manifest.dump(2) << "\n";
  }
}

std::vector<std::pair<std::string, ExperimentConfig>> parse_config_file(const std::string& text) {
  std::vector<std::pair<std::string, ExperimentConfig>> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
      }
      out.emplace_back(trim(line.substr(1, line.size() - 2)), ExperimentConfig{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    if (out.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": key before any [section]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    ExperimentConfig& cfg = out.back().second;
    if (key == "kind") {
      cfg.kind = parse_kind(value);
    } else if (key == "n") {
      cfg.n = static_cast<int>(parse_number(key, value));
    } else if (key == "reps") {
      cfg.reps = static_cast<int>(parse_number(key, value));
    } else if (key == "dist") {
      cfg.dist = value;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(parse_number(key, value));
    } else if (key.rfind("param.", 0) == 0) {
      cfg.params[key.substr(6)] = value;
    } else {
      cfg.params[key] = value;
    }
  }
  return out;
}

}  // namespace rmt
