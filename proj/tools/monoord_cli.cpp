// monoord: fit, simulate and summarize monotone ordinal regression models.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "monoord/baseline.hpp"
#include "monoord/diagnostics.hpp"
#include "monoord/io.hpp"
#include "monoord/random.hpp"
#include "monoord/sampler.hpp"
#include "monoord/simgen.hpp"

namespace fs = std::filesystem;
using namespace monoord;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MONOORD_OUT"); env && *env) return env;
  return "monoord-out";
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

// Schedule flags shared by several commands; unset flags keep the config value.
struct ScheduleFlags {
  std::optional<std::uint64_t> seed, iterations, burn_in, thin;
  std::optional<std::string> preset;
  void add(CLI::App* app) {
    app->add_option("--preset", preset, "Schedule preset, applied before the other flags")
        ->check(CLI::IsMember({"default", "simulation", "data"}));
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--iterations", iterations, "Post-burn-in iterations");
    app->add_option("--burn-in", burn_in, "Burn-in iterations");
    app->add_option("--thin", thin, "Keep every thin-th post-burn-in state");
  }
  void apply(SamplerConfig& s) const {
    const auto set = [&s](std::uint64_t it, std::uint64_t burn, std::uint64_t th) {
      s.iterations = it;
      s.burn_in = burn;
      s.thin = th;
    };
    if (preset == "default") set(50000, 10000, 20);
    if (preset == "simulation") set(500000, 100000, 50);
    if (preset == "data") set(10000, 5000, 20);
    if (seed) s.seed = *seed;
    if (iterations) s.iterations = *iterations;
    if (burn_in) s.burn_in = *burn_in;
    if (thin) s.thin = *thin;
  }
};

void write_acceptance(std::ostream& out, std::uint64_t chain, const MoveCounters& c,
                      bool header) {
  if (header) out << "chain,move,attempts,accepts,rate\n";
  for (int m = 0; m < kMoveKinds; ++m) {
    const auto k = MoveKind(m);
    out << chain << ',' << to_string(k) << ',' << c.attempts[m] << ',' << c.accepts[m] << ','
        << format_double(c.rate(k)) << '\n';
  }
}

void write_inclusion(std::ostream& out, std::span<const SampleRecord> records, int p) {
  out << "covariate,inclusion_probability,mean_point_count\n";
  for (int j = 0; j < p; ++j) {
    out << (j + 1) << ',' << format_double(inclusion_probability(records, p, j)) << ','
        << format_double(mean_point_count(records, p, j)) << '\n';
  }
}

// --- fit --------------------------------------------------------------------

struct FitOptions {
  std::string config;
  std::string data;
  std::string out;
  std::optional<int> chains;
  ScheduleFlags schedule;
};

int cmd_fit(const FitOptions& o) {
  if (o.config.empty()) throw UsageError("fit needs --config");
  RunConfig cfg = read_run_config_file(o.config);
  if (!o.data.empty()) cfg.data_path = o.data;
  if (cfg.data_path.empty()) throw UsageError("no dataset: set data.path or pass --data");
  o.schedule.apply(cfg.sampler);
  if (o.chains) cfg.chains = *o.chains;
  if (cfg.chains < 1) throw UsageError("--chains must be at least 1");
  cfg.output_dir = resolve_out(o.out.empty() ? cfg.output_dir : o.out);

  const auto started = timestamp();
  auto table = read_csv_file(cfg.data_path);
  Schema schema = cfg.schema;
  if (schema.monotone.empty()) {
    const bool ecdf = schema.ecdf;
    schema = default_schema(table);
    schema.ecdf = ecdf;
    schema.levels = cfg.schema.levels;
  }
  LoadedData loaded = load_dataset(table, schema);
  for (const auto& name : loaded.degenerate) {
    std::cerr << "warning: covariate '" << name << "' is constant\n";
  }
  auto& model = cfg.model;
  model.covariates = loaded.data.covariates;
  model.linear = loaded.data.linear;
  model.clusters = loaded.data.clusters;
  if (cfg.schema.levels == 0 && model.levels < loaded.data.levels) {
    model.levels = loaded.data.levels;
  }
  loaded.data.levels = model.levels;
  try {
    model.validate();
    cfg.sampler.validate();
    model.check_dataset(loaded.data);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }

  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  std::vector<std::string> outputs;
  std::vector<ChainResult> results(cfg.chains);
  std::vector<std::vector<SampleRecord>> counts(cfg.chains);
  std::vector<std::exception_ptr> errors(cfg.chains);
  std::mutex log_mutex;

  auto run_one = [&](int c) {
    try {
      SamplerConfig sc = cfg.sampler;
      sc.seed = stream_seed(cfg.sampler.seed, std::uint64_t(c));
      const auto stem = "chain" + std::to_string(c + 1);
      auto samples = open_out(dir / (stem + "_samples.jsonl"));
      auto trace = open_out(dir / (stem + "_trace.csv"));
      SampleWriter writer(samples, {model, std::uint64_t(c), cfg.sampler.seed});
      trace << "iteration,log_likelihood,total_points";
      for (const auto& s : enumerate_subspaces(model.covariates, model.max_covariates)) {
        trace << ",n_" << subspace_label(s);
      }
      trace << '\n';
      auto sink = [&](const SampleRecord& r, const ChainState&) {
        writer.write(r);
        trace << r.iteration << ',' << format_double(r.log_likelihood) << ',' << r.points.size();
        for (auto n : r.counts) trace << ',' << n;
        trace << '\n';
        SampleRecord light;
        light.counts = r.counts;
        counts[c].push_back(std::move(light));
      };
      auto progress = [&](const ProgressInfo& p) {
        std::lock_guard lock(log_mutex);
        std::cerr << "chain " << c + 1 << " iteration " << p.iteration << " loglik "
                  << p.log_likelihood << '\n';
      };
      results[c] = run_chain(loaded.data, model, sc, sink, progress);
      if (!samples || !trace) throw std::runtime_error("write failed for " + stem);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (cfg.chains == 1) {
    run_one(0);
  } else {
    std::vector<std::thread> threads;
    for (int c = 0; c < cfg.chains; ++c) threads.emplace_back(run_one, c);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int c = 0; c < cfg.chains; ++c) {
    const auto stem = "chain" + std::to_string(c + 1);
    outputs.push_back(stem + "_samples.jsonl");
    outputs.push_back(stem + "_trace.csv");
  }
  {
    auto f = open_out(dir / "acceptance.csv");
    for (int c = 0; c < cfg.chains; ++c) write_acceptance(f, c + 1, results[c].counters, c == 0);
    outputs.push_back("acceptance.csv");
  }
  std::vector<SampleRecord> all;
  for (auto& v : counts) all.insert(all.end(), v.begin(), v.end());
  if (!all.empty()) {
    auto f = open_out(dir / "inclusion.csv");
    write_inclusion(f, all, model.covariates);
    outputs.push_back("inclusion.csv");
  }
  RunManifest m;
  m.config = cfg;
  m.command = "fit";
  m.version = version_string();
  m.started = started;
  m.finished = timestamp();
  m.outputs = outputs;
  auto mf = open_out(dir / "manifest.ini");
  write_manifest(mf, m);
  std::cout << "wrote " << outputs.size() + 1 << " files to " << dir.string() << '\n';
  return kOk;
}

// --- simulate -----------------------------------------------------------------

struct SimulateOptions {
  std::string family = "linear";
  std::string mode = "nonparametric";
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  int noise = 0;
  int grid = 51;
  std::string out;
};

int cmd_simulate(const SimulateOptions& o) {
  ScenarioSpec spec;
  try {
    spec.family = family_from_string(o.family);
    spec.mode = scenario_mode_from_string(o.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.n == 0) throw UsageError("--n must be positive");
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  spec.n = o.n;
  spec.seed = o.seed;
  spec.noise_covariates = o.noise;
  const auto sc = make_scenario(spec);
  const fs::path dir(resolve_out(o.out));
  fs::create_directories(dir);
  const int K = sc.oracle.levels();
  {
    auto f = open_out(dir / "data.csv");
    write_dataset_csv(f, sc.data);
  }
  {
    auto f = open_out(dir / "truth.csv");
    for (int k = 1; k <= K; ++k) f << (k > 1 ? "," : "") << 'p' << k;
    f << '\n';
    const auto t = truth_matrix(sc.oracle, sc.data);
    for (std::size_t n = 0; n < sc.data.size(); ++n) {
      for (int k = 0; k < K; ++k) f << (k ? "," : "") << format_double(t[n * K + k]);
      f << '\n';
    }
  }
  {
    auto f = open_out(dir / "truth_grid.csv");
    f << "x1,x2";
    for (int k = 2; k <= K; ++k) f << ",S" << k;
    f << '\n';
    const auto g = unit_grid_2d(o.grid);
    const std::vector<double> z(sc.data.linear, 0.0);
    std::vector<double> x(sc.oracle.covariates, 0.0);
    for (std::size_t i = 0; i < g.size() / 2; ++i) {
      x[0] = g[2 * i];
      x[1] = g[2 * i + 1];
      f << format_double(x[0]) << ',' << format_double(x[1]);
      for (int k = 2; k <= K; ++k) f << ',' << format_double(sc.oracle.survival(k, x, z));
      f << '\n';
    }
  }
  {
    RunConfig cfg;
    cfg.model = scenario_model(spec);
    cfg.data_path = (dir / "data.csv").string();
    cfg.schema.levels = K;
    cfg.schema.ecdf = false;
    auto f = open_out(dir / "config.ini");
    write_run_config(f, cfg);
  }
  std::cout << "wrote data.csv, truth.csv, truth_grid.csv, config.ini to " << dir.string() << '\n';
  return kOk;
}

// --- prior-check ----------------------------------------------------------------

struct PriorOptions {
  std::string config;
  int covariates = 2;
  int levels = 5;
  std::optional<double> a, b;
  std::string out;
  ScheduleFlags schedule;
};

int cmd_prior_check(const PriorOptions& o) {
  RunConfig cfg;
  if (!o.config.empty()) cfg = read_run_config_file(o.config);
  if (o.config.empty()) {
    cfg.model.covariates = o.covariates;
    cfg.model.levels = o.levels;
    cfg.sampler.iterations = 200000;
    cfg.sampler.burn_in = 1000;
    cfg.sampler.thin = 100;
  }
  if (o.a) cfg.model.a = *o.a;
  if (o.b) cfg.model.b = *o.b;
  cfg.model.linear = 0;
  cfg.model.clusters = 0;
  o.schedule.apply(cfg.sampler);
  cfg.sampler.flat_likelihood = true;
  try {
    cfg.model.validate();
    cfg.sampler.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto subs = enumerate_subspaces(cfg.model.covariates, cfg.model.max_covariates);
  const std::size_t S = subs.size();
  std::vector<double> sum_n(S), sum_n2(S), sum_r(S), sum_r2(S);
  std::uint64_t L = 0;
  const Dataset empty = empty_dataset(cfg.model);
  run_chain(empty, cfg.model, cfg.sampler, [&](const SampleRecord& r, const ChainState&) {
    for (std::size_t s = 0; s < S; ++s) {
      const double n = double(r.counts[s]);
      sum_n[s] += n;
      sum_n2[s] += n * n;
      sum_r[s] += r.intensities[s];
      sum_r2[s] += r.intensities[s] * r.intensities[s];
    }
    ++L;
  });
  const fs::path dir(resolve_out(o.out));
  fs::create_directories(dir);
  auto f = open_out(dir / "prior_counts.csv");
  f << "subspace,records,count_mean,count_variance,expected_count_mean,expected_count_variance,"
       "intensity_mean,intensity_variance,expected_intensity_mean,expected_intensity_variance\n";
  const double a = cfg.model.a, b = cfg.model.b;
  for (std::size_t s = 0; s < S; ++s) {
    const double v = subs[s].volume;
    const double mn = L ? sum_n[s] / L : 0.0;
    const double vn = L > 1 ? (sum_n2[s] - L * mn * mn) / (L - 1) : 0.0;
    const double mr = L ? sum_r[s] / L : 0.0;
    const double vr = L > 1 ? (sum_r2[s] - L * mr * mr) / (L - 1) : 0.0;
    f << subspace_label(subs[s]) << ',' << L << ',' << format_double(mn) << ','
      << format_double(vn) << ',' << format_double(a / b * v) << ','
      << format_double(a / b * v + a / (b * b) * v * v) << ',' << format_double(mr) << ','
      << format_double(vr) << ',' << format_double(a / b) << ',' << format_double(a / (b * b))
      << '\n';
  }
  std::cout << "wrote prior_counts.csv (" << L << " records) to " << dir.string() << '\n';
  return kOk;
}

// --- predict --------------------------------------------------------------------

struct PredictOptions {
  std::vector<std::string> samples;
  int category = 2;
  int grid = 51;
  std::vector<int> axes{1, 2};
  double fixed = 0.5;
  std::vector<double> z;
  std::optional<int> covariate;
  std::string data;
  int values = 51;
  std::string out;
};

std::vector<SampleRecord> read_all(const std::vector<std::string>& paths, ModelSpec& model) {
  if (paths.empty()) throw UsageError("need at least one --samples file");
  std::vector<SampleRecord> all;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto f = read_samples_file(paths[i]);
    if (i == 0) {
      model = f.header.model;
    } else if (f.header.model.covariates != model.covariates ||
               f.header.model.levels != model.levels) {
      throw DataError("sample files disagree on the model dimensions");
    }
    all.insert(all.end(), std::make_move_iterator(f.records.begin()),
               std::make_move_iterator(f.records.end()));
  }
  if (all.empty()) throw DataError("sample files contain no records");
  return all;
}

int cmd_predict(const PredictOptions& o) {
  ModelSpec model;
  const auto records = read_all(o.samples, model);
  if (o.category < 1 || o.category > model.levels + 1) throw UsageError("--category out of range");
  const fs::path dir(resolve_out(o.out));
  fs::create_directories(dir);

  if (o.covariate) {
    if (o.data.empty()) throw UsageError("--covariate needs --data");
    const int j = *o.covariate - 1;
    if (j < 0 || j >= model.covariates) throw UsageError("--covariate out of range");
    const Dataset data = read_dataset_csv(o.data);
    if (data.covariates != model.covariates || data.linear != model.linear) {
      throw DataError("dataset does not match the sample files");
    }
    std::vector<double> vals(o.values);
    for (int i = 0; i < o.values; ++i) vals[i] = o.values > 1 ? double(i) / (o.values - 1) : 1.0;
    const auto f = standardized_function(records, model, data, j, vals, o.category);
    auto out = open_out(dir / ("standardized_x" + std::to_string(j + 1) + "_k" +
                               std::to_string(o.category) + ".csv"));
    out << "value,survival\n";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out << format_double(vals[i]) << ',' << format_double(f[i]) << '\n';
    }
    std::cout << "wrote standardized function to " << dir.string() << '\n';
    return kOk;
  }

  if (o.axes.size() != 2 || o.axes[0] < 1 || o.axes[1] < 1 || o.axes[0] > model.covariates ||
      o.axes[1] > model.covariates || o.axes[0] == o.axes[1]) {
    throw UsageError("--axes needs two distinct covariate indices");
  }
  if (!o.z.empty() && int(o.z.size()) != model.linear) throw UsageError("--z length mismatch");
  const auto g2 = unit_grid_2d(o.grid);
  const std::size_t G = g2.size() / 2;
  std::vector<double> grid(G * model.covariates, o.fixed);
  for (std::size_t i = 0; i < G; ++i) {
    grid[i * model.covariates + o.axes[0] - 1] = g2[2 * i];
    grid[i * model.covariates + o.axes[1] - 1] = g2[2 * i + 1];
  }
  const auto s = posterior_mean_surface(records, model, grid, o.category, o.z, 0);
  auto out = open_out(dir / ("surface_k" + std::to_string(o.category) + ".csv"));
  out << 'x' << o.axes[0] << ",x" << o.axes[1] << ",survival\n";
  for (std::size_t i = 0; i < G; ++i) {
    out << format_double(g2[2 * i]) << ',' << format_double(g2[2 * i + 1]) << ','
        << format_double(s[i]) << '\n';
  }
  std::cout << "wrote surface to " << dir.string() << '\n';
  return kOk;
}

// --- diag -------------------------------------------------------------------------

struct DiagOptions {
  std::vector<std::string> samples;
  std::string data;
  std::string truth;
  std::string out;
};

int cmd_diag(const DiagOptions& o) {
  ModelSpec model;
  const auto records = read_all(o.samples, model);
  const fs::path dir(resolve_out(o.out));
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "inclusion.csv");
    write_inclusion(f, records, model.covariates);
  }
  {
    auto f = open_out(dir / "trace.csv");
    f << "record,iteration,log_likelihood,total_points\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      f << i + 1 << ',' << records[i].iteration << ',' << format_double(records[i].log_likelihood)
        << ',' << records[i].points.size() << '\n';
    }
  }
  if (!o.truth.empty()) {
    if (o.data.empty()) throw UsageError("--truth needs --data");
    Dataset data = read_dataset_csv(o.data);
    data.levels = model.levels;
    if (data.covariates != model.covariates || data.linear != model.linear) {
      throw DataError("dataset does not match the sample files");
    }
    const auto t = read_csv_file(o.truth);
    if (t.rows.size() != data.size() || int(t.header.size()) != model.levels) {
      throw DataError("truth file must have one row per observation and K columns");
    }
    std::vector<double> truth;
    truth.reserve(data.size() * model.levels);
    for (const auto& row : t.rows) {
      for (const auto& cell : row) truth.push_back(std::stod(cell));
    }
    MaeAccumulator acc(data, truth, model.link);
    for (const auto& r : records) acc.add(r.reconstruct(model), r.theta);
    auto f = open_out(dir / "mae.csv");
    f << "category,mae\n";
    for (int k = 1; k <= model.levels; ++k) {
      f << k << ',';
      try {
        f << format_double(acc.mae_k(k));
      } catch (const std::domain_error&) {
        f << "NA";
      }
      f << '\n';
    }
    f << "overall," << format_double(acc.mae_overall()) << '\n';
  }
  std::cout << "wrote diagnostics to " << dir.string() << '\n';
  return kOk;
}

// --- baseline ---------------------------------------------------------------------

struct BaselineOptions {
  std::string data;
  std::string out;
  ScheduleFlags schedule;
};

int cmd_baseline(const BaselineOptions& o) {
  if (o.data.empty()) throw UsageError("baseline needs --data");
  const Dataset data = read_dataset_csv(o.data);
  BaselineConfig bc;
  SamplerConfig sc;
  sc.iterations = bc.iterations;
  sc.burn_in = bc.burn_in;
  sc.thin = bc.thin;
  sc.seed = bc.seed;
  o.schedule.apply(sc);
  bc.iterations = sc.iterations;
  bc.burn_in = sc.burn_in;
  bc.thin = sc.thin;
  bc.seed = sc.seed;
  if (bc.thin < 1) throw UsageError("--thin must be at least 1");
  const auto r = fit_po_baseline(data, bc);
  const fs::path dir(resolve_out(o.out));
  fs::create_directories(dir);
  const int A = data.levels - 1;
  const int B = data.covariates + data.linear;
  auto name = [&](int c) {
    return c < A ? "alpha" + std::to_string(c + 2) : "beta" + std::to_string(c - A + 1);
  };
  {
    auto f = open_out(dir / "baseline_samples.csv");
    for (int c = 0; c < A + B; ++c) f << name(c) << ',';
    f << "log_likelihood\n";
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      for (double v : r.samples[i].alpha) f << format_double(v) << ',';
      for (double v : r.samples[i].beta) f << format_double(v) << ',';
      f << format_double(r.log_likelihood[i]) << '\n';
    }
  }
  {
    auto f = open_out(dir / "baseline_summary.csv");
    f << "parameter,mean,sd,mode,acceptance\n";
    for (int c = 0; c < A + B; ++c) {
      double s = 0, s2 = 0;
      for (const auto& st : r.samples) {
        const double v = c < A ? st.alpha[c] : st.beta[c - A];
        s += v;
        s2 += v * v;
      }
      const double L = double(r.samples.size());
      const double mean = L > 0 ? s / L : NAN;
      const double sd = L > 1 ? std::sqrt(std::max(0.0, (s2 - L * mean * mean) / (L - 1))) : NAN;
      const double mode = c < A ? r.mode.alpha[c] : r.mode.beta[c - A];
      f << name(c) << ',' << format_double(mean) << ',' << format_double(sd) << ','
        << format_double(mode) << ',' << format_double(r.acceptance[c]) << '\n';
    }
  }
  if (r.degenerate) std::cerr << "warning: response has a single observed category\n";
  if (r.diverged) {
    std::cerr << "error: baseline chain diverged (parameter beyond " << bc.divergence_bound
              << ")\n";
    return kRuntime;
  }
  std::cout << "wrote baseline_samples.csv, baseline_summary.csv to " << dir.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone ordinal regression with a marked point process prior"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  FitOptions fit;
  auto* f = app.add_subcommand("fit", "Run the sampler on a dataset");
  f->add_option("--config", fit.config, "INI run configuration")->required();
  f->add_option("--data", fit.data, "Dataset CSV (overrides data.path)");
  f->add_option("--out", fit.out, "Output directory");
  f->add_option("--chains", fit.chains, "Number of chains");
  fit.schedule.add(f);

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Generate a synthetic dataset with its truth");
  s->add_option("--family", sim.family, "linear | continuous | discontinuous");
  s->add_option("--mode", sim.mode, "nonparametric | semiparametric");
  s->add_option("--n", sim.n, "Number of observations");
  s->add_option("--seed", sim.seed, "Random seed");
  s->add_option("--noise", sim.noise, "Extra covariates unrelated to the response");
  s->add_option("--grid", sim.grid, "Truth grid nodes per axis");
  s->add_option("--out", sim.out, "Output directory");

  PriorOptions prior;
  auto* p = app.add_subcommand("prior-check", "Sample the prior (no data)");
  p->add_option("--config", prior.config, "INI run configuration");
  p->add_option("--covariates", prior.covariates, "Number of monotone covariates");
  p->add_option("--levels", prior.levels, "Number of categories");
  p->add_option("--a", prior.a, "Intensity prior shape");
  p->add_option("--b", prior.b, "Intensity prior rate");
  p->add_option("--out", prior.out, "Output directory");
  prior.schedule.add(p);

  PredictOptions pred;
  auto* pr = app.add_subcommand("predict", "Posterior mean surfaces from stored samples");
  pr->add_option("--samples", pred.samples, "Sample files")->required();
  pr->add_option("--category", pred.category, "Category k of S(k|x)");
  pr->add_option("--grid", pred.grid, "Grid nodes per axis");
  pr->add_option("--axes", pred.axes, "Two covariates spanning the surface")->expected(2);
  pr->add_option("--fixed", pred.fixed, "Value of the remaining covariates");
  pr->add_option("--z", pred.z, "Linear covariate values (default 0)");
  pr->add_option("--covariate", pred.covariate, "Standardized function of this covariate");
  pr->add_option("--data", pred.data, "Dataset CSV for the standardized function");
  pr->add_option("--values", pred.values, "Number of grid values for the standardized function");
  pr->add_option("--out", pred.out, "Output directory");

  DiagOptions diag;
  auto* d = app.add_subcommand("diag", "Errors, inclusion and traces from stored samples");
  d->add_option("--samples", diag.samples, "Sample files")->required();
  d->add_option("--data", diag.data, "Dataset CSV");
  d->add_option("--truth", diag.truth, "True category probabilities (one row per observation)");
  d->add_option("--out", diag.out, "Output directory");

  BaselineOptions base;
  auto* b = app.add_subcommand("baseline", "Fit the proportional-odds model");
  b->add_option("--data", base.data, "Dataset CSV")->required();
  b->add_option("--out", base.out, "Output directory");
  base.schedule.add(b);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (f->parsed()) return cmd_fit(fit);
    if (s->parsed()) return cmd_simulate(sim);
    if (p->parsed()) return cmd_prior_check(prior);
    if (pr->parsed()) return cmd_predict(pred);
    if (d->parsed()) return cmd_diag(diag);
    if (b->parsed()) return cmd_baseline(base);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
