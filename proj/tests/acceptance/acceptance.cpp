// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run everything
//   acceptance --only X   run criterion X
//   acceptance --list     print the criterion names

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "monoord/baseline.hpp"
#include "monoord/diagnostics.hpp"
#include "monoord/likelihood.hpp"
#include "monoord/marks.hpp"
#include "monoord/random.hpp"
#include "monoord/sampler.hpp"
#include "monoord/simgen.hpp"
#include "oracles.hpp"

using namespace monoord;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes.
namespace tol {
constexpr double kPriorA = 0.1;
constexpr double kPriorB = 0.1;
constexpr std::uint64_t kPriorIterations = 200000;
constexpr std::uint64_t kPriorThin = 100;
constexpr std::uint64_t kPriorBurnIn = 1000;
constexpr double kPriorSe = 3.0;
constexpr double kPriorSeconds = 120.0;

constexpr int kOracleEdits = 1000;
constexpr std::size_t kOracleN = 200;
constexpr double kOracleAbs = 1e-10;

constexpr double kStructuralSlack = 1e-12;

constexpr int kGibbsPoints = 5;
constexpr int kGibbsDraws = 100000;
constexpr double kGibbsRel = 0.01;

constexpr int kTrendReplicates = 20;
constexpr int kTrendPairsRequired = 18;
constexpr double kTrendMaeTimes100 = 8.0;

constexpr int kSemiReplicates = 20;
constexpr int kSemiCoverRequired = 18;
constexpr std::size_t kSemiN = 5000;

constexpr int kSelectReplicates = 10;
constexpr std::size_t kSelectN = 5000;
constexpr double kSelectNoiseMax = 0.8;

constexpr int kSpikeReplicates = 10;
constexpr int kSpikeRequired = 7;
constexpr double kSpikeD = 5.0;

constexpr std::size_t kBaselineN = 2000;
constexpr double kBaselineAbs = 0.05;
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

// Runs f(0..n-1) over the available cores.
void parallel_for(int n, const std::function<void(int)>& f) {
  const int T = std::max(1, std::min<int>(n, int(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(T);
  auto worker = [&](int t) {
    try {
      for (int i = next++; i < n; i = next++) f(i);
    } catch (...) {
      errs[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < T; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
}

SamplerConfig reduced_schedule(std::uint64_t seed) {
  SamplerConfig c;
  c.iterations = 50000;
  c.burn_in = 10000;
  c.thin = 20;
  c.seed = seed;
  return c;
}

// --- criteria -----------------------------------------------------------------

Outcome prior_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  ModelSpec m;
  m.covariates = 2;
  m.levels = 5;
  m.a = tol::kPriorA;
  m.b = tol::kPriorB;
  SamplerConfig c;
  c.iterations = tol::kPriorIterations;
  c.burn_in = tol::kPriorBurnIn;
  c.thin = tol::kPriorThin;
  c.seed = 20240601;
  c.flat_likelihood = true;
  const auto subs = enumerate_subspaces(m.covariates);
  const std::size_t S = subs.size();
  std::vector<std::vector<double>> n(S);
  run_chain(empty_dataset(m), m, c, [&](const SampleRecord& r, const ChainState&) {
    for (std::size_t s = 0; s < S; ++s) n[s].push_back(double(r.counts[s]));
  });
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Prior moments of the count by forward simulation.
  bool ok = secs <= tol::kPriorSeconds;
  std::string detail = "records=" + std::to_string(n[0].size()) + " time=" + fmt(secs, 3) + "s";
  for (std::size_t s = 0; s < S; ++s) {
    const auto fwd = oracle::gamma_poisson_counts(m.a, m.b, subs[s].volume, 2000000, 17 + s);
    const double exact_mean = m.a / m.b * subs[s].volume;
    const double exact_var = exact_mean + m.a / (m.b * m.b) * subs[s].volume * subs[s].volume;
    ok = ok && std::abs(fwd.mean - exact_mean) < 0.01 && std::abs(fwd.variance - exact_var) < 0.3;

    const auto& v = n[s];
    double mean = 0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    double var = 0;
    for (double x : sq) var += x;
    var /= double(v.size() - 1);
    const double se_mean = oracle::batch_means_se(v);
    const double se_var = oracle::batch_means_se(sq);
    const bool sub_ok = std::abs(mean - fwd.mean) <= tol::kPriorSe * se_mean &&
                        std::abs(var - fwd.variance) <= tol::kPriorSe * se_var;
    ok = ok && sub_ok;
    detail += " | " + subspace_label(subs[s]) + ": mean=" + fmt(mean) + " (se " + fmt(se_mean, 3) +
              ", oracle " + fmt(fwd.mean) + ") var=" + fmt(var) + " (se " + fmt(se_var, 3) +
              ", oracle " + fmt(fwd.variance) + ")";
  }
  return {ok, detail};
}

Outcome likelihood_oracle() {
  bool ok = true;
  std::string detail;
  for (int variant = 0; variant < 2; ++variant) {
    ScenarioSpec spec;
    spec.family = variant == 0 ? Family::Linear : Family::Discontinuous;
    spec.mode = variant == 0 ? ScenarioMode::Nonparametric : ScenarioMode::Semiparametric;
    spec.n = tol::kOracleN;
    spec.seed = 31 + variant;
    const auto sc = make_scenario(spec);
    const auto model = scenario_model(spec);
    SamplerConfig cfg;
    cfg.seed = 7 + variant;
    ChainState st(sc.data, model, cfg);
    Rng rng(cfg.seed);
    double worst = 0.0;
    int accepted = 0, rejected = 0, mismatches = 0;
    using Move = bool (*)(ChainState&, Rng&);
    const Move moves[] = {birth_move,    death_move,         death_birth_move, position_move,
                          joint_level_move, single_level_move, origin_level_move};
    for (int e = 0; e < tol::kOracleEdits; ++e) {
      bool acc;
      // Bias towards births early so the configuration grows.
      const int pick = e < 100 ? 0 : int(rng.index(variant == 1 ? 8 : 7));
      if (pick == 7) {
        const double before = st.log_likelihood();
        const auto beta = st.theta().beta;
        update_parametric(st, rng);
        acc = st.theta().beta != beta || st.log_likelihood() != before;
      } else {
        acc = moves[pick](st, rng);
      }
      (acc ? accepted : rejected)++;
      const auto rec = SampleRecord::capture(0, st.config(), st.theta(), st.log_likelihood());
      const double brute = oracle::log_likelihood(sc.data, rec, model.link);
      const double cached = st.log_likelihood();
      if (std::isinf(brute) || std::isinf(cached)) {
        if (brute != cached) ++mismatches;
      } else {
        worst = std::max(worst, std::abs(brute - cached));
        if (std::abs(brute - cached) > tol::kOracleAbs) ++mismatches;
      }
    }
    ok = ok && mismatches == 0 && accepted > 0 && rejected > 0;
    detail += std::string(variant ? " | logit+linear" : "identity") + ": edits=" +
              std::to_string(tol::kOracleEdits) + " accepted=" + std::to_string(accepted) +
              " rejected=" + std::to_string(rejected) + " max|diff|=" + fmt(worst, 3) +
              " mismatches=" + std::to_string(mismatches);
  }
  return {ok, detail};
}

Outcome structural_invariants() {
  struct Case {
    Family family;
    ScenarioMode mode;
    int clusters;
  };
  const Case cases[] = {{Family::Linear, ScenarioMode::Nonparametric, 0},
                        {Family::Discontinuous, ScenarioMode::Nonparametric, 0},
                        {Family::Continuous, ScenarioMode::Semiparametric, 5}};
  std::size_t records = 0, bad_records = 0, lib_rejects = 0;
  bool counters_ok = true;
  for (int i = 0; i < 3; ++i) {
    ScenarioSpec spec;
    spec.family = cases[i].family;
    spec.mode = cases[i].mode;
    spec.n = 500;
    spec.seed = 300 + i;
    spec.noise_covariates = i == 1 ? 1 : 0;
    auto sc = make_scenario(spec);
    auto model = scenario_model(spec);
    if (cases[i].clusters > 0) {
      sc.data.clusters = cases[i].clusters;
      for (std::size_t n = 0; n < sc.data.size(); ++n) {
        sc.data.cluster.push_back(1 + int(n % cases[i].clusters));
      }
      model.clusters = cases[i].clusters;
    }
    SamplerConfig cfg;
    cfg.iterations = 20000;
    cfg.burn_in = 2000;
    cfg.thin = 10;
    cfg.seed = 900 + i;
    auto res = run_chain(sc.data, model, cfg, [&](const SampleRecord& r, const ChainState&) {
      ++records;
      if (oracle::violations(r, model, tol::kStructuralSlack) > 0) ++bad_records;
      if (!r.reconstruct(model).validate().empty()) ++lib_rejects;
    });
    for (int k = 0; k < kMoveKinds; ++k) {
      counters_ok = counters_ok && res.counters.accepts[k] <= res.counters.attempts[k];
    }
  }
  const bool ok = records > 0 && bad_records == 0 && lib_rejects == 0 && counters_ok;
  return {ok, "records=" + std::to_string(records) +
                  " violating=" + std::to_string(bad_records) +
                  " validate_failures=" + std::to_string(lib_rejects)};
}

Outcome gibbs_conjugacy() {
  ModelSpec m;
  m.covariates = 2;
  m.levels = 5;
  m.a = 0.1;
  m.b = 0.1;
  SamplerConfig cfg;
  cfg.flat_likelihood = true;
  cfg.seed = 4242;
  ChainState st(empty_dataset(m), m, cfg);
  Rng rng(cfg.seed);
  const int s = 2;  // the two-covariate subspace, volume 1
  for (int i = 0; i < tol::kGibbsPoints; ++i) {
    std::vector<double> loc{rng.uniform(), rng.uniform()};
    st.config().add_point(s, loc, sample_mark_vector(st.config(), loc, rng));
  }
  const double vol = st.config().subspaces()[s].volume;
  const double shape = m.a + tol::kGibbsPoints, rate = m.b + vol;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < tol::kGibbsDraws; ++i) {
    gibbs_intensity(st, rng);
    const double r = st.config().intensities()[s];
    sum += r;
    sum2 += r * r;
  }
  const double mean = sum / tol::kGibbsDraws;
  const double var = (sum2 - tol::kGibbsDraws * mean * mean) / (tol::kGibbsDraws - 1);
  const double em = shape / rate, ev = shape / (rate * rate);
  const double rm = std::abs(mean / em - 1), rv = std::abs(var / ev - 1);
  return {rm <= tol::kGibbsRel && rv <= tol::kGibbsRel,
          "Gamma(" + fmt(shape) + "," + fmt(rate) + ") mean=" + fmt(mean, 6) + " (exact " +
              fmt(em, 6) + ", rel " + fmt(rm, 3) + ") var=" + fmt(var, 6) + " (exact " + fmt(ev, 6) +
              ", rel " + fmt(rv, 3) + ")"};
}

// Overall MAE over the training data of a scenario, streamed from the chain.
double chain_mae(const Dataset& data, const std::vector<double>& truth, const ModelSpec& model,
                 const SamplerConfig& cfg) {
  MaeAccumulator acc(data, truth, model.link);
  run_chain(data, model, cfg, [&](const SampleRecord&, const ChainState& st) {
    acc.add(st.engine());
  });
  return acc.mae_overall();
}

Outcome mae_trend() {
  const int R = tol::kTrendReplicates;
  std::vector<double> small(R), large(R);
  parallel_for(2 * R, [&](int job) {
    const int r = job / 2;
    ScenarioSpec spec;
    spec.family = Family::Linear;
    spec.n = 5000;
    spec.seed = 5000 + r;
    const auto sc = make_scenario(spec);
    const auto model = scenario_model(spec);
    const Dataset d = job % 2 == 0 ? sc.data.head(1000) : sc.data;
    const auto truth = truth_matrix(sc.oracle, d);
    const double mae = chain_mae(d, truth, model, reduced_schedule(stream_seed(77, job)));
    (job % 2 == 0 ? small : large)[r] = mae;
  });
  int better = 0;
  double mean_small = 0, mean_large = 0;
  for (int r = 0; r < R; ++r) {
    better += large[r] < small[r];
    mean_small += small[r] / R;
    mean_large += large[r] / R;
  }
  const bool ok = better >= tol::kTrendPairsRequired && mean_small * 100 <= tol::kTrendMaeTimes100;
  return {ok, "pairs with MAE(5000) < MAE(1000): " + std::to_string(better) + "/" +
                  std::to_string(R) + "; mean MAE*100 N=1000: " + fmt(mean_small * 100, 3) +
                  ", N=5000: " + fmt(mean_large * 100, 3)};
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * double(v.size() - 1);
  const std::size_t i = std::size_t(pos);
  const double f = pos - double(i);
  return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
}

Outcome semiparametric_recovery() {
  const int R = tol::kSemiReplicates;
  std::vector<std::array<int, 3>> covered(R);
  std::vector<std::array<double, 3>> means(R);
  parallel_for(R, [&](int r) {
    ScenarioSpec spec;
    spec.family = Family::Continuous;
    spec.mode = ScenarioMode::Semiparametric;
    spec.n = tol::kSemiN;
    spec.seed = 8000 + r;
    const auto sc = make_scenario(spec);
    const auto model = scenario_model(spec);
    SamplerConfig cfg;
    cfg.iterations = 10000;
    cfg.burn_in = 5000;
    cfg.thin = 10;
    cfg.seed = stream_seed(99, r);
    std::array<std::vector<double>, 3> draws;
    run_chain(sc.data, model, cfg, [&](const SampleRecord& rec, const ChainState&) {
      for (int j = 0; j < 3; ++j) draws[j].push_back(rec.theta.beta[j]);
    });
    for (int j = 0; j < 3; ++j) {
      const double lo = quantile(draws[j], 0.025), hi = quantile(draws[j], 0.975);
      covered[r][j] = lo <= sc.oracle.beta[j] && sc.oracle.beta[j] <= hi;
      double s = 0;
      for (double v : draws[j]) s += v;
      means[r][j] = s / double(draws[j].size());
    }
  });
  bool ok = true;
  std::string detail = "coverage of beta=(0.3,-0.5,0.1):";
  for (int j = 0; j < 3; ++j) {
    int c = 0;
    double m = 0;
    for (int r = 0; r < R; ++r) {
      c += covered[r][j];
      m += means[r][j] / R;
    }
    ok = ok && c >= tol::kSemiCoverRequired;
    detail += " b" + std::to_string(j + 1) + " " + std::to_string(c) + "/" + std::to_string(R) +
              " (mean " + fmt(m) + ")";
  }
  return {ok, detail};
}

Outcome covariate_selection() {
  const int R = tol::kSelectReplicates;
  std::vector<std::array<double, 3>> inc(R), cnt(R);
  parallel_for(R, [&](int r) {
    ScenarioSpec spec;
    spec.family = Family::Linear;
    spec.n = tol::kSelectN;
    spec.seed = 6000 + r;
    spec.noise_covariates = 1;
    const auto sc = make_scenario(spec);
    const auto model = scenario_model(spec);
    std::vector<SampleRecord> light;
    run_chain(sc.data, model, reduced_schedule(stream_seed(55, r)),
              [&](const SampleRecord& rec, const ChainState&) {
                SampleRecord l;
                l.counts = rec.counts;
                light.push_back(std::move(l));
              });
    for (int j = 0; j < 3; ++j) {
      inc[r][j] = inclusion_probability(light, 3, j);
      cnt[r][j] = mean_point_count(light, 3, j);
    }
  });
  // Active covariates in every record of every replicate, the ranking in
  // every replicate, and the noise inclusion averaged over replicates.
  bool ok = true;
  double noise_mean = 0, noise_max = 0;
  std::string detail;
  for (int r = 0; r < R; ++r) {
    const bool rep_ok = inc[r][0] == 1.0 && inc[r][1] == 1.0 &&
                        std::min(cnt[r][0], cnt[r][1]) > cnt[r][2];
    ok = ok && rep_ok;
    noise_mean += inc[r][2] / R;
    noise_max = std::max(noise_max, inc[r][2]);
    detail += " | " + std::string(rep_ok ? "" : "*") + "incl=(" + fmt(inc[r][0], 3) + "," +
              fmt(inc[r][1], 3) + "," + fmt(inc[r][2], 3) + ") count=(" + fmt(cnt[r][0], 3) +
              "," + fmt(cnt[r][1], 3) + "," + fmt(cnt[r][2], 3) + ")";
  }
  ok = ok && noise_mean <= tol::kSelectNoiseMax;
  return {ok, "noise inclusion mean=" + fmt(noise_mean, 3) + " max=" + fmt(noise_max, 3) + detail};
}

Outcome spiking_prior() {
  const int R = tol::kSpikeReplicates;
  std::vector<double> err0(R), err5(R);
  parallel_for(2 * R, [&](int job) {
    const int r = job / 2;
    ScenarioSpec spec;
    spec.family = Family::Discontinuous;
    spec.n = 1000;
    spec.seed = 7000 + r;
    const auto sc = make_scenario(spec);
    auto model = scenario_model(spec);
    model.d = job % 2 == 0 ? 0.0 : tol::kSpikeD;
    // The first node of the unit grid.
    const std::vector<double> x0(model.covariates, 0.0);
    std::vector<double> truth(model.levels + 1);
    for (int k = 1; k <= model.levels; ++k) truth[k] = sc.oracle.survival(k, x0);
    double total = 0;
    std::uint64_t L = 0;
    std::vector<double> lv(model.levels);
    run_chain(sc.data, model, reduced_schedule(stream_seed(66, r)),
              [&](const SampleRecord&, const ChainState& st) {
                st.config().evaluate_levels(x0, lv);
                double e = 0;
                for (int k = 2; k <= model.levels; ++k) {
                  e += std::abs(survival_from_levels(k, lv, 0.0, model.link) - truth[k]);
                }
                total += e / (model.levels - 1);
                ++L;
              });
    (job % 2 == 0 ? err0 : err5)[r] = total / double(L);
  });
  int wins = 0;
  std::string detail;
  for (int r = 0; r < R; ++r) {
    wins += err5[r] < err0[r];
    detail += " " + fmt(err0[r], 3) + "->" + fmt(err5[r], 3);
  }
  return {wins >= tol::kSpikeRequired,
          "replicates improved with d=5: " + std::to_string(wins) + "/" + std::to_string(R) +
              " (error d=0->d=5:" + detail + ")"};
}

Outcome baseline_sanity() {
  Rng rng(2718);
  Dataset d;
  d.covariates = 2;
  d.levels = 2;
  const double a = -0.5, b1 = 1.5, b2 = -1.0;
  std::vector<std::vector<double>> rows;
  std::vector<int> yb;
  for (std::size_t n = 0; n < tol::kBaselineN; ++n) {
    const double x1 = rng.uniform(), x2 = rng.uniform();
    const int y = rng.uniform() < expit(a + b1 * x1 + b2 * x2) ? 1 : 0;
    d.x.push_back(x1);
    d.x.push_back(x2);
    d.y.push_back(1 + y);
    rows.push_back({x1, x2});
    yb.push_back(y);
  }
  const auto mle = oracle::logistic_mle(rows, yb);
  BaselineConfig cfg;
  cfg.seed = 31415;
  const auto fit = fit_po_baseline(d, cfg);
  const std::vector<double> mode{fit.mode.alpha[0], fit.mode.beta[0], fit.mode.beta[1]};
  double worst = 0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(mode[i] - mle[i]));
  return {worst <= tol::kBaselineAbs && !fit.diverged,
          "mode=(" + fmt(mode[0]) + "," + fmt(mode[1]) + "," + fmt(mode[2]) + ") mle=(" +
              fmt(mle[0]) + "," + fmt(mle[1]) + "," + fmt(mle[2]) + ") max|diff|=" + fmt(worst, 3)};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MONOORD_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / ("monoord_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  if (run_cli("simulate --family continuous --mode semiparametric --n 400 --seed 12 --out " +
              (dir / "sim").string()) != 0) {
    return {false, "simulate failed"};
  }
  const std::string fit = "fit --config " + (dir / "sim" / "config.ini").string() +
                          " --seed 2024 --iterations 4000 --burn-in 1000 --thin 10 --chains 2 --out ";
  if (run_cli(fit + (dir / "a").string()) != 0 || run_cli(fit + (dir / "b").string()) != 0) {
    return {false, "fit failed"};
  }
  bool same = true;
  std::size_t bytes = 0;
  for (auto f : {"chain1_samples.jsonl", "chain2_samples.jsonl"}) {
    const auto a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
    same = same && !a.empty() && a == b;
    bytes += a.size();
  }
  fs::remove_all(dir);
  return {same, std::string(same ? "identical" : "different") + " sample streams (" +
                    std::to_string(bytes) + " bytes, 2 chains)"};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"prior_recovery", prior_recovery},
    {"likelihood_oracle", likelihood_oracle},
    {"structural_invariants", structural_invariants},
    {"gibbs_conjugacy", gibbs_conjugacy},
    {"mae_trend", mae_trend},
    {"semiparametric_recovery", semiparametric_recovery},
    {"covariate_selection", covariate_selection},
    {"spiking_prior", spiking_prior},
    {"baseline_sanity", baseline_sanity},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> only;
  bool list = false;
  app.add_option("--only", only, "Run only these criteria");
  app.add_flag("--list", list, "List criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : kCriteria) std::cout << c.name << '\n';
    return 0;
  }
  for (const auto& name : only) {
    const bool known = std::any_of(std::begin(kCriteria), std::end(kCriteria),
                                   [&](const Criterion& c) { return name == c.name; });
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " [" << fmt(secs, 3) << "s] "
              << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
