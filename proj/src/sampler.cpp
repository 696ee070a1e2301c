#include "monoord/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoord/marks.hpp"

namespace monoord {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::Birth: return "birth";
    case MoveKind::Death: return "death";
    case MoveKind::DeathBirth: return "death_birth";
    case MoveKind::Position: return "position";
    case MoveKind::JointLevel: return "joint_level";
    case MoveKind::SingleLevel: return "single_level";
    case MoveKind::OriginLevel: return "origin_level";
    case MoveKind::Beta: return "beta";
    case MoveKind::Gamma: return "gamma";
  }
  return "unknown";
}

void SamplerConfig::validate() const {
  if (thin < 1) throw std::invalid_argument("thin must be at least 1");
  const double dim = birth_weight + death_weight + death_birth_weight;
  const double fixed = position_weight + joint_level_weight + single_level_weight +
                       origin_level_weight;
  for (double w : {birth_weight, death_weight, death_birth_weight, position_weight,
                   joint_level_weight, single_level_weight, origin_level_weight}) {
    if (!(w >= 0)) throw std::invalid_argument("move weights must be non-negative");
  }
  if (!(dim > 0) || !(fixed > 0)) throw std::invalid_argument("move weights are all zero");
  if (!(beta_scale > 0) || !(gamma_scale > 0)) {
    throw std::invalid_argument("random-walk scales must be positive");
  }
  if (!(target_acceptance > 0 && target_acceptance < 1)) {
    throw std::invalid_argument("target acceptance must lie in (0,1)");
  }
}

Dataset empty_dataset(const ModelSpec& model) {
  Dataset d;
  d.covariates = model.covariates;
  d.levels = model.levels;
  d.linear = model.linear;
  d.clusters = model.clusters;
  return d;
}

// ---------------------------------------------------------------------------

SampleRecord SampleRecord::capture(std::uint64_t iteration, const Configuration& config,
                                   const ParametricState& theta, double log_likelihood) {
  SampleRecord r;
  r.iteration = iteration;
  r.log_likelihood = log_likelihood;
  r.theta = theta;
  const std::size_t S = config.subspace_count();
  r.counts.resize(S);
  for (std::size_t s = 0; s < S; ++s) r.counts[s] = config.count_in(int(s));
  r.intensities.assign(config.intensities().begin(), config.intensities().end());
  auto om = config.marks(kOriginId);
  r.origin_marks.assign(om.begin(), om.end());
  r.points.reserve(config.total_points());
  for (PointId id : config.points()) {
    auto l = config.location(id);
    auto m = config.marks(id);
    r.points.push_back({config.subspace_of(id), {l.begin(), l.end()}, {m.begin(), m.end()}});
  }
  return r;
}

Configuration SampleRecord::reconstruct(const ModelSpec& model) const {
  Configuration c(model.covariates, model.levels, model.link.range,
                  model.link.pins_first_level(),
                  enumerate_subspaces(model.covariates, model.max_covariates), origin_marks);
  if (!intensities.empty()) {
    if (intensities.size() != c.subspace_count()) {
      throw std::invalid_argument("record intensities do not match the model");
    }
    for (std::size_t s = 0; s < intensities.size(); ++s) c.set_intensity(int(s), intensities[s]);
  }
  for (const auto& pt : points) c.add_point(pt.subspace, pt.location, pt.marks);
  return c;
}

// ---------------------------------------------------------------------------

namespace {

Configuration initial_configuration(const ModelSpec& model) {
  const bool logit = model.link.kind == LinkKind::Logit;
  Configuration c(model.covariates, model.levels, model.link.range,
                  model.link.pins_first_level(),
                  enumerate_subspaces(model.covariates, model.max_covariates),
                  default_origin_marks(model.levels, model.link.range, logit));
  for (std::size_t s = 0; s < c.subspace_count(); ++s) c.set_intensity(int(s), model.a / model.b);
  return c;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

double loglik_delta(double proposed, double current) {
  if (proposed == kLogZero) return kLogZero;
  if (current == kLogZero) return kInf;
  return proposed - current;
}

bool metropolis(Rng& rng, double log_ratio) {
  if (std::isnan(log_ratio) || log_ratio == kLogZero) return false;
  if (log_ratio >= 0) return true;
  return std::log(rng.uniform()) < log_ratio;
}

// Commit or roll back a proposal already evaluated by the engine.
bool settle(ChainState& state, Rng& rng, double log_ratio) {
  const bool ok = metropolis(rng, log_ratio);
  if (ok) {
    state.engine().commit();
  } else {
    state.engine().discard();
  }
  return ok;
}

std::vector<double> uniform_location(const SubspaceId& sub, int p, Rng& rng) {
  std::vector<double> loc(p, 0.0);
  for (int j = 0; j < p; ++j) {
    if (sub.contains(j)) loc[j] = rng.uniform();
  }
  return loc;
}

int first_free_level(const Configuration& c) { return c.first_level_pinned() ? 1 : 0; }

double robbins_monro_step(std::uint64_t iteration) {
  return 1.0 / std::pow(double(iteration) + 1.0, 0.6);
}

}  // namespace

ChainState::ChainState(const Dataset& data, const ModelSpec& model, const SamplerConfig& cfg)
    : data_(&data),
      empty_(empty_dataset(model)),
      model_(model),
      cfg_(cfg),
      config_(initial_configuration(model)),
      engine_(cfg.flat_likelihood ? empty_ : data, model.link) {
  model_.validate();
  cfg_.validate();
  if (!cfg.flat_likelihood) {
    model_.check_dataset(data);
    data.validate();
  }
  theta_.beta.assign(model.linear, 0.0);
  theta_.gamma.assign(model.clusters, 0.0);
  theta_.tau2 = 1.0;
  beta_log_scale_.assign(model.linear, std::log(cfg.beta_scale));
  gamma_log_scale_ = std::log(cfg.gamma_scale);
  engine_.rebuild(config_, theta_);
}

void ChainState::refresh() { engine_.rebuild(config_, theta_); }

// ---------------------------------------------------------------------------

double birth_log_ratio(double loglik_delta, double rho, double volume, std::size_t count) {
  return loglik_delta + std::log(rho * volume) - std::log(double(count) + 1.0);
}

double death_log_ratio(double loglik_delta, double rho, double volume, std::size_t count) {
  return loglik_delta + std::log(double(count)) - std::log(rho * volume);
}

double death_birth_log_ratio(double loglik_delta, double rho_death, double volume_death,
                             std::size_t count_death, double rho_birth, double volume_birth,
                             std::size_t count_birth) {
  return loglik_delta + std::log(rho_birth * volume_birth) + std::log(double(count_death)) -
         std::log(rho_death * volume_death) - std::log(double(count_birth) + 1.0);
}

double acceptance_probability(double log_ratio) {
  if (std::isnan(log_ratio) || log_ratio == kLogZero) return 0.0;
  return log_ratio >= 0 ? 1.0 : std::exp(log_ratio);
}

double origin_beta_shape(std::size_t total_points, double d) {
  return 1.0 + std::min(double(total_points), d);
}

bool birth_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  const int s = int(rng.index(cfg.subspace_count()));
  const auto& sub = cfg.subspaces()[s];
  auto loc = uniform_location(sub, cfg.dims(), rng);
  auto marks = sample_mark_vector(cfg, loc, rng);
  const std::size_t before = cfg.count_in(s);
  const double current = state.log_likelihood();

  const PointId id = cfg.add_point(s, loc, marks);
  Edit edit;
  edit.added = {id};
  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const double lr = birth_log_ratio(loglik_delta(proposed, current), cfg.intensities()[s],
                                    sub.volume, before);
  const bool ok = settle(state, rng, lr);
  if (!ok) cfg.remove_point(id);
  state.counters().record(MoveKind::Birth, ok);
  return ok;
}

bool death_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  const int s = int(rng.index(cfg.subspace_count()));
  const std::size_t n = cfg.count_in(s);
  if (n == 0) {
    state.counters().record(MoveKind::Death, false);
    return false;
  }
  const PointId victim = cfg.points_in(s)[rng.index(n)];
  const double current = state.log_likelihood();
  Edit edit;
  edit.removed = {cfg.remove_point(victim)};
  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const double lr = death_log_ratio(loglik_delta(proposed, current), cfg.intensities()[s],
                                    cfg.subspaces()[s].volume, n);
  const bool ok = settle(state, rng, lr);
  if (!ok) cfg.restore_point(edit.removed.front());
  state.counters().record(MoveKind::Death, ok);
  return ok;
}

bool death_birth_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  const std::size_t S = cfg.subspace_count();
  if (S < 2) {
    state.counters().record(MoveKind::DeathBirth, false);
    return false;
  }
  const int sd = int(rng.index(S));
  int sb = int(rng.index(S - 1));
  if (sb >= sd) ++sb;
  const std::size_t nd = cfg.count_in(sd);
  if (nd == 0) {
    state.counters().record(MoveKind::DeathBirth, false);
    return false;
  }
  const PointId victim = cfg.points_in(sd)[rng.index(nd)];
  const double current = state.log_likelihood();
  Edit edit;
  edit.removed = {cfg.remove_point(victim)};

  const auto& sub = cfg.subspaces()[sb];
  auto loc = uniform_location(sub, cfg.dims(), rng);
  auto marks = sample_mark_vector(cfg, loc, rng);
  const std::size_t nb = cfg.count_in(sb);
  const PointId id = cfg.add_point(sb, loc, marks);
  edit.added = {id};

  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const double lr = death_birth_log_ratio(
      loglik_delta(proposed, current), cfg.intensities()[sd], cfg.subspaces()[sd].volume, nd,
      cfg.intensities()[sb], sub.volume, nb);
  const bool ok = settle(state, rng, lr);
  if (!ok) {
    cfg.remove_point(id);
    cfg.restore_point(edit.removed.front());
  }
  state.counters().record(MoveKind::DeathBirth, ok);
  return ok;
}

bool position_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  if (cfg.total_points() == 0) {
    state.counters().record(MoveKind::Position, false);
    return false;
  }
  const PointId id = cfg.points()[rng.index(cfg.total_points())];
  const double current = state.log_likelihood();
  Edit edit;
  edit.changed = {cfg.snapshot(id)};
  const auto bounds = cfg.position_bounds(id);
  const auto& sub = cfg.subspaces()[cfg.subspace_of(id)];
  std::vector<double> loc = edit.changed.front().location;
  for (int j = 0; j < cfg.dims(); ++j) {
    if (sub.contains(j)) loc[j] = rng.uniform(bounds[j].lower, bounds[j].upper);
  }
  cfg.set_location(id, loc);
  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const bool ok = settle(state, rng, loglik_delta(proposed, current));
  if (!ok) cfg.set_location(id, edit.changed.front().location);
  state.counters().record(MoveKind::Position, ok);
  return ok;
}

bool joint_level_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  if (cfg.total_points() == 0) {
    state.counters().record(MoveKind::JointLevel, false);
    return false;
  }
  const PointId id = cfg.points()[rng.index(cfg.total_points())];
  const double current = state.log_likelihood();
  Edit edit;
  edit.changed = {cfg.snapshot(id)};
  auto marks = sample_mark_vector(cfg, edit.changed.front().location, rng, id);
  cfg.set_marks(id, marks);
  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const bool ok = settle(state, rng, loglik_delta(proposed, current));
  if (!ok) cfg.set_marks(id, edit.changed.front().marks);
  state.counters().record(MoveKind::JointLevel, ok);
  return ok;
}

namespace {

bool level_move(ChainState& state, Rng& rng, PointId id, MoveKind kind, double beta_shape) {
  auto& cfg = state.config();
  const int lo = first_free_level(cfg);
  const int k = lo + int(rng.index(std::size_t(cfg.levels() - lo)));
  const Bounds b = cfg.level_bounds(id, k);
  const double value = b.degenerate()
                           ? b.lower
                           : b.lower + b.width() * (beta_shape == 1.0 ? rng.uniform()
                                                                      : rng.beta_first(beta_shape));
  const double current = state.log_likelihood();
  Edit edit;
  edit.changed = {cfg.snapshot(id)};
  cfg.set_mark(id, k, value);
  const double proposed = state.engine().propose(edit, cfg, state.theta());
  const bool ok = settle(state, rng, loglik_delta(proposed, current));
  if (!ok) cfg.set_marks(id, edit.changed.front().marks);
  state.counters().record(kind, ok);
  return ok;
}

}  // namespace

bool single_level_move(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  if (cfg.total_points() == 0) {
    state.counters().record(MoveKind::SingleLevel, false);
    return false;
  }
  const PointId id = cfg.points()[rng.index(cfg.total_points())];
  return level_move(state, rng, id, MoveKind::SingleLevel, 1.0);
}

bool origin_level_move(ChainState& state, Rng& rng) {
  const double shape = origin_beta_shape(state.config().total_points(), state.model().d);
  return level_move(state, rng, kOriginId, MoveKind::OriginLevel, shape);
}

void gibbs_intensity(ChainState& state, Rng& rng) {
  auto& cfg = state.config();
  const auto& m = state.model();
  for (std::size_t s = 0; s < cfg.subspace_count(); ++s) {
    const double shape = m.a + double(cfg.count_in(int(s)));
    const double rate = m.b + cfg.subspaces()[s].volume;
    cfg.set_intensity(int(s), rng.gamma(shape, rate));
  }
}

void update_parametric(ChainState& state, Rng& rng) {
  const auto& m = state.model();
  const auto& sc = state.sampler();
  const bool adapting = sc.adapt && state.in_burn_in();
  const double step = robbins_monro_step(state.iteration());
  auto& cfg = state.config();

  for (int j = 0; j < m.linear; ++j) {
    ParametricState proposal = state.theta();
    const double old = proposal.beta[j];
    proposal.beta[j] = old + std::exp(state.beta_log_scale()[j]) * rng.normal();
    Edit edit;
    edit.beta_changed = true;
    const double current = state.log_likelihood();
    const double proposed = state.engine().propose(edit, cfg, proposal);
    double lr = loglik_delta(proposed, current);
    if (m.beta_prior_sd > 0) {
      const double v = m.beta_prior_sd * m.beta_prior_sd;
      lr -= (proposal.beta[j] * proposal.beta[j] - old * old) / (2.0 * v);
    }
    const bool ok = settle(state, rng, lr);
    if (ok) state.theta() = std::move(proposal);
    state.counters().record(MoveKind::Beta, ok);
    if (adapting) {
      state.beta_log_scale()[j] += step * (acceptance_probability(lr) - sc.target_acceptance);
    }
  }

  if (m.clusters == 0) return;
  for (int c = 0; c < m.clusters; ++c) {
    ParametricState proposal = state.theta();
    const double old = proposal.gamma[c];
    proposal.gamma[c] = old + std::exp(state.gamma_log_scale()) * rng.normal();
    Edit edit;
    edit.clusters_changed = {c};
    const double current = state.log_likelihood();
    const double proposed = state.engine().propose(edit, cfg, proposal);
    const double lr = loglik_delta(proposed, current) -
                      (proposal.gamma[c] * proposal.gamma[c] - old * old) /
                          (2.0 * state.theta().tau2);
    const bool ok = settle(state, rng, lr);
    if (ok) state.theta() = std::move(proposal);
    state.counters().record(MoveKind::Gamma, ok);
    if (adapting) {
      state.gamma_log_scale() +=
          step * (acceptance_probability(lr) - sc.target_acceptance) / m.clusters;
    }
  }
  double ss = 0.0;
  for (double g : state.theta().gamma) ss += g * g;
  const double shape = m.tau2_shape + 0.5 * m.clusters;
  const double rate = m.tau2_rate + 0.5 * ss;
  state.theta().tau2 = 1.0 / rng.gamma(shape, rate);
}

// ---------------------------------------------------------------------------

ChainResult run_chain(const Dataset& data, const ModelSpec& model, const SamplerConfig& cfg,
                      const RecordSink& sink, const ProgressSink& progress) {
  ChainState state(data, model, cfg);
  Rng rng(cfg.seed);

  const double dim_total = cfg.birth_weight + cfg.death_weight + cfg.death_birth_weight;
  const double fixed_total = cfg.position_weight + cfg.joint_level_weight +
                             cfg.single_level_weight + cfg.origin_level_weight;
  const bool parametric = model.linear > 0 || model.clusters > 0;
  const std::uint64_t total = cfg.burn_in + cfg.iterations;

  ChainResult result;
  for (std::uint64_t it = 0; it < total; ++it) {
    state.set_iteration(it);

    double u = rng.uniform() * dim_total;
    if (u < cfg.birth_weight) {
      birth_move(state, rng);
    } else if (u < cfg.birth_weight + cfg.death_weight) {
      death_move(state, rng);
    } else {
      death_birth_move(state, rng);
    }

    u = rng.uniform() * fixed_total;
    if (u < cfg.position_weight) {
      position_move(state, rng);
    } else if ((u -= cfg.position_weight) < cfg.joint_level_weight) {
      joint_level_move(state, rng);
    } else if ((u -= cfg.joint_level_weight) < cfg.single_level_weight) {
      single_level_move(state, rng);
    } else {
      origin_level_move(state, rng);
    }

    gibbs_intensity(state, rng);
    if (parametric) update_parametric(state, rng);

    if (it >= cfg.burn_in && (it - cfg.burn_in + 1) % cfg.thin == 0) {
      const auto record = SampleRecord::capture(it + 1, state.config(), state.theta(),
                                                state.log_likelihood());
      if (sink) sink(record, state);
      ++result.records;
    }
    if (progress && cfg.progress_every > 0 && (it + 1) % cfg.progress_every == 0) {
      progress(ProgressInfo{it + 1, state.log_likelihood(), &state.counters()});
    }
  }
  result.counters = state.counters();
  result.final_log_likelihood = state.log_likelihood();
  return result;
}

std::vector<SampleRecord> run_chain(const Dataset& data, const ModelSpec& model,
                                    const SamplerConfig& cfg) {
  std::vector<SampleRecord> out;
  run_chain(data, model, cfg, [&](const SampleRecord& r, const ChainState&) { out.push_back(r); });
  return out;
}

}  // namespace monoord
