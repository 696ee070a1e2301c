#include "monoord/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monoord/kernels.hpp"
#include "monoord/likelihood.hpp"
#include "monoord/random.hpp"

namespace monoord {

bool BaselineState::ordered() const {
  for (std::size_t k = 1; k < alpha.size(); ++k) {
    if (!(alpha[k - 1] > alpha[k])) return false;
  }
  return true;
}

namespace {

double predictor(const Dataset& data, std::size_t n, const BaselineState& s) {
  double eta = 0.0;
  const auto x = data.x_row(n);
  const auto z = data.z_row(n);
  for (int j = 0; j < data.covariates; ++j) eta += s.beta[j] * x[j];
  for (int j = 0; j < data.linear; ++j) eta += s.beta[data.covariates + j] * z[j];
  return eta;
}

}  // namespace

double po_log_likelihood(const Dataset& data, const BaselineState& state) {
  const int K = data.levels;
  if (int(state.alpha.size()) != K - 1 ||
      int(state.beta.size()) != data.covariates + data.linear) {
    throw std::invalid_argument("baseline state does not match the dataset");
  }
  if (!state.ordered()) return kLogZero;
  // Level 0 is never read under the logit link.
  std::vector<double> levels(K, 0.0);
  std::copy(state.alpha.begin(), state.alpha.end(), levels.begin() + 1);
  const LinkSpec link = LinkSpec::logit(-1e300, 1e300);
  std::vector<double> terms(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    terms[n] = observation_log_prob(data.y[n], levels, predictor(data, n, state), link);
  }
  return kernels::compensated_sum(terms);
}

BaselineResult fit_po_baseline(const Dataset& data, const BaselineConfig& cfg) {
  data.validate();
  if (cfg.thin < 1) throw std::invalid_argument("baseline: thin must be at least 1");
  const int K = data.levels;
  if (K < 2) throw std::invalid_argument("baseline: need at least two categories");
  const std::size_t N = data.size();
  const int dim_a = K - 1;
  const int dim_b = data.covariates + data.linear;

  BaselineResult out;
  std::vector<std::size_t> counts(K, 0);
  for (int y : data.y) ++counts[y - 1];
  out.degenerate = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) < 2;

  // Start at the marginal cumulative logits, kept strictly ordered.
  BaselineState s;
  s.alpha.resize(dim_a);
  s.beta.assign(dim_b, 0.0);
  std::size_t above = N;
  for (int k = 1; k < K; ++k) {
    above -= counts[k - 1];
    const double frac = std::clamp((double(above) + 0.5) / (double(N) + 1.0), 1e-6, 1 - 1e-6);
    s.alpha[k - 1] = std::log(frac / (1 - frac));
  }
  for (int k = 1; k < dim_a; ++k) {
    if (!(s.alpha[k] < s.alpha[k - 1])) s.alpha[k] = s.alpha[k - 1] - 1e-3;
  }

  Rng rng(cfg.seed);
  const int dim = dim_a + dim_b;
  std::vector<double> log_scale(dim, std::log(cfg.scale));
  std::vector<std::uint64_t> accepts(dim, 0), attempts(dim, 0);
  double ll = po_log_likelihood(data, s);
  out.mode = s;
  out.mode_log_likelihood = ll;

  const std::uint64_t total = cfg.burn_in + cfg.iterations;
  for (std::uint64_t it = 0; it < total && !out.diverged; ++it) {
    const double step = 1.0 / std::pow(double(it) + 1.0, 0.6);
    for (int c = 0; c < dim; ++c) {
      double& slot = c < dim_a ? s.alpha[c] : s.beta[c - dim_a];
      const double old = slot;
      slot = old + std::exp(log_scale[c]) * rng.normal();
      const double prop = po_log_likelihood(data, s);
      double lr = prop == kLogZero ? kLogZero : prop - ll;
      if (ll == kLogZero && prop != kLogZero) lr = 0.0;
      const bool ok = lr >= 0 || (lr != kLogZero && std::log(rng.uniform()) < lr);
      ++attempts[c];
      if (ok) {
        ++accepts[c];
        ll = prop;
        if (ll > out.mode_log_likelihood) {
          out.mode = s;
          out.mode_log_likelihood = ll;
        }
      } else {
        slot = old;
      }
      if (cfg.adapt && it < cfg.burn_in) {
        const double acc = lr >= 0 ? 1.0 : (lr == kLogZero ? 0.0 : std::exp(lr));
        log_scale[c] += step * (acc - cfg.target_acceptance);
      }
      if (std::abs(slot) > cfg.divergence_bound) out.diverged = true;
    }
    if (it >= cfg.burn_in && (it - cfg.burn_in + 1) % cfg.thin == 0) {
      out.samples.push_back(s);
      out.log_likelihood.push_back(ll);
    }
  }
  out.acceptance.resize(dim);
  for (int c = 0; c < dim; ++c) {
    out.acceptance[c] = attempts[c] ? double(accepts[c]) / double(attempts[c]) : 0.0;
  }
  return out;
}

}  // namespace monoord
