#include <stdexcept>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "monoord/likelihood.hpp"
#include "monoord/simgen.hpp"

using namespace monoord;

namespace {

TruthOracle oracle_of(Family f, ScenarioMode m) {
  ScenarioSpec s;
  s.family = f;
  s.mode = m;
  s.n = 0;
  return make_scenario(s).oracle;
}

const Family kFamilies[] = {Family::Linear, Family::Continuous, Family::Discontinuous};

// Marginal category probabilities by midpoint quadrature over the unit square
// and, in semi-parametric mode, over the normal linear predictor.
std::vector<double> marginal(const TruthOracle& o, int side = 200) {
  std::vector<double> acc(5, 0.0);
  double sd = 0.0;
  for (double b : o.beta) sd += b * b;
  sd = std::sqrt(sd);
  const int nz = sd > 0 ? 161 : 1;
  std::vector<double> zs(nz, 0.0), wz(nz, 1.0);
  if (nz > 1) {
    const double h = 16.0 / (nz - 1);
    double tot = 0;
    for (int i = 0; i < nz; ++i) {
      const double u = -8.0 + i * h;
      zs[i] = u * sd;
      wz[i] = std::exp(-0.5 * u * u);
      tot += wz[i];
    }
    for (auto& w : wz) w /= tot;
  }
  std::vector<double> x(2);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      x[0] = (a + 0.5) / side;
      x[1] = (b + 0.5) / side;
      const auto lv = o.levels_at(x);
      for (int i = 0; i < nz; ++i) {
        std::vector<double> p(5);
        if (o.mode == ScenarioMode::Nonparametric) {
          category_probs_from_levels(lv, 0.0, LinkSpec::identity(), p);
        } else {
          category_probs_from_levels(lv, zs[i], LinkSpec::logit(-2, 2), p);
        }
        for (int k = 0; k < 5; ++k) acc[k] += wz[i] * p[k];
      }
    }
  }
  for (auto& v : acc) v /= double(side) * side;
  return acc;
}

}  // namespace

TEST_CASE("every family is monotone and ordered on a 101 x 101 grid") {
  for (auto f : kFamilies) {
    for (auto m : {ScenarioMode::Nonparametric, ScenarioMode::Semiparametric}) {
      const auto o = oracle_of(f, m);
      std::vector<double> x(2), left(2), down(2);
      for (int a = 0; a <= 100; ++a) {
        for (int b = 0; b <= 100; ++b) {
          x = {a / 100.0, b / 100.0};
          const auto lv = o.levels_at(x);
          CHECK(o.shape(1, x) == 1.0);
          CHECK(o.shape(6, x) == 0.0);
          for (int k = 2; k <= 5; ++k) {
            const double s = o.shape(k, x);
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
            CHECK(s <= o.shape(k - 1, x));
            if (a > 0) CHECK(o.shape(k, std::vector<double>{(a - 1) / 100.0, b / 100.0}) <= s);
            if (b > 0) CHECK(o.shape(k, std::vector<double>{a / 100.0, (b - 1) / 100.0}) <= s);
          }
          for (int k = 1; k < 5; ++k) CHECK(lv[k] <= lv[k - 1]);
        }
      }
    }
  }
}

TEST_CASE("category probabilities sum to one and match survival differences") {
  const std::vector<double> z{0.7, -1.2, 0.4};
  for (auto f : kFamilies) {
    for (auto m : {ScenarioMode::Nonparametric, ScenarioMode::Semiparametric}) {
      const auto o = oracle_of(f, m);
      for (int a = 0; a <= 10; ++a) {
        const std::vector<double> x{a / 10.0, 1.0 - a / 13.0};
        const auto p = truth_probs(o, x, z);
        CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-15);
        for (int k = 1; k <= 5; ++k) {
          CHECK(p[k - 1] ==
                doctest::Approx(o.survival(k, x, z) - o.survival(k + 1, x, z)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("linear family at the origin") {
  const auto o = oracle_of(Family::Linear, ScenarioMode::Nonparametric);
  const std::vector<double> x{0.0, 0.0};
  const auto p = truth_probs(o, x);
  const double expected[] = {0.35, 0.30, 0.20, 0.10, 0.05};
  for (int k = 0; k < 5; ++k) CHECK(p[k] == doctest::Approx(expected[k]));
  // Forward difference of the survival agrees with the probabilities.
  for (int k = 1; k <= 5; ++k) {
    CHECK(p[k - 1] == doctest::Approx(o.shape(k, x) - o.shape(k + 1, x)));
  }
}

TEST_CASE("semi-parametric with z = 0 is the rescaled shape through expit") {
  for (auto f : kFamilies) {
    const auto semi = oracle_of(f, ScenarioMode::Semiparametric);
    const std::vector<double> x{0.35, 0.8}, z{0, 0, 0};
    const auto p = truth_probs(semi, x, z);
    for (int k = 2; k <= 5; ++k) {
      CHECK(semi.survival(k, x, z) == doctest::Approx(expit(-2.0 + 4.0 * semi.shape(k, x))));
    }
    CHECK(p[0] == doctest::Approx(1.0 - expit(-2.0 + 4.0 * semi.shape(2, x))));
  }
}

TEST_CASE("linear family gives about equal category frequencies") {
  const auto m = marginal(oracle_of(Family::Linear, ScenarioMode::Nonparametric));
  for (double v : m) CHECK(v == doctest::Approx(0.2).epsilon(1e-3));
  ScenarioSpec s;
  s.n = 5000;
  s.seed = 11;
  const auto sc = make_scenario(s);
  std::vector<int> cnt(5, 0);
  for (int y : sc.data.y) ++cnt[y - 1];
  for (int c : cnt) CHECK(std::abs(c / 5000.0 - 0.2) < 0.03);
}

TEST_CASE("semi-parametric continuous proportions") {
  const auto m = marginal(oracle_of(Family::Continuous, ScenarioMode::Semiparametric));
  CHECK(std::abs(m[0] - 0.39) < 0.02);
  CHECK(std::abs(m[4] - 0.27) < 0.02);
}

TEST_CASE("empirical frequencies pass a chi-square test at N = 5000") {
  // 0.99 quantile of chi-square with 4 degrees of freedom.
  const double crit = 13.2767;
  for (auto f : kFamilies) {
    for (auto mode : {ScenarioMode::Nonparametric, ScenarioMode::Semiparametric}) {
      ScenarioSpec s;
      s.family = f;
      s.mode = mode;
      s.n = 5000;
      s.seed = 2024;
      const auto sc = make_scenario(s);
      const auto m = marginal(sc.oracle, 120);
      std::vector<double> cnt(5, 0.0);
      for (int y : sc.data.y) cnt[y - 1] += 1;
      double chi = 0;
      for (int k = 0; k < 5; ++k) {
        const double e = 5000.0 * m[k];
        chi += (cnt[k] - e) * (cnt[k] - e) / e;
      }
      CHECK_MESSAGE(chi < crit, to_string(f), " ", to_string(mode), " chi2=", chi);
    }
  }
}

TEST_CASE("generation is deterministic and nested") {
  ScenarioSpec s;
  s.family = Family::Discontinuous;
  s.mode = ScenarioMode::Semiparametric;
  s.seed = 99;
  s.noise_covariates = 2;
  s.n = 5000;
  const auto big = make_scenario(s);
  s.n = 1000;
  const auto small = make_scenario(s);
  const auto again = make_scenario(s);
  CHECK(small.data.x == again.data.x);
  CHECK(small.data.y == again.data.y);
  CHECK(small.data.z == again.data.z);
  CHECK(small.data.covariates == 4);
  CHECK(small.data.linear == 3);
  CHECK(std::equal(small.data.x.begin(), small.data.x.end(), big.data.x.begin()));
  CHECK(std::equal(small.data.z.begin(), small.data.z.end(), big.data.z.begin()));
  CHECK(std::equal(small.data.y.begin(), small.data.y.end(), big.data.y.begin()));
  CHECK_NOTHROW(small.data.validate());

  s.seed = 100;
  CHECK(make_scenario(s).data.y != small.data.y);
}

TEST_CASE("scenario model and names") {
  ScenarioSpec s;
  s.mode = ScenarioMode::Semiparametric;
  s.noise_covariates = 1;
  const auto m = scenario_model(s);
  CHECK(m.covariates == 3);
  CHECK(m.linear == 3);
  CHECK(m.link.kind == LinkKind::Logit);
  CHECK(family_from_string("continuous") == Family::Continuous);
  CHECK(scenario_mode_from_string(to_string(ScenarioMode::Semiparametric)) ==
        ScenarioMode::Semiparametric);
  CHECK_THROWS_AS(family_from_string("cubic"), std::invalid_argument);
}
