#pragma once

#include <vector>

#include "monoord/marks.hpp"
#include "monoord/model.hpp"
#include "monoord/mpp.hpp"
#include "monoord/random.hpp"

namespace testutil {

inline monoord::Configuration empty_config(int p, int K, bool logit = false) {
  using namespace monoord;
  const Bounds range = logit ? Bounds{-5.0, 5.0} : Bounds{0.0, 1.0};
  return Configuration(p, K, range, !logit, enumerate_subspaces(p),
                       default_origin_marks(K, range, logit));
}

// Grows a valid configuration with `n` uniformly placed points.
inline monoord::Configuration random_config(int p, int K, int n, monoord::Rng& rng,
                                            bool logit = false) {
  using namespace monoord;
  auto c = empty_config(p, K, logit);
  for (int i = 0; i < n; ++i) {
    const int s = int(rng.index(c.subspace_count()));
    std::vector<double> loc(p, 0.0);
    for (int j = 0; j < p; ++j) {
      if (c.subspaces()[s].contains(j)) loc[j] = rng.uniform();
    }
    const auto marks = sample_mark_vector(c, loc, rng);
    c.add_point(s, loc, marks);
  }
  return c;
}

inline monoord::Dataset random_dataset(int p, int K, std::size_t N, monoord::Rng& rng,
                                       int q = 0, int C = 0) {
  monoord::Dataset d;
  d.covariates = p;
  d.levels = K;
  d.linear = q;
  d.clusters = C;
  for (std::size_t n = 0; n < N; ++n) {
    for (int j = 0; j < p; ++j) d.x.push_back(rng.uniform());
    for (int j = 0; j < q; ++j) d.z.push_back(rng.normal());
    if (C > 0) d.cluster.push_back(1 + int(n % C));
    d.y.push_back(1 + int(rng.index(K)));
  }
  return d;
}

}  // namespace testutil
