#include <stdexcept>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "monoord/io.hpp"
#include "monoord/sampler.hpp"

using namespace monoord;

namespace {

CsvTable table_of(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

Schema schema_x(std::vector<MonotoneColumn> mono) {
  Schema s;
  s.monotone = std::move(mono);
  return s;
}

}  // namespace

TEST_CASE("ECDF transform") {
  auto t = ecdf_transform(std::vector<double>{3, 1, 2});
  CHECK(t == std::vector<double>{1.0, 1.0 / 3, 2.0 / 3});
  t = ecdf_transform(std::vector<double>{5, 5, 1});
  CHECK(t == std::vector<double>{1.0, 1.0, 1.0 / 3});
  EcdfTransform constant(std::vector<double>{4, 4, 4, 4});
  CHECK(constant.degenerate());
  for (double v : constant.apply(std::vector<double>{4, 4})) CHECK(v == 1.0);
  CHECK_THROWS(ecdf_transform(std::vector<double>{}));

  // Stored transform reproduces the training values and stays monotone on new data.
  Rng rng(3);
  std::vector<double> raw(200);
  for (auto& v : raw) v = std::floor(rng.normal() * 5);
  EcdfTransform e(raw);
  CHECK(e.apply(raw) == ecdf_transform(raw));
  double prev = 0;
  for (double v = -30; v <= 30; v += 0.25) {
    CHECK(e(v) >= prev);
    prev = e(v);
  }
  CHECK(e(-100) == 0.0);
  CHECK(e(100) == 1.0);
}

TEST_CASE("loading a small file") {
  auto t = table_of("a,b,y\n1.5,10,2\n0.5,30,1\n2.5,20,3\n");
  auto l = load_dataset(t, schema_x({{"a"}, {"b", true}}));
  CHECK(l.data.size() == 3);
  CHECK(l.data.covariates == 2);
  CHECK(l.data.levels == 3);
  CHECK(l.data.y == std::vector<int>{2, 1, 3});
  CHECK(l.data.x[0] == doctest::Approx(2.0 / 3));
  CHECK(l.data.x[1] == doctest::Approx(1.0 - 1.0 / 3));
  CHECK(l.data.x[3] == doctest::Approx(0.0));
  CHECK(l.degenerate.empty());
}

TEST_CASE("inverted column at the 0.2 quantile is stored as 0.8") {
  std::string text = "v,y\n";
  for (int i = 1; i <= 10; ++i) text += std::to_string(i) + (i % 2 ? ",1\n" : ",2\n");
  auto l = load_dataset(table_of(text), schema_x({{"v", true}}));
  CHECK(l.data.x[1] == doctest::Approx(0.8));
}

TEST_CASE("bad input is reported with its row") {
  auto zero = table_of("x,y\n0.1,1\n0.2,0\n");
  try {
    load_dataset(zero, schema_x({{"x"}}));
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_dataset(table_of("x,y\n0.1,1\nNA,2\n"), schema_x({{"x"}})), DataError);
  CHECK_THROWS_AS(load_dataset(table_of("x,y\n0.1,1\nfoo,2\n"), schema_x({{"x"}})), DataError);
  CHECK_THROWS_AS(load_dataset(table_of("x,y\n0.1,1\n"), schema_x({{"w"}})), DataError);
  Schema s = schema_x({{"x"}});
  s.levels = 2;
  CHECK_THROWS_AS(load_dataset(table_of("x,y\n0.1,1\n0.3,3\n"), s), DataError);
}

TEST_CASE("ordinal, linear and cluster columns") {
  auto t = table_of(
      "edu,z,school,y\n"
      "low,0.5,A,1\n"
      "high,-1,B,2\n"
      "mid,2,A,2\n"
      "low,0,C,1\n");
  Schema s = schema_x({{"edu", false, {"low", "mid", "high"}}});
  s.linear = {"z"};
  s.cluster = "school";
  auto l = load_dataset(t, s);
  CHECK(l.data.x == std::vector<double>{0.5, 1.0, 0.75, 0.5});
  CHECK(l.data.z == std::vector<double>{0.5, -1, 2, 0});
  CHECK(l.data.cluster == std::vector<int>{1, 2, 1, 3});
  CHECK(l.cluster_labels == std::vector<std::string>{"A", "B", "C"});
  CHECK(l.data.clusters == 3);
  s.monotone[0].ordinal_levels = {"low", "high"};
  CHECK_THROWS_AS(load_dataset(t, s), DataError);
}

TEST_CASE("dataset CSV round trip") {
  Rng rng(8);
  auto d = testutil::random_dataset(3, 4, 25, rng, 2, 3);
  std::ostringstream out;
  write_dataset_csv(out, d);
  std::istringstream in(out.str());
  auto table = read_csv(in);
  Schema s = default_schema(table);
  s.ecdf = false;
  s.levels = 4;
  auto l = load_dataset(table, s);
  CHECK(l.data.x == d.x);
  CHECK(l.data.z == d.z);
  CHECK(l.data.y == d.y);
  CHECK(l.data.linear == 2);
  CHECK(l.data.clusters == 3);
}

TEST_CASE("run configuration and manifest round trip") {
  RunConfig c;
  c.model.levels = 4;
  c.model.covariates = 3;
  c.model.link = LinkSpec::logit(-4, 6);
  c.model.linear = 2;
  c.model.clusters = 7;
  c.model.a = 0.25;
  c.model.d = 3;
  c.model.beta_prior_sd = 10;
  c.sampler.iterations = 1234;
  c.sampler.burn_in = 56;
  c.sampler.thin = 7;
  c.sampler.seed = 18446744073709551557ull;
  c.sampler.beta_scale = 0.123456789012345;
  c.sampler.adapt = false;
  c.schema.monotone = {{"a"}, {"b", true}, {"c", false, {"lo", "hi"}}};
  c.schema.linear = {"z1", "z2"};
  c.schema.cluster = "g";
  c.schema.ecdf = false;
  c.data_path = "data/file.csv";
  c.output_dir = "out";
  c.chains = 3;

  std::ostringstream out;
  write_run_config(out, c);
  std::istringstream in(out.str());
  auto r = read_run_config(in);
  CHECK(r.model.levels == 4);
  CHECK(r.model.link.kind == LinkKind::Logit);
  CHECK(r.model.link.range.lower == -4);
  CHECK(r.model.link.range.upper == 6);
  CHECK(r.model.clusters == 7);
  CHECK(r.model.a == 0.25);
  CHECK(r.model.d == 3);
  CHECK(r.model.beta_prior_sd == 10);
  CHECK(r.sampler.iterations == 1234);
  CHECK(r.sampler.seed == c.sampler.seed);
  CHECK(r.sampler.beta_scale == c.sampler.beta_scale);
  CHECK_FALSE(r.sampler.adapt);
  REQUIRE(r.schema.monotone.size() == 3);
  CHECK(r.schema.monotone[1].inverted);
  CHECK(r.schema.monotone[2].ordinal_levels == std::vector<std::string>{"lo", "hi"});
  CHECK(r.schema.linear == c.schema.linear);
  CHECK(r.schema.cluster == "g");
  CHECK_FALSE(r.schema.ecdf);
  CHECK(r.data_path == c.data_path);
  CHECK(r.chains == 3);

  std::ostringstream again;
  write_run_config(again, r);
  CHECK(again.str() == out.str());

  RunManifest m;
  m.config = c;
  m.command = "fit";
  m.version = version_string();
  m.started = "2026-01-01T00:00:00Z";
  m.finished = "2026-01-01T00:01:00Z";
  m.outputs = {"chain1_samples.jsonl", "acceptance.csv"};
  std::ostringstream mo;
  write_manifest(mo, m);
  std::istringstream mi(mo.str());
  auto back = read_manifest(mi);
  CHECK(back.command == "fit");
  CHECK(back.outputs == m.outputs);
  CHECK(back.config.sampler.seed == c.sampler.seed);
  std::ostringstream mo2;
  write_manifest(mo2, back);
  CHECK(mo2.str() == mo.str());
}

TEST_CASE("missing configuration keys keep their defaults") {
  std::istringstream in("[model]\nlink = logit\n[data]\nmonotone = u, v:inverted\n");
  auto c = read_run_config(in);
  CHECK(c.model.link.range.lower == -5);
  CHECK(c.model.link.range.upper == 5);
  CHECK(c.model.levels == 5);
  CHECK(c.sampler.iterations == SamplerConfig{}.iterations);
  REQUIRE(c.schema.monotone.size() == 2);
  CHECK(c.schema.monotone[1].name == "v");
  CHECK(c.schema.monotone[1].inverted);
  std::istringstream bad("[model]\nlink = probit\n");
  CHECK_THROWS(read_run_config(bad));
}

TEST_CASE("sample stream round trip") {
  Rng rng(12);
  ModelSpec m;
  m.covariates = 2;
  m.levels = 3;
  m.link = LinkSpec::logit(-5, 5);
  m.linear = 1;
  m.clusters = 2;
  SampleHeader h{m, 2, 77};
  std::ostringstream out;
  SampleWriter w(out, h);
  std::vector<SampleRecord> recs;
  for (int i = 0; i < 4; ++i) {
    auto c = testutil::random_config(2, 3, 5 + i, rng, true);
    ParametricState th;
    th.beta = {rng.normal()};
    th.gamma = {rng.normal(), rng.normal()};
    th.tau2 = 0.1 + rng.uniform();
    const double ll = i == 2 ? kLogZero : -100.0 * rng.uniform();
    recs.push_back(SampleRecord::capture(i + 1, c, th, ll));
    w.write(recs.back());
  }
  std::istringstream in(out.str());
  auto f = read_samples(in);
  CHECK(f.header.chain == 2);
  CHECK(f.header.seed == 77);
  CHECK(f.header.model.link.kind == LinkKind::Logit);
  CHECK(f.header.model.clusters == 2);
  REQUIRE(f.records.size() == 4);
  for (int i = 0; i < 4; ++i) {
    const auto& a = recs[i];
    const auto& b = f.records[i];
    CHECK(a.iteration == b.iteration);
    CHECK(a.counts == b.counts);
    CHECK(a.intensities == b.intensities);
    CHECK(a.log_likelihood == b.log_likelihood);
    CHECK(a.theta.beta == b.theta.beta);
    CHECK(a.theta.gamma == b.theta.gamma);
    CHECK(a.theta.tau2 == b.theta.tau2);
    CHECK(a.origin_marks == b.origin_marks);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      CHECK(a.points[k].subspace == b.points[k].subspace);
      CHECK(a.points[k].location == b.points[k].location);
      CHECK(a.points[k].marks == b.points[k].marks);
    }
    CHECK(b.reconstruct(f.header.model).validate().empty());
  }
  std::istringstream junk("{\"format\":\"other\"}\n");
  CHECK_THROWS_AS(read_samples(junk), DataError);
}

TEST_CASE("number formatting is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
  CHECK(format_double(2.0) == "2");
}
