#include "monoord/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include "json.hpp"

namespace monoord {

namespace pt = boost::property_tree;
using nlohmann::json;

std::string version_string() { return "0.1.0"; }

std::string format_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// --- ECDF ------------------------------------------------------------------

EcdfTransform::EcdfTransform(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw DataError("ECDF of an empty column");
  for (double v : sorted_) {
    if (!std::isfinite(v)) throw DataError("ECDF of a non-finite value");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfTransform::operator()(double v) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), v);
  return double(it - sorted_.begin()) / double(sorted_.size());
}

std::vector<double> EcdfTransform::apply(std::span<const double> values) const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (*this)(values[i]);
  return out;
}

bool EcdfTransform::degenerate() const { return sorted_.front() == sorted_.back(); }

std::vector<double> ecdf_transform(std::span<const double> column) {
  EcdfTransform t({column.begin(), column.end()});
  return t.apply(column);
}

// --- CSV -------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataError("line " + std::to_string(lineno) + ": unterminated quote");
  cells.push_back(std::move(cur));
  return cells;
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool missing(const std::string& s) { return s.empty() || s == "NA" || s == "NaN" || s == "nan"; }

double parse_double(const std::string& s, std::size_t row, const std::string& col) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v)) {
    throw DataError("row " + std::to_string(row) + ": column '" + col + "' is not numeric ('" +
                    s + "')");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_list(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DataError("missing column '" + name + "'");
  return std::size_t(it - header.begin());
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line, lineno);
    for (auto& c : cells) c = trim(c);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw DataError("row " + std::to_string(t.rows.size() + 1) + ": expected " +
                      std::to_string(t.header.size()) + " cells, found " +
                      std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw DataError("CSV input has no header row");
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in);
}

// --- dataset loading -------------------------------------------------------

LoadedData load_dataset(const CsvTable& table, const Schema& schema) {
  if (schema.monotone.empty()) throw DataError("schema declares no monotone covariates");
  const std::size_t N = table.rows.size();
  if (N == 0) throw DataError("dataset has no rows");

  const std::size_t ycol = table.column(schema.response);
  std::vector<std::size_t> xcols, zcols;
  for (const auto& m : schema.monotone) xcols.push_back(table.column(m.name));
  for (const auto& l : schema.linear) zcols.push_back(table.column(l));
  const bool clustered = !schema.cluster.empty();
  const std::size_t ccol = clustered ? table.column(schema.cluster) : 0;

  for (std::size_t r = 0; r < N; ++r) {
    const auto& row = table.rows[r];
    auto check = [&](std::size_t c) {
      if (missing(row[c])) {
        throw DataError("row " + std::to_string(r + 1) + ": missing value in column '" +
                        table.header[c] + "'");
      }
    };
    check(ycol);
    for (auto c : xcols) check(c);
    for (auto c : zcols) check(c);
    if (clustered) check(ccol);
  }

  LoadedData out;
  Dataset& d = out.data;
  const int p = int(xcols.size());
  const int q = int(zcols.size());
  d.covariates = p;
  d.linear = q;

  int max_y = 0;
  d.y.resize(N);
  for (std::size_t r = 0; r < N; ++r) {
    const double v = parse_double(table.rows[r][ycol], r + 1, schema.response);
    if (v != std::floor(v) || v < 1 || v > 1e6) {
      throw DataError("row " + std::to_string(r + 1) + ": response " + table.rows[r][ycol] +
                      " is not a category label 1..K");
    }
    d.y[r] = int(v);
    max_y = std::max(max_y, d.y[r]);
  }
  d.levels = schema.levels > 0 ? schema.levels : max_y;
  for (std::size_t r = 0; r < N; ++r) {
    if (d.y[r] > d.levels) {
      throw DataError("row " + std::to_string(r + 1) + ": response " + std::to_string(d.y[r]) +
                      " outside 1.." + std::to_string(d.levels));
    }
  }

  d.x.resize(N * p);
  for (int j = 0; j < p; ++j) {
    const auto& spec = schema.monotone[j];
    std::vector<double> raw(N);
    for (std::size_t r = 0; r < N; ++r) {
      const auto& cell = table.rows[r][xcols[j]];
      if (spec.ordinal_levels.empty()) {
        raw[r] = parse_double(cell, r + 1, spec.name);
      } else {
        const auto it = std::find(spec.ordinal_levels.begin(), spec.ordinal_levels.end(), cell);
        if (it == spec.ordinal_levels.end()) {
          throw DataError("row " + std::to_string(r + 1) + ": '" + cell +
                          "' is not a declared level of column '" + spec.name + "'");
        }
        raw[r] = double(it - spec.ordinal_levels.begin());
      }
    }
    EcdfTransform t(raw);
    if (t.degenerate()) out.degenerate.push_back(spec.name);
    for (std::size_t r = 0; r < N; ++r) {
      const double u = schema.ecdf ? t(raw[r]) : raw[r];
      d.x[r * p + j] = spec.inverted ? 1.0 - u : u;
    }
    out.transforms.push_back(std::move(t));
  }

  d.z.resize(N * q);
  for (int j = 0; j < q; ++j) {
    for (std::size_t r = 0; r < N; ++r) {
      d.z[r * q + j] = parse_double(table.rows[r][zcols[j]], r + 1, schema.linear[j]);
    }
  }

  if (clustered) {
    std::unordered_map<std::string, int> ids;
    d.cluster.resize(N);
    for (std::size_t r = 0; r < N; ++r) {
      const auto& label = table.rows[r][ccol];
      auto [it, fresh] = ids.emplace(label, int(ids.size()) + 1);
      if (fresh) out.cluster_labels.push_back(label);
      d.cluster[r] = it->second;
    }
    d.clusters = int(ids.size());
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return out;
}

LoadedData load_dataset(const std::string& path, const Schema& schema) {
  return load_dataset(read_csv_file(path), schema);
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
  std::vector<std::string> head;
  for (int j = 0; j < d.covariates; ++j) head.push_back("x" + std::to_string(j + 1));
  for (int j = 0; j < d.linear; ++j) head.push_back("z" + std::to_string(j + 1));
  if (d.clusters > 0) head.push_back("cluster");
  head.push_back("y");
  out << join_list(head) << '\n';
  for (std::size_t n = 0; n < d.size(); ++n) {
    for (double v : d.x_row(n)) out << format_double(v) << ',';
    for (double v : d.z_row(n)) out << format_double(v) << ',';
    if (d.clusters > 0) out << d.cluster[n] << ',';
    out << d.y[n] << '\n';
  }
}

Schema default_schema(const CsvTable& table) {
  Schema s;
  s.response = "y";
  for (const auto& h : table.header) {
    if (h.size() > 1 && h[0] == 'x') s.monotone.push_back({h, false, {}});
    if (h.size() > 1 && h[0] == 'z') s.linear.push_back(h);
    if (h == "cluster") s.cluster = h;
  }
  return s;
}

Dataset read_dataset_csv(const std::string& path) {
  const auto table = read_csv_file(path);
  const auto schema = default_schema(table);
  Dataset d;
  d.covariates = int(schema.monotone.size());
  d.linear = int(schema.linear.size());
  const std::size_t ycol = table.column("y");
  std::vector<std::size_t> xc, zc;
  for (const auto& m : schema.monotone) xc.push_back(table.column(m.name));
  for (const auto& l : schema.linear) zc.push_back(table.column(l));
  const bool clustered = !schema.cluster.empty();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (auto c : xc) d.x.push_back(parse_double(row[c], r + 1, table.header[c]));
    for (auto c : zc) d.z.push_back(parse_double(row[c], r + 1, table.header[c]));
    if (clustered) {
      d.cluster.push_back(int(parse_double(row[table.column("cluster")], r + 1, "cluster")));
      d.clusters = std::max(d.clusters, d.cluster.back());
    }
    const double y = parse_double(row[ycol], r + 1, "y");
    if (y != std::floor(y) || y < 1) {
      throw DataError("row " + std::to_string(r + 1) + ": response is not a category label");
    }
    d.y.push_back(int(y));
    d.levels = std::max(d.levels, d.y.back());
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return d;
}

// --- configuration ---------------------------------------------------------

namespace {

template <class T>
T get_or(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  const std::string s = trim(*v);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (s == "true" || s == "1" || s == "yes") return true;
      if (s == "false" || s == "0" || s == "no") return false;
      throw std::invalid_argument(s);
    } else if constexpr (std::is_same_v<T, std::string>) {
      return s;
    } else if constexpr (std::is_floating_point_v<T>) {
      std::size_t pos = 0;
      const double d = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return d;
    } else {
      std::size_t pos = 0;
      if constexpr (std::is_unsigned_v<T>) {
        if (s.find('-') != std::string::npos) throw std::invalid_argument(s);
        const unsigned long long u = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return T(u);
      } else {
        const long long i = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return T(i);
      }
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + s + "'");
  }
}

void put(pt::ptree& tree, const std::string& key, double v) { tree.put(key, format_double(v)); }
void put(pt::ptree& tree, const std::string& key, const std::string& v) { tree.put(key, v); }
template <class I, class = std::enable_if_t<std::is_integral_v<I>>>
void put(pt::ptree& tree, const std::string& key, I v) {
  if constexpr (std::is_same_v<I, bool>) {
    tree.put(key, v ? "true" : "false");
  } else {
    tree.put(key, std::to_string(v));
  }
}

pt::ptree config_tree(const RunConfig& c) {
  pt::ptree t;
  const auto& m = c.model;
  put(t, "model.levels", m.levels);
  put(t, "model.covariates", m.covariates);
  put(t, "model.link", to_string(m.link.kind));
  put(t, "model.range_lower", m.link.range.lower);
  put(t, "model.range_upper", m.link.range.upper);
  put(t, "model.linear", m.linear);
  put(t, "model.clusters", m.clusters);
  put(t, "model.a", m.a);
  put(t, "model.b", m.b);
  put(t, "model.d", m.d);
  put(t, "model.tau2_shape", m.tau2_shape);
  put(t, "model.tau2_rate", m.tau2_rate);
  put(t, "model.beta_prior_sd", m.beta_prior_sd);

  const auto& s = c.sampler;
  put(t, "sampler.iterations", s.iterations);
  put(t, "sampler.burn_in", s.burn_in);
  put(t, "sampler.thin", s.thin);
  put(t, "sampler.seed", s.seed);
  put(t, "sampler.birth_weight", s.birth_weight);
  put(t, "sampler.death_weight", s.death_weight);
  put(t, "sampler.death_birth_weight", s.death_birth_weight);
  put(t, "sampler.position_weight", s.position_weight);
  put(t, "sampler.joint_level_weight", s.joint_level_weight);
  put(t, "sampler.single_level_weight", s.single_level_weight);
  put(t, "sampler.origin_level_weight", s.origin_level_weight);
  put(t, "sampler.beta_scale", s.beta_scale);
  put(t, "sampler.gamma_scale", s.gamma_scale);
  put(t, "sampler.adapt", s.adapt);
  put(t, "sampler.target_acceptance", s.target_acceptance);
  put(t, "sampler.progress_every", s.progress_every);

  put(t, "data.path", c.data_path);
  put(t, "data.response", c.schema.response);
  put(t, "data.levels", c.schema.levels);
  std::vector<std::string> mono;
  for (const auto& col : c.schema.monotone) {
    mono.push_back(col.inverted ? col.name + ":inverted" : col.name);
    if (!col.ordinal_levels.empty()) {
      put(t, "data.ordinal_" + col.name, join_list(col.ordinal_levels));
    }
  }
  put(t, "data.monotone", join_list(mono));
  put(t, "data.linear", join_list(c.schema.linear));
  put(t, "data.cluster", c.schema.cluster);
  put(t, "data.ecdf", c.schema.ecdf);

  put(t, "run.output_dir", c.output_dir);
  put(t, "run.chains", c.chains);
  return t;
}

RunConfig config_from_tree(const pt::ptree& t) {
  RunConfig c;
  auto& m = c.model;
  m.levels = get_or(t, "model.levels", m.levels);
  m.covariates = get_or(t, "model.covariates", m.covariates);
  m.link.kind = link_kind_from_string(get_or<std::string>(t, "model.link", to_string(m.link.kind)));
  if (m.link.kind == LinkKind::Logit) m.link.range = {-5.0, 5.0};
  m.link.range.lower = get_or(t, "model.range_lower", m.link.range.lower);
  m.link.range.upper = get_or(t, "model.range_upper", m.link.range.upper);
  m.linear = get_or(t, "model.linear", m.linear);
  m.clusters = get_or(t, "model.clusters", m.clusters);
  m.a = get_or(t, "model.a", m.a);
  m.b = get_or(t, "model.b", m.b);
  m.d = get_or(t, "model.d", m.d);
  m.tau2_shape = get_or(t, "model.tau2_shape", m.tau2_shape);
  m.tau2_rate = get_or(t, "model.tau2_rate", m.tau2_rate);
  m.beta_prior_sd = get_or(t, "model.beta_prior_sd", m.beta_prior_sd);

  auto& s = c.sampler;
  s.iterations = get_or(t, "sampler.iterations", s.iterations);
  s.burn_in = get_or(t, "sampler.burn_in", s.burn_in);
  s.thin = get_or(t, "sampler.thin", s.thin);
  s.seed = get_or(t, "sampler.seed", s.seed);
  s.birth_weight = get_or(t, "sampler.birth_weight", s.birth_weight);
  s.death_weight = get_or(t, "sampler.death_weight", s.death_weight);
  s.death_birth_weight = get_or(t, "sampler.death_birth_weight", s.death_birth_weight);
  s.position_weight = get_or(t, "sampler.position_weight", s.position_weight);
  s.joint_level_weight = get_or(t, "sampler.joint_level_weight", s.joint_level_weight);
  s.single_level_weight = get_or(t, "sampler.single_level_weight", s.single_level_weight);
  s.origin_level_weight = get_or(t, "sampler.origin_level_weight", s.origin_level_weight);
  s.beta_scale = get_or(t, "sampler.beta_scale", s.beta_scale);
  s.gamma_scale = get_or(t, "sampler.gamma_scale", s.gamma_scale);
  s.adapt = get_or(t, "sampler.adapt", s.adapt);
  s.target_acceptance = get_or(t, "sampler.target_acceptance", s.target_acceptance);
  s.progress_every = get_or(t, "sampler.progress_every", s.progress_every);

  c.data_path = get_or<std::string>(t, "data.path", "");
  c.schema.response = get_or<std::string>(t, "data.response", c.schema.response);
  c.schema.levels = get_or(t, "data.levels", c.schema.levels);
  for (const auto& item : split_list(get_or<std::string>(t, "data.monotone", ""))) {
    MonotoneColumn col;
    const auto colon = item.find(':');
    col.name = trim(item.substr(0, colon));
    if (colon != std::string::npos) {
      const auto flag = trim(item.substr(colon + 1));
      if (flag != "inverted") throw std::invalid_argument("unknown column flag '" + flag + "'");
      col.inverted = true;
    }
    col.ordinal_levels = split_list(get_or<std::string>(t, "data.ordinal_" + col.name, ""));
    c.schema.monotone.push_back(std::move(col));
  }
  c.schema.linear = split_list(get_or<std::string>(t, "data.linear", ""));
  c.schema.cluster = get_or<std::string>(t, "data.cluster", "");
  c.schema.ecdf = get_or(t, "data.ecdf", c.schema.ecdf);

  c.output_dir = get_or<std::string>(t, "run.output_dir", "");
  c.chains = get_or(t, "run.chains", c.chains);
  if (c.chains < 1) throw std::invalid_argument("run.chains must be at least 1");
  return c;
}

}  // namespace

RunConfig read_run_config(std::istream& in) {
  pt::ptree t;
  try {
    pt::read_ini(in, t);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config_from_tree(t);
}

RunConfig read_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  return read_run_config(in);
}

void write_run_config(std::ostream& out, const RunConfig& cfg) {
  pt::write_ini(out, config_tree(cfg));
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  auto t = config_tree(m.config);
  put(t, "manifest.command", m.command);
  put(t, "manifest.version", m.version);
  put(t, "manifest.started", m.started);
  put(t, "manifest.finished", m.finished);
  put(t, "manifest.outputs", join_list(m.outputs));
  pt::write_ini(out, t);
}

RunManifest read_manifest(std::istream& in) {
  pt::ptree t;
  try {
    pt::read_ini(in, t);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  RunManifest m;
  m.config = config_from_tree(t);
  m.command = get_or<std::string>(t, "manifest.command", "");
  m.version = get_or<std::string>(t, "manifest.version", "");
  m.started = get_or<std::string>(t, "manifest.started", "");
  m.finished = get_or<std::string>(t, "manifest.finished", "");
  m.outputs = split_list(get_or<std::string>(t, "manifest.outputs", ""));
  return m;
}

// --- sample stream ---------------------------------------------------------

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return v < 0 ? "-inf" : (v > 0 ? "inf" : "nan");
}

double from_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SampleWriter::SampleWriter(std::ostream& out, const SampleHeader& h) : out_(&out) {
  const auto& m = h.model;
  json j = {{"format", kSampleFormat},
            {"version", kSampleFormatVersion},
            {"covariates", m.covariates},
            {"levels", m.levels},
            {"link", to_string(m.link.kind)},
            {"range", {m.link.range.lower, m.link.range.upper}},
            {"linear", m.linear},
            {"clusters", m.clusters},
            {"a", m.a},
            {"b", m.b},
            {"d", m.d},
            {"chain", h.chain},
            {"seed", h.seed}};
  *out_ << j.dump() << '\n';
}

void SampleWriter::write(const SampleRecord& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back({p.subspace, p.location, p.marks});
  json j = {{"iteration", r.iteration},
            {"loglik", number(r.log_likelihood)},
            {"counts", r.counts},
            {"rho", r.intensities},
            {"beta", r.theta.beta},
            {"gamma", r.theta.gamma},
            {"tau2", r.theta.tau2},
            {"origin", r.origin_marks},
            {"points", pts}};
  *out_ << j.dump() << '\n';
}

SampleFile read_samples(std::istream& in) {
  SampleFile f;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("sample file line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != kSampleFormat) throw DataError("not a sample file");
        if (j.at("version").get<int>() != kSampleFormatVersion) {
          throw DataError("unsupported sample file version");
        }
        auto& m = f.header.model;
        m.covariates = j.at("covariates");
        m.levels = j.at("levels");
        m.link.kind = link_kind_from_string(j.at("link"));
        m.link.range = {j.at("range")[0], j.at("range")[1]};
        m.linear = j.at("linear");
        m.clusters = j.at("clusters");
        m.a = j.at("a");
        m.b = j.at("b");
        m.d = j.at("d");
        f.header.chain = j.at("chain");
        f.header.seed = j.at("seed");
        have_header = true;
        continue;
      }
      SampleRecord r;
      r.iteration = j.at("iteration");
      r.log_likelihood = from_number(j.at("loglik"));
      r.counts = j.at("counts").get<std::vector<std::uint64_t>>();
      r.intensities = j.at("rho").get<std::vector<double>>();
      r.theta.beta = j.at("beta").get<std::vector<double>>();
      r.theta.gamma = j.at("gamma").get<std::vector<double>>();
      r.theta.tau2 = j.at("tau2");
      r.origin_marks = j.at("origin").get<std::vector<double>>();
      for (const auto& p : j.at("points")) {
        r.points.push_back({p.at(0).get<int>(), p.at(1).get<std::vector<double>>(),
                            p.at(2).get<std::vector<double>>()});
      }
      f.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw DataError("sample file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw DataError("sample file is empty");
  return f;
}

SampleFile read_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_samples(in);
}

}  // namespace monoord
