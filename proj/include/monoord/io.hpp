#pragma once

// File formats: CSV datasets and summaries, INI run configuration and
// manifests, and the newline-delimited JSON sample stream.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "monoord/model.hpp"
#include "monoord/sampler.hpp"

namespace monoord {

/// Raised for malformed or inconsistent input data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// value -> (number of training values <= value) / N.
class EcdfTransform {
 public:
  EcdfTransform() = default;
  explicit EcdfTransform(std::vector<double> values);
  double operator()(double v) const;
  std::vector<double> apply(std::span<const double> values) const;
  bool degenerate() const;
  const std::vector<double>& support() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

std::vector<double> ecdf_transform(std::span<const double> column);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws DataError when absent.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

struct MonotoneColumn {
  std::string name;
  bool inverted = false;
  /// Non-empty: the column holds these category labels, lowest first.
  std::vector<std::string> ordinal_levels;
};

struct Schema {
  std::string response = "y";
  int levels = 0;  // 0: take the largest observed response
  std::vector<MonotoneColumn> monotone;
  std::vector<std::string> linear;
  std::string cluster;  // empty: no clusters
  /// false: monotone columns are used as given and must lie in [0,1].
  bool ecdf = true;
};

struct LoadedData {
  Dataset data;
  std::vector<EcdfTransform> transforms;    // one per monotone column
  std::vector<std::string> cluster_labels;  // label of cluster c at index c-1
  std::vector<std::string> degenerate;      // monotone columns with a single value
};

LoadedData load_dataset(const CsvTable& table, const Schema& schema);
LoadedData load_dataset(const std::string& path, const Schema& schema);

/// Writes columns x1..xp, z1..zq, cluster (if any), y.
void write_dataset_csv(std::ostream& out, const Dataset& data);
/// Reads the layout written by write_dataset_csv without transforming.
Dataset read_dataset_csv(const std::string& path);
Schema default_schema(const CsvTable& table);

// --- configuration -------------------------------------------------------

struct RunConfig {
  ModelSpec model;
  SamplerConfig sampler;
  Schema schema;
  std::string data_path;
  std::string output_dir;
  int chains = 1;
};

/// INI sections [model], [sampler], [data]; missing keys keep their defaults.
RunConfig read_run_config(std::istream& in);
RunConfig read_run_config_file(const std::string& path);
void write_run_config(std::ostream& out, const RunConfig& cfg);

struct RunManifest {
  RunConfig config;
  std::string command;
  std::string version;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
};

void write_manifest(std::ostream& out, const RunManifest& m);
RunManifest read_manifest(std::istream& in);

// --- sample stream -------------------------------------------------------

inline constexpr const char* kSampleFormat = "monoord-samples";
inline constexpr int kSampleFormatVersion = 1;

/// First line of a sample file: the model dimensions the records refer to.
struct SampleHeader {
  ModelSpec model;
  std::uint64_t chain = 0;
  std::uint64_t seed = 0;
};

class SampleWriter {
 public:
  SampleWriter(std::ostream& out, const SampleHeader& header);
  void write(const SampleRecord& record);

 private:
  std::ostream* out_;
};

struct SampleFile {
  SampleHeader header;
  std::vector<SampleRecord> records;
};

SampleFile read_samples(std::istream& in);
SampleFile read_samples_file(const std::string& path);

std::string format_double(double v);
std::string version_string();

}  // namespace monoord
