#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rangepack/exact.hpp"
#include "rangepack/model.hpp"
#include "rangepack/range_packer.hpp"

namespace rangepack {

enum class Algorithm { range, ffd, bfd, ff, nf };

std::string_view algorithm_tag(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view tag);
PackingResult run_algorithm(const Instance& instance, Algorithm algorithm, const RangeConfig& config);

enum class ReferenceKind { best_known, exact, l1_bound };

std::string_view reference_kind_name(ReferenceKind kind);
ReferenceKind parse_reference_kind(std::string_view name);

struct RatioRecord {
  std::string dataset;
  std::string instance;
  std::string algorithm;
  int bins = 0;
  int reference = 1;
  ReferenceKind reference_kind = ReferenceKind::exact;
  Rational ratio;
  double millis = 0.0;
  std::int64_t peak_open = 0;

  bool operator==(const RatioRecord&) const = default;
};

/// P*/P as an exact rational. Throws std::invalid_argument if reference < 1.
RatioRecord ratio(const PackingResult& result, int reference, ReferenceKind kind);

struct DatasetAverage {
  std::string dataset;
  std::string algorithm;
  std::size_t count = 0;
  Rational average;
};

struct BenchReport {
  std::vector<RatioRecord> records;
  std::string config_echo;
  std::map<std::string, std::string> dataset_sources;

  /// Mean ratio per (dataset, algorithm), sorted by key.
  std::vector<DatasetAverage> averages() const;
  bool operator==(const BenchReport&) const = default;
};

struct BenchDataset {
  std::string name;
  std::string source;
  std::vector<Instance> instances;
};

struct GeneratorSpec {
  std::size_t n = 100;
  std::size_t count = 1;
  double lo = 0.000001;
  double hi = 0.999999;
  std::uint64_t seed = 1;
  bool all_small = false;
};

BenchDataset generate_dataset(const GeneratorSpec& spec, std::string name = "gen");

struct BenchOptions {
  std::vector<Algorithm> algorithms;
  RangeConfig config;
  std::size_t oracle_limit = kDefaultOracleLimit;
  bool timing = true;
};

class BenchValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference bin count for an instance: best known, else exact when small
/// enough, else the L1 bound.
std::pair<int, ReferenceKind> reference_for(const Instance& instance, std::size_t oracle_limit);

/// Packs every (instance, algorithm) pair, validates each result and returns
/// records sorted by dataset, instance and algorithm. The serial version is the
/// reference; the OpenMP version must produce identical records apart from
/// timings.
BenchReport run_bench_serial(const std::vector<BenchDataset>& datasets, const BenchOptions& options);
BenchReport run_bench_parallel(const std::vector<BenchDataset>& datasets, const BenchOptions& options);
BenchReport run_bench(const std::vector<BenchDataset>& datasets, const BenchOptions& options);

enum class ReportFormat { csv, json };

std::string report_to_csv(const BenchReport& report, bool timing = true);
std::string report_to_json(const BenchReport& report, bool timing = true);
BenchReport report_from_json(std::string_view text);
/// Throws std::runtime_error when the path cannot be written.
void emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& path,
                 bool timing = true);

}  // namespace rangepack
