#include "rangepack/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "rangepack/baselines.hpp"
#include "rangepack/orlib.hpp"

namespace rangepack {

std::string_view algorithm_tag(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::range: return "range";
    case Algorithm::ffd: return "ffd";
    case Algorithm::bfd: return "bfd";
    case Algorithm::ff: return "ff";
    case Algorithm::nf: return "nf";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view tag) {
  for (Algorithm a : {Algorithm::range, Algorithm::ffd, Algorithm::bfd, Algorithm::ff, Algorithm::nf})
    if (algorithm_tag(a) == tag) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) + "'");
}

PackingResult run_algorithm(const Instance& instance, Algorithm algorithm, const RangeConfig& config) {
  switch (algorithm) {
    case Algorithm::range: return pack(instance, config);
    case Algorithm::ffd: return first_fit_decreasing(instance);
    case Algorithm::bfd: return best_fit_decreasing(instance);
    case Algorithm::ff: return first_fit(instance);
    case Algorithm::nf: return next_fit(instance);
  }
  throw std::invalid_argument("unknown algorithm");
}

std::string_view reference_kind_name(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::best_known: return "best_known";
    case ReferenceKind::exact: return "exact";
    case ReferenceKind::l1_bound: return "l1_bound";
  }
  return "?";
}

ReferenceKind parse_reference_kind(std::string_view name) {
  for (auto k : {ReferenceKind::best_known, ReferenceKind::exact, ReferenceKind::l1_bound})
    if (reference_kind_name(k) == name) return k;
  throw std::invalid_argument("unknown reference kind '" + std::string(name) + "'");
}

RatioRecord ratio(const PackingResult& result, int reference, ReferenceKind kind) {
  if (reference < 1) throw std::invalid_argument("reference bin count must be at least 1");
  RatioRecord record;
  record.algorithm = result.algorithm_tag;
  record.bins = static_cast<int>(result.bin_count());
  record.reference = reference;
  record.reference_kind = kind;
  record.ratio = Rational(record.bins, reference);
  record.peak_open = result.counters.peak_open;
  return record;
}

std::vector<DatasetAverage> BenchReport::averages() const {
  std::map<std::pair<std::string, std::string>, std::pair<std::size_t, Rational>> sums;
  for (const auto& r : records) {
    auto& [count, sum] = sums[{r.dataset, r.algorithm}];
    ++count;
    sum += r.ratio;
  }
  std::vector<DatasetAverage> out;
  for (const auto& [key, value] : sums)
    out.push_back({key.first, key.second, value.first, value.second / static_cast<long long>(value.first)});
  return out;
}

BenchDataset generate_dataset(const GeneratorSpec& spec, std::string name) {
  BenchDataset dataset;
  dataset.name = std::move(name);
  std::ostringstream source;
  source << "generated n=" << spec.n << " count=" << spec.count << " seed=" << spec.seed;
  if (spec.all_small)
    source << " all_small";
  else
    source << " lo=" << spec.lo << " hi=" << spec.hi;
  dataset.source = source.str();
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::uint64_t seed = spec.seed + i;
    dataset.instances.push_back(spec.all_small ? generate_all_small(spec.n, seed)
                                               : generate_uniform(spec.n, spec.lo, spec.hi, seed));
  }
  return dataset;
}

std::pair<int, ReferenceKind> reference_for(const Instance& instance, std::size_t oracle_limit) {
  if (auto best = instance.best_known()) return {*best, ReferenceKind::best_known};
  if (instance.size() <= oracle_limit) return {optimal_bins(instance, oracle_limit), ReferenceKind::exact};
  return {lower_bound_l1(instance), ReferenceKind::l1_bound};
}

namespace {

struct Task {
  std::size_t dataset;
  std::size_t instance;
  Algorithm algorithm;
};

std::vector<Task> make_tasks(const std::vector<BenchDataset>& datasets, const BenchOptions& options) {
  if (options.algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  options.config.validate();
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t i = 0; i < datasets[d].instances.size(); ++i)
      for (Algorithm a : options.algorithms) tasks.push_back({d, i, a});
  return tasks;
}

RatioRecord run_task(const std::vector<BenchDataset>& datasets, const Task& task, const BenchOptions& options,
                     std::pair<int, ReferenceKind> reference) {
  const BenchDataset& dataset = datasets[task.dataset];
  const Instance& instance = dataset.instances[task.instance];
  const auto start = std::chrono::steady_clock::now();
  PackingResult result = run_algorithm(instance, task.algorithm, options.config);
  const auto stop = std::chrono::steady_clock::now();

  if (auto verdict = validate_result(instance, result); !verdict)
    throw BenchValidationError("invalid packing for (" + dataset.name + "/" + instance.name() + ", " +
                               std::string(algorithm_tag(task.algorithm)) + "): " + verdict.violation);
  RatioRecord record = ratio(result, std::max(reference.first, 1), reference.second);
  record.dataset = dataset.name;
  record.instance = instance.name();
  if (options.timing) record.millis = std::chrono::duration<double, std::milli>(stop - start).count();
  return record;
}

BenchReport assemble(const std::vector<BenchDataset>& datasets, const BenchOptions& options,
                     std::vector<RatioRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const RatioRecord& a, const RatioRecord& b) {
    return std::tie(a.dataset, a.instance, a.algorithm) < std::tie(b.dataset, b.instance, b.algorithm);
  });
  BenchReport report;
  report.records = std::move(records);
  report.config_echo = options.config.echo();
  for (const auto& d : datasets) report.dataset_sources[d.name] = d.source;
  return report;
}

std::vector<std::vector<std::pair<int, ReferenceKind>>> empty_references(const std::vector<BenchDataset>& datasets) {
  std::vector<std::vector<std::pair<int, ReferenceKind>>> refs(datasets.size());
  for (std::size_t d = 0; d < datasets.size(); ++d) refs[d].resize(datasets[d].instances.size());
  return refs;
}

}  // namespace

BenchReport run_bench_serial(const std::vector<BenchDataset>& datasets, const BenchOptions& options) {
  const auto tasks = make_tasks(datasets, options);
  auto refs = empty_references(datasets);
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t i = 0; i < datasets[d].instances.size(); ++i)
      refs[d][i] = reference_for(datasets[d].instances[i], options.oracle_limit);

  std::vector<RatioRecord> records;
  records.reserve(tasks.size());
  for (const Task& task : tasks) records.push_back(run_task(datasets, task, options, refs[task.dataset][task.instance]));
  return assemble(datasets, options, std::move(records));
}

BenchReport run_bench_parallel(const std::vector<BenchDataset>& datasets, const BenchOptions& options) {
  const auto tasks = make_tasks(datasets, options);
  auto refs = empty_references(datasets);

  std::vector<std::pair<std::size_t, std::size_t>> instances;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t i = 0; i < datasets[d].instances.size(); ++i) instances.emplace_back(d, i);

  // Exceptions must not escape an OpenMP region; keep the first by task index.
  std::vector<std::string> ref_errors(instances.size());
  const auto instance_count = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < instance_count; ++k) {
    const auto [d, i] = instances[static_cast<std::size_t>(k)];
    try {
      refs[d][i] = reference_for(datasets[d].instances[i], options.oracle_limit);
    } catch (const std::exception& e) {
      ref_errors[static_cast<std::size_t>(k)] = e.what();
    }
  }
  for (const auto& e : ref_errors)
    if (!e.empty()) throw std::runtime_error(e);

  std::vector<RatioRecord> records(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::vector<char> validation_failed(tasks.size(), 0);
  const auto task_count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < task_count; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const Task& task = tasks[idx];
    try {
      records[idx] = run_task(datasets, task, options, refs[task.dataset][task.instance]);
    } catch (const BenchValidationError& e) {
      errors[idx] = e.what();
      validation_failed[idx] = 1;
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (std::size_t t = 0; t < errors.size(); ++t) {
    if (errors[t].empty()) continue;
    if (validation_failed[t]) throw BenchValidationError(errors[t]);
    throw std::runtime_error(errors[t]);
  }
  return assemble(datasets, options, std::move(records));
}

BenchReport run_bench(const std::vector<BenchDataset>& datasets, const BenchOptions& options) {
  return run_bench_parallel(datasets, options);
}

namespace {

std::string fixed6(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", to_double(value));
  return buffer;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
  return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                  boost::multiprecision::cpp_int(text.substr(slash + 1)));
}

}  // namespace

std::string report_to_csv(const BenchReport& report, bool timing) {
  std::ostringstream out;
  out << "dataset,instance,algorithm,bins,reference,reference_kind,ratio,millis\n";
  for (const auto& r : report.records) {
    out << csv_field(r.dataset) << ',' << csv_field(r.instance) << ',' << r.algorithm << ',' << r.bins << ','
        << r.reference << ',' << reference_kind_name(r.reference_kind) << ',' << fixed6(r.ratio) << ',';
    if (timing) {
      char buffer[32];
      std::snprintf(buffer, sizeof buffer, "%.3f", r.millis);
      out << buffer;
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const BenchReport& report, bool timing) {
  nlohmann::ordered_json root;
  root["config"] = report.config_echo;
  root["datasets"] = nlohmann::ordered_json::object();
  for (const auto& [name, source] : report.dataset_sources) root["datasets"][name] = source;
  root["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json rec;
    rec["dataset"] = r.dataset;
    rec["instance"] = r.instance;
    rec["algorithm"] = r.algorithm;
    rec["bins"] = r.bins;
    rec["reference"] = r.reference;
    rec["reference_kind"] = reference_kind_name(r.reference_kind);
    rec["ratio"] = format_rational(r.ratio);
    rec["millis"] = timing ? r.millis : 0.0;
    rec["peak_open"] = r.peak_open;
    root["records"].push_back(std::move(rec));
  }
  root["averages"] = nlohmann::ordered_json::array();
  for (const auto& a : report.averages()) {
    nlohmann::ordered_json avg;
    avg["dataset"] = a.dataset;
    avg["algorithm"] = a.algorithm;
    avg["count"] = a.count;
    avg["average"] = format_rational(a.average);
    avg["average_value"] = fixed6(a.average);
    root["averages"].push_back(std::move(avg));
  }
  return root.dump(2) + "\n";
}

BenchReport report_from_json(std::string_view text) {
  const auto root = nlohmann::json::parse(text);
  BenchReport report;
  report.config_echo = root.at("config").get<std::string>();
  for (const auto& [name, source] : root.at("datasets").items()) report.dataset_sources[name] = source.get<std::string>();
  for (const auto& rec : root.at("records")) {
    RatioRecord r;
    r.dataset = rec.at("dataset").get<std::string>();
    r.instance = rec.at("instance").get<std::string>();
    r.algorithm = rec.at("algorithm").get<std::string>();
    r.bins = rec.at("bins").get<int>();
    r.reference = rec.at("reference").get<int>();
    r.reference_kind = parse_reference_kind(rec.at("reference_kind").get<std::string>());
    r.ratio = parse_rational(rec.at("ratio").get<std::string>());
    r.millis = rec.at("millis").get<double>();
    r.peak_open = rec.at("peak_open").get<std::int64_t>();
    report.records.push_back(std::move(r));
  }
  return report;
}

void emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& path, bool timing) {
  const std::string bytes = format == ReportFormat::csv ? report_to_csv(report, timing) : report_to_json(report, timing);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace rangepack
