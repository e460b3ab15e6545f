// Acceptance suite: one PASS/FAIL/SKIP line per criterion; nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rangepack/baselines.hpp"
#include "rangepack/bench.hpp"
#include "rangepack/exact.hpp"
#include "rangepack/orlib.hpp"
#include "rangepack/range_packer.hpp"
#include "support/test_support.hpp"

using namespace rangepack;
using Clock = std::chrono::steady_clock;

namespace {

enum class Outcome { pass, fail, skip };

struct Verdict2 {
  Outcome outcome;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double median_seconds(int runs, F&& f) {
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) {
    const auto start = Clock::now();
    f();
    times.push_back(seconds_since(start));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

// 1. Scaling worked example.
Verdict2 worked_example() {
  const Instance inst = testing::hundredths({40, 30, 30, 20, 20, 10});
  RangeConfig config;
  config.scaling_depth = 1;
  PackingResult result;
  const double t = median_seconds(11, [&] { result = pack_scaled(inst, config); });
  const auto sizes = testing::bin_sizes(inst, result);
  const std::vector<std::vector<Units>> expected{{10, 20, 30, 40}, {20, 30}};
  const bool ok = sizes == expected && t < 1e-3 && validate_result(inst, result);
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("bins=%zu multisets %s, %.3f ms", result.bin_count(), sizes == expected ? "match" : "differ", t * 1e3)};
}

// 2. bins(pack) <= 1.5 * optimum, uniform and all-small instances.
Verdict2 three_halves_property() {
  const auto start = Clock::now();
  std::vector<Instance> instances;
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 600; ++i) instances.push_back(generate_uniform(1 + rng() % 12, 0.000001, 0.999999, rng()));
  for (int i = 0; i < 300; ++i) instances.push_back(generate_all_small(1 + rng() % 12, rng()));

  std::vector<int> optimum(instances.size());
  const auto count = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    optimum[static_cast<std::size_t>(i)] = optimal_bins(instances[static_cast<std::size_t>(i)]);

  std::int64_t checks = 0, violations = 0;
  std::string first;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (int r : {10, 20}) {
      for (auto policy : {SelectionPolicy::lifo, SelectionPolicy::seeded_random}) {
        const RangeConfig config{r, policy, 1000 + i, 0};
        const auto result = pack(instances[i], config);
        ++checks;
        if (2 * static_cast<int>(result.bin_count()) > 3 * optimum[i]) {
          if (violations++ == 0)
            first = fmt(" first: %s %s bins=%zu opt=%d", instances[i].name().c_str(), config.echo().c_str(),
                        result.bin_count(), optimum[i]);
        }
      }
    }
  }
  const double t = seconds_since(start);
  const bool ok = violations == 0 && t < 60.0;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("%zu instances (300 all-small), %lld checks, %lld violations, %.2f s", instances.size(),
              static_cast<long long>(checks), static_cast<long long>(violations), t) +
              first};
}

struct ValidityStats {
  std::int64_t results = 0;
  std::int64_t invalid = 0;
  std::int64_t load_mismatch = 0;
  std::int64_t range_runs = 0;
  std::int64_t f2_overflows = 0;
  std::int64_t merge_bound_failures = 0;
  std::int64_t scan_bound_failures = 0;
  double seconds = 0;
  std::string first;
};

// 3 and 4 share one run over 1,000 random instances.
ValidityStats validity_suite() {
  const auto start = Clock::now();
  std::vector<Instance> instances;
  std::mt19937_64 rng(777);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = rng() % 1001;
    switch (i % 4) {
      case 0: instances.push_back(generate_uniform(n, 0.000001, 1.0, rng())); break;
      case 1: instances.push_back(generate_all_small(n, rng())); break;
      case 2: instances.push_back(generate_uniform(n, 0.2, 0.7, rng())); break;
      default: instances.push_back(testing::boundary_instance(n, 20, rng())); break;
    }
  }
  const std::vector<RangeConfig> configs{{10, SelectionPolicy::lifo, 0, 0},
                                         {20, SelectionPolicy::seeded_random, 5, 0},
                                         {40, SelectionPolicy::lifo, 0, 0},
                                         {10, SelectionPolicy::lifo, 0, 1},
                                         {20, SelectionPolicy::seeded_random, 9, 3}};

  std::vector<ValidityStats> per(instances.size());
  const auto count = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const Instance& inst = instances[idx];
    ValidityStats& s = per[idx];
    auto check = [&](const PackingResult& result, const std::string& label) {
      ++s.results;
      const Verdict v = validate_result(inst, result);
      Units total = 0;
      for (const auto& bin : result.bins) total += bin.load.numerator();
      if (!v) {
        ++s.invalid;
        if (s.first.empty()) s.first = inst.name() + " " + label + ": " + v.violation;
      }
      if (total != inst.total_units()) ++s.load_mismatch;
    };
    for (const auto& config : configs) {
      const auto result = pack(inst, config);
      check(result, config.echo());
      ++s.range_runs;
      const auto n = static_cast<std::int64_t>(inst.size());
      s.f2_overflows += result.counters.f2_overflows;
      if (result.merge_count > std::max<std::int64_t>(n - 1, 0)) ++s.merge_bound_failures;
      if (result.counters.bucket_scans > 3LL * config.range_count * std::max<std::int64_t>(n, 1))
        ++s.scan_bound_failures;
    }
    check(first_fit_decreasing(inst), "ffd");
    check(best_fit_decreasing(inst), "bfd");
    check(first_fit(inst), "ff");
    check(next_fit(inst), "nf");
  }

  ValidityStats total;
  for (const auto& s : per) {
    total.results += s.results;
    total.invalid += s.invalid;
    total.load_mismatch += s.load_mismatch;
    total.range_runs += s.range_runs;
    total.f2_overflows += s.f2_overflows;
    total.merge_bound_failures += s.merge_bound_failures;
    total.scan_bound_failures += s.scan_bound_failures;
    if (total.first.empty()) total.first = s.first;
  }
  total.seconds = seconds_since(start);
  return total;
}

// 5. Median pack time at n = 200,000 within 30x the median at n = 10,000.
Verdict2 linear_time() {
  const Instance small = generate_uniform(10'000, 0.000001, 0.999999, 51);
  const Instance large = generate_uniform(200'000, 0.000001, 0.999999, 52);
  const RangeConfig config;
  std::size_t sink = 0;
  sink += pack(small, config).bin_count() + pack(large, config).bin_count();
  const double t_small = median_seconds(20, [&] { sink += pack(small, config).bin_count(); });
  const double t_large = median_seconds(20, [&] { sink += pack(large, config).bin_count(); });
  const double factor = t_large / t_small;
  return {factor <= 30.0 ? Outcome::pass : Outcome::fail,
          fmt("median %.3f ms @10k, %.3f ms @200k, factor %.2f (limit 30)%s", t_small * 1e3, t_large * 1e3, factor,
              sink == 0 ? "?" : "")};
}

struct OrlibRun {
  bool available = false;
  std::string missing;
  std::vector<BenchDataset> datasets;
};

OrlibRun load_orlib() {
  OrlibRun run;
  FetchOptions options;
  options.timeout_seconds = 5;
  const auto cache = default_cache_dir();
  for (int i = 1; i <= 8; ++i) {
    const std::string name = "bp" + std::to_string(i);
    try {
      auto file = fetch_dataset(name, cache, options);
      run.datasets.push_back({name, options.base_url + dataset_file_name(name), std::move(file.instances)});
    } catch (const std::exception& e) {
      run.missing = name + " (" + e.what() + ")";
      return run;
    }
  }
  run.available = true;
  return run;
}

BenchOptions orlib_options() {
  BenchOptions options;
  options.algorithms = {Algorithm::range, Algorithm::ffd};
  options.timing = false;
  return options;
}

// 6. Ratio against best known on bp1..bp8.
Verdict2 orlib_regression(const OrlibRun& run) {
  if (!run.available) return {Outcome::skip, "datasets unavailable offline with cold cache: " + run.missing};
  const BenchReport report = run_bench(run.datasets, orlib_options());
  int over = 0;
  for (const auto& r : report.records)
    if (r.algorithm == "range" && r.ratio > Rational(3, 2)) ++over;
  std::map<std::string, std::map<std::string, double>> avg;
  for (const auto& a : report.averages()) avg[a.dataset][a.algorithm] = to_double(a.average);
  std::ostringstream detail;
  bool close_to_ffd = true;
  for (const auto& [dataset, by_algo] : avg) {
    detail << ' ' << dataset << " range=" << fmt("%.4f", by_algo.at("range")) << " ffd=" << fmt("%.4f", by_algo.at("ffd"));
    if (dataset == "bp4" || dataset == "bp6" || dataset == "bp7" || dataset == "bp8")
      close_to_ffd = close_to_ffd && by_algo.at("range") <= by_algo.at("ffd") + 0.10;
  }
  const bool ok = over == 0 && close_to_ffd;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("%d instances above 3/2, ffd gap %s;", over, close_to_ffd ? "within 0.10" : "exceeds 0.10") + detail.str()};
}

// 7. Re-running the OR-LIBRARY bench yields byte-identical CSV.
Verdict2 orlib_determinism(const OrlibRun& run) {
  if (!run.available) return {Outcome::skip, "datasets unavailable offline with cold cache: " + run.missing};
  const auto first = report_to_csv(run_bench(run.datasets, orlib_options()), false);
  const auto second = report_to_csv(run_bench(run.datasets, orlib_options()), false);
  return {first == second ? Outcome::pass : Outcome::fail, fmt("%zu CSV bytes compared", first.size())};
}

// 8. Subset DP agrees with set-partition enumeration.
Verdict2 oracle_consistency() {
  std::mt19937_64 rng(88);
  int disagreements = 0, bound_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = rng() % 9;
    const Instance inst = i % 2 ? generate_all_small(n, rng()) : generate_uniform(n, 0.000001, 1.0, rng());
    const int opt = optimal_bins(inst);
    if (opt != testing::partition_enumeration_optimum(inst)) ++disagreements;
    if (lower_bound_l1(inst) > opt) ++bound_failures;
  }
  const bool ok = disagreements == 0 && bound_failures == 0;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("200 instances n<=8, %d disagreements, %d L1 bound failures", disagreements, bound_failures)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Verdict2& v) {
    const char* tag = v.outcome == Outcome::pass ? "PASS" : v.outcome == Outcome::fail ? "FAIL" : "SKIP";
    if (v.outcome == Outcome::fail) ++failures;
    std::printf("[%s] AC%d %s: %s\n", tag, id, title, v.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "scaling worked example", worked_example());
  report(2, "3/2 of optimum on small instances", three_halves_property());

  const ValidityStats validity = validity_suite();
  report(3, "validity suite",
         {validity.invalid == 0 && validity.load_mismatch == 0 && validity.seconds < 60.0 ? Outcome::pass
                                                                                           : Outcome::fail,
          fmt("%lld results, %lld invalid, %lld load mismatches, %.2f s", static_cast<long long>(validity.results),
              static_cast<long long>(validity.invalid), static_cast<long long>(validity.load_mismatch),
              validity.seconds) +
              (validity.first.empty() ? "" : " first: " + validity.first)});
  report(4, "f2 no-overflow and progress counters",
         {validity.f2_overflows == 0 && validity.merge_bound_failures == 0 && validity.scan_bound_failures == 0
              ? Outcome::pass
              : Outcome::fail,
          fmt("%lld range runs, f2 overflows %lld, merge bound failures %lld, scan bound (3Rn) failures %lld",
              static_cast<long long>(validity.range_runs), static_cast<long long>(validity.f2_overflows),
              static_cast<long long>(validity.merge_bound_failures),
              static_cast<long long>(validity.scan_bound_failures))});

  report(5, "linear-time scaling", linear_time());

  const OrlibRun orlib = load_orlib();
  report(6, "OR-LIBRARY ratio regression", orlib_regression(orlib));
  report(7, "OR-LIBRARY report determinism", orlib_determinism(orlib));
  report(8, "oracle self-consistency", oracle_consistency());

  std::printf("%s\n", failures == 0 ? "acceptance: all evaluated criteria passed" : "acceptance: FAILED");
  return failures == 0 ? 0 : 1;
}
