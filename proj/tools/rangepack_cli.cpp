// rangepack: pack, benchmark, generate and solve one-dimensional bin-packing
// instances from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rangepack/baselines.hpp"
#include "rangepack/bench.hpp"
#include "rangepack/exact.hpp"
#include "rangepack/orlib.hpp"
#include "rangepack/range_packer.hpp"

using namespace rangepack;

namespace {

struct RangeFlags {
  int ranges = 10;
  std::string policy = "lifo";
  std::uint64_t seed = 0;
  int scaling_depth = 0;

  void attach(CLI::App* app) {
    app->add_option("--ranges", ranges, "Range count R (10 * 2^j)");
    app->add_option("--policy", policy, "Piece selection: lifo or random")->check(CLI::IsMember({"lifo", "random"}));
    app->add_option("--seed", seed, "Seed for the random policy");
    app->add_option("--scaling-depth", scaling_depth, "Scaling levels (0..3)");
  }

  RangeConfig config() const {
    RangeConfig c;
    c.range_count = ranges;
    c.policy = policy == "random" ? SelectionPolicy::seeded_random : SelectionPolicy::lifo;
    c.seed = seed;
    c.scaling_depth = scaling_depth;
    c.validate();
    return c;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Instance> load_instances(const std::string& file, const std::string& weights, const std::string& only) {
  std::vector<Instance> instances;
  if (!weights.empty()) {
    instances.push_back(parse_weight_list(weights));
  } else if (!file.empty()) {
    instances = parse_orlib(read_text(file), file).instances;
  } else {
    throw CLI::ValidationError("input", "need --file or --weights");
  }
  if (!only.empty()) {
    std::erase_if(instances, [&](const Instance& i) { return i.name() != only; });
    if (instances.empty()) throw std::runtime_error("no instance named " + only);
  }
  return instances;
}

std::string fmt_fraction(Units units, Units capacity) {
  std::ostringstream out;
  if (capacity == 1 || capacity % 10 != 0) {
    out << units << '/' << capacity;
  } else {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", static_cast<double>(units) / static_cast<double>(capacity));
    out << buffer;
  }
  return out.str();
}

int cmd_pack(const std::string& file, const std::string& weights, const std::string& only, const std::string& algo,
             const RangeFlags& flags, bool show_bins) {
  const RangeConfig config = flags.config();
  const Algorithm algorithm = parse_algorithm(algo);
  int status = 0;
  for (const auto& instance : load_instances(file, weights, only)) {
    const PackingResult result = run_algorithm(instance, algorithm, config);
    const Verdict verdict = validate_result(instance, result);
    const FillStats stats = fill_stats(result);
    std::cout << instance.name() << ": algorithm=" << result.algorithm_tag << " bins=" << result.bin_count()
              << " l1=" << lower_bound_l1(instance);
    if (instance.best_known()) std::cout << " best_known=" << *instance.best_known();
    std::cout << " min_fill=" << format_rational(stats.min_fill)
              << " at_least_two_thirds=" << format_rational(stats.fraction_at_least_two_thirds)
              << " merges=" << result.merge_count << " peak_open=" << result.counters.peak_open << '\n';
    if (algorithm == Algorithm::range) std::cout << "  config: " << result.config_echo << '\n';
    if (show_bins) {
      for (std::size_t b = 0; b < result.bins.size(); ++b) {
        const Bin& bin = result.bins[b];
        std::cout << "  bin " << b << " load=" << fmt_fraction(bin.load.numerator(), instance.capacity()) << " :";
        for (ItemId id : bin.member_ids) std::cout << ' ' << fmt_fraction(instance.units(id), instance.capacity());
        std::cout << '\n';
      }
    }
    if (!verdict) {
      std::cerr << instance.name() << ": validation failed: " << verdict.violation << '\n';
      status = 1;
    }
  }
  return status;
}

int cmd_exact(const std::string& file, const std::string& weights, const std::string& only, std::size_t limit) {
  for (const auto& instance : load_instances(file, weights, only))
    std::cout << instance.name() << ": optimal=" << optimal_bins(instance, limit) << " l1=" << lower_bound_l1(instance)
              << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-matching bin packing toolkit"};
  app.require_subcommand(1);

  std::string file, weights, only, algo = "range";
  bool show_bins = false;
  RangeFlags pack_flags;
  auto* pack_cmd = app.add_subcommand("pack", "Pack one instance file or an inline weight list");
  pack_cmd->add_option("--file", file, "OR-LIBRARY formatted instance file");
  pack_cmd->add_option("--weights", weights, "Inline sizes as fractions of one bin, e.g. 0.4,0.3,0.3");
  pack_cmd->add_option("--instance", only, "Only pack the instance with this identifier");
  pack_cmd->add_option("--algorithm", algo, "range, ffd, bfd, ff or nf");
  pack_cmd->add_flag("--bins", show_bins, "Print bin contents");
  pack_flags.attach(pack_cmd);

  std::vector<std::string> datasets, files, algorithms{"range", "ffd"};
  std::string out_path, format = "csv", cache_dir = default_cache_dir().string();
  bool no_timing = false, serial = false, offline = false;
  GeneratorSpec gen_spec;
  bool use_generator = false;
  std::size_t oracle_limit = kDefaultOracleLimit;
  RangeFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Compare algorithms over datasets and report Ratios");
  bench_cmd->add_option("--datasets", datasets, "OR-LIBRARY sets bp1..bp8")->delimiter(',');
  bench_cmd->add_option("--files", files, "Local OR-LIBRARY formatted files")->delimiter(',');
  bench_cmd->add_option("--algorithms", algorithms, "Algorithms to compare")->delimiter(',');
  bench_cmd->add_option("--out", out_path, "Report path (stdout summary only when omitted)");
  bench_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_option("--cache-dir", cache_dir, "Dataset cache (default $RANGEPACK_CACHE_DIR)");
  bench_cmd->add_flag("--no-timing", no_timing, "Blank the timing column for golden files");
  bench_cmd->add_flag("--serial", serial, "Use the serial reference kernel");
  bench_cmd->add_flag("--offline", offline, "Never download; fail on a cache miss");
  bench_cmd->add_option("--oracle-limit", oracle_limit, "Largest instance solved exactly for the reference");
  bench_cmd->add_flag("--generate", use_generator, "Add a generated dataset");
  bench_cmd->add_option("--gen-n", gen_spec.n, "Generated instance size");
  bench_cmd->add_option("--gen-count", gen_spec.count, "Generated instance count");
  bench_cmd->add_option("--gen-lo", gen_spec.lo, "Lower size bound (exclusive)");
  bench_cmd->add_option("--gen-hi", gen_spec.hi, "Upper size bound");
  bench_cmd->add_option("--gen-seed", gen_spec.seed, "First generator seed");
  bench_cmd->add_flag("--gen-all-small", gen_spec.all_small, "Draw sizes from (0, 0.5]");
  bench_flags.attach(bench_cmd);

  std::size_t gen_n = 100;
  double gen_lo = 0.000001, gen_hi = 0.999999;
  std::uint64_t gen_seed = 1;
  std::size_t gen_count = 1;
  bool gen_small = false;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate seeded instances in OR-LIBRARY format");
  gen_cmd->add_option("--n", gen_n, "Items per instance");
  gen_cmd->add_option("--lo", gen_lo, "Lower size bound (exclusive)");
  gen_cmd->add_option("--hi", gen_hi, "Upper size bound");
  gen_cmd->add_option("--seed", gen_seed, "Seed");
  gen_cmd->add_option("--count", gen_count, "Number of instances (seeds seed..seed+count-1)");
  gen_cmd->add_flag("--all-small", gen_small, "Draw sizes from (0, 0.5]");
  gen_cmd->add_option("--out", gen_out, "Output file (stdout when omitted)");

  std::size_t limit = kDefaultOracleLimit;
  auto* exact_cmd = app.add_subcommand("exact", "Optimal bin count of small instances");
  exact_cmd->add_option("--file", file, "OR-LIBRARY formatted instance file");
  exact_cmd->add_option("--weights", weights, "Inline sizes");
  exact_cmd->add_option("--instance", only, "Only this instance");
  exact_cmd->add_option("--limit", limit, "Refuse instances with more items");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pack_cmd) return cmd_pack(file, weights, only, algo, pack_flags, show_bins);
    if (*exact_cmd) return cmd_exact(file, weights, only, limit);

    if (*gen_cmd) {
      GeneratorSpec spec{gen_n, gen_count, gen_lo, gen_hi, gen_seed, gen_small};
      const std::string text = serialize_orlib(generate_dataset(spec).instances);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(gen_out, std::ios::binary) << text;
      }
      return 0;
    }

    if (*bench_cmd) {
      std::vector<BenchDataset> inputs;
      FetchOptions fetch;
      for (const auto& name : datasets) {
        if (offline && !std::filesystem::exists(std::filesystem::path(cache_dir) / (name + ".txt")))
          throw RetrievalError("dataset " + name + " is not cached and --offline is set");
        auto data = fetch_dataset(name, cache_dir, fetch);
        inputs.push_back({name, fetch.base_url + dataset_file_name(name), std::move(data.instances)});
      }
      for (const auto& path : files) {
        auto data = parse_orlib(read_text(path), path);
        inputs.push_back({std::filesystem::path(path).stem().string(), path, std::move(data.instances)});
      }
      if (use_generator) inputs.push_back(generate_dataset(gen_spec));
      if (inputs.empty()) throw CLI::ValidationError("bench", "need --datasets, --files or --generate");

      BenchOptions options;
      for (const auto& a : algorithms) options.algorithms.push_back(parse_algorithm(a));
      options.config = bench_flags.config();
      options.oracle_limit = oracle_limit;
      options.timing = !no_timing;
      const BenchReport report = serial ? run_bench_serial(inputs, options) : run_bench_parallel(inputs, options);

      if (!out_path.empty())
        emit_report(report, format == "json" ? ReportFormat::json : ReportFormat::csv, out_path, options.timing);
      std::cout << "config: " << report.config_echo << '\n';
      for (const auto& avg : report.averages()) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10s %-6s n=%-4zu average_ratio=%.6f", avg.dataset.c_str(),
                      avg.algorithm.c_str(), avg.count, to_double(avg.average));
        std::cout << line << '\n';
      }
      return 0;
    }
  } catch (const BenchValidationError& e) {
    std::cerr << "validation failure: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
