#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rangepack/model.hpp"

namespace rangepack {

inline constexpr Units kGeneratedCapacity = 1'000'000;

struct DatasetFile {
  std::string source;
  int problem_count = 0;
  std::vector<Instance> instances;

  bool operator==(const DatasetFile&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RetrievalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptDownloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// OR-LIBRARY one-dimensional layout: problem count, then per problem an
// identifier line, "capacity item_count best_known", and one size per line.
// Sizes may carry a fixed number of decimals (binpack5..8 do); a block is
// scaled by the power of ten that makes every size an integer.
DatasetFile parse_orlib(std::string_view text, std::string source = {});

/// Canonical form: integer sizes, best_known 0 when unknown.
std::string serialize_orlib(const std::vector<Instance>& instances);

/// Comma- or whitespace-separated decimal sizes as fractions of one bin,
/// e.g. "0.4, 0.3, 0.3". Exact: the capacity is the power of ten fitting the
/// longest fraction.
Instance parse_weight_list(std::string_view text, std::string name = "inline");

struct FetchOptions {
  std::string base_url = "http://people.brunel.ac.uk/~mastjbb/jeb/orlib/files/";
  int timeout_seconds = 10;
};

/// Names bp1..bp8, mapped to the library's binpack1..binpack8 files.
bool is_dataset_name(std::string_view name);
std::string dataset_file_name(std::string_view name);

std::filesystem::path default_cache_dir();

/// Returns the cached dataset, downloading and caching it on a miss.
/// Throws std::invalid_argument for unknown names, RetrievalError when the
/// cache is cold and the download fails, CorruptDownloadError when the
/// payload does not parse.
DatasetFile fetch_dataset(std::string_view name, const std::filesystem::path& cache_dir,
                          const FetchOptions& options = {});

Instance generate_uniform(std::size_t n, double lo, double hi, std::uint64_t seed);
Instance generate_all_small(std::size_t n, std::uint64_t seed);

}  // namespace rangepack
