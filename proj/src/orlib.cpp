#include "rangepack/orlib.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>

#include <httplib.h>

namespace rangepack {
namespace {

struct Decimal {
  Units mantissa = 0;
  int fraction_digits = 0;
};

Units pow10(int digits) {
  Units p = 1;
  while (digits-- > 0) p *= 10;
  return p;
}

bool parse_decimal(std::string_view token, Decimal& out) {
  out = {};
  bool any_digit = false;
  bool in_fraction = false;
  for (char ch : token) {
    if (ch == '.') {
      if (in_fraction) return false;
      in_fraction = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    if (out.mantissa > (std::numeric_limits<Units>::max() - 9) / 10 || out.fraction_digits >= 9) return false;
    out.mantissa = out.mantissa * 10 + (ch - '0');
    any_digit = true;
    if (in_fraction) ++out.fraction_digits;
  }
  return any_digit;
}

bool parse_integer(std::string_view token, long long& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-blank lines with 1-based numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t line = 1, start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '\n') {
        auto content = trim(text.substr(start, i - start));
        if (!content.empty()) lines_.push_back({line, content});
        ++line;
        start = i + 1;
      }
    }
    last_line_ = line - 1;
  }

  bool done() const { return pos_ == lines_.size(); }
  std::pair<std::size_t, std::string_view> next() {
    if (done()) throw ParseError(last_line_, "unexpected end of input");
    return lines_[pos_++];
  }

 private:
  std::vector<std::pair<std::size_t, std::string_view>> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

}  // namespace

DatasetFile parse_orlib(std::string_view text, std::string source) {
  LineReader reader(text);
  DatasetFile file;
  file.source = std::move(source);

  auto [count_line, count_text] = reader.next();
  long long count = 0;
  if (!parse_integer(count_text, count) || count < 0) throw ParseError(count_line, "malformed problem count");
  file.problem_count = static_cast<int>(count);

  for (long long p = 0; p < count; ++p) {
    auto [name_line, name] = reader.next();
    auto [header_line, header] = reader.next();
    const auto fields = split_ws(header);
    if (fields.size() != 3) throw ParseError(header_line, "expected 'capacity item_count best_known'");
    Decimal capacity;
    long long item_count = 0, best_known = 0;
    if (!parse_decimal(fields[0], capacity) || capacity.mantissa == 0)
      throw ParseError(header_line, "malformed capacity");
    if (!parse_integer(fields[1], item_count) || item_count < 0) throw ParseError(header_line, "malformed item count");
    if (!parse_integer(fields[2], best_known) || best_known < 0)
      throw ParseError(header_line, "malformed best known bin count");

    std::vector<std::pair<std::size_t, Decimal>> sizes;
    sizes.reserve(static_cast<std::size_t>(item_count));
    int digits = capacity.fraction_digits;
    while (static_cast<long long>(sizes.size()) < item_count) {
      auto [line, content] = reader.next();
      for (auto token : split_ws(content)) {
        Decimal size;
        if (!parse_decimal(token, size)) throw ParseError(line, "malformed item size '" + std::string(token) + "'");
        if (static_cast<long long>(sizes.size()) == item_count) throw ParseError(line, "more sizes than item count");
        digits = std::max(digits, size.fraction_digits);
        sizes.push_back({line, size});
      }
    }

    const Units cap_units = capacity.mantissa * pow10(digits - capacity.fraction_digits);
    std::vector<Units> units;
    units.reserve(sizes.size());
    for (const auto& [line, size] : sizes) {
      const Units u = size.mantissa * pow10(digits - size.fraction_digits);
      if (u == 0) throw ParseError(line, "item size must be positive");
      if (u > cap_units) throw ParseError(line, "item size exceeds capacity");
      units.push_back(u);
    }
    std::optional<int> best;
    if (best_known > 0) best = static_cast<int>(best_known);
    file.instances.emplace_back(std::string(name), cap_units, units, best);
  }
  if (!reader.done()) {
    auto [line, content] = reader.next();
    throw ParseError(line, "trailing content after last problem");
  }
  return file;
}

std::string serialize_orlib(const std::vector<Instance>& instances) {
  std::ostringstream out;
  out << ' ' << instances.size() << '\n';
  for (const auto& instance : instances) {
    out << ' ' << instance.name() << '\n';
    out << ' ' << instance.capacity() << ' ' << instance.size() << ' ' << instance.best_known().value_or(0) << '\n';
    for (const auto& item : instance.items()) out << item.weight.numerator() << '\n';
  }
  return out.str();
}

Instance parse_weight_list(std::string_view text, std::string name) {
  std::string cleaned(text);
  for (char& ch : cleaned)
    if (ch == ',' || ch == ';') ch = ' ';
  std::vector<Decimal> sizes;
  int digits = 0;
  for (auto token : split_ws(cleaned)) {
    Decimal d;
    if (!parse_decimal(token, d)) throw std::invalid_argument("malformed weight '" + std::string(token) + "'");
    digits = std::max(digits, d.fraction_digits);
    sizes.push_back(d);
  }
  const Units capacity = pow10(digits);
  std::vector<Units> units;
  for (const auto& d : sizes) units.push_back(d.mantissa * pow10(digits - d.fraction_digits));
  return Instance(std::move(name), capacity, units);
}

bool is_dataset_name(std::string_view name) {
  return name.size() == 3 && name.substr(0, 2) == "bp" && name[2] >= '1' && name[2] <= '8';
}

std::string dataset_file_name(std::string_view name) {
  if (!is_dataset_name(name)) throw std::invalid_argument("unknown dataset '" + std::string(name) + "' (expected bp1..bp8)");
  return "binpack" + std::string(1, name[2]) + ".txt";
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("RANGEPACK_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "rangepack";
  return "orlib-cache";
}

namespace {

std::mutex& flight_lock(const std::string& key) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::lock_guard guard(registry_mutex);
  auto& slot = registry[key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

std::string download(const std::string& url, int timeout_seconds) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw RetrievalError("malformed url " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  auto response = client.Get(path);
  if (!response) throw RetrievalError("download of " + url + " failed: " + httplib::to_string(response.error()));
  if (response->status != 200)
    throw RetrievalError("download of " + url + " failed: HTTP " + std::to_string(response->status));
  return response->body;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

DatasetFile fetch_dataset(std::string_view name, const std::filesystem::path& cache_dir, const FetchOptions& options) {
  const std::string file_name = dataset_file_name(name);
  const auto cached = cache_dir / (std::string(name) + ".txt");
  std::lock_guard guard(flight_lock(cached.string()));

  if (std::filesystem::exists(cached)) return parse_orlib(read_file(cached), cached.string());

  const std::string url = options.base_url + file_name;
  const std::string bytes = download(url, options.timeout_seconds);
  DatasetFile file;
  try {
    file = parse_orlib(bytes, url);
  } catch (const ParseError& e) {
    throw CorruptDownloadError("corrupt download from " + url + ": " + e.what());
  }
  if (file.problem_count == 0) throw CorruptDownloadError("corrupt download from " + url + ": no problems");

  std::filesystem::create_directories(cache_dir);
  const auto partial = cached.string() + ".part";
  {
    std::ofstream out(partial, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw RetrievalError("cannot write cache file " + partial);
  }
  std::filesystem::rename(partial, cached);
  file.source = cached.string();
  return file;
}

namespace {

Instance generate(std::size_t n, Units lo_exclusive, Units hi, std::uint64_t seed, std::string name) {
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(hi - lo_exclusive);
  std::vector<Units> units(n);
  for (auto& u : units) u = lo_exclusive + 1 + static_cast<Units>(rng() % span);
  return Instance(std::move(name), kGeneratedCapacity, units);
}

}  // namespace

Instance generate_uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
  if (!(lo > 0.0 && lo < hi && hi <= 1.0)) throw std::invalid_argument("uniform bounds must satisfy 0 < lo < hi <= 1");
  const Units lo_units = std::llround(lo * static_cast<double>(kGeneratedCapacity));
  const Units hi_units = std::llround(hi * static_cast<double>(kGeneratedCapacity));
  if (lo_units >= hi_units) throw std::invalid_argument("uniform bounds narrower than the generator resolution");
  std::ostringstream name;
  name << "uniform_n" << n << "_s" << seed;
  return generate(n, lo_units, hi_units, seed, name.str());
}

Instance generate_all_small(std::size_t n, std::uint64_t seed) {
  std::ostringstream name;
  name << "small_n" << n << "_s" << seed;
  return generate(n, 0, kGeneratedCapacity / 2, seed, name.str());
}

}  // namespace rangepack
