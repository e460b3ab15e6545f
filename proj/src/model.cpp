#include "rangepack/model.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rangepack {

Weight::Weight(Units numerator, Units denominator) : numerator_(numerator), denominator_(denominator) {
  if (denominator <= 0) throw std::invalid_argument("weight denominator must be positive");
  if (numerator <= 0 || numerator > denominator)
    throw std::invalid_argument("weight must lie in (0, 1]: " + std::to_string(numerator) + "/" +
                                std::to_string(denominator));
}

Weight Weight::operator+(const Weight& other) const {
  if (denominator_ != other.denominator_) throw std::invalid_argument("weights from different instances");
  Weight sum;
  sum.numerator_ = numerator_ + other.numerator_;
  sum.denominator_ = denominator_;
  return sum;
}

std::strong_ordering Weight::operator<=>(const Weight& other) const {
  // Cross-multiplication stays within int64 for capacities below 2^31.
  return numerator_ * other.denominator_ <=> other.numerator_ * denominator_;
}

bool Weight::operator==(const Weight& other) const { return (*this <=> other) == 0; }

Instance::Instance(std::string name, Units capacity, const std::vector<Units>& sizes,
                   std::optional<int> best_known)
    : name_(std::move(name)), capacity_(capacity), best_known_(best_known) {
  if (capacity <= 0) throw std::invalid_argument("capacity must be positive");
  items_.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i)
    items_.push_back(Item{static_cast<ItemId>(i), Weight(sizes[i], capacity)});
}

Units Instance::total_units() const {
  Units total = 0;
  for (const auto& item : items_) total += item.weight.numerator();
  return total;
}

Verdict validate_result(const Instance& instance, const PackingResult& result) {
  auto fail = [](std::string message) { return Verdict{false, std::move(message)}; };
  std::vector<char> seen(instance.size(), 0);
  std::size_t covered = 0;
  for (std::size_t b = 0; b < result.bins.size(); ++b) {
    const Bin& bin = result.bins[b];
    const std::string tag = "bin " + std::to_string(b);
    if (bin.member_ids.empty()) return fail(tag + " is empty");
    Units load = 0;
    for (ItemId id : bin.member_ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= instance.size())
        return fail(tag + " references unknown item " + std::to_string(id));
      if (seen[static_cast<std::size_t>(id)]) return fail(tag + " duplicates item " + std::to_string(id));
      seen[static_cast<std::size_t>(id)] = 1;
      ++covered;
      load += instance.units(id);
    }
    if (load > instance.capacity()) return fail(tag + " overfull");
    if (bin.load.numerator() != load || bin.load.denominator() != instance.capacity())
      return fail(tag + " recorded load differs from member sum");
  }
  if (covered != instance.size()) {
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) return fail("item " + std::to_string(i) + " is not packed");
  }
  return {};
}

FillStats fill_stats(const PackingResult& result) {
  if (result.bins.empty()) return {Rational(1), Rational(1), Rational(1)};
  const Rational two_thirds(2, 3);
  Rational min_fill = result.bins.front().load.value();
  Rational total(0);
  std::size_t full_enough = 0;
  for (const auto& bin : result.bins) {
    Rational fill = bin.load.value();
    if (fill < min_fill) min_fill = fill;
    if (fill >= two_thirds) ++full_enough;
    total += fill;
  }
  const auto count = static_cast<long long>(result.bins.size());
  return {min_fill, total / count, Rational(static_cast<long long>(full_enough), count)};
}

std::string format_rational(const Rational& value) {
  std::ostringstream out;
  out << numerator(value);
  if (denominator(value) != 1) out << '/' << denominator(value);
  return out.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace rangepack
