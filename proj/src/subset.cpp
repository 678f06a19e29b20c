#include "excoef/subset.hpp"

#include <charconv>
#include <cstdlib>
#include <set>

namespace excoef {

Subset Subset::from_indices(const std::vector<int>& indices) {
  SubsetMask mask = 0;
  int last = -1;
  for (int t : indices) {
    if (t < 0 || t >= 32) throw InvalidSubset("subset index out of range: " + std::to_string(t));
    if (t <= last) throw InvalidSubset("subset indices must be strictly increasing");
    mask |= SubsetMask{1} << t;
    last = t;
  }
  return Subset(mask);
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (SubsetMask rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

int ground_set_cap() {
  static const int cap = [] {
    constexpr int kDefault = 20;
    constexpr int kCeiling = 24;
    const char* env = std::getenv("EXCOEF_MAX_M");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || value < 1) return kDefault;
    return value > kCeiling ? kCeiling : static_cast<int>(value);
  }();
  return cap;
}

GroundSet::GroundSet(int size) : size_(size) {
  if (size < 1) throw InvalidArgument("ground set must contain at least one location");
  if (size > ground_set_cap()) {
    throw TooLarge("ground set of size " + std::to_string(size) + " exceeds the cap of " +
                   std::to_string(ground_set_cap()));
  }
}

GroundSet::GroundSet(int size, std::vector<std::string> labels) : GroundSet(size) {
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != size) {
      throw InvalidArgument("expected " + std::to_string(size) + " labels, got " +
                            std::to_string(labels.size()));
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (static_cast<int>(seen.size()) != size) throw InvalidArgument("labels must be distinct");
    labels_ = std::move(labels);
  }
}

std::string GroundSet::label(int t) const {
  if (t < 0 || t >= size_) throw InvalidSubset("location index out of range: " + std::to_string(t));
  return labels_.empty() ? std::to_string(t) : labels_[static_cast<std::size_t>(t)];
}

std::string format_subset(Subset s) {
  std::string out;
  bool first = true;
  for (int t : s.indices()) {
    if (!first) out += ',';
    out += std::to_string(t);
    first = false;
  }
  return out;
}

Subset parse_subset(std::string_view text, int m) {
  if (text.empty()) return Subset{};
  SubsetMask mask = 0;
  int last = -1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - pos);
    int value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
      throw InvalidSubset("malformed subset token '" + std::string(token) + "' in '" +
                          std::string(text) + "'");
    }
    if (value < 0 || value >= m) {
      throw InvalidSubset("subset index " + std::to_string(value) +
                          " outside ground set of size " + std::to_string(m));
    }
    if (value <= last) throw InvalidSubset("subset indices must be strictly increasing: '" +
                                           std::string(text) + "'");
    mask |= SubsetMask{1} << value;
    last = value;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size()) throw InvalidSubset("trailing comma in subset '" + std::string(text) + "'");
  }
  return Subset(mask);
}

void require_within(Subset s, int m) {
  if (!s.within(m)) {
    throw InvalidSubset("subset {" + format_subset(s) + "} outside ground set of size " +
                        std::to_string(m));
  }
}

}  // namespace excoef
