#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace grefute {

/// A name marks a free place. Names are ordered lexicographically on their text;
/// that order is the "IN order" used for sorted name lists.
class Name {
 public:
  Name() = default;
  explicit Name(std::string text) : text_(std::move(text)) {}
  Name(const char* text) : text_(text) {}  // NOLINT: literals read naturally in fixtures

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::string text_;
};

using NameList = std::vector<Name>;
using NameSet = std::set<Name>;

NameList sorted_unique(NameList names);
NameSet components(const NameList& names);
bool contains(const NameList& sorted, const Name& name);
std::string join(const NameList& names, std::string_view sep = ",");

/// Produces names that avoid a given set. A base text is tried first; on collision a
/// numeric suffix "_k" from a per-supply counter is appended until the result is fresh.
class NameSupply {
 public:
  explicit NameSupply(std::string default_base = "n", std::size_t first_suffix = 1)
      : default_base_(std::move(default_base)), counter_(first_suffix) {}

  Name fresh(const NameSet& avoid, std::string_view base = {});
  /// r pairwise distinct names, all outside avoid.
  NameList fresh_list(std::size_t count, const NameSet& avoid, std::string_view base = {});

 private:
  std::string default_base_;
  std::size_t counter_;
};

}  // namespace grefute

template <>
struct std::hash<grefute::Name> {
  std::size_t operator()(const grefute::Name& n) const noexcept {
    return std::hash<std::string>{}(n.text());
  }
};
