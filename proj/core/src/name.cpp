#include "grefute/name.hpp"

#include <algorithm>

namespace grefute {

NameList sorted_unique(NameList names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

NameSet components(const NameList& names) { return NameSet(names.begin(), names.end()); }

bool contains(const NameList& sorted, const Name& name) {
  return std::binary_search(sorted.begin(), sorted.end(), name);
}

std::string join(const NameList& names, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i].text();
  }
  return out;
}

Name NameSupply::fresh(const NameSet& avoid, std::string_view base) {
  std::string stem = base.empty() ? default_base_ : std::string(base);
  if (!base.empty() && !avoid.contains(Name(stem))) return Name(stem);
  for (;;) {
    Name candidate(stem + "_" + std::to_string(counter_++));
    if (!avoid.contains(candidate)) return candidate;
  }
}

NameList NameSupply::fresh_list(std::size_t count, const NameSet& avoid, std::string_view base) {
  NameSet taken = avoid;
  NameList out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Name n = fresh(taken, base.empty() ? std::string_view{} : base);
    taken.insert(n);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace grefute
