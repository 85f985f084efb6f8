#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace vldl {

using StateSet = boost::dynamic_bitset<std::uint64_t>;

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return hash_value(s); }
};

inline std::vector<std::uint32_t> members(const StateSet& s) {
  std::vector<std::uint32_t> out;
  for (auto i = s.find_first(); i != StateSet::npos; i = s.find_next(i))
    out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

} // namespace vldl
