#ifndef CATMODES_SRC_HASH_HPP
#define CATMODES_SRC_HASH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "catmodes/dataset.hpp"

namespace catmodes::detail {

inline std::size_t hash_values(std::span<const CategoryId> values, std::uint64_t salt = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ salt;
  for (auto v : values) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

struct VectorHash {
  std::size_t operator()(const std::vector<CategoryId>& v) const { return hash_values(v); }
};

}  // namespace catmodes::detail

#endif  // CATMODES_SRC_HASH_HPP
