// Brute-force reference computations for the test suites. Nothing here calls
// into the solver code paths it is used to check.
#ifndef CATMODES_TESTS_ORACLES_HPP
#define CATMODES_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "catmodes/dataset.hpp"

namespace catmodes::oracle {

inline std::uint64_t hamming(const std::vector<CategoryId>& x, const std::vector<CategoryId>& y) {
  std::uint64_t d = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] != y[a]) ++d;
  }
  return d;
}

/// min over every vector Q in the category product of sum_i w_i d(X_i, Q).
inline std::uint64_t min_mode_cost(const CategoricalDataset& ds, const std::vector<std::size_t>& members) {
  const auto& attrs = ds.schema().attributes;
  std::vector<CategoryId> q(attrs.size(), 0);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  while (true) {
    std::uint64_t cost = 0;
    for (std::size_t i : members) cost += ds.weight(i) * hamming(ds.record(i).values, q);
    best = std::min(best, cost);
    std::size_t a = 0;
    while (a < q.size() && ++q[a] == attrs[a].size()) q[a++] = 0;
    if (a == q.size()) break;
  }
  return best;
}

/// Sum over records of the distance to the nearest listed medoid.
inline std::uint64_t medoid_cost(const CategoricalDataset& ds, const std::vector<std::size_t>& medoids) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < ds.size(); ++j) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t m : medoids) best = std::min(best, hamming(ds.record(m).values, ds.record(j).values));
    total += ds.weight(j) * best;
  }
  return total;
}

struct MedoidOptimum {
  std::uint64_t cost = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> tuple;
};

/// Recursive enumeration of all k-subsets; first (lexicographic) optimum wins.
inline MedoidOptimum best_medoids(const CategoricalDataset& ds, std::size_t k) {
  MedoidOptimum best;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == k) {
      const auto c = medoid_cost(ds, chosen);
      if (c < best.cost) best = {c, chosen};
      return;
    }
    for (std::size_t i = start; i < ds.size(); ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

/// Optimal k-modes objective over all labelings into k non-empty clusters,
/// fitting each cluster's mode by full product enumeration.
inline std::uint64_t best_kmodes(const CategoricalDataset& ds, std::size_t k) {
  const std::size_t n = ds.size();
  std::vector<std::size_t> label(n, 0);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  while (true) {
    std::vector<std::vector<std::size_t>> clusters(k);
    for (std::size_t i = 0; i < n; ++i) clusters[label[i]].push_back(i);
    if (std::none_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.empty(); })) {
      std::uint64_t cost = 0;
      for (const auto& c : clusters) cost += min_mode_cost(ds, c);
      best = std::min(best, cost);
    }
    std::size_t i = 0;
    while (i < n && ++label[i] == k) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

inline std::filesystem::path data_dir() { return CATMODES_TEST_DATA_DIR; }

}  // namespace catmodes::oracle

#endif  // CATMODES_TESTS_ORACLES_HPP
