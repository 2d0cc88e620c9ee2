#ifndef CATMODES_KMODES_HPP
#define CATMODES_KMODES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "catmodes/dataset.hpp"

namespace catmodes {

/// Weighted sum of distances; always an exact integer.
using Cost = std::uint64_t;

/// A cluster representative; need not be a record of the dataset.
struct ModeVector {
  std::vector<CategoryId> values;
  bool operator==(const ModeVector&) const = default;
};

/// Weighted per-attribute category counts of a record subset.
class FrequencyTable {
 public:
  FrequencyTable(const CategoricalDataset& dataset, std::span<const std::size_t> members);

  std::uint64_t total_weight() const { return total_weight_; }
  std::size_t num_attributes() const { return counts_.size(); }
  std::uint64_t count(std::size_t attribute, CategoryId category) const { return counts_[attribute][category]; }
  std::span<const std::uint64_t> counts(std::size_t attribute) const { return counts_[attribute]; }
  /// Most frequent category of `attribute`; ties go to the smallest id.
  CategoryId most_frequent(std::size_t attribute) const;

 private:
  std::uint64_t total_weight_ = 0;
  std::vector<std::vector<std::uint64_t>> counts_;
};

/// Mode of a non-empty record subset: per attribute the category of maximal
/// weighted frequency, smallest id on ties. Throws InvalidArgument if empty.
ModeVector compute_mode(const CategoricalDataset& dataset, std::span<const std::size_t> members);

/// D(S, Q): weighted sum of distances from the members to `mode`.
Cost mode_cost(const CategoricalDataset& dataset, std::span<const std::size_t> members, const ModeVector& mode);

enum class InitMethod { kFirstKDistinct, kRandomSeeded };

struct KModesConfig {
  std::size_t k = 2;
  InitMethod init = InitMethod::kFirstKDistinct;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 100;
  /// Debug mode: throw InvariantViolation if the objective ever increases.
  bool check_monotone = false;
  unsigned threads = 1;
};

struct KModesResult {
  std::vector<std::size_t> assignment;
  std::vector<ModeVector> modes;
  Cost mode_objective = 0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective after every assignment and every mode update, in order.
  std::vector<Cost> objective_trace;
  std::size_t reseeded_clusters = 0;
};

/// Initial modes. First-k-distinct takes the first k records with pairwise
/// distinct value vectors; random-seeded draws k of the distinct vectors.
/// Throws InvalidArgument if fewer than k distinct vectors exist.
std::vector<ModeVector> init_modes(const CategoricalDataset& dataset, const KModesConfig& config);

/// Nearest mode per record, ties to the lowest cluster index.
std::vector<std::size_t> assign_points(const CategoricalDataset& dataset, std::span<const ModeVector> modes,
                                       unsigned threads = 1);

/// Lloyd-style alternation of assign_points and compute_mode until the
/// assignment repeats or max_iterations is reached.
KModesResult run_kmodes(const CategoricalDataset& dataset, const KModesConfig& config);

/// Member lists per cluster for an assignment over k clusters.
std::vector<std::vector<std::size_t>> cluster_members(std::span<const std::size_t> assignment, std::size_t k);

}  // namespace catmodes

#endif  // CATMODES_KMODES_HPP
