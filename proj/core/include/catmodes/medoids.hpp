#ifndef CATMODES_MEDOIDS_HPP
#define CATMODES_MEDOIDS_HPP

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "catmodes/dataset.hpp"
#include "catmodes/kmodes.hpp"
#include "catmodes/metric.hpp"
#include "catmodes/random.hpp"

namespace catmodes {

enum class MedoidAlgorithm { kExhaustive, kNaiveExhaustive, kLocalSearch };

std::string_view to_string(MedoidAlgorithm algorithm);

/// k member representatives with the induced nearest-medoid partition.
struct MedoidSolution {
  /// Sorted ascending; the assignment refers to positions in this list.
  std::vector<std::size_t> medoid_indices;
  std::vector<std::size_t> assignment;
  Cost medoid_objective = 0;
  MedoidAlgorithm algorithm = MedoidAlgorithm::kExhaustive;
  /// Approximation factor with respect to the optimal k-modes objective:
  /// 2 for the exact k-median optimum, 2 * (3 + 2/p) for p-swap local search.
  double guarantee = 2.0;
  std::chrono::nanoseconds elapsed{0};
  /// Local search only: improving swaps applied by the winning restart.
  std::size_t steps = 0;
};

struct MedoidCost {
  Cost objective = 0;
  std::vector<std::size_t> assignment;
};

/// Nearest-medoid assignment and weighted objective. Ties go to the lowest
/// position in `indices`. Throws InvalidArgument on duplicate or
/// out-of-range indices.
MedoidCost cost_of_medoid_set(const DistanceSource& distances, std::span<const std::size_t> indices);

struct ExhaustiveOptions {
  unsigned threads = 1;
  /// Instances with more records than this are refused unless forced.
  std::size_t size_limit = 2000;
  bool force = false;
};

/// Exact k-median over dataset members by enumerating every k-subset, with
/// incumbent-bound pruning. Returns the lexicographically smallest optimal
/// index tuple regardless of the thread count.
MedoidSolution exhaustive_search(const DistanceSource& distances, std::size_t k,
                                 const ExhaustiveOptions& options = {});

/// Pruning-free single-threaded enumeration; reference for exhaustive_search.
MedoidSolution naive_exhaustive_search(const DistanceSource& distances, std::size_t k);

struct LocalSearchConfig {
  /// Maximum number of medoids exchanged in one move.
  std::size_t p = 1;
  std::uint64_t seed = 0;
  /// A move is taken only if it lowers the objective by at least this
  /// fraction of the current objective.
  double min_relative_improvement = 1e-9;
  std::size_t max_steps = 10000;
  std::size_t restarts = 1;
  unsigned threads = 1;
};

/// Swap-based local search for metric k-median from seeded random starts;
/// returns the best restart (lowest objective, then lowest restart index).
MedoidSolution local_search(const DistanceSource& distances, std::size_t k, const LocalSearchConfig& config);

/// Approximation factor annotation for p-swap local search: 2 * (3 + 2/p).
double local_search_guarantee(std::size_t p);

struct MemberBoundReport {
  std::size_t trials = 0;
  double max_ratio = 0.0;
  /// Ratio histogram over [1, 2] in tenths; the last bin counts ratios > 2.
  std::array<std::size_t, 11> histogram{};
  std::size_t violations = 0;
  bool passed() const { return violations == 0; }
};

/// Best single medoid cost over the cluster's members, and its position.
std::pair<Cost, std::size_t> best_member(const DistanceSource& distances, std::span<const std::size_t> members);

/// For random non-empty record subsets, compares the best member
/// representative's cost with the mode's cost. Ratio 0/0 counts as 1.
MemberBoundReport audit_member_bound(const DistanceSource& distances, std::size_t trials, std::uint64_t seed);

struct InstanceParams {
  std::size_t min_n = 2;
  std::size_t max_n = 10;
  std::size_t max_m = 4;
  std::size_t max_categories = 3;
  std::size_t k = 2;
};

/// Random small dataset: n, m and per-attribute category counts drawn
/// uniformly within the bounds.
CategoricalDataset random_instance(const InstanceParams& params, Rng& rng);

/// Optimal k-modes objective by enumerating every assignment of records to
/// k non-empty clusters. Throws ResourceError above `max_assignments`.
Cost brute_force_kmodes_optimum(const CategoricalDataset& dataset, std::size_t k,
                                std::uint64_t max_assignments = 1u << 22);

struct OptimumBoundReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;
  bool passed() const { return violations == 0; }
};

/// Checks exact k-median optimum <= 2 * exact k-modes optimum on random
/// instances.
OptimumBoundReport audit_optimum_bound(const InstanceParams& params, std::size_t trials, std::uint64_t seed);

struct OracleReport {
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  bool passed() const { return mismatches == 0; }
};

/// Compares exhaustive_search against naive_exhaustive_search on random
/// instances with k drawn from [1, 3].
OracleReport audit_exhaustive_oracle(const InstanceParams& params, std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 1);

}  // namespace catmodes

#endif  // CATMODES_MEDOIDS_HPP
