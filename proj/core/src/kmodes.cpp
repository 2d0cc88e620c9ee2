#include "catmodes/kmodes.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "catmodes/error.hpp"
#include "catmodes/metric.hpp"
#include "catmodes/random.hpp"
#include "hash.hpp"
#include "parallel.hpp"

namespace catmodes {

FrequencyTable::FrequencyTable(const CategoricalDataset& dataset, std::span<const std::size_t> members) {
  const auto& attrs = dataset.schema().attributes;
  counts_.resize(attrs.size());
  for (std::size_t a = 0; a < attrs.size(); ++a) counts_[a].assign(attrs[a].size(), 0);
  for (std::size_t i : members) {
    const auto& r = dataset.record(i);
    for (std::size_t a = 0; a < r.values.size(); ++a) counts_[a][r.values[a]] += r.weight;
    total_weight_ += r.weight;
  }
}

CategoryId FrequencyTable::most_frequent(std::size_t attribute) const {
  const auto& c = counts_[attribute];
  // max_element keeps the first maximum, i.e. the smallest id.
  return static_cast<CategoryId>(std::max_element(c.begin(), c.end()) - c.begin());
}

ModeVector compute_mode(const CategoricalDataset& dataset, std::span<const std::size_t> members) {
  if (members.empty()) throw InvalidArgument("compute_mode: empty cluster");
  const FrequencyTable table(dataset, members);
  ModeVector mode;
  mode.values.resize(table.num_attributes());
  for (std::size_t a = 0; a < table.num_attributes(); ++a) mode.values[a] = table.most_frequent(a);
  return mode;
}

Cost mode_cost(const CategoricalDataset& dataset, std::span<const std::size_t> members, const ModeVector& mode) {
  Cost total = 0;
  for (std::size_t i : members) total += dataset.weight(i) * distance(dataset.values(i), mode.values);
  return total;
}

std::vector<ModeVector> init_modes(const CategoricalDataset& dataset, const KModesConfig& config) {
  if (config.k == 0) throw InvalidArgument("k must be at least 1");
  // Records whose value vector has not appeared earlier, in file order.
  std::vector<std::size_t> distinct;
  std::unordered_set<std::vector<CategoryId>, detail::VectorHash> seen;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (seen.insert(dataset.record(i).values).second) {
      distinct.push_back(i);
      if (config.init == InitMethod::kFirstKDistinct && distinct.size() == config.k) break;
    }
  }
  if (distinct.size() < config.k) {
    throw InvalidArgument("k = " + std::to_string(config.k) + " exceeds the " + std::to_string(distinct.size()) +
                          " distinct records");
  }

  std::vector<std::size_t> chosen;
  if (config.init == InitMethod::kFirstKDistinct) {
    chosen = distinct;
  } else {
    Rng rng(config.seed);
    for (std::size_t pos : rng.sample(distinct.size(), config.k)) chosen.push_back(distinct[pos]);
  }
  std::vector<ModeVector> modes;
  modes.reserve(chosen.size());
  for (std::size_t i : chosen) modes.push_back(ModeVector{dataset.record(i).values});
  return modes;
}

std::vector<std::size_t> assign_points(const CategoricalDataset& dataset, std::span<const ModeVector> modes,
                                       unsigned threads) {
  if (modes.empty()) throw InvalidArgument("assign_points: no modes");
  const std::size_t m = dataset.num_attributes();
  for (const auto& q : modes) {
    if (q.values.size() != m) throw InvalidArgument("assign_points: mode has wrong number of attributes");
  }
  std::vector<std::size_t> assignment(dataset.size());
  detail::parallel_chunks(dataset.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const CategoryId* x = dataset.values(i).data();
      Distance best = std::numeric_limits<Distance>::max();
      std::size_t best_cluster = 0;
      for (std::size_t c = 0; c < modes.size(); ++c) {
        const Distance d = mismatches(x, modes[c].values.data(), m);
        if (d < best) {
          best = d;
          best_cluster = c;
        }
      }
      assignment[i] = best_cluster;
    }
  });
  return assignment;
}

std::vector<std::vector<std::size_t>> cluster_members(std::span<const std::size_t> assignment, std::size_t k) {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= k) throw InvalidArgument("cluster index out of range in assignment");
    members[assignment[i]].push_back(i);
  }
  return members;
}

namespace {

Cost total_cost(const CategoricalDataset& dataset, std::span<const std::size_t> assignment,
                std::span<const ModeVector> modes) {
  Cost total = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    total += dataset.weight(i) * distance(dataset.values(i), modes[assignment[i]].values);
  }
  return total;
}

// Fills each empty cluster with the record farthest from its current mode,
// taken from a cluster that keeps at least one other record.
std::size_t reseed_empty(const CategoricalDataset& dataset, std::vector<std::size_t>& assignment,
                         std::vector<ModeVector>& modes) {
  const std::size_t k = modes.size();
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t c : assignment) ++sizes[c];
  std::size_t reseeded = 0;
  for (std::size_t empty = 0; empty < k; ++empty) {
    if (sizes[empty] != 0) continue;
    std::size_t farthest = dataset.size();
    Distance far_d = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (sizes[assignment[i]] < 2) continue;
      const Distance d = distance(dataset.values(i), modes[assignment[i]].values);
      if (farthest == dataset.size() || d > far_d) {
        farthest = i;
        far_d = d;
      }
    }
    if (farthest == dataset.size()) throw InvariantViolation("no record available to reseed an empty cluster");
    --sizes[assignment[farthest]];
    assignment[farthest] = empty;
    sizes[empty] = 1;
    modes[empty] = ModeVector{dataset.record(farthest).values};
    ++reseeded;
  }
  return reseeded;
}

}  // namespace

KModesResult run_kmodes(const CategoricalDataset& dataset, const KModesConfig& config) {
  KModesResult result;
  result.modes = init_modes(dataset, config);
  const std::size_t k = config.k;

  auto record = [&](Cost value) {
    if (config.check_monotone && !result.objective_trace.empty() && value > result.objective_trace.back()) {
      throw InvariantViolation("k-modes objective increased from " + std::to_string(result.objective_trace.back()) +
                               " to " + std::to_string(value));
    }
    result.objective_trace.push_back(value);
  };

  std::vector<std::size_t> previous;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    auto assignment = assign_points(dataset, result.modes, config.threads);
    result.reseeded_clusters += reseed_empty(dataset, assignment, result.modes);
    record(total_cost(dataset, assignment, result.modes));
    ++result.iterations;
    if (assignment == previous) {
      result.converged = true;
      break;
    }
    const auto members = cluster_members(assignment, k);
    for (std::size_t c = 0; c < k; ++c) result.modes[c] = compute_mode(dataset, members[c]);
    previous = std::move(assignment);
    record(total_cost(dataset, previous, result.modes));
  }
  result.assignment = std::move(previous);
  if (result.assignment.empty()) {
    // max_iterations == 0: report the initial assignment.
    result.assignment = assign_points(dataset, result.modes, config.threads);
    reseed_empty(dataset, result.assignment, result.modes);
  }
  // Modes always end fitted to the reported partition.
  const auto members = cluster_members(result.assignment, k);
  for (std::size_t c = 0; c < k; ++c) result.modes[c] = compute_mode(dataset, members[c]);
  result.mode_objective = total_cost(dataset, result.assignment, result.modes);
  if (result.objective_trace.empty() || result.mode_objective != result.objective_trace.back()) {
    record(result.mode_objective);
  }
  return result;
}

}  // namespace catmodes
