#include "catmodes/medoids.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>

#include "catmodes/error.hpp"
#include "parallel.hpp"

namespace catmodes {

std::string_view to_string(MedoidAlgorithm algorithm) {
  switch (algorithm) {
    case MedoidAlgorithm::kExhaustive: return "exhaustive";
    case MedoidAlgorithm::kNaiveExhaustive: return "naive-exhaustive";
    case MedoidAlgorithm::kLocalSearch: return "local-search";
  }
  return "unknown";
}

namespace {

constexpr Distance kFar = std::numeric_limits<Distance>::max() / 2;

using Clock = std::chrono::steady_clock;

std::vector<std::uint64_t> weights_of(const CategoricalDataset& dataset) {
  std::vector<std::uint64_t> w(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) w[i] = dataset.weight(i);
  return w;
}

void check_k(std::size_t k, std::size_t n) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > n) {
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " records");
  }
}

// Advances `combo` (strictly increasing values below n) to the next k-subset
// in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (combo[pos] < n - k + pos) {
      ++combo[pos];
      for (std::size_t q = pos + 1; q < k; ++q) combo[q] = combo[q - 1] + 1;
      return true;
    }
  }
  return false;
}

MedoidSolution finish(const DistanceSource& distances, std::vector<std::size_t> medoids, MedoidAlgorithm algorithm,
                      double guarantee, Clock::time_point start) {
  std::sort(medoids.begin(), medoids.end());
  auto cost = cost_of_medoid_set(distances, medoids);
  MedoidSolution solution;
  solution.medoid_indices = std::move(medoids);
  solution.assignment = std::move(cost.assignment);
  solution.medoid_objective = cost.objective;
  solution.algorithm = algorithm;
  solution.guarantee = guarantee;
  solution.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return solution;
}

}  // namespace

MedoidCost cost_of_medoid_set(const DistanceSource& distances, std::span<const std::size_t> indices) {
  const std::size_t n = distances.size();
  if (indices.empty()) throw InvalidArgument("medoid set is empty");
  std::vector<bool> used(n, false);
  for (std::size_t idx : indices) {
    if (idx >= n) throw InvalidArgument("medoid index " + std::to_string(idx) + " out of range");
    if (used[idx]) throw InvalidArgument("duplicate medoid index " + std::to_string(idx));
    used[idx] = true;
  }
  const auto& dataset = distances.dataset();
  MedoidCost out;
  out.assignment.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Distance best = distances(indices[0], j);
    std::size_t best_pos = 0;
    for (std::size_t pos = 1; pos < indices.size(); ++pos) {
      const Distance d = distances(indices[pos], j);
      if (d < best) {
        best = d;
        best_pos = pos;
      }
    }
    out.assignment[j] = best_pos;
    out.objective += dataset.weight(j) * best;
  }
  return out;
}

namespace {

// Depth-first k-subset enumeration sharing a global incumbent bound. A
// subset is abandoned only once its partial cost strictly exceeds the bound,
// so every optimal subset is fully evaluated and ties resolve the same way
// for any thread count.
class ExhaustiveEnumerator {
 public:
  ExhaustiveEnumerator(const DistanceSource& distances, std::size_t k)
      : distances_(distances), n_(distances.size()), k_(k), weights_(weights_of(distances.dataset())) {}

  struct Best {
    Cost cost = std::numeric_limits<Cost>::max();
    std::vector<std::size_t> tuple;

    void offer(Cost c, const std::vector<std::size_t>& t) {
      if (c < cost || (c == cost && t < tuple)) {
        cost = c;
        tuple = t;
      }
    }
  };

  Best run(unsigned threads) {
    std::atomic<std::size_t> next_first{0};
    const std::size_t first_limit = n_ - k_ + 1;
    const unsigned workers = std::max(1u, threads);
    std::vector<Best> local(workers);
    detail::parallel_chunks(workers, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t w = begin; w < end; ++w) {
        Worker worker(*this, local[w]);
        for (std::size_t first = next_first++; first < first_limit; first = next_first++) worker.start(first);
      }
    });
    Best best;
    for (const auto& b : local) {
      if (!b.tuple.empty()) best.offer(b.cost, b.tuple);
    }
    return best;
  }

 private:
  struct Worker {
    Worker(ExhaustiveEnumerator& e, Best& best)
        : e(e), best(best), tuple(e.k_), levels(e.k_ + 1, std::vector<Distance>(e.n_)), row(e.n_) {
      std::fill(levels[0].begin(), levels[0].end(), kFar);
    }

    void start(std::size_t first) { descend(0, first); }

    // Places `idx` at position `depth` and recurses over the remaining slots.
    void descend(std::size_t depth, std::size_t idx) {
      tuple[depth] = idx;
      if (depth + 1 == e.k_) {
        leaf(depth);
        return;
      }
      const auto& prev = levels[depth];
      auto& next = levels[depth + 1];
      e.distances_.row(idx, row);
      for (std::size_t j = 0; j < e.n_; ++j) next[j] = std::min(prev[j], row[j]);
      const std::size_t remaining = e.k_ - depth - 1;
      for (std::size_t i = idx + 1; i + remaining <= e.n_; ++i) descend(depth + 1, i);
    }

    void leaf(std::size_t depth) {
      const auto& cur = levels[depth];
      const std::size_t idx = tuple[depth];
      const Cost bound = e.bound_.load(std::memory_order_relaxed);
      Cost sum = 0;
      bool pruned = false;
      if (const std::uint8_t* bytes = e.distances_.matrix_bytes()) {
        pruned = accumulate(bytes + idx * e.n_, cur, bound, sum);
      } else {
        e.distances_.row(idx, row);
        pruned = accumulate(row.data(), cur, bound, sum);
      }
      if (pruned) return;
      best.offer(sum, tuple);
      Cost seen = e.bound_.load(std::memory_order_relaxed);
      while (sum < seen && !e.bound_.compare_exchange_weak(seen, sum, std::memory_order_relaxed)) {
      }
    }

    template <typename T>
    bool accumulate(const T* dist_row, const std::vector<Distance>& cur, Cost bound, Cost& sum) const {
      constexpr std::size_t kBlock = 64;
      const std::uint64_t* w = e.weights_.data();
      for (std::size_t j0 = 0; j0 < e.n_; j0 += kBlock) {
        const std::size_t j1 = std::min(e.n_, j0 + kBlock);
        for (std::size_t j = j0; j < j1; ++j) {
          const Distance d = static_cast<Distance>(dist_row[j]);
          sum += w[j] * std::min(cur[j], d);
        }
        if (sum > bound) return true;
      }
      return false;
    }

    ExhaustiveEnumerator& e;
    Best& best;
    std::vector<std::size_t> tuple;
    std::vector<std::vector<Distance>> levels;
    std::vector<Distance> row;
  };

  const DistanceSource& distances_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::uint64_t> weights_;
  std::atomic<Cost> bound_{std::numeric_limits<Cost>::max()};
};

}  // namespace

MedoidSolution exhaustive_search(const DistanceSource& distances, std::size_t k, const ExhaustiveOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = distances.size();
  check_k(k, n);
  if (n > options.size_limit && !options.force) {
    throw ResourceError("exhaustive search over " + std::to_string(n) + " records exceeds the limit of " +
                        std::to_string(options.size_limit) + "; pass the force option to run it anyway");
  }
  ExhaustiveEnumerator enumerator(distances, k);
  auto best = enumerator.run(options.threads);
  return finish(distances, std::move(best.tuple), MedoidAlgorithm::kExhaustive, 2.0, start);
}

MedoidSolution naive_exhaustive_search(const DistanceSource& distances, std::size_t k) {
  const auto start = Clock::now();
  const std::size_t n = distances.size();
  check_k(k, n);
  const auto& dataset = distances.dataset();
  std::vector<std::size_t> combo(k);
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<std::size_t> best_combo;
  Cost best = std::numeric_limits<Cost>::max();
  do {
    Cost total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Distance nearest = kFar;
      for (std::size_t medoid : combo) nearest = std::min(nearest, distances(medoid, j));
      total += dataset.weight(j) * nearest;
    }
    if (total < best) {
      best = total;
      best_combo = combo;
    }
  } while (next_combination(combo, n));
  return finish(distances, std::move(best_combo), MedoidAlgorithm::kNaiveExhaustive, 2.0, start);
}

double local_search_guarantee(std::size_t p) {
  return 2.0 * (3.0 + 2.0 / static_cast<double>(p));
}

namespace {

struct Move {
  Cost cost = std::numeric_limits<Cost>::max();
  std::vector<std::size_t> removed;  // positions in the medoid list
  std::vector<std::size_t> added;    // record indices
};

class SwapSearch {
 public:
  SwapSearch(const DistanceSource& distances, std::size_t k, const LocalSearchConfig& config)
      : distances_(distances),
        n_(distances.size()),
        k_(k),
        config_(config),
        weights_(weights_of(distances.dataset())),
        near_(n_),
        d1_(n_),
        d2_(n_),
        row_(n_) {}

  struct Outcome {
    std::vector<std::size_t> medoids;
    Cost cost = 0;
    std::size_t steps = 0;
  };

  Outcome run(std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    out.medoids = rng.sample(n_, k_);
    out.cost = refresh(out.medoids);
    while (out.steps < config_.max_steps && out.cost > 0) {
      const Move move = config_.p == 1 ? best_single_swap(out.medoids) : best_multi_swap(out.medoids, out.cost);
      if (move.cost >= out.cost) break;
      const double gain = static_cast<double>(out.cost - move.cost);
      if (gain < config_.min_relative_improvement * static_cast<double>(out.cost)) break;
      for (std::size_t t = 0; t < move.removed.size(); ++t) out.medoids[move.removed[t]] = move.added[t];
      out.cost = refresh(out.medoids);
      ++out.steps;
    }
    return out;
  }

 private:
  // Recomputes nearest position, nearest and second-nearest distances.
  Cost refresh(const std::vector<std::size_t>& medoids) {
    std::fill(d1_.begin(), d1_.end(), kFar);
    std::fill(d2_.begin(), d2_.end(), kFar);
    for (std::size_t pos = 0; pos < medoids.size(); ++pos) {
      distances_.row(medoids[pos], row_);
      for (std::size_t j = 0; j < n_; ++j) {
        const Distance d = row_[j];
        if (d < d1_[j]) {
          d2_[j] = d1_[j];
          d1_[j] = d;
          near_[j] = pos;
        } else if (d < d2_[j]) {
          d2_[j] = d;
        }
      }
    }
    Cost total = 0;
    for (std::size_t j = 0; j < n_; ++j) total += weights_[j] * d1_[j];
    return total;
  }

  // Evaluates every (position, candidate) exchange in O(n + k) per candidate:
  // records served by the removed medoid fall back to min(second, candidate).
  Move best_single_swap(const std::vector<std::size_t>& medoids) {
    std::vector<bool> is_medoid(n_, false);
    for (std::size_t m : medoids) is_medoid[m] = true;
    std::vector<std::int64_t> correction(k_);
    Move best;
    std::size_t best_pos = 0, best_h = 0;
    for (std::size_t h = 0; h < n_; ++h) {
      if (is_medoid[h]) continue;
      distances_.row(h, row_);
      std::fill(correction.begin(), correction.end(), 0);
      Cost base = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        const Distance dh = row_[j];
        const Distance keep = std::min(d1_[j], dh);
        base += weights_[j] * keep;
        correction[near_[j]] += static_cast<std::int64_t>(weights_[j]) *
                                (static_cast<std::int64_t>(std::min(d2_[j], dh)) - static_cast<std::int64_t>(keep));
      }
      for (std::size_t pos = 0; pos < k_; ++pos) {
        const Cost cost = static_cast<Cost>(static_cast<std::int64_t>(base) + correction[pos]);
        if (cost < best.cost || (cost == best.cost && (pos < best_pos || (pos == best_pos && h < best_h)))) {
          best.cost = cost;
          best_pos = pos;
          best_h = h;
        }
      }
    }
    if (best.cost != std::numeric_limits<Cost>::max()) {
      best.removed = {best_pos};
      best.added = {best_h};
    }
    return best;
  }

  // Exchanges of t = 1..p medoids, enumerated by t, then removed positions,
  // then added records, all lexicographic; the first strictly best wins.
  Move best_multi_swap(const std::vector<std::size_t>& medoids, Cost current) {
    std::vector<bool> is_medoid(n_, false);
    for (std::size_t m : medoids) is_medoid[m] = true;
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_medoid[i]) outside.push_back(i);
    }
    Move best;
    best.cost = current;
    std::vector<std::size_t> trial(medoids);
    const std::size_t t_max = std::min({config_.p, k_, outside.size()});
    for (std::size_t t = 1; t <= t_max; ++t) {
      std::vector<std::size_t> rem(t), add(t);
      std::iota(rem.begin(), rem.end(), 0);
      do {
        std::iota(add.begin(), add.end(), 0);
        do {
          trial = medoids;
          for (std::size_t q = 0; q < t; ++q) trial[rem[q]] = outside[add[q]];
          const auto cost = bounded_cost(trial, best.cost);
          if (cost && *cost < best.cost) {
            best.cost = *cost;
            best.removed = rem;
            best.added.resize(t);
            for (std::size_t q = 0; q < t; ++q) best.added[q] = outside[add[q]];
          }
        } while (next_combination(add, outside.size()));
      } while (next_combination(rem, k_));
    }
    if (best.removed.empty()) best.cost = std::numeric_limits<Cost>::max();
    return best;
  }

  // Objective of `medoids`, or nullopt once it reaches `bound`.
  std::optional<Cost> bounded_cost(const std::vector<std::size_t>& medoids, Cost bound) const {
    Cost total = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      Distance nearest = kFar;
      for (std::size_t m : medoids) nearest = std::min(nearest, distances_(m, j));
      total += weights_[j] * nearest;
      if (total >= bound) return std::nullopt;
    }
    return total;
  }

  const DistanceSource& distances_;
  std::size_t n_;
  std::size_t k_;
  LocalSearchConfig config_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::size_t> near_;
  std::vector<Distance> d1_, d2_;
  std::vector<Distance> row_;
};

}  // namespace

MedoidSolution local_search(const DistanceSource& distances, std::size_t k, const LocalSearchConfig& config) {
  const auto start = Clock::now();
  const std::size_t n = distances.size();
  check_k(k, n);
  if (config.p == 0) throw InvalidArgument("swap width p must be at least 1");
  if (config.restarts == 0) throw InvalidArgument("restarts must be at least 1");

  std::vector<SwapSearch::Outcome> outcomes(config.restarts);
  detail::parallel_chunks(config.restarts, config.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    SwapSearch search(distances, k, config);
    for (std::size_t r = begin; r < end; ++r) outcomes[r] = search.run(derive_seed(config.seed, r));
  });
  std::size_t winner = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].cost < outcomes[winner].cost) winner = r;
  }
  auto solution = finish(distances, std::move(outcomes[winner].medoids), MedoidAlgorithm::kLocalSearch,
                         local_search_guarantee(config.p), start);
  solution.steps = outcomes[winner].steps;
  return solution;
}

std::pair<Cost, std::size_t> best_member(const DistanceSource& distances, std::span<const std::size_t> members) {
  if (members.empty()) throw InvalidArgument("best_member: empty cluster");
  const auto& dataset = distances.dataset();
  Cost best = std::numeric_limits<Cost>::max();
  std::size_t best_idx = members[0];
  for (std::size_t c : members) {
    Cost total = 0;
    for (std::size_t j : members) {
      total += dataset.weight(j) * distances(c, j);
      if (total >= best) break;
    }
    if (total < best) {
      best = total;
      best_idx = c;
    }
  }
  return {best, best_idx};
}

MemberBoundReport audit_member_bound(const DistanceSource& distances, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const auto& dataset = distances.dataset();
  const std::size_t n = dataset.size();
  if (n == 0) throw InvalidArgument("audit_member_bound: empty dataset");
  MemberBoundReport report;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t size = 1 + rng.below(n);
    auto members = rng.sample(n, size);
    std::sort(members.begin(), members.end());
    const Cost mode = mode_cost(dataset, members, compute_mode(dataset, members));
    const Cost medoid = best_member(distances, members).first;
    double ratio = 1.0;
    if (mode > 0) {
      ratio = static_cast<double>(medoid) / static_cast<double>(mode);
    } else if (medoid > 0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    // Exact integer form of 1 <= ratio <= 2.
    const bool ok = medoid >= mode && medoid <= 2 * mode;
    if (!ok) ++report.violations;
    report.max_ratio = std::max(report.max_ratio, ratio);
    std::size_t bin = 10;
    if (ratio <= 2.0) bin = std::min<std::size_t>(9, static_cast<std::size_t>(std::max(0.0, (ratio - 1.0) * 10.0)));
    ++report.histogram[bin];
    ++report.trials;
  }
  return report;
}

CategoricalDataset random_instance(const InstanceParams& params, Rng& rng) {
  if (params.min_n == 0 || params.min_n > params.max_n || params.max_m == 0 || params.max_categories == 0) {
    throw InvalidArgument("invalid instance parameters");
  }
  const std::size_t n = params.min_n + rng.below(params.max_n - params.min_n + 1);
  const std::size_t m = 1 + rng.below(params.max_m);
  Schema schema;
  std::vector<std::size_t> cats(m);
  for (std::size_t a = 0; a < m; ++a) {
    cats[a] = 1 + rng.below(params.max_categories);
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cats[a]; ++c) names.push_back("v" + std::to_string(c));
    schema.attributes.emplace_back("a" + std::to_string(a), std::move(names));
  }
  std::vector<Record> records(n);
  for (auto& r : records) {
    r.values.resize(m);
    for (std::size_t a = 0; a < m; ++a) r.values[a] = static_cast<CategoryId>(rng.below(cats[a]));
  }
  return CategoricalDataset(std::move(schema), std::move(records));
}

Cost brute_force_kmodes_optimum(const CategoricalDataset& dataset, std::size_t k, std::uint64_t max_assignments) {
  const std::size_t n = dataset.size();
  check_k(k, n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > max_assignments / k) {
      throw ResourceError("instance too large for the partition oracle: " + std::to_string(k) + "^" +
                          std::to_string(n) + " assignments");
    }
    total *= k;
  }
  const std::size_t m = dataset.num_attributes();
  const auto& attrs = dataset.schema().attributes;
  std::vector<std::size_t> label(n, 0);
  Cost best = std::numeric_limits<Cost>::max();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    std::vector<std::uint64_t> size(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      label[i] = static_cast<std::size_t>(c % k);
      c /= k;
      size[label[i]] += dataset.weight(i);
    }
    if (std::find(size.begin(), size.end(), 0) != size.end()) continue;
    // Each cluster's best mode leaves (cluster weight - top count) mismatches per attribute.
    Cost cost = 0;
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<std::uint64_t> counts(k * attrs[a].size(), 0);
      for (std::size_t i = 0; i < n; ++i) counts[label[i] * attrs[a].size() + dataset.values(i)[a]] += dataset.weight(i);
      for (std::size_t cl = 0; cl < k; ++cl) {
        const auto first = counts.begin() + static_cast<std::ptrdiff_t>(cl * attrs[a].size());
        cost += size[cl] - *std::max_element(first, first + static_cast<std::ptrdiff_t>(attrs[a].size()));
      }
    }
    best = std::min(best, cost);
  }
  return best;
}

OptimumBoundReport audit_optimum_bound(const InstanceParams& params, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  InstanceParams p = params;
  p.min_n = std::max(p.min_n, p.k);
  OptimumBoundReport report;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto instance = random_instance(p, rng);
    const DistanceSource distances(instance);
    const Cost median = exhaustive_search(distances, p.k).medoid_objective;
    const Cost modes = brute_force_kmodes_optimum(instance, p.k);
    if (median > 2 * modes) ++report.violations;
    const double ratio = modes == 0 ? (median == 0 ? 1.0 : std::numeric_limits<double>::infinity())
                                    : static_cast<double>(median) / static_cast<double>(modes);
    report.max_ratio = std::max(report.max_ratio, ratio);
    ++report.trials;
  }
  return report;
}

OracleReport audit_exhaustive_oracle(const InstanceParams& params, std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  OracleReport report;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto instance = random_instance(params, rng);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, instance.size()));
    const DistanceSource distances(instance);
    ExhaustiveOptions options;
    options.threads = threads;
    const auto pruned = exhaustive_search(distances, k, options);
    const auto naive = naive_exhaustive_search(distances, k);
    if (pruned.medoid_objective != naive.medoid_objective || pruned.medoid_indices != naive.medoid_indices) {
      ++report.mismatches;
    }
    ++report.trials;
  }
  return report;
}

}  // namespace catmodes
