#ifndef CATMODES_EVAL_HPP
#define CATMODES_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catmodes/dataset.hpp"
#include "catmodes/kmodes.hpp"
#include "catmodes/metric.hpp"

namespace catmodes {

/// Exact non-negative rational, kept in lowest terms.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Fraction() = default;
  Fraction(std::uint64_t numerator, std::uint64_t denominator);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Decimal rendering rounded half-up, e.g. rounded(3) == "0.136".
  std::string rounded(int decimals) const;
  /// "num/den".
  std::string str() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Weighted counts of (cluster, class) pairs.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::size_t clusters, std::size_t classes);
  /// Rows are clusters, columns classes.
  static ConfusionMatrix from_counts(const std::vector<std::vector<std::uint64_t>>& rows);

  std::size_t clusters() const { return clusters_; }
  std::size_t classes() const { return classes_; }
  std::uint64_t& at(std::size_t cluster, std::size_t cls) { return counts_[cluster * classes_ + cls]; }
  std::uint64_t at(std::size_t cluster, std::size_t cls) const { return counts_[cluster * classes_ + cls]; }
  std::uint64_t total() const;
  /// a_i: count of the dominant class within cluster i.
  std::uint64_t dominant(std::size_t cluster) const;

 private:
  std::size_t clusters_;
  std::size_t classes_;
  std::vector<std::uint64_t> counts_;
};

/// Requires labels; throws InvalidArgument otherwise.
ConfusionMatrix confusion(const CategoricalDataset& dataset, std::span<const std::size_t> assignment, std::size_t k);

struct AccuracyError {
  Fraction accuracy;
  Fraction error;
};

/// r = sum of per-cluster dominant counts / n and e = 1 - r, exactly.
AccuracyError accuracy_error(const ConfusionMatrix& matrix);

/// Sum over clusters of D(S_i, mode(S_i)). Throws on empty clusters.
Cost objective_under_modes(const CategoricalDataset& dataset, std::span<const std::size_t> assignment, std::size_t k);

/// Sum over clusters of the best member representative's cost.
Cost objective_under_medoids(const DistanceSource& distances, std::span<const std::size_t> assignment, std::size_t k);

/// Nearest-medoid objective of a medoid set.
Cost objective_under_medoids(const DistanceSource& distances, std::span<const std::size_t> medoid_indices);

struct EvalReport {
  std::optional<ConfusionMatrix> confusion;
  std::optional<AccuracyError> scores;
  Cost mode_objective = 0;
  std::optional<Cost> medoid_objective;
};

/// Confusion and scores (when labelled) plus both objective readings.
EvalReport evaluate(const DistanceSource& distances, std::span<const std::size_t> assignment, std::size_t k,
                    std::optional<Cost> medoid_objective = std::nullopt);

}  // namespace catmodes

#endif  // CATMODES_EVAL_HPP
