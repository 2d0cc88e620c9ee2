#ifndef CATMODES_METRIC_HPP
#define CATMODES_METRIC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "catmodes/dataset.hpp"

namespace catmodes {

/// Number of mismatching attributes between two records, in [0, m].
using Distance = std::uint32_t;

/// Simple matching dissimilarity. Throws InvalidArgument when the vectors
/// have different lengths.
Distance distance(std::span<const CategoryId> x, std::span<const CategoryId> y);
inline Distance distance(const Record& x, const Record& y) { return distance(x.values, y.values); }

/// Unchecked inner loop shared by every solver.
inline Distance mismatches(const CategoryId* x, const CategoryId* y, std::size_t m) {
  Distance d = 0;
  for (std::size_t a = 0; a < m; ++a) d += x[a] != y[a];
  return d;
}

inline constexpr std::size_t kDefaultMatrixBudget = std::size_t{1} << 30;

/// Dense symmetric n x n table of record distances, stored in the narrowest
/// unsigned width that holds m.
class DistanceMatrix {
 public:
  /// Rows are filled by `threads` workers over disjoint row ranges. Throws
  /// ResourceError if the table would exceed `budget_bytes`.
  static DistanceMatrix compute(const CategoricalDataset& dataset, unsigned threads = 1,
                                std::size_t budget_bytes = kDefaultMatrixBudget);

  /// Bytes the matrix for `dataset` would occupy.
  static std::size_t required_bytes(const CategoricalDataset& dataset);

  std::size_t size() const { return n_; }
  std::size_t element_bytes() const;
  Distance operator()(std::size_t i, std::size_t j) const;
  void row(std::size_t i, std::span<Distance> out) const;
  /// Raw row-major storage when entries are one byte wide, else nullptr.
  const std::uint8_t* bytes() const;

 private:
  using Storage = std::variant<std::vector<std::uint8_t>, std::vector<std::uint16_t>, std::vector<std::uint32_t>>;
  DistanceMatrix(std::size_t n, Storage storage) : n_(n), storage_(std::move(storage)) {}

  std::size_t n_ = 0;
  Storage storage_;
};

enum class MatrixMode { kAuto, kAlways, kNever };

/// Distance lookup used by the medoid solvers, either backed by a
/// DistanceMatrix or computed on the fly. Both modes give identical values.
class DistanceSource {
 public:
  /// kAuto materializes the matrix when it fits the budget, otherwise falls
  /// back to on-the-fly distances. kAlways propagates the ResourceError.
  DistanceSource(const CategoricalDataset& dataset, MatrixMode mode = MatrixMode::kAuto, unsigned threads = 1,
                 std::size_t budget_bytes = kDefaultMatrixBudget);
  DistanceSource(const DistanceSource&) = delete;
  DistanceSource& operator=(const DistanceSource&) = delete;

  const CategoricalDataset& dataset() const { return *dataset_; }
  std::size_t size() const { return dataset_->size(); }
  bool has_matrix() const { return matrix_.has_value(); }
  /// Row-major one-byte matrix cells when materialized at that width.
  const std::uint8_t* matrix_bytes() const { return bytes_; }

  Distance operator()(std::size_t i, std::size_t j) const {
    if (bytes_ != nullptr) return bytes_[i * n_ + j];
    if (matrix_) return (*matrix_)(i, j);
    return mismatches(&flat_[i * m_], &flat_[j * m_], m_);
  }

  /// Fills out[j] = d(i, j) for every record j.
  void row(std::size_t i, std::span<Distance> out) const;

 private:
  const CategoricalDataset* dataset_;
  std::size_t n_;
  std::size_t m_;
  std::vector<CategoryId> flat_;
  std::optional<DistanceMatrix> matrix_;
  const std::uint8_t* bytes_ = nullptr;
};

enum class Axiom {
  kPositivity,    // d(X, Y) > 0 when X != Y
  kIdentity,      // d(X, X) = 0
  kSymmetry,      // d(X, Y) = d(Y, X)
  kTriangle,      // d(X, Y) + d(Y, Z) >= d(X, Z)
  kSetIdentity,   // d(X, Y) = m - |X intersect Y| viewing records as attribute-value sets
};

std::string_view to_string(Axiom axiom);

struct MetricViolation {
  std::size_t x, y, z;
  Axiom axiom;
};

struct MetricReport {
  std::size_t triples_checked = 0;
  std::vector<MetricViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Samples `sample_size` record triples uniformly with replacement and checks
/// every metric axiom on each.
MetricReport check_metric_properties(const CategoricalDataset& dataset, std::size_t sample_size,
                                     std::uint64_t seed);

}  // namespace catmodes

#endif  // CATMODES_METRIC_HPP
