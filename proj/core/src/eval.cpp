#include "catmodes/eval.hpp"

#include <algorithm>
#include <numeric>

#include "catmodes/error.hpp"
#include "catmodes/medoids.hpp"

namespace catmodes {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

Fraction::Fraction(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw InvalidArgument("fraction with zero denominator");
  const std::uint64_t g = std::gcd(numerator, denominator);
  num = numerator / g;
  den = denominator / g;
}

std::string Fraction::rounded(int decimals) const {
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // floor(num * scale / den + 1/2)
  const Wide scaled = (static_cast<Wide>(num) * scale * 2 + den) / (2 * static_cast<Wide>(den));
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  const auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(decimals) - digits.size(), '0') + digits;
  }
  return out;
}

std::string Fraction::str() const { return std::to_string(num) + "/" + std::to_string(den); }

ConfusionMatrix::ConfusionMatrix(std::size_t clusters, std::size_t classes)
    : clusters_(clusters), classes_(classes), counts_(clusters * classes, 0) {}

ConfusionMatrix ConfusionMatrix::from_counts(const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t classes = rows.empty() ? 0 : rows.front().size();
  ConfusionMatrix matrix(rows.size(), classes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != classes) throw InvalidArgument("confusion rows have different lengths");
    for (std::size_t j = 0; j < classes; ++j) matrix.at(i, j) = rows[i][j];
  }
  return matrix;
}

std::uint64_t ConfusionMatrix::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }

std::uint64_t ConfusionMatrix::dominant(std::size_t cluster) const {
  if (classes_ == 0) return 0;
  const auto first = counts_.begin() + static_cast<std::ptrdiff_t>(cluster * classes_);
  return *std::max_element(first, first + static_cast<std::ptrdiff_t>(classes_));
}

ConfusionMatrix confusion(const CategoricalDataset& dataset, std::span<const std::size_t> assignment, std::size_t k) {
  const auto& labels = dataset.schema().label_domain;
  if (!labels) throw InvalidArgument("confusion matrix needs class labels");
  if (assignment.size() != dataset.size()) throw InvalidArgument("assignment does not cover every record");
  ConfusionMatrix matrix(k, labels->size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (assignment[i] >= k) throw InvalidArgument("cluster index out of range in assignment");
    matrix.at(assignment[i], *dataset.record(i).label) += dataset.weight(i);
  }
  return matrix;
}

AccuracyError accuracy_error(const ConfusionMatrix& matrix) {
  const std::uint64_t n = matrix.total();
  if (n == 0) throw InvalidArgument("accuracy of an empty confusion matrix");
  std::uint64_t correct = 0;
  for (std::size_t i = 0; i < matrix.clusters(); ++i) correct += matrix.dominant(i);
  return {Fraction(correct, n), Fraction(n - correct, n)};
}

namespace {

std::vector<std::vector<std::size_t>> nonempty_clusters(std::span<const std::size_t> assignment, std::size_t k) {
  auto members = cluster_members(assignment, k);
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) throw InvalidArgument("cluster " + std::to_string(c) + " is empty");
  }
  return members;
}

}  // namespace

Cost objective_under_modes(const CategoricalDataset& dataset, std::span<const std::size_t> assignment, std::size_t k) {
  if (assignment.size() != dataset.size()) throw InvalidArgument("assignment does not cover every record");
  Cost total = 0;
  for (const auto& members : nonempty_clusters(assignment, k)) {
    total += mode_cost(dataset, members, compute_mode(dataset, members));
  }
  return total;
}

Cost objective_under_medoids(const DistanceSource& distances, std::span<const std::size_t> assignment, std::size_t k) {
  if (assignment.size() != distances.size()) throw InvalidArgument("assignment does not cover every record");
  Cost total = 0;
  for (const auto& members : nonempty_clusters(assignment, k)) total += best_member(distances, members).first;
  return total;
}

Cost objective_under_medoids(const DistanceSource& distances, std::span<const std::size_t> medoid_indices) {
  return cost_of_medoid_set(distances, medoid_indices).objective;
}

EvalReport evaluate(const DistanceSource& distances, std::span<const std::size_t> assignment, std::size_t k,
                    std::optional<Cost> medoid_objective) {
  const auto& dataset = distances.dataset();
  EvalReport report;
  if (dataset.has_labels()) {
    report.confusion = confusion(dataset, assignment, k);
    report.scores = accuracy_error(*report.confusion);
  }
  report.mode_objective = objective_under_modes(dataset, assignment, k);
  report.medoid_objective = medoid_objective ? medoid_objective : objective_under_medoids(distances, assignment, k);
  return report;
}

}  // namespace catmodes
