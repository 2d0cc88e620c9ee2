#include "catmodes/metric.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <set>
#include <utility>

#include "catmodes/error.hpp"
#include "catmodes/random.hpp"
#include "parallel.hpp"

namespace catmodes {

Distance distance(std::span<const CategoryId> x, std::span<const CategoryId> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("distance: records have " + std::to_string(x.size()) + " and " +
                          std::to_string(y.size()) + " attributes");
  }
  return mismatches(x.data(), y.data(), x.size());
}

namespace {

std::size_t width_for(std::size_t m) {
  if (m <= std::numeric_limits<std::uint8_t>::max()) return 1;
  if (m <= std::numeric_limits<std::uint16_t>::max()) return 2;
  return 4;
}

std::vector<CategoryId> flatten(const CategoricalDataset& dataset) {
  std::vector<CategoryId> flat;
  flat.reserve(dataset.size() * dataset.num_attributes());
  for (const auto& r : dataset.records()) flat.insert(flat.end(), r.values.begin(), r.values.end());
  return flat;
}

template <typename T>
std::vector<T> fill_matrix(const std::vector<CategoryId>& flat, std::size_t n, std::size_t m, unsigned threads) {
  std::vector<T> cells(n * n);
  detail::parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const CategoryId* xi = &flat[i * m];
      T* out = &cells[i * n];
      for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<T>(mismatches(xi, &flat[j * m], m));
    }
  });
  return cells;
}

}  // namespace

std::size_t DistanceMatrix::required_bytes(const CategoricalDataset& dataset) {
  const std::size_t n = dataset.size();
  return n * n * width_for(dataset.num_attributes());
}

DistanceMatrix DistanceMatrix::compute(const CategoricalDataset& dataset, unsigned threads,
                                       std::size_t budget_bytes) {
  const std::size_t n = dataset.size();
  if (n == 0) throw InvalidArgument("pairwise matrix needs at least one record");
  const std::size_t bytes = required_bytes(dataset);
  if (bytes > budget_bytes) {
    throw ResourceError("distance matrix needs " + std::to_string(bytes) + " bytes, budget is " +
                        std::to_string(budget_bytes));
  }
  const std::size_t m = dataset.num_attributes();
  const auto flat = flatten(dataset);
  switch (width_for(m)) {
    case 1:
      return DistanceMatrix(n, fill_matrix<std::uint8_t>(flat, n, m, threads));
    case 2:
      return DistanceMatrix(n, fill_matrix<std::uint16_t>(flat, n, m, threads));
    default:
      return DistanceMatrix(n, fill_matrix<std::uint32_t>(flat, n, m, threads));
  }
}

std::size_t DistanceMatrix::element_bytes() const {
  return std::visit([](const auto& v) { return sizeof(typename std::decay_t<decltype(v)>::value_type); },
                    storage_);
}

Distance DistanceMatrix::operator()(std::size_t i, std::size_t j) const {
  return std::visit([&](const auto& v) { return static_cast<Distance>(v[i * n_ + j]); }, storage_);
}

void DistanceMatrix::row(std::size_t i, std::span<Distance> out) const {
  std::visit(
      [&](const auto& v) {
        const auto* src = &v[i * n_];
        for (std::size_t j = 0; j < n_; ++j) out[j] = src[j];
      },
      storage_);
}

const std::uint8_t* DistanceMatrix::bytes() const {
  const auto* v = std::get_if<std::vector<std::uint8_t>>(&storage_);
  return v ? v->data() : nullptr;
}

DistanceSource::DistanceSource(const CategoricalDataset& dataset, MatrixMode mode, unsigned threads,
                               std::size_t budget_bytes)
    : dataset_(&dataset), n_(dataset.size()), m_(dataset.num_attributes()), flat_(flatten(dataset)) {
  if (mode == MatrixMode::kNever || n_ == 0) return;
  if (mode == MatrixMode::kAuto && DistanceMatrix::required_bytes(dataset) > budget_bytes) return;
  matrix_ = DistanceMatrix::compute(dataset, threads, budget_bytes);
  bytes_ = matrix_->bytes();
}

void DistanceSource::row(std::size_t i, std::span<Distance> out) const {
  if (bytes_ != nullptr) {
    const std::uint8_t* src = bytes_ + i * n_;
    for (std::size_t j = 0; j < n_; ++j) out[j] = src[j];
  } else if (matrix_) {
    matrix_->row(i, out);
  } else {
    const CategoryId* xi = &flat_[i * m_];
    for (std::size_t j = 0; j < n_; ++j) out[j] = mismatches(xi, &flat_[j * m_], m_);
  }
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kPositivity: return "positivity";
    case Axiom::kIdentity: return "identity";
    case Axiom::kSymmetry: return "symmetry";
    case Axiom::kTriangle: return "triangle";
    case Axiom::kSetIdentity: return "set-identity";
  }
  return "unknown";
}

namespace {

// |X intersect Y| with records viewed as sets of (attribute, value) pairs.
std::size_t set_overlap(std::span<const CategoryId> x, std::span<const CategoryId> y) {
  std::set<std::pair<std::size_t, CategoryId>> xs, ys;
  for (std::size_t a = 0; a < x.size(); ++a) xs.emplace(a, x[a]);
  for (std::size_t a = 0; a < y.size(); ++a) ys.emplace(a, y[a]);
  std::vector<std::pair<std::size_t, CategoryId>> common;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(common));
  return common.size();
}

}  // namespace

MetricReport check_metric_properties(const CategoricalDataset& dataset, std::size_t sample_size,
                                     std::uint64_t seed) {
  if (sample_size == 0) throw InvalidArgument("sample_size must be at least 1");
  MetricReport report;
  const std::size_t n = dataset.size();
  if (n == 0) return report;
  const std::size_t m = dataset.num_attributes();
  Rng rng(seed);

  auto pair_checks = [&](std::size_t a, std::size_t b, std::size_t x, std::size_t y, std::size_t z) {
    const auto va = dataset.values(a);
    const auto vb = dataset.values(b);
    const Distance d = distance(va, vb);
    const bool equal = std::equal(va.begin(), va.end(), vb.begin(), vb.end());
    if (equal && d != 0) report.violations.push_back({x, y, z, Axiom::kIdentity});
    if (!equal && d == 0) report.violations.push_back({x, y, z, Axiom::kPositivity});
    if (d != distance(vb, va)) report.violations.push_back({x, y, z, Axiom::kSymmetry});
    if (d != m - set_overlap(va, vb)) report.violations.push_back({x, y, z, Axiom::kSetIdentity});
  };

  for (std::size_t t = 0; t < sample_size; ++t) {
    const std::size_t x = rng.below(n);
    const std::size_t y = rng.below(n);
    const std::size_t z = rng.below(n);
    pair_checks(x, y, x, y, z);
    pair_checks(y, z, x, y, z);
    pair_checks(x, z, x, y, z);
    pair_checks(x, x, x, y, z);
    const Distance xy = distance(dataset.values(x), dataset.values(y));
    const Distance yz = distance(dataset.values(y), dataset.values(z));
    const Distance xz = distance(dataset.values(x), dataset.values(z));
    if (xy + yz < xz) report.violations.push_back({x, y, z, Axiom::kTriangle});
    ++report.triples_checked;
  }
  return report;
}

}  // namespace catmodes
