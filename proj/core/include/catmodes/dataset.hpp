#ifndef CATMODES_DATASET_HPP
#define CATMODES_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace catmodes {

using CategoryId = std::uint32_t;

/// The ordered category list of one attribute. A category's id is its
/// position in the list; ids are assigned in first-appearance order.
class AttributeDomain {
 public:
  AttributeDomain() = default;
  explicit AttributeDomain(std::string name) : name_(std::move(name)) {}
  AttributeDomain(std::string name, std::vector<std::string> categories);

  const std::string& name() const { return name_; }
  std::span<const std::string> categories() const { return categories_; }
  std::size_t size() const { return categories_.size(); }
  const std::string& category(CategoryId id) const { return categories_.at(id); }

  /// Returns the id of `text`, appending it as a new category if unseen.
  CategoryId intern(std::string_view text);
  std::optional<CategoryId> find(std::string_view text) const;

 private:
  std::string name_;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, CategoryId> index_;
};

struct Schema {
  std::vector<AttributeDomain> attributes;
  /// Class column; never part of any distance computation.
  std::optional<AttributeDomain> label_domain;

  std::size_t num_attributes() const { return attributes.size(); }
};

struct Record {
  std::vector<CategoryId> values;
  std::uint64_t weight = 1;
  std::optional<CategoryId> label;
  std::vector<std::size_t> source_rows;
};

/// Immutable encoded dataset. Records may carry multiplicity weights after
/// dedupe(); total_weight() is always the original row count.
class CategoricalDataset {
 public:
  /// Validates every invariant; throws InvalidArgument on violation.
  /// When no record lists source rows, each weight-w record is given the
  /// next w consecutive row indices.
  CategoricalDataset(Schema schema, std::vector<Record> records);

  const Schema& schema() const { return schema_; }
  std::span<const Record> records() const { return records_; }
  const Record& record(std::size_t i) const { return records_[i]; }
  std::span<const CategoryId> values(std::size_t i) const { return records_[i].values; }
  std::uint64_t weight(std::size_t i) const { return records_[i].weight; }

  /// Number of stored records (distinct records after dedupe()).
  std::size_t size() const { return records_.size(); }
  std::size_t num_attributes() const { return schema_.attributes.size(); }
  std::uint64_t total_weight() const { return total_weight_; }
  bool has_labels() const { return schema_.label_domain.has_value(); }

  std::vector<std::string> decode(std::span<const CategoryId> values) const;
  std::string decode_label(const Record& record) const;

 private:
  Schema schema_;
  std::vector<Record> records_;
  std::uint64_t total_weight_ = 0;
};

enum class MissingPolicy { kTreatAsCategory, kReject };

/// Label column selector: none, zero-based index, or column name.
using LabelColumn = std::variant<std::monostate, std::size_t, std::string>;

struct CsvOptions {
  LabelColumn label_column;
  std::string missing_token = "?";
  MissingPolicy missing_policy = MissingPolicy::kTreatAsCategory;
  char delimiter = ',';
  bool has_header = false;
  /// Column names for headerless files; defaults to "c0", "c1", ...
  std::vector<std::string> column_names;
};

CategoricalDataset load_csv(const std::filesystem::path& path, const CsvOptions& options);
CategoricalDataset parse_csv(std::istream& in, const CsvOptions& options);

/// Merges records with identical value vectors and labels into weighted
/// records, preserving first-appearance order.
CategoricalDataset dedupe(const CategoricalDataset& dataset);

struct DatasetStats {
  std::uint64_t n = 0;
  std::size_t n_records = 0;
  std::size_t m = 0;
  std::vector<std::size_t> category_counts;
  /// (label text, weighted count) in label-id order; absent without labels.
  std::optional<std::vector<std::pair<std::string, std::uint64_t>>> label_histogram;
};

DatasetStats dataset_stats(const CategoricalDataset& dataset);

/// Number of pairwise-distinct value vectors, ignoring labels.
std::size_t count_distinct_vectors(const CategoricalDataset& dataset);

}  // namespace catmodes

#endif  // CATMODES_DATASET_HPP
