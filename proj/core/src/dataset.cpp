#include "catmodes/dataset.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "catmodes/error.hpp"
#include "hash.hpp"

namespace catmodes {

AttributeDomain::AttributeDomain(std::string name, std::vector<std::string> categories)
    : name_(std::move(name)) {
  for (const auto& c : categories) {
    if (find(c)) throw InvalidArgument("duplicate category '" + c + "' in attribute " + name_);
    intern(c);
  }
}

CategoryId AttributeDomain::intern(std::string_view text) {
  auto it = index_.find(std::string(text));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<CategoryId>(categories_.size());
  categories_.emplace_back(text);
  index_.emplace(categories_.back(), id);
  return id;
}

std::optional<CategoryId> AttributeDomain::find(std::string_view text) const {
  auto it = index_.find(std::string(text));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CategoricalDataset::CategoricalDataset(Schema schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  const std::size_t m = schema_.attributes.size();
  if (m == 0) throw InvalidArgument("schema must have at least one attribute");

  bool any_sources = false;
  for (const auto& r : records_) any_sources = any_sources || !r.source_rows.empty();

  std::size_t next_row = 0;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto& r = records_[i];
    const std::string where = "record " + std::to_string(i);
    if (r.values.size() != m) throw InvalidArgument(where + ": expected " + std::to_string(m) + " values");
    for (std::size_t a = 0; a < m; ++a) {
      if (r.values[a] >= schema_.attributes[a].size()) {
        throw InvalidArgument(where + ": category id out of range in attribute " + schema_.attributes[a].name());
      }
    }
    if (r.weight == 0) throw InvalidArgument(where + ": weight must be positive");
    if (!any_sources) {
      for (std::uint64_t w = 0; w < r.weight; ++w) r.source_rows.push_back(next_row++);
    } else if (r.source_rows.size() != r.weight) {
      throw InvalidArgument(where + ": weight must equal the number of source rows");
    }
    if (schema_.label_domain) {
      if (!r.label || *r.label >= schema_.label_domain->size()) throw InvalidArgument(where + ": invalid label");
    } else if (r.label) {
      throw InvalidArgument(where + ": label given but schema has no label column");
    }
    total_weight_ += r.weight;
  }
}

std::vector<std::string> CategoricalDataset::decode(std::span<const CategoryId> values) const {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) out.push_back(schema_.attributes.at(a).category(values[a]));
  return out;
}

std::string CategoricalDataset::decode_label(const Record& record) const {
  if (!schema_.label_domain || !record.label) return {};
  return schema_.label_domain->category(*record.label);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::size_t resolve_label_column(const LabelColumn& sel, const std::vector<std::string>& names) {
  if (const auto* idx = std::get_if<std::size_t>(&sel)) {
    if (*idx >= names.size()) {
      throw InputError("label column index " + std::to_string(*idx) + " out of range (" +
                       std::to_string(names.size()) + " columns)");
    }
    return *idx;
  }
  const auto& name = std::get<std::string>(sel);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw InputError("unknown label column '" + name + "'");
}

}  // namespace

CategoricalDataset parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line, options.delimiter);
    if (header_pending) {
      names = std::move(fields);
      width = names.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw InputError("ragged row " + std::to_string(rows.size()) + " (line " + std::to_string(line_no) +
                       "): expected " + std::to_string(width) + " fields, found " +
                       std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw InputError("empty input: no data rows");

  if (names.empty()) {
    if (!options.column_names.empty()) {
      if (options.column_names.size() != width) {
        throw InputError("expected " + std::to_string(width) + " column names, got " +
                         std::to_string(options.column_names.size()));
      }
      names = options.column_names;
    } else {
      for (std::size_t i = 0; i < width; ++i) names.push_back("c" + std::to_string(i));
    }
  }

  std::optional<std::size_t> label_col;
  if (!std::holds_alternative<std::monostate>(options.label_column)) {
    label_col = resolve_label_column(options.label_column, names);
  }
  if (width - (label_col ? 1 : 0) == 0) throw InputError("no feature columns besides the label");

  Schema schema;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < width; ++c) {
    if (label_col && c == *label_col) {
      schema.label_domain.emplace(names[c]);
    } else {
      feature_cols.push_back(c);
      schema.attributes.emplace_back(names[c]);
    }
  }

  std::vector<Record> records;
  records.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Record rec;
    rec.values.reserve(feature_cols.size());
    for (std::size_t a = 0; a < feature_cols.size(); ++a) {
      const auto& text = rows[r][feature_cols[a]];
      if (options.missing_policy == MissingPolicy::kReject && text == options.missing_token) {
        throw InputError("missing value '" + text + "' in row " + std::to_string(r) + ", column " +
                         names[feature_cols[a]]);
      }
      rec.values.push_back(schema.attributes[a].intern(text));
    }
    if (label_col) rec.label = schema.label_domain->intern(rows[r][*label_col]);
    rec.source_rows.push_back(r);
    records.push_back(std::move(rec));
  }
  return CategoricalDataset(std::move(schema), std::move(records));
}

CategoricalDataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_csv(in, options);
}

CategoricalDataset dedupe(const CategoricalDataset& dataset) {
  struct Key {
    std::span<const CategoryId> values;
    std::optional<CategoryId> label;
    bool operator==(const Key& o) const {
      return label == o.label && std::equal(values.begin(), values.end(), o.values.begin(), o.values.end());
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return detail::hash_values(k.values, k.label ? *k.label + 1 : 0);
    }
  };

  // Keys view into the source dataset's records.
  std::unordered_map<Key, std::size_t, KeyHash> slot;
  std::vector<Record> merged;
  for (const auto& r : dataset.records()) {
    auto [it, inserted] = slot.try_emplace(Key{r.values, r.label}, merged.size());
    if (inserted) {
      merged.push_back(r);
    } else {
      auto& target = merged[it->second];
      target.weight += r.weight;
      target.source_rows.insert(target.source_rows.end(), r.source_rows.begin(), r.source_rows.end());
    }
  }
  return CategoricalDataset(dataset.schema(), std::move(merged));
}

DatasetStats dataset_stats(const CategoricalDataset& dataset) {
  DatasetStats stats;
  stats.n = dataset.total_weight();
  stats.n_records = dataset.size();
  stats.m = dataset.num_attributes();
  for (const auto& attr : dataset.schema().attributes) stats.category_counts.push_back(attr.size());
  if (const auto& labels = dataset.schema().label_domain) {
    std::vector<std::uint64_t> counts(labels->size(), 0);
    for (const auto& r : dataset.records()) counts[*r.label] += r.weight;
    std::vector<std::pair<std::string, std::uint64_t>> hist;
    for (std::size_t c = 0; c < counts.size(); ++c) hist.emplace_back(labels->category(c), counts[c]);
    stats.label_histogram = std::move(hist);
  }
  return stats;
}

std::size_t count_distinct_vectors(const CategoricalDataset& dataset) {
  std::unordered_set<std::vector<CategoryId>, detail::VectorHash> seen;
  for (const auto& r : dataset.records()) seen.insert(r.values);
  return seen.size();
}

}  // namespace catmodes
