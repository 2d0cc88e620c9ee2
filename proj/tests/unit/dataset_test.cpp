#include "catmodes/dataset.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <string>

#include "catmodes/error.hpp"
#include "catmodes/random.hpp"
#include "fixtures.hpp"

namespace catmodes {
namespace {

using testing::class_first;
using testing::from_text;

std::uint64_t label_count(const DatasetStats& stats, const std::string& label) {
  for (const auto& [name, count] : *stats.label_histogram) {
    if (name == label) return count;
  }
  return 0;
}

TEST(LoadCsv, Votes) {
  const auto& ds = testing::votes();
  EXPECT_EQ(ds.total_weight(), 435u);
  EXPECT_EQ(ds.num_attributes(), 16u);
  const auto stats = dataset_stats(ds);
  ASSERT_TRUE(stats.label_histogram.has_value());
  EXPECT_EQ(label_count(stats, "republican"), 168u);
  EXPECT_EQ(label_count(stats, "democrat"), 267u);
  // "?" is kept as an ordinary category.
  for (const auto& attr : ds.schema().attributes) EXPECT_TRUE(attr.find("?").has_value());
}

TEST(LoadCsv, Mushroom) {
  const auto& ds = testing::mushroom();
  const auto stats = dataset_stats(ds);
  EXPECT_EQ(stats.n, 8124u);
  EXPECT_EQ(stats.m, 22u);
  EXPECT_EQ(label_count(stats, "e"), 4208u);
  EXPECT_EQ(label_count(stats, "p"), 3916u);
}

TEST(LoadCsv, SingleRowNoLabel) {
  const auto ds = from_text("a,b\n");
  EXPECT_EQ(ds.total_weight(), 1u);
  EXPECT_EQ(ds.num_attributes(), 2u);
  for (const auto& attr : ds.schema().attributes) EXPECT_EQ(attr.size(), 1u);
  EXPECT_FALSE(dataset_stats(ds).label_histogram.has_value());
}

TEST(LoadCsv, FirstAppearanceIds) {
  const auto ds = from_text("z,y\nx,y\nz,w\n");
  const auto& a0 = ds.schema().attributes[0];
  EXPECT_EQ(a0.category(0), "z");
  EXPECT_EQ(a0.category(1), "x");
  EXPECT_EQ(ds.record(2).values, (std::vector<CategoryId>{0, 1}));
}

TEST(LoadCsv, HeaderAndLabelByName) {
  CsvOptions options;
  options.has_header = true;
  options.label_column = std::string("cls");
  const auto ds = from_text("f1;cls;f2\na;yes;b\nc;no;b\n", [&] {
    options.delimiter = ';';
    return options;
  }());
  EXPECT_EQ(ds.num_attributes(), 2u);
  EXPECT_EQ(ds.schema().attributes[1].name(), "f2");
  EXPECT_EQ(ds.schema().label_domain->name(), "cls");
  EXPECT_EQ(ds.decode_label(ds.record(1)), "no");
}

TEST(LoadCsv, Errors) {
  EXPECT_THROW(from_text("a,b\na\n"), InputError);
  EXPECT_THROW(from_text(""), InputError);
  EXPECT_THROW(from_text("\n\n"), InputError);

  CsvOptions by_name;
  by_name.label_column = std::string("class");
  EXPECT_THROW(from_text("a,b\n", by_name), InputError);

  CsvOptions by_index;
  by_index.label_column = std::size_t{5};
  EXPECT_THROW(from_text("a,b\n", by_index), InputError);

  CsvOptions reject;
  reject.missing_policy = MissingPolicy::kReject;
  EXPECT_THROW(from_text("a,?\n", reject), InputError);
  EXPECT_NO_THROW(from_text("a,b\n", reject));

  EXPECT_THROW(load_csv("/nonexistent/file.csv", {}), InputError);
}

TEST(LoadCsv, RaggedRowReportsIndex) {
  try {
    from_text("a,b\nc,d\ne\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
}

TEST(LoadCsv, QuotedFields) {
  const auto ds = from_text("\"a,1\",b\n\"say \"\"hi\"\"\",b\n");
  EXPECT_EQ(ds.schema().attributes[0].category(0), "a,1");
  EXPECT_EQ(ds.schema().attributes[0].category(1), "say \"hi\"");
}

TEST(Dataset, RejectsInvalidRecords) {
  Schema schema;
  schema.attributes.emplace_back("a", std::vector<std::string>{"x", "y"});
  EXPECT_THROW(CategoricalDataset(schema, {Record{{2}, 1, {}, {}}}), InvalidArgument);
  EXPECT_THROW(CategoricalDataset(schema, {Record{{0}, 0, {}, {}}}), InvalidArgument);
  EXPECT_THROW(CategoricalDataset(schema, {Record{{0}, 2, {}, {0}}}), InvalidArgument);
  EXPECT_THROW(CategoricalDataset(schema, {Record{{0}, 1, 0u, {}}}), InvalidArgument);
  EXPECT_THROW(CategoricalDataset(Schema{}, {}), InvalidArgument);
  EXPECT_THROW(AttributeDomain("a", {"x", "x"}), InvalidArgument);
}

TEST(Dedupe, MergesIdenticalRows) {
  const auto ds = dedupe(from_text("a,b\na,b\nc,d\n"));
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.weight(0), 2u);
  EXPECT_EQ(ds.weight(1), 1u);
  EXPECT_EQ(ds.total_weight(), 3u);
  EXPECT_EQ(ds.record(0).source_rows, (std::vector<std::size_t>{0, 1}));
}

TEST(Dedupe, DistinctRowsUnchanged) {
  const auto raw = from_text("a,b\nc,d\ne,f\n");
  const auto ds = dedupe(raw);
  ASSERT_EQ(ds.size(), raw.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(ds.weight(i), 1u);
    EXPECT_EQ(ds.record(i).values, raw.record(i).values);
  }
}

TEST(Dedupe, LabelsKeepRecordsApart) {
  const auto ds = dedupe(from_text("x,a,b\ny,a,b\nx,a,b\n", class_first()));
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.weight(0), 2u);
}

TEST(Dedupe, MushroomKeepsTotalWeight) {
  // Oracle: distinct raw lines of the file (label included), via a set.
  std::ifstream in(oracle::data_dir() / "agaricus-lepiota.data");
  std::set<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.insert(line);
  }
  const auto ds = dedupe(testing::mushroom());
  EXPECT_EQ(ds.total_weight(), 8124u);
  EXPECT_EQ(ds.size(), lines.size());
}

TEST(Dedupe, VotesWeightedFrequenciesMatchRaw) {
  const auto& raw = testing::votes();
  const auto ds = dedupe(raw);
  EXPECT_LT(ds.size(), raw.size());
  for (std::size_t a = 0; a < raw.num_attributes(); ++a) {
    std::vector<std::uint64_t> f_raw(raw.schema().attributes[a].size()), f_ded(f_raw.size());
    for (const auto& r : raw.records()) f_raw[r.values[a]] += r.weight;
    for (const auto& r : ds.records()) f_ded[r.values[a]] += r.weight;
    EXPECT_EQ(f_raw, f_ded) << "attribute " << a;
  }
}

// Property: decoding any encoded record restores its text fields.
TEST(Dataset, DecodeRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng.below(12);
    const std::size_t cols = 1 + rng.below(5);
    std::vector<std::vector<std::string>> fields(rows, std::vector<std::string>(cols));
    std::string text;
    for (auto& row : fields) {
      for (std::size_t c = 0; c < cols; ++c) {
        row[c] = std::string(1, static_cast<char>('a' + rng.below(4))) + std::to_string(rng.below(3));
        text += (c ? "," : "") + row[c];
      }
      text += "\n";
    }
    const auto ds = from_text(text);
    for (std::size_t r = 0; r < rows; ++r) EXPECT_EQ(ds.decode(ds.record(r).values), fields[r]);
  }
}

TEST(DatasetStats, CountsMatchRescan) {
  const auto stats = dataset_stats(testing::votes());
  EXPECT_EQ(stats.n, 435u);
  EXPECT_EQ(stats.m, 16u);
  for (std::size_t a = 0; a < stats.m; ++a) {
    std::set<CategoryId> seen;
    for (const auto& r : testing::votes().records()) seen.insert(r.values[a]);
    EXPECT_EQ(stats.category_counts[a], seen.size());
  }
}

TEST(Dataset, CountDistinctVectors) {
  EXPECT_EQ(count_distinct_vectors(from_text("a,b\na,b\nc,d\n")), 2u);
}

}  // namespace
}  // namespace catmodes
