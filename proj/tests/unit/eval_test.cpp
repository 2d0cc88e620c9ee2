#include "catmodes/eval.hpp"

#include <gtest/gtest.h>

#include "catmodes/error.hpp"
#include "catmodes/medoids.hpp"
#include "fixtures.hpp"

namespace catmodes {
namespace {

using testing::class_first;
using testing::from_text;

TEST(Fraction, ReducedAndRounded) {
  const Fraction f(59, 435);
  EXPECT_EQ(f.str(), "59/435");
  EXPECT_EQ(f.rounded(3), "0.136");
  EXPECT_EQ(Fraction(2, 4).str(), "1/2");
  EXPECT_EQ(Fraction(0, 7).rounded(2), "0.00");
  EXPECT_EQ(Fraction(7, 7).rounded(3), "1.000");
  EXPECT_EQ(Fraction(1, 8).rounded(2), "0.13");
  EXPECT_EQ(Fraction(3, 2).rounded(0), "2");
  EXPECT_EQ(Fraction(1, 200).rounded(2), "0.01");
  EXPECT_EQ(Fraction(1, 201).rounded(2), "0.00");
  EXPECT_THROW(Fraction(1, 0), InvalidArgument);
}

// Published table entries as exact fractions of the record counts.
TEST(Fraction, TableArithmetic) {
  EXPECT_EQ(Fraction(59, 435).rounded(3), "0.136");
  EXPECT_EQ(Fraction(65, 435).rounded(3), "0.149");
  EXPECT_EQ(Fraction(3530, 8124).rounded(3), "0.435");
  EXPECT_EQ(Fraction(986, 8124).rounded(3), "0.121");
}

TEST(Confusion, TwoByTwo) {
  const auto matrix = ConfusionMatrix::from_counts({{153, 15}, {44, 223}});
  EXPECT_EQ(matrix.total(), 435u);
  EXPECT_EQ(matrix.dominant(0), 153u);
  EXPECT_EQ(matrix.dominant(1), 223u);
  const auto scores = accuracy_error(matrix);
  EXPECT_EQ(scores.accuracy, Fraction(376, 435));
  EXPECT_EQ(scores.error, Fraction(59, 435));
}

TEST(Confusion, PureClusters) {
  const auto scores = accuracy_error(ConfusionMatrix::from_counts({{10, 0}, {0, 5}}));
  EXPECT_EQ(scores.accuracy, Fraction(1, 1));
  EXPECT_EQ(scores.error, Fraction(0, 1));
}

TEST(Confusion, SingleCluster) {
  const auto scores = accuracy_error(ConfusionMatrix::from_counts({{6, 4}}));
  EXPECT_EQ(scores.accuracy, Fraction(3, 5));
}

TEST(Confusion, FromDataset) {
  const auto ds = dedupe(from_text("x,a\nx,a\ny,a\ny,b\n", class_first()));
  const auto labels = *ds.schema().label_domain;
  std::vector<std::size_t> assignment(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) assignment[i] = ds.decode_label(ds.record(i)) == "x" ? 0 : 1;
  const auto matrix = confusion(ds, assignment, 2);
  EXPECT_EQ(matrix.at(0, *labels.find("x")), 2u);
  EXPECT_EQ(matrix.at(1, *labels.find("y")), 2u);
  EXPECT_EQ(matrix.total(), 4u);
}

TEST(Confusion, Errors) {
  const auto unlabelled = from_text("a\nb\n");
  const std::vector<std::size_t> assignment{0, 1};
  EXPECT_THROW(confusion(unlabelled, assignment, 2), InvalidArgument);
  const auto labelled = from_text("x,a\ny,b\n", class_first());
  EXPECT_THROW(confusion(labelled, std::vector<std::size_t>{0}, 2), InvalidArgument);
  EXPECT_THROW(confusion(labelled, std::vector<std::size_t>{0, 2}, 2), InvalidArgument);
  EXPECT_THROW(accuracy_error(ConfusionMatrix(2, 2)), InvalidArgument);
  EXPECT_THROW(ConfusionMatrix::from_counts({{1, 2}, {3}}), InvalidArgument);
}

TEST(Objectives, EmptyClusterRejected) {
  const auto ds = from_text("a\nb\n");
  const DistanceSource src(ds);
  const std::vector<std::size_t> assignment{0, 0};
  EXPECT_THROW(objective_under_modes(ds, assignment, 2), InvalidArgument);
  EXPECT_THROW(objective_under_medoids(src, assignment, 2), InvalidArgument);
}

TEST(Objectives, FourPointExample) {
  const auto ds = from_text("a,a\na,b\nc,d\nc,e\n");
  const DistanceSource src(ds);
  const std::vector<std::size_t> assignment{0, 0, 1, 1};
  EXPECT_EQ(objective_under_modes(ds, assignment, 2), 2u);
  EXPECT_EQ(objective_under_medoids(src, assignment, 2), 2u);
  EXPECT_EQ(objective_under_medoids(src, std::vector<std::size_t>{0, 2}), 2u);
}

// Property: for any partition, mode cost <= best-member cost <= 2 * mode cost,
// with both sides checked against enumeration.
TEST(Objectives, MedoidWithinTwiceMode) {
  Rng rng(90);
  InstanceParams params;
  params.min_n = 2;
  params.max_n = 9;
  params.max_m = 4;
  params.max_categories = 3;
  for (int t = 0; t < 200; ++t) {
    const auto ds = random_instance(params, rng);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, ds.size()));
    std::vector<std::size_t> assignment(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) assignment[i] = i < k ? i : rng.below(k);
    const DistanceSource src(ds);
    const Cost modes = objective_under_modes(ds, assignment, k);
    const Cost medoids = objective_under_medoids(src, assignment, k);
    std::uint64_t expected = 0;
    for (const auto& members : cluster_members(assignment, k)) expected += oracle::min_mode_cost(ds, members);
    ASSERT_EQ(modes, expected);
    ASSERT_LE(modes, medoids);
    ASSERT_LE(medoids, 2 * modes);
  }
}

// Property: renaming clusters changes neither scores nor objectives.
TEST(Evaluate, RelabelInvariance) {
  const auto& ds = testing::votes();
  const DistanceSource src(ds);
  KModesConfig config;
  config.k = 3;
  const auto result = run_kmodes(ds, config);
  auto shifted = result.assignment;
  for (auto& c : shifted) c = (c + 1) % 3;
  const auto a = evaluate(src, result.assignment, 3);
  const auto b = evaluate(src, shifted, 3);
  EXPECT_EQ(a.scores->error, b.scores->error);
  EXPECT_EQ(a.mode_objective, b.mode_objective);
  EXPECT_EQ(a.medoid_objective, b.medoid_objective);
  EXPECT_EQ(a.mode_objective, result.mode_objective);
}

TEST(Evaluate, UnlabelledHasNoScores) {
  const auto ds = from_text("a,b\nc,d\n");
  const DistanceSource src(ds);
  const auto report = evaluate(src, std::vector<std::size_t>{0, 1}, 2, Cost{7});
  EXPECT_FALSE(report.confusion.has_value());
  EXPECT_FALSE(report.scores.has_value());
  EXPECT_EQ(report.mode_objective, 0u);
  EXPECT_EQ(report.medoid_objective, Cost{7});
}

TEST(Evaluate, WeightedMatchesRaw) {
  const auto& raw = testing::votes();
  const auto ded = dedupe(raw);
  KModesConfig config;
  config.k = 2;
  const auto a = run_kmodes(raw, config);
  const auto b = run_kmodes(ded, config);
  const DistanceSource src_raw(raw), src_ded(ded);
  const auto ra = evaluate(src_raw, a.assignment, 2);
  const auto rb = evaluate(src_ded, b.assignment, 2);
  EXPECT_EQ(ra.scores->error, rb.scores->error);
  EXPECT_EQ(ra.mode_objective, rb.mode_objective);
  EXPECT_EQ(ra.medoid_objective, rb.medoid_objective);
}

}  // namespace
}  // namespace catmodes
