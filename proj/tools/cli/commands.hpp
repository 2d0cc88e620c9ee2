#ifndef CATMODES_CLI_COMMANDS_HPP
#define CATMODES_CLI_COMMANDS_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "catmodes/dataset.hpp"
#include "catmodes/eval.hpp"
#include "catmodes/kmodes.hpp"
#include "catmodes/medoids.hpp"

namespace catmodes::cli {

using Json = nlohmann::ordered_json;

enum class Algorithm { kKModes, kExhaustive, kLocalSearch };
enum class Format { kJson, kTsv, kText };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(InitMethod init);

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Either a registry dataset looked up in `data_dir`, or a file read with `csv`.
struct DataSource {
  std::optional<std::string> builtin;
  std::filesystem::path path;
  CsvOptions csv;
  std::filesystem::path data_dir;
};

CategoricalDataset load(const DataSource& source);
std::string describe(const DataSource& source);

struct RunConfig {
  DataSource data;
  Algorithm algorithm = Algorithm::kKModes;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  InitMethod init = InitMethod::kFirstKDistinct;
  std::size_t max_iterations = 100;
  bool check_monotone = false;
  std::size_t p = 1;
  std::size_t restarts = 1;
  double min_relative_improvement = 1e-9;
  bool dedupe = false;
  /// Exhaustive search is refused above this many distinct vectors unless forced.
  std::size_t exhaustive_limit = 2000;
  bool force = false;
  /// Worker cap; never changes results, so it is not echoed in output.
  unsigned threads = 1;
};

struct Timings {
  std::chrono::nanoseconds load{0};
  std::chrono::nanoseconds solve{0};
  std::chrono::nanoseconds evaluate{0};
};

struct RunRecord {
  RunConfig config;
  std::size_t rows = 0;
  std::size_t records = 0;
  std::size_t attributes = 0;
  std::vector<std::string> class_names;
  /// Modes, or the medoid records, decoded to category strings.
  std::vector<std::vector<std::string>> representatives;
  /// File rows (0-based) of the medoids; empty for k-modes.
  std::vector<std::size_t> medoid_rows;
  std::size_t iterations = 0;
  bool converged = true;
  std::size_t reseeded_clusters = 0;
  std::size_t steps = 0;
  std::optional<double> guarantee;
  EvalReport eval;
  /// Cluster of every file row.
  std::vector<std::size_t> assignment;
  Timings timings;
};

RunRecord execute_run(const RunConfig& config);
Json to_json(const RunRecord& record, bool timings);
void write_run(const RunRecord& record, Format format, bool timings, std::ostream& out);

enum class Table { kVotes, kMushroom };

struct PublishedRow {
  double error = 0.0;
  std::uint64_t objective = 0;
  std::vector<std::vector<std::uint64_t>> confusion;
};

struct PublishedTable {
  std::string dataset;
  /// Class label of each confusion column, as spelled in the data file.
  std::vector<std::string> classes;
  PublishedRow kmodes;
  PublishedRow approximation;
};

const PublishedTable& published_table(Table table);

struct ReproduceConfig {
  Table table = Table::kVotes;
  std::filesystem::path data_dir;
  /// Mushroom only: run the gated exact search instead of local search.
  bool exhaustive = false;
  bool force = false;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct ReproduceReport {
  const PublishedTable* published = nullptr;
  RunRecord kmodes;
  RunRecord approximation;
};

ReproduceReport execute_reproduce(const ReproduceConfig& config);
Json to_json(const ReproduceReport& report, bool timings);
void write_reproduce(const ReproduceReport& report, Format format, bool timings, std::ostream& out);

enum class Suite { kMetric, kMemberBound, kOptimumBound, kOracle };

struct VerifyConfig {
  Suite suite = Suite::kMetric;
  /// Dataset for metric and member-bound; ignored by the random-instance suites.
  std::optional<DataSource> data;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct VerifyReport {
  bool passed = false;
  Json details;
};

VerifyReport execute_verify(const VerifyConfig& config);
void write_verify(const VerifyReport& report, Format format, std::ostream& out);

struct BenchConfig {
  DataSource data;
  std::vector<std::size_t> sizes;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t repeats = 3;
  unsigned threads = 1;
  /// Exhaustive timings are skipped above this prefix size.
  std::size_t exhaustive_limit = 600;
};

struct BenchRow {
  std::string operation;
  std::size_t n = 0;
  double seconds = 0.0;
};

std::vector<BenchRow> execute_bench(const BenchConfig& config);
void write_bench(const std::vector<BenchRow>& rows, Format format, std::ostream& out);

}  // namespace catmodes::cli

#endif  // CATMODES_CLI_COMMANDS_HPP
