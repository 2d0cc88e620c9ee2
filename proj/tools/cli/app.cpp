#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <thread>

#include "catmodes/error.hpp"
#include "catmodes/version.hpp"
#include "commands.hpp"
#include "datasets.hpp"

namespace catmodes::cli {

namespace {

const std::map<std::string, Format> kFormats{{"json", Format::kJson}, {"tsv", Format::kTsv}, {"text", Format::kText}};

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Output options shared by the subcommands that print a report.
struct Output {
  Format format = Format::kText;
  std::string path;
  bool timings = false;

  void attach(CLI::App* cmd, Format default_format) {
    format = default_format;
    cmd->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    cmd->add_option("-o,--output", path, "Write the report here instead of stdout");
    cmd->add_flag("--timings", timings, "Include wall-clock timings");
  }
};

// Dataset selection shared by run, verify and bench.
struct Input {
  std::string name;
  std::string path;
  std::string data_dir;
  std::string label;
  bool header = false;
  char delimiter = ',';
  std::string missing = "category";

  void attach(CLI::App* cmd, bool required) {
    auto* by_name = cmd->add_option("--dataset", name, "Registry dataset: votes or mushroom")
                        ->check(CLI::IsMember({"votes", "mushroom"}));
    auto* by_path = cmd->add_option("--input", path, "CSV file of categorical records")->check(CLI::ExistingFile);
    by_name->excludes(by_path);
    by_path->excludes(by_name);
    cmd->add_option("--data-dir", data_dir, "Directory holding registry datasets");
    cmd->add_option("--label-column", label, "Class column of --input, by index or header name");
    cmd->add_flag("--header", header, "First line of --input holds column names");
    cmd->add_option("--delimiter", delimiter, "Field separator of --input");
    cmd->add_option("--missing", missing, "How --input treats '?': category or reject")
        ->check(CLI::IsMember({"category", "reject"}));
    if (required) {
      cmd->callback([cmd, by_name, by_path] {
        if (by_name->count() == 0 && by_path->count() == 0) {
          throw CLI::RequiredError(cmd->get_name() + ": one of --dataset or --input");
        }
      });
    }
  }

  bool given() const { return !name.empty() || !path.empty(); }

  DataSource source() const {
    DataSource s;
    s.data_dir = data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir);
    if (!name.empty()) {
      s.builtin = name;
      return s;
    }
    s.path = path;
    s.csv.has_header = header;
    s.csv.delimiter = delimiter;
    s.csv.missing_policy = missing == "reject" ? MissingPolicy::kReject : MissingPolicy::kTreatAsCategory;
    if (!label.empty()) {
      if (std::all_of(label.begin(), label.end(), [](unsigned char c) { return std::isdigit(c); })) {
        s.csv.label_column = static_cast<std::size_t>(std::stoull(label));
      } else {
        s.csv.label_column = label;
      }
    }
    return s;
  }
};

template <typename Fn>
void emit(const Output& output, std::ostream& out, Fn&& write) {
  if (output.path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(output.path);
  if (!file) throw InputError("cannot write " + output.path);
  write(file);
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Categorical clustering with k-modes and k-medoid approximations", "catmodes"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print the version and exit");

  // run
  auto* run = app.add_subcommand("run", "Cluster a dataset and evaluate the result");
  Input run_input;
  Output run_output;
  RunConfig rc;
  rc.threads = default_threads();
  run_input.attach(run, true);
  run_output.attach(run, Format::kJson);
  const std::map<std::string, Algorithm> algorithms{
      {"kmodes", Algorithm::kKModes}, {"exhaustive", Algorithm::kExhaustive}, {"local-search", Algorithm::kLocalSearch}};
  std::string algorithm;
  run->add_option("--algorithm", algorithm, "kmodes, exhaustive or local-search")
      ->required()
      ->check(CLI::IsMember(algorithms, CLI::ignore_case));
  run->add_option("-k,--k", rc.k, "Number of clusters")->check(CLI::PositiveNumber);
  run->add_option("--seed", rc.seed, "Random seed");
  const std::map<std::string, InitMethod> inits{{"first-k-distinct", InitMethod::kFirstKDistinct},
                                                {"random", InitMethod::kRandomSeeded}};
  run->add_option("--init", rc.init, "k-modes initialisation: first-k-distinct or random")
      ->transform(CLI::CheckedTransformer(inits, CLI::ignore_case));
  run->add_option("--max-iterations", rc.max_iterations, "k-modes iteration cap");
  run->add_flag("--check-monotone", rc.check_monotone, "Fail if the k-modes objective ever increases");
  run->add_option("-p,--p", rc.p, "Local search swap width")->check(CLI::PositiveNumber);
  run->add_option("--restarts", rc.restarts, "Local search restarts")->check(CLI::PositiveNumber);
  run->add_option("--min-improvement", rc.min_relative_improvement, "Smallest relative gain a swap must bring");
  run->add_flag("--dedupe", rc.dedupe, "Merge identical records into weighted ones");
  run->add_option("--exhaustive-limit", rc.exhaustive_limit, "Distinct-record limit for exhaustive search");
  run->add_flag("--force", rc.force, "Run exhaustive search above the limit");
  run->add_option("--threads", rc.threads, "Worker cap")->check(CLI::PositiveNumber);

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Rerun the published k = 2 comparisons");
  ReproduceConfig pc;
  pc.threads = default_threads();
  std::string table;
  std::string reproduce_dir;
  Output reproduce_output;
  reproduce->add_option("table", table, "votes or mushroom")->required()->check(CLI::IsMember({"votes", "mushroom"}));
  reproduce->add_option("--data-dir", reproduce_dir, "Directory holding registry datasets");
  reproduce->add_flag("--exhaustive", pc.exhaustive, "Mushroom: exact search instead of local search");
  reproduce->add_flag("--force", pc.force, "Allow exact search above the size limit");
  reproduce->add_option("--restarts", pc.restarts, "Local search restarts")->check(CLI::PositiveNumber);
  reproduce->add_option("--seed", pc.seed, "Local search seed");
  reproduce->add_option("--threads", pc.threads, "Worker cap")->check(CLI::PositiveNumber);
  reproduce_output.attach(reproduce, Format::kText);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a property audit");
  VerifyConfig vc;
  vc.threads = default_threads();
  Input verify_input;
  Output verify_output;
  const std::map<std::string, Suite> suites{
      {"metric", Suite::kMetric}, {"member-bound", Suite::kMemberBound}, {"optimum-bound", Suite::kOptimumBound},
      {"oracle", Suite::kOracle},
      // Short aliases.
      {"lemma1", Suite::kMemberBound}, {"lemma2", Suite::kOptimumBound}};
  verify->add_option("suite", vc.suite, "metric, member-bound (alias lemma1), optimum-bound (alias lemma2) or oracle")
      ->required()
      ->transform(CLI::CheckedTransformer(suites, CLI::ignore_case));
  verify->add_option("--trials", vc.trials, "Samples, subsets or instances to draw")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vc.seed, "Random seed");
  verify->add_option("--threads", vc.threads, "Worker cap")->check(CLI::PositiveNumber);
  verify_input.attach(verify, false);
  verify_output.attach(verify, Format::kText);

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Download registry datasets into the data directory");
  std::vector<std::string> fetch_names;
  std::string fetch_dir;
  std::string fetch_url;
  bool overwrite = false;
  fetch->add_option("datasets", fetch_names, "votes, mushroom or all (default all)")
      ->check(CLI::IsMember({"votes", "mushroom", "all"}));
  fetch->add_option("--data-dir", fetch_dir, "Target directory");
  fetch->add_option("--url", fetch_url, "Download location override (single dataset only)");
  fetch->add_flag("--overwrite", overwrite, "Replace files already present");

  // bench
  auto* bench = app.add_subcommand("bench", "Time the distance matrix and the solvers");
  BenchConfig bc;
  bc.threads = default_threads();
  Input bench_input;
  Output bench_output;
  bench_input.attach(bench, true);
  bench_output.attach(bench, Format::kText);
  bench->add_option("--sizes", bc.sizes, "Dataset prefix sizes to time")->delimiter(',');
  bench->add_option("-k,--k", bc.k, "Number of clusters")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", bc.repeats, "Repetitions; the fastest is reported")->check(CLI::PositiveNumber);
  bench->add_option("--exhaustive-limit", bc.exhaustive_limit, "Skip exhaustive search above this size");
  bench->add_option("--threads", bc.threads, "Worker cap")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (show_version) {
      out << "catmodes " << kVersion << "\n";
      return kExitOk;
    }
    if (run->parsed()) {
      rc.algorithm = algorithms.at(CLI::detail::to_lower(algorithm));
      rc.data = run_input.source();
      const auto record = execute_run(rc);
      emit(run_output, out, [&](std::ostream& s) { write_run(record, run_output.format, run_output.timings, s); });
      return kExitOk;
    }
    if (reproduce->parsed()) {
      pc.table = table == "votes" ? Table::kVotes : Table::kMushroom;
      pc.data_dir = reproduce_dir.empty() ? default_data_dir() : std::filesystem::path(reproduce_dir);
      const auto report = execute_reproduce(pc);
      emit(reproduce_output, out,
           [&](std::ostream& s) { write_reproduce(report, reproduce_output.format, reproduce_output.timings, s); });
      return kExitOk;
    }
    if (verify->parsed()) {
      if (verify_input.given()) vc.data = verify_input.source();
      if ((vc.suite == Suite::kMetric || vc.suite == Suite::kMemberBound) && !vc.data) {
        err << "verify " << (vc.suite == Suite::kMetric ? "metric" : "member-bound") << ": --dataset or --input is required\n";
        return kExitUsage;
      }
      const auto report = execute_verify(vc);
      emit(verify_output, out, [&](std::ostream& s) { write_verify(report, verify_output.format, s); });
      return report.passed ? kExitOk : kExitFailed;
    }
    if (fetch->parsed()) {
      std::vector<const DatasetSpec*> specs;
      if (fetch_names.empty() || std::find(fetch_names.begin(), fetch_names.end(), "all") != fetch_names.end()) {
        for (const auto& spec : builtin_datasets()) specs.push_back(&spec);
      } else {
        for (const auto& name : fetch_names) specs.push_back(&find_dataset(name));
      }
      if (!fetch_url.empty() && specs.size() != 1) {
        err << "fetch: --url needs exactly one dataset\n";
        return kExitUsage;
      }
      const auto dir = fetch_dir.empty() ? default_data_dir() : std::filesystem::path(fetch_dir);
      for (const auto* spec : specs) {
        const auto url = fetch_url.empty() ? std::nullopt : std::optional<std::string>(fetch_url);
        const auto result = fetch_dataset(*spec, dir, overwrite, url);
        out << spec->name << "\t" << (result.downloaded ? "downloaded" : "present") << "\t" << result.rows << " rows\t"
            << result.path.string() << "\n";
      }
      return kExitOk;
    }
    if (bench->parsed()) {
      bc.data = bench_input.source();
      const auto rows = execute_bench(bc);
      emit(bench_output, out, [&](std::ostream& s) { write_bench(rows, bench_output.format, s); });
      return kExitOk;
    }
    out << app.help();
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace catmodes::cli
