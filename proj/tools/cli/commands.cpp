#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "catmodes/error.hpp"
#include "catmodes/metric.hpp"
#include "catmodes/version.hpp"
#include "datasets.hpp"

namespace catmodes::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(std::chrono::nanoseconds ns) { return std::chrono::duration<double>(ns).count(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string fixed(double value, int decimals) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(decimals) << value;
  std::string text = ss.str();
  // A value that rounds to zero prints without a sign.
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
  return text;
}

// Published row shown next to each measured cluster: the cluster permutation
// with the smallest total absolute count difference, first found on ties.
std::vector<std::size_t> match_rows(const ConfusionMatrix& measured, const std::vector<std::vector<std::uint64_t>>& row) {
  std::vector<std::size_t> perm(measured.clusters());
  std::iota(perm.begin(), perm.end(), 0);
  if (row.size() != perm.size()) return perm;
  std::vector<std::size_t> best = perm;
  std::uint64_t best_diff = std::numeric_limits<std::uint64_t>::max();
  do {
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = 0; j < measured.classes() && j < row[perm[i]].size(); ++j) {
        const auto a = measured.at(i, j), b = row[perm[i]][j];
        diff += a > b ? a - b : b - a;
      }
    }
    if (diff < best_diff) {
      best_diff = diff;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string version_string() { return std::string("catmodes ") + kVersion; }

Json fraction_json(const Fraction& f) { return Json{{"exact", f.str()}, {"rounded", f.rounded(3)}}; }

Json label_column_json(const LabelColumn& column) {
  if (const auto* index = std::get_if<std::size_t>(&column)) return *index;
  if (const auto* name = std::get_if<std::string>(&column)) return *name;
  return nullptr;
}

std::vector<std::string> class_names(const CategoricalDataset& dataset) {
  if (!dataset.schema().label_domain) return {};
  const auto names = dataset.schema().label_domain->categories();
  return {names.begin(), names.end()};
}

// Maps per-record clusters back onto file rows.
std::vector<std::size_t> expand(const CategoricalDataset& dataset, const std::vector<std::size_t>& assignment) {
  std::vector<std::size_t> rows(dataset.total_weight());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t row : dataset.record(i).source_rows) rows[row] = assignment[i];
  }
  return rows;
}

void write_confusion_text(const RunRecord& record, std::ostream& out) {
  if (!record.eval.confusion) return;
  const auto& matrix = *record.eval.confusion;
  std::size_t width = 8;
  for (const auto& name : record.class_names) width = std::max(width, name.size() + 2);
  out << std::left << std::setw(10) << "cluster";
  for (const auto& name : record.class_names) out << std::right << std::setw(static_cast<int>(width)) << name;
  out << "\n";
  for (std::size_t i = 0; i < matrix.clusters(); ++i) {
    out << std::left << std::setw(10) << i;
    for (std::size_t j = 0; j < matrix.classes(); ++j) {
      out << std::right << std::setw(static_cast<int>(width)) << matrix.at(i, j);
    }
    out << "\n";
  }
  out << std::left;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kKModes:
      return "kmodes";
    case Algorithm::kExhaustive:
      return "exhaustive";
    case Algorithm::kLocalSearch:
      return "local-search";
  }
  return "unknown";
}

std::string_view to_string(InitMethod init) {
  return init == InitMethod::kFirstKDistinct ? "first-k-distinct" : "random";
}

CategoricalDataset load(const DataSource& source) {
  if (source.builtin) return load_builtin(find_dataset(*source.builtin), source.data_dir);
  return load_csv(source.path, source.csv);
}

std::string describe(const DataSource& source) {
  if (source.builtin) return *source.builtin;
  return source.path.string();
}

RunRecord execute_run(const RunConfig& config) {
  if (config.k == 0) throw InvalidArgument("k must be at least 1");
  RunRecord record;
  record.config = config;

  auto t0 = Clock::now();
  CategoricalDataset dataset = load(config.data);
  if (config.dedupe) dataset = dedupe(dataset);
  record.rows = dataset.total_weight();
  record.records = dataset.size();
  record.attributes = dataset.num_attributes();
  record.class_names = class_names(dataset);
  const DistanceSource distances(dataset, config.algorithm == Algorithm::kKModes ? MatrixMode::kNever : MatrixMode::kAuto,
                                 config.threads);
  auto t1 = Clock::now();
  record.timings.load = t1 - t0;

  std::vector<std::size_t> assignment;
  std::optional<Cost> medoid_objective;
  if (config.algorithm == Algorithm::kKModes) {
    KModesConfig kc;
    kc.k = config.k;
    kc.init = config.init;
    kc.seed = config.seed;
    kc.max_iterations = config.max_iterations;
    kc.check_monotone = config.check_monotone;
    kc.threads = config.threads;
    auto result = run_kmodes(dataset, kc);
    for (const auto& mode : result.modes) record.representatives.push_back(dataset.decode(mode.values));
    record.iterations = result.iterations;
    record.converged = result.converged;
    record.reseeded_clusters = result.reseeded_clusters;
    assignment = std::move(result.assignment);
  } else {
    MedoidSolution solution;
    if (config.algorithm == Algorithm::kExhaustive) {
      const std::size_t distinct = count_distinct_vectors(dataset);
      if (distinct > config.exhaustive_limit && !config.force) {
        throw ResourceError("exhaustive search over " + std::to_string(distinct) +
                            " distinct records is refused above " + std::to_string(config.exhaustive_limit) +
                            "; pass --force to run it anyway");
      }
      ExhaustiveOptions options;
      options.threads = config.threads;
      options.force = true;
      solution = exhaustive_search(distances, config.k, options);
    } else {
      LocalSearchConfig lc;
      lc.p = config.p;
      lc.seed = config.seed;
      lc.restarts = config.restarts;
      lc.min_relative_improvement = config.min_relative_improvement;
      lc.threads = config.threads;
      solution = local_search(distances, config.k, lc);
      record.steps = solution.steps;
    }
    for (std::size_t idx : solution.medoid_indices) {
      record.representatives.push_back(dataset.decode(dataset.values(idx)));
      record.medoid_rows.push_back(dataset.record(idx).source_rows.front());
    }
    record.guarantee = solution.guarantee;
    medoid_objective = solution.medoid_objective;
    assignment = std::move(solution.assignment);
  }
  auto t2 = Clock::now();
  record.timings.solve = t2 - t1;

  record.eval = evaluate(distances, assignment, config.k, medoid_objective);
  record.assignment = expand(dataset, assignment);
  record.timings.evaluate = Clock::now() - t2;
  return record;
}

Json to_json(const RunRecord& record, bool timings) {
  const auto& c = record.config;
  Json config{{"input", describe(c.data)}, {"algorithm", to_string(c.algorithm)}, {"k", c.k}, {"seed", c.seed}};
  if (!c.data.builtin) {
    config["label_column"] = label_column_json(c.data.csv.label_column);
    config["missing"] = c.data.csv.missing_policy == MissingPolicy::kReject ? "reject" : "category";
  }
  if (c.algorithm == Algorithm::kKModes) {
    config["init"] = to_string(c.init);
    config["max_iterations"] = c.max_iterations;
  } else if (c.algorithm == Algorithm::kLocalSearch) {
    config["p"] = c.p;
    config["restarts"] = c.restarts;
    config["min_relative_improvement"] = c.min_relative_improvement;
  }
  config["dedupe"] = c.dedupe;

  Json solution{{"representatives", record.representatives}};
  if (c.algorithm == Algorithm::kKModes) {
    solution["iterations"] = record.iterations;
    solution["converged"] = record.converged;
    solution["reseeded_clusters"] = record.reseeded_clusters;
  } else {
    solution["medoid_rows"] = record.medoid_rows;
    solution["guarantee"] = *record.guarantee;
    if (c.algorithm == Algorithm::kLocalSearch) solution["steps"] = record.steps;
  }

  Json evaluation{{"mode_objective", record.eval.mode_objective}};
  evaluation["medoid_objective"] = record.eval.medoid_objective ? Json(*record.eval.medoid_objective) : Json(nullptr);
  if (record.eval.confusion) {
    Json rows = Json::array();
    const auto& m = *record.eval.confusion;
    for (std::size_t i = 0; i < m.clusters(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.classes(); ++j) row.push_back(m.at(i, j));
      rows.push_back(row);
    }
    evaluation["confusion"] = Json{{"classes", record.class_names}, {"rows", rows}};
    evaluation["accuracy"] = fraction_json(record.eval.scores->accuracy);
    evaluation["error"] = fraction_json(record.eval.scores->error);
  }

  Json out{{"version", version_string()},
           {"config", config},
           {"dataset", {{"rows", record.rows}, {"records", record.records}, {"attributes", record.attributes}}},
           {"solution", solution},
           {"evaluation", evaluation},
           {"assignment", record.assignment}};
  if (timings) {
    out["timings_seconds"] = {{"load", seconds(record.timings.load)},
                              {"solve", seconds(record.timings.solve)},
                              {"evaluate", seconds(record.timings.evaluate)}};
  }
  return out;
}

void write_run(const RunRecord& record, Format format, bool timings, std::ostream& out) {
  const auto& c = record.config;
  if (format == Format::kJson) {
    out << to_json(record, timings).dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> fields{
      {"version", version_string()},
      {"input", describe(c.data)},
      {"algorithm", std::string(to_string(c.algorithm))},
      {"k", std::to_string(c.k)},
      {"seed", std::to_string(c.seed)},
      {"rows", std::to_string(record.rows)},
      {"records", std::to_string(record.records)},
      {"mode_objective", std::to_string(record.eval.mode_objective)},
  };
  if (record.eval.medoid_objective) fields.emplace_back("medoid_objective", std::to_string(*record.eval.medoid_objective));
  if (record.eval.scores) {
    fields.emplace_back("accuracy", record.eval.scores->accuracy.rounded(3) + " (" + record.eval.scores->accuracy.str() + ")");
    fields.emplace_back("error", record.eval.scores->error.rounded(3) + " (" + record.eval.scores->error.str() + ")");
  }
  if (c.algorithm == Algorithm::kKModes) {
    fields.emplace_back("iterations", std::to_string(record.iterations) + (record.converged ? "" : " (not converged)"));
  } else {
    std::vector<std::string> rows;
    for (auto r : record.medoid_rows) rows.push_back(std::to_string(r));
    fields.emplace_back("medoid_rows", join(rows, ","));
    fields.emplace_back("guarantee", fixed(*record.guarantee, 1));
  }
  if (timings) fields.emplace_back("solve_seconds", fixed(seconds(record.timings.solve), 3));

  if (format == Format::kTsv) {
    for (const auto& [key, value] : fields) out << key << "\t" << value << "\n";
    return;
  }
  for (const auto& [key, value] : fields) out << std::left << std::setw(18) << key << value << "\n";
  for (std::size_t i = 0; i < record.representatives.size(); ++i) {
    out << std::setw(18) << ("cluster " + std::to_string(i)) << join(record.representatives[i], ",") << "\n";
  }
  if (record.eval.confusion) {
    out << "\n";
    write_confusion_text(record, out);
  }
}

const PublishedTable& published_table(Table table) {
  static const PublishedTable votes{"votes",
                                {"republican", "democrat"},
                                {0.136, 1706, {{154, 45}, {14, 222}}},
                                {0.149, 1701, {{158, 55}, {10, 212}}}};
  static const PublishedTable mushroom{"mushroom",
                                   {"e", "p"},
                                   {0.435, 63015, {{1470, 1856}, {2738, 2060}}},
                                   {0.121, 62512, {{4182, 960}, {26, 2956}}}};
  return table == Table::kVotes ? votes : mushroom;
}

ReproduceReport execute_reproduce(const ReproduceConfig& config) {
  ReproduceReport report;
  report.published = &published_table(config.table);

  RunConfig base;
  base.data.builtin = report.published->dataset;
  base.data.data_dir = config.data_dir;
  base.k = 2;
  base.seed = config.seed;
  base.threads = config.threads;

  RunConfig kmodes = base;
  kmodes.algorithm = Algorithm::kKModes;
  kmodes.init = InitMethod::kFirstKDistinct;
  kmodes.check_monotone = true;
  report.kmodes = execute_run(kmodes);

  RunConfig approx = base;
  if (config.table == Table::kVotes || config.exhaustive) {
    approx.algorithm = Algorithm::kExhaustive;
    approx.force = config.force;
  } else {
    approx.algorithm = Algorithm::kLocalSearch;
    approx.p = 1;
    approx.restarts = config.restarts;
  }
  report.approximation = execute_run(approx);
  return report;
}

namespace {

// Published counts with columns reordered to the measured class order.
std::vector<std::vector<std::uint64_t>> aligned_counts(const PublishedTable& table, const PublishedRow& row,
                                                       const std::vector<std::string>& classes) {
  std::vector<std::vector<std::uint64_t>> rows(row.confusion.size(), std::vector<std::uint64_t>(classes.size(), 0));
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const auto it = std::find(table.classes.begin(), table.classes.end(), classes[j]);
    if (it == table.classes.end()) continue;
    const auto col = static_cast<std::size_t>(it - table.classes.begin());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i][j] = row.confusion[i][col];
  }
  return rows;
}

Json comparison_json(const PublishedTable& table, const PublishedRow& row, const RunRecord& run) {
  Json out{{"algorithm", to_string(run.config.algorithm)}};
  const double error = run.eval.scores->error.value();
  out["error"] = {{"published", row.error},
                  {"measured", run.eval.scores->error.rounded(3)},
                  {"exact", run.eval.scores->error.str()},
                  {"deviation", fixed(error - row.error, 3)}};
  auto objective = [&](Cost value) {
    const double rel = (static_cast<double>(value) - static_cast<double>(row.objective)) /
                       static_cast<double>(row.objective) * 100.0;
    return Json{{"published", row.objective}, {"measured", value}, {"deviation_percent", fixed(rel, 2)}};
  };
  out["mode_objective"] = objective(run.eval.mode_objective);
  if (run.config.algorithm != Algorithm::kKModes) out["medoid_objective"] = objective(*run.eval.medoid_objective);
  Json rows = Json::array();
  const auto& m = *run.eval.confusion;
  for (std::size_t i = 0; i < m.clusters(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.classes(); ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  const auto published = aligned_counts(table, row, run.class_names);
  const auto matched = match_rows(m, published);
  Json matched_rows = Json::array();
  for (std::size_t r : matched) matched_rows.push_back(published[r]);
  out["confusion"] = {{"classes", run.class_names}, {"measured", rows}, {"published_matched", matched_rows}};
  if (!run.medoid_rows.empty()) out["medoid_rows"] = run.medoid_rows;
  return out;
}

void comparison_lines(const std::string& name, const PublishedRow& row, const RunRecord& run,
                      std::vector<std::vector<std::string>>& lines) {
  lines.push_back({name + " error", fixed(row.error, 3), run.eval.scores->error.rounded(3),
                   fixed(run.eval.scores->error.value() - row.error, 3)});
  auto objective = [&](const std::string& label, Cost value) {
    const double rel = (static_cast<double>(value) - static_cast<double>(row.objective)) /
                       static_cast<double>(row.objective) * 100.0;
    lines.push_back({name + " " + label, std::to_string(row.objective), std::to_string(value), fixed(rel, 2) + "%"});
  };
  if (run.config.algorithm == Algorithm::kKModes) {
    objective("objective", run.eval.mode_objective);
  } else {
    objective("medoid objective", *run.eval.medoid_objective);
    objective("refit mode objective", run.eval.mode_objective);
  }
}

}  // namespace

Json to_json(const ReproduceReport& report, bool timings) {
  Json out{{"version", version_string()},
           {"dataset", report.published->dataset},
           {"k", 2},
           {"kmodes", comparison_json(*report.published, report.published->kmodes, report.kmodes)},
           {"approximation", comparison_json(*report.published, report.published->approximation, report.approximation)}};
  if (timings) {
    out["timings_seconds"] = {{"kmodes", seconds(report.kmodes.timings.solve)},
                              {"approximation", seconds(report.approximation.timings.solve)}};
  }
  return out;
}

void write_reproduce(const ReproduceReport& report, Format format, bool timings, std::ostream& out) {
  if (format == Format::kJson) {
    out << to_json(report, timings).dump(2) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> lines;
  comparison_lines("kmodes", report.published->kmodes, report.kmodes, lines);
  comparison_lines(std::string(to_string(report.approximation.config.algorithm)), report.published->approximation,
                   report.approximation, lines);
  if (format == Format::kTsv) {
    out << "quantity\tpublished\tmeasured\tdeviation\n";
    for (const auto& l : lines) out << join(l, "\t") << "\n";
    return;
  }
  out << report.published->dataset << ", k = 2\n\n";
  out << std::left << std::setw(38) << "quantity" << std::right << std::setw(10) << "published" << std::setw(10)
      << "measured" << std::setw(11) << "deviation" << "\n";
  for (const auto& l : lines) {
    out << std::left << std::setw(38) << l[0] << std::right << std::setw(10) << l[1] << std::setw(10) << l[2]
        << std::setw(11) << l[3] << "\n";
  }
  for (const RunRecord* run : {&report.kmodes, &report.approximation}) {
    const PublishedRow& row = run == &report.kmodes ? report.published->kmodes : report.published->approximation;
    out << "\n" << to_string(run->config.algorithm) << " confusion, published counts of the matching row in brackets\n";
    const auto& m = *run->eval.confusion;
    const auto published = aligned_counts(*report.published, row, run->class_names);
    const auto rows = match_rows(m, published);
    out << std::left << std::setw(10) << "cluster";
    for (const auto& name : run->class_names) out << std::right << std::setw(16) << name;
    out << "\n";
    for (std::size_t i = 0; i < m.clusters(); ++i) {
      out << std::left << std::setw(10) << i;
      for (std::size_t j = 0; j < m.classes(); ++j) {
        const std::string cell = std::to_string(m.at(i, j)) + " [" + std::to_string(published[rows[i]][j]) + "]";
        out << std::right << std::setw(16) << cell;
      }
      out << "\n";
    }
    out << std::left;
  }
  if (timings) {
    out << "\nsolve seconds: kmodes " << fixed(seconds(report.kmodes.timings.solve), 3) << ", "
        << to_string(report.approximation.config.algorithm) << " "
        << fixed(seconds(report.approximation.timings.solve), 3) << "\n";
  }
}

VerifyReport execute_verify(const VerifyConfig& config) {
  VerifyReport report;
  Json& d = report.details;
  if (config.trials == 0) throw InvalidArgument("trials must be at least 1");
  switch (config.suite) {
    case Suite::kMetric: {
      if (!config.data) throw InvalidArgument("the metric suite needs a dataset");
      const auto dataset = load(*config.data);
      const auto r = check_metric_properties(dataset, config.trials, config.seed);
      d = {{"suite", "metric"}, {"input", describe(*config.data)}, {"seed", config.seed},
           {"triples", r.triples_checked}, {"violations", r.violations.size()}};
      Json first = Json::array();
      for (std::size_t i = 0; i < std::min<std::size_t>(r.violations.size(), 10); ++i) {
        const auto& v = r.violations[i];
        first.push_back({{"axiom", to_string(v.axiom)}, {"x", v.x}, {"y", v.y}, {"z", v.z}});
      }
      d["first_violations"] = first;
      report.passed = r.passed();
      break;
    }
    case Suite::kMemberBound: {
      if (!config.data) throw InvalidArgument("the member-bound suite needs a dataset");
      const auto dataset = load(*config.data);
      const DistanceSource distances(dataset, MatrixMode::kAuto, config.threads);
      const auto r = audit_member_bound(distances, config.trials, config.seed);
      d = {{"suite", "member-bound"}, {"input", describe(*config.data)}, {"seed", config.seed},
           {"trials", r.trials}, {"max_ratio", fixed(r.max_ratio, 6)}, {"histogram", r.histogram},
           {"violations", r.violations}};
      report.passed = r.passed();
      break;
    }
    case Suite::kOptimumBound: {
      InstanceParams params;
      params.max_n = 10;
      params.max_m = 4;
      params.max_categories = 3;
      params.k = 2;
      const auto r = audit_optimum_bound(params, config.trials, config.seed);
      d = {{"suite", "optimum-bound"}, {"seed", config.seed}, {"trials", r.trials},
           {"max_n", params.max_n}, {"max_m", params.max_m}, {"max_categories", params.max_categories},
           {"k", params.k}, {"max_ratio", fixed(r.max_ratio, 6)}, {"violations", r.violations}};
      report.passed = r.passed();
      break;
    }
    case Suite::kOracle: {
      InstanceParams params;
      params.max_n = 40;
      params.max_m = 4;
      params.max_categories = 3;
      const auto r = audit_exhaustive_oracle(params, config.trials, config.seed, config.threads);
      d = {{"suite", "oracle"}, {"seed", config.seed}, {"trials", r.trials}, {"max_n", params.max_n},
           {"mismatches", r.mismatches}};
      report.passed = r.passed();
      break;
    }
  }
  d["passed"] = report.passed;
  return report;
}

void write_verify(const VerifyReport& report, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    out << report.details.dump(2) << "\n";
    return;
  }
  const char* sep = format == Format::kTsv ? "\t" : ": ";
  for (const auto& [key, value] : report.details.items()) {
    out << key << sep << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

std::vector<BenchRow> execute_bench(const BenchConfig& config) {
  const auto full = load(config.data);
  std::vector<std::size_t> sizes = config.sizes;
  if (sizes.empty()) sizes.push_back(full.size());
  if (config.repeats == 0) throw InvalidArgument("repeats must be at least 1");

  std::vector<BenchRow> rows;
  auto time = [&](const std::string& name, std::size_t n, auto&& fn) {
    double best = 0.0;
    for (std::size_t r = 0; r < config.repeats; ++r) {
      const auto t0 = Clock::now();
      fn();
      const double s = seconds(Clock::now() - t0);
      best = r == 0 ? s : std::min(best, s);
    }
    rows.push_back({name, n, best});
  };

  for (std::size_t n : sizes) {
    if (n == 0 || n > full.size()) {
      throw InvalidArgument("bench size " + std::to_string(n) + " outside 1.." + std::to_string(full.size()));
    }
    std::vector<Record> head(full.records().begin(), full.records().begin() + static_cast<std::ptrdiff_t>(n));
    for (auto& r : head) r.source_rows.clear();
    const CategoricalDataset prefix(full.schema(), std::move(head));

    time("pairwise_matrix", n, [&] { DistanceMatrix::compute(prefix, config.threads); });
    time("kmodes", n, [&] {
      KModesConfig kc;
      kc.k = config.k;
      kc.threads = config.threads;
      run_kmodes(prefix, kc);
    });
    const DistanceSource distances(prefix, MatrixMode::kAuto, config.threads);
    time("local_search", n, [&] {
      LocalSearchConfig lc;
      lc.seed = config.seed;
      lc.threads = config.threads;
      local_search(distances, config.k, lc);
    });
    if (n <= config.exhaustive_limit) {
      time("exhaustive", n, [&] {
        ExhaustiveOptions options;
        options.threads = config.threads;
        options.force = true;
        exhaustive_search(distances, config.k, options);
      });
    }
  }
  return rows;
}

void write_bench(const std::vector<BenchRow>& rows, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back({{"operation", r.operation}, {"n", r.n}, {"seconds", r.seconds}});
    out << Json{{"version", version_string()}, {"results", arr}}.dump(2) << "\n";
    return;
  }
  if (format == Format::kTsv) {
    out << "operation\tn\tseconds\n";
    for (const auto& r : rows) out << r.operation << "\t" << r.n << "\t" << fixed(r.seconds, 6) << "\n";
    return;
  }
  out << std::left << std::setw(18) << "operation" << std::right << std::setw(8) << "n" << std::setw(14) << "seconds"
      << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(18) << r.operation << std::right << std::setw(8) << r.n << std::setw(14)
        << fixed(r.seconds, 6) << "\n";
  }
  out << std::left;
}

}  // namespace catmodes::cli
