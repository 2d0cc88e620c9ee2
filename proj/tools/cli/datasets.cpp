#include "datasets.hpp"

#include <curl/curl.h>

#include <cstdlib>
#include <fstream>
#include <memory>

#include "catmodes/error.hpp"

namespace catmodes::cli {

namespace {

std::vector<DatasetSpec> make_registry() {
  DatasetSpec votes;
  votes.name = "votes";
  votes.filename = "house-votes-84.data";
  votes.url = "https://archive.ics.uci.edu/ml/machine-learning-databases/voting-records/house-votes-84.data";
  votes.columns = {"class",
                   "handicapped-infants",
                   "water-project-cost-sharing",
                   "adoption-of-the-budget-resolution",
                   "physician-fee-freeze",
                   "el-salvador-aid",
                   "religious-groups-in-schools",
                   "anti-satellite-test-ban",
                   "aid-to-nicaraguan-contras",
                   "mx-missile",
                   "immigration",
                   "synfuels-corporation-cutback",
                   "education-spending",
                   "superfund-right-to-sue",
                   "crime",
                   "duty-free-exports",
                   "export-administration-act-south-africa"};
  votes.expected_rows = 435;

  DatasetSpec mushroom;
  mushroom.name = "mushroom";
  mushroom.filename = "agaricus-lepiota.data";
  mushroom.url = "https://archive.ics.uci.edu/ml/machine-learning-databases/mushroom/agaricus-lepiota.data";
  mushroom.columns = {"class",
                      "cap-shape",
                      "cap-surface",
                      "cap-color",
                      "bruises",
                      "odor",
                      "gill-attachment",
                      "gill-spacing",
                      "gill-size",
                      "gill-color",
                      "stalk-shape",
                      "stalk-root",
                      "stalk-surface-above-ring",
                      "stalk-surface-below-ring",
                      "stalk-color-above-ring",
                      "stalk-color-below-ring",
                      "veil-type",
                      "veil-color",
                      "ring-number",
                      "ring-type",
                      "spore-print-color",
                      "population",
                      "habitat"};
  mushroom.expected_rows = 8124;

  return {votes, mushroom};
}

std::size_t write_to_stream(char* data, std::size_t size, std::size_t count, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  out->write(data, static_cast<std::streamsize>(size * count));
  return out->good() ? size * count : 0;
}

void download(const std::string& url, const std::filesystem::path& target) {
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + target.string());

  static const bool initialised = curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK;
  if (!initialised) throw InputError("libcurl initialisation failed");
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) throw InputError("libcurl initialisation failed");

  char message[CURL_ERROR_SIZE] = {};
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, message);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &write_to_stream);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &out);
  const CURLcode code = curl_easy_perform(curl.get());
  out.close();
  if (code != CURLE_OK) {
    std::filesystem::remove(target);
    throw InputError("download of " + url + " failed: " + (message[0] ? message : curl_easy_strerror(code)));
  }
}

}  // namespace

const std::vector<DatasetSpec>& builtin_datasets() {
  static const std::vector<DatasetSpec> registry = make_registry();
  return registry;
}

const DatasetSpec& find_dataset(const std::string& name) {
  for (const auto& spec : builtin_datasets()) {
    if (spec.name == name) return spec;
  }
  throw InvalidArgument("unknown dataset '" + name + "' (known: votes, mushroom)");
}

CsvOptions csv_options(const DatasetSpec& spec) {
  CsvOptions options;
  options.label_column = spec.label_column;
  options.column_names = spec.columns;
  return options;
}

std::filesystem::path default_data_dir() {
  if (const char* dir = std::getenv("CATMODES_DATA_DIR"); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "catmodes";
  return std::filesystem::path(".cache") / "catmodes";
}

CategoricalDataset load_builtin(const DatasetSpec& spec, const std::filesystem::path& dir) {
  const auto path = dir / spec.filename;
  if (!std::filesystem::exists(path)) {
    throw InputError("dataset '" + spec.name + "' not found at " + path.string() + "; run `catmodes fetch " +
                     spec.name + "` or point --data-dir / CATMODES_DATA_DIR at a directory containing " +
                     spec.filename);
  }
  return load_csv(path, csv_options(spec));
}

FetchResult fetch_dataset(const DatasetSpec& spec, const std::filesystem::path& dir, bool overwrite,
                          const std::optional<std::string>& url) {
  FetchResult result;
  result.path = dir / spec.filename;
  if (std::filesystem::exists(result.path) && !overwrite) {
    result.rows = load_builtin(spec, dir).total_weight();
    return result;
  }
  std::filesystem::create_directories(dir);
  const auto partial = result.path.string() + ".part";
  download(url.value_or(spec.url), partial);
  try {
    result.rows = load_csv(partial, csv_options(spec)).total_weight();
  } catch (...) {
    std::filesystem::remove(partial);
    throw;
  }
  if (spec.expected_rows != 0 && result.rows != spec.expected_rows) {
    std::filesystem::remove(partial);
    throw InputError("downloaded " + spec.name + " has " + std::to_string(result.rows) + " rows, expected " +
                     std::to_string(spec.expected_rows));
  }
  std::filesystem::rename(partial, result.path);
  result.downloaded = true;
  return result;
}

}  // namespace catmodes::cli
