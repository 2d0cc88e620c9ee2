#ifndef CATMODES_CLI_DATASETS_HPP
#define CATMODES_CLI_DATASETS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "catmodes/dataset.hpp"

namespace catmodes::cli {

/// A known public dataset: where to download it and how to read it.
struct DatasetSpec {
  std::string name;
  std::string filename;
  std::string url;
  /// Every column of the file in order, the class column included.
  std::vector<std::string> columns;
  std::size_t label_column = 0;
  std::size_t expected_rows = 0;
};

const std::vector<DatasetSpec>& builtin_datasets();

/// Throws InvalidArgument for unknown names.
const DatasetSpec& find_dataset(const std::string& name);

CsvOptions csv_options(const DatasetSpec& spec);

/// Cache directory: $CATMODES_DATA_DIR, else $HOME/.cache/catmodes.
std::filesystem::path default_data_dir();

/// Loads `spec` from `dir`. A missing file raises InputError naming the
/// expected path and the fetch command that would provide it.
CategoricalDataset load_builtin(const DatasetSpec& spec, const std::filesystem::path& dir);

struct FetchResult {
  std::filesystem::path path;
  bool downloaded = false;
  std::size_t rows = 0;
};

/// Downloads `spec` into `dir` unless already present (or `overwrite`).
/// The file is parsed and its row count checked before it replaces the
/// target. `url` overrides the registry location.
FetchResult fetch_dataset(const DatasetSpec& spec, const std::filesystem::path& dir, bool overwrite = false,
                          const std::optional<std::string>& url = std::nullopt);

}  // namespace catmodes::cli

#endif  // CATMODES_CLI_DATASETS_HPP
