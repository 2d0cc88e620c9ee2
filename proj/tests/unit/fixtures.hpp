#ifndef CATMODES_TESTS_FIXTURES_HPP
#define CATMODES_TESTS_FIXTURES_HPP

#include <sstream>
#include <string>

#include "catmodes/dataset.hpp"
#include "oracles.hpp"

namespace catmodes::testing {

inline CategoricalDataset from_text(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return parse_csv(in, options);
}

inline CsvOptions class_first() {
  CsvOptions options;
  options.label_column = std::size_t{0};
  return options;
}

inline const CategoricalDataset& votes() {
  static const CategoricalDataset ds = load_csv(oracle::data_dir() / "house-votes-84.data", class_first());
  return ds;
}

inline const CategoricalDataset& mushroom() {
  static const CategoricalDataset ds = load_csv(oracle::data_dir() / "agaricus-lepiota.data", class_first());
  return ds;
}

}  // namespace catmodes::testing

#endif  // CATMODES_TESTS_FIXTURES_HPP
