#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace ffdyn {

/// Aligned-column text table: header row, a dashed rule, then rows.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Every scalar of `j` as aligned "key value" rows with dotted paths; arrays
/// of objects become their own tables, one row per element.
std::string json_to_table(const nlohmann::json& j);

}  // namespace ffdyn
