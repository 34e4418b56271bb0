#include "ffdyn/table.hpp"

#include <algorithm>
#include <sstream>

namespace ffdyn {

std::string TextTable::render() const {
  std::size_t cols = header_.size();
  for (const auto& r : rows_) cols = std::max(cols, r.size());
  std::vector<std::size_t> width(cols, 0);
  auto measure = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  measure(header_);
  for (const auto& r : rows_) measure(r);
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < cols; ++i) {
      std::string cell = i < r.size() ? r[i] : "";
      if (i + 1 < cols) cell.resize(width[i], ' ');
      s += cell;
      if (i + 1 < cols) s += "  ";
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line(header_);
  std::size_t total = 0;
  for (std::size_t i = 0; i < cols; ++i) total += width[i] + (i + 1 < cols ? 2 : 0);
  out << std::string(total, '-') << '\n';
  for (const auto& r : rows_) line(r);
  return out.str();
}

}  // namespace ffdyn

namespace ffdyn {

namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

bool is_flat(const json& v) { return !v.is_object() && !v.is_array(); }

std::string join_scalars(const json& arr) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += "; ";
    s += is_flat(arr[i]) ? scalar_text(arr[i]) : arr[i].dump();
  }
  return s.empty() ? "-" : "[" + s + "]";
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, rows);
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", rows);
  } else if (v.is_array()) {
    rows.push_back({path, join_scalars(v)});
  } else {
    rows.push_back({path, scalar_text(v)});
  }
}

void render(const json& j, const std::string& path, std::string& out) {
  TextTable top({"key", "value"});
  std::vector<std::pair<std::string, const json*>> tables;
  bool any = false;
  if (j.is_object()) {
    for (const auto& [k, x] : j.items()) {
      std::string p = path.empty() ? k : path + "." + k;
      if (x.is_array() && !x.empty() && std::all_of(x.begin(), x.end(), [](const json& e) { return e.is_object(); })) {
        tables.push_back({p, &x});
        continue;
      }
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(x, p, rows);
      for (auto& [a, b] : rows) top.add({a, b});
      any = true;
    }
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, path.empty() ? "value" : path, rows);
    for (auto& [a, b] : rows) top.add({a, b});
    any = true;
  }
  if (any) out += top.render();
  for (const auto& [p, arr] : tables) {
    std::vector<std::string> cols;
    std::vector<std::vector<std::pair<std::string, std::string>>> flat;
    for (const auto& e : *arr) {
      flat.emplace_back();
      flatten(e, "", flat.back());
      for (const auto& [k, v] : flat.back())
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
    std::vector<std::string> header{"#"};
    header.insert(header.end(), cols.begin(), cols.end());
    TextTable t(header);
    for (std::size_t i = 0; i < flat.size(); ++i) {
      std::vector<std::string> row{std::to_string(i)};
      for (const auto& c : cols) {
        std::string cell = "-";
        for (const auto& [k, v] : flat[i])
          if (k == c) cell = v;
        row.push_back(cell);
      }
      t.add(row);
    }
    out += "\n" + p + ":\n" + t.render();
  }
}

}  // namespace

std::string json_to_table(const nlohmann::json& j) {
  std::string out;
  render(j, "", out);
  return out;
}

}  // namespace ffdyn
