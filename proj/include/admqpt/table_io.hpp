#pragma once
//
// Plain numeric tables and their CSV / JSON encodings.
//
// CSV dialect: '#'-prefixed "key: value" metadata lines, one header row,
// comma separator, '.' decimal point, LF line endings. Doubles use the
// shortest scientific representation that round-trips exactly.
//

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "admqpt/error.hpp"
#include "admqpt/sweep.hpp"

namespace admqpt::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw InvalidParameter("no column named " + std::string(name));
  }

  std::vector<double> column(std::string_view name) const {
    const auto c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

/// Shortest round-trip scientific notation.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

/// Compact general notation, used for column suffixes such as renyi_0.5.
inline std::string format_label(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidParameter("not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline void write_csv(std::ostream& os, const Table& t, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

inline Table read_csv(std::istream& is, Metadata* meta = nullptr) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (meta) {
        std::string_view body(line);
        body.remove_prefix(body.size() > 1 && body[1] == ' ' ? 2 : 1);
        const auto colon = body.find(": ");
        if (colon == std::string_view::npos) {
          meta->emplace_back(std::string(body), "");
        } else {
          meta->emplace_back(std::string(body.substr(0, colon)),
                             std::string(body.substr(colon + 2)));
        }
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      for (auto f : fields) t.columns.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw InvalidParameter("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_double(f));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidParameter("CSV input has no header row");
  return t;
}

/// {"metadata": {...}, "columns": [names], "data": {name: [values]}}
inline nlohmann::ordered_json to_json(const Table& t, const Metadata& meta) {
  nlohmann::ordered_json j;
  auto& m = j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["columns"] = t.columns;
  auto& data = j["data"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) arr.push_back(r[c]);
    data[t.columns[c]] = std::move(arr);
  }
  return j;
}

inline Table from_json(const nlohmann::ordered_json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  const auto& data = j.at("data");
  std::size_t n = t.columns.empty() ? 0 : data.at(t.columns.front()).size();
  t.rows.assign(n, std::vector<double>(t.columns.size()));
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const auto& arr = data.at(t.columns[c]);
    if (arr.size() != n) throw InvalidParameter("ragged JSON table");
    for (std::size_t r = 0; r < n; ++r) t.rows[r][c] = arr[r].get<double>();
  }
  return t;
}

inline Table to_table(const SweepTable& s) {
  Table t;
  t.columns = {"M",
               "lambda",
               "e0_exact_per_particle",
               "e0_mf_per_particle",
               "epsilon",
               "na_per_M_exact",
               "nb_per_M_exact",
               "na_per_M_mf",
               "ipr",
               "shannon"};
  for (double a : s.alphas) t.columns.push_back("renyi_" + format_label(a));
  t.rows.reserve(s.rows.size());
  for (const auto& r : s.rows) {
    std::vector<double> row{static_cast<double>(r.M),
                            r.lambda,
                            r.e0_exact_per_particle,
                            r.e0_mf_per_particle,
                            r.epsilon,
                            r.na_per_M_exact,
                            r.nb_per_M_exact,
                            r.na_per_M_mf,
                            r.ipr,
                            r.shannon};
    row.insert(row.end(), r.renyi.begin(), r.renyi.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace admqpt::io
