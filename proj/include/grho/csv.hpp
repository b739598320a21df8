#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "grho/dataset.hpp"
#include "grho/errors.hpp"
#include "grho/imprecise_bounds.hpp"

namespace grho {
namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

inline double parse_double(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw Error(ErrorCode::InvalidInput,
                "line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  return value;
}

inline int parse_flag(const std::string& text, const char* what, std::size_t line_no) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": " + what +
                                           " must be 0 or 1, got '" + text + "'");
}

/// Reads and checks the header; returns subsequent non-empty lines with their
/// line numbers. Accepts LF or CRLF and a UTF-8 BOM.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(
    std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
        line[2] == '\xBF')
      line.erase(0, 3);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (!saw_header) {
      if (fields != header) {
        std::string expected;
        for (const std::string& h : header) {
          if (!expected.empty()) expected += ',';
          expected += h;
        }
        throw Error(ErrorCode::InvalidInput, "expected header '" + expected + "'");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != header.size())
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " fields");
    rows.emplace_back(line_no, std::move(fields));
  }
  if (!saw_header) throw Error(ErrorCode::InvalidInput, "empty input");
  return rows;
}

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  return in;
}

}  // namespace detail

/// `time,status,group` with status 1 = failure / 0 = censored, group in {0,1}.
inline std::vector<Observation> read_dataset_csv(std::istream& in) {
  std::vector<Observation> records;
  for (const auto& [line_no, fields] : detail::read_rows(in, {"time", "status", "group"})) {
    Observation obs;
    obs.time = detail::parse_double(fields[0], line_no);
    obs.status = detail::parse_flag(fields[1], "status", line_no) == 1 ? Status::Failure
                                                                       : Status::Censored;
    obs.group =
        detail::parse_flag(fields[2], "group", line_no) == 0 ? Group::G0 : Group::G1;
    records.push_back(obs);
  }
  return records;
}

inline std::vector<Observation> read_dataset_csv(const std::string& path) {
  std::ifstream in = detail::open_file(path);
  return read_dataset_csv(in);
}

/// `lower,upper,status,group`, split into per-group lists in input order.
inline std::pair<std::vector<IntervalObservation>, std::vector<IntervalObservation>>
read_interval_csv(std::istream& in) {
  std::pair<std::vector<IntervalObservation>, std::vector<IntervalObservation>> groups;
  for (const auto& [line_no, fields] :
       detail::read_rows(in, {"lower", "upper", "status", "group"})) {
    IntervalObservation obs;
    obs.lower = detail::parse_double(fields[0], line_no);
    obs.upper = detail::parse_double(fields[1], line_no);
    obs.status = detail::parse_flag(fields[2], "status", line_no) == 1 ? Status::Failure
                                                                       : Status::Censored;
    (detail::parse_flag(fields[3], "group", line_no) == 0 ? groups.first : groups.second)
        .push_back(obs);
  }
  return groups;
}

inline std::pair<std::vector<IntervalObservation>, std::vector<IntervalObservation>>
read_interval_csv(const std::string& path) {
  std::ifstream in = detail::open_file(path);
  return read_interval_csv(in);
}

}  // namespace grho
