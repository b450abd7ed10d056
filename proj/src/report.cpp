// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#include "ffext/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ffext/errors.hpp"
#include "json.hpp"

namespace ffext {

void ReportRecord::set(std::string key, ReportValue value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  fields_.emplace_back(std::move(key), std::move(value));
}

const ReportValue* ReportRecord::find(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_text(const ReportValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const double* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

void check_schema(const std::vector<ReportRecord>& records) {
  if (records.empty()) return;
  const auto& head = records.front().fields();
  for (const ReportRecord& rec : records) {
    if (rec.fields().size() != head.size())
      raise(errc::bad_input, "report records have differing schemas");
    for (std::size_t i = 0; i < head.size(); ++i)
      if (rec.fields()[i].first != head[i].first)
        raise(errc::bad_input, "report records have differing schemas");
  }
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ReportRecord>& records) {
  check_schema(records);
  if (records.empty()) return;
  const auto& head = records.front().fields();
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(head[i].first);
  }
  os << '\n';
  for (const ReportRecord& rec : records) {
    const auto& fields = rec.fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(to_text(fields[i].second));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<ReportRecord>& records) {
  check_schema(records);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportRecord& rec : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rec.fields()) {
      if (const bool* b = std::get_if<bool>(&value))
        obj[key] = *b;
      else if (const std::int64_t* i = std::get_if<std::int64_t>(&value))
        obj[key] = *i;
      else if (const double* d = std::get_if<double>(&value)) {
        if (std::isnan(*d))
          obj[key] = nullptr;
        else
          obj[key] = *d;
      } else {
        obj[key] = std::get<std::string>(value);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_report(std::ostream& os, const std::vector<ReportRecord>& records,
                  ReportFormat format) {
  if (format == ReportFormat::csv)
    write_csv(os, records);
  else
    write_json(os, records);
}

}  // namespace ffext
