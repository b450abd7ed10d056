// Copyright (c) 2026 The ffext Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace ffext {

using ReportValue = std::variant<bool, std::int64_t, double, std::string>;

/// One flat record of an experiment run: ordered key/value pairs with a
/// uniform schema across the records of a report.
class ReportRecord {
 public:
  void set(std::string key, ReportValue value);
  template <typename T>
    requires(std::is_integral_v<T> && !std::is_same_v<T, bool>)
  void set(std::string key, T value) {
    set(std::move(key), ReportValue(static_cast<std::int64_t>(value)));
  }
  void set(std::string key, const char* value) {
    set(std::move(key), ReportValue(std::string(value)));
  }
  const std::vector<std::pair<std::string, ReportValue>>& fields() const { return fields_; }
  const ReportValue* find(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, ReportValue>> fields_;
};

enum class ReportFormat { csv, json };

/// Shortest-round-trip-ish fixed formatting so identical runs serialize to
/// identical bytes.
std::string format_double(double v);

/// RFC 4180: fields holding separators, quotes or newlines are quoted and
/// embedded quotes doubled.
void write_csv(std::ostream& os, const std::vector<ReportRecord>& records);
/// Array of flat objects, keys in record order.
void write_json(std::ostream& os, const std::vector<ReportRecord>& records);
void write_report(std::ostream& os, const std::vector<ReportRecord>& records, ReportFormat format);

}  // namespace ffext
