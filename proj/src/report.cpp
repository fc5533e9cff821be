#include "cellpair/report.hpp"

#include "cellpair/core.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace cellpair {

namespace {

using nlohmann::json;

template <typename T>
struct is_optional : std::false_type {};
template <typename T>
struct is_optional<std::optional<T>> : std::true_type {};

template <typename T>
std::string format_number(T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string format_value(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (is_optional<T>::value) {
    return v ? format_value(*v) : std::string();
  } else {
    return format_number(v);
  }
}

template <typename T>
void parse_value(std::string_view text, T& out, std::string_view column) {
  if constexpr (std::is_same_v<T, std::string>) {
    out = std::string(text);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (text == "true") out = true;
    else if (text == "false") out = false;
    else throw std::runtime_error("bad boolean in column " + std::string(column));
  } else if constexpr (is_optional<T>::value) {
    if (text.empty()) {
      out.reset();
    } else {
      typename T::value_type v{};
      parse_value(text, v, column);
      out = v;
    }
  } else {
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw std::runtime_error("bad number '" + std::string(text) + "' in column " + std::string(column));
    }
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// RFC 4180 records; quoted fields may span lines.
std::vector<std::vector<std::string>> csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

template <typename T>
json to_json_value(const T& v) {
  if constexpr (is_optional<T>::value) {
    return v ? to_json_value(*v) : json(nullptr);
  } else if constexpr (std::is_floating_point_v<T>) {
    // JSON has no infinities; keep them as strings so they survive a round trip.
    return std::isfinite(v) ? json(v) : json(format_number(v));
  } else {
    return json(v);
  }
}

template <typename T>
void from_json_value(const json& j, T& out, std::string_view key) {
  if constexpr (is_optional<T>::value) {
    if (j.is_null()) {
      out.reset();
    } else {
      typename T::value_type v{};
      from_json_value(j, v, key);
      out = v;
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (j.is_string()) parse_value(j.get<std::string>(), out, key);
    else out = j.get<T>();
  } else {
    out = j.get<T>();
  }
}

}  // namespace

std::vector<std::string> report_columns() {
  std::vector<std::string> names;
  ReportRow r;
  for_each_field(r, [&](std::string_view name, auto&) { names.emplace_back(name); });
  return names;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + std::string(name) + "'");
}

void emit_csv(const std::vector<ReportRow>& rows, std::ostream& os) {
  const auto cols = report_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';
  for (const ReportRow& row : rows) {
    bool first = true;
    for_each_field(row, [&](std::string_view, const auto& v) {
      os << (first ? "" : ",") << csv_escape(format_value(v));
      first = false;
    });
    os << '\n';
  }
}

void emit_json(const std::vector<ReportRow>& rows, std::ostream& os) {
  json arr = json::array();
  for (const ReportRow& row : rows) {
    json obj = json::object();
    for_each_field(row, [&](std::string_view name, const auto& v) { obj[std::string(name)] = to_json_value(v); });
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, std::ostream& os) {
  if (format == ReportFormat::csv) emit_csv(rows, os);
  else emit_json(rows, os);
}

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_report(rows, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<ReportRow> parse_csv(std::string_view text) {
  const auto records = csv_records(text);
  if (records.empty()) throw std::runtime_error("CSV report has no header");
  const auto cols = report_columns();
  if (records.front() != cols) throw std::runtime_error("CSV header does not match the report columns");
  std::vector<ReportRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != cols.size()) {
      throw std::runtime_error("CSV row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                               " fields, expected " + std::to_string(cols.size()));
    }
    ReportRow row;
    std::size_t k = 0;
    for_each_field(row, [&](std::string_view name, auto& v) { parse_value(rec[k++], v, name); });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> parse_json(std::string_view text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw std::runtime_error("JSON report must be an array");
  std::vector<ReportRow> rows;
  for (const json& obj : arr) {
    ReportRow row;
    for_each_field(row, [&](std::string_view name, auto& v) {
      const std::string key(name);
      if (!obj.contains(key)) throw std::runtime_error("JSON row lacks key " + key);
      from_json_value(obj.at(key), v, name);
    });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> parse_report(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '[') return parse_json(text);
  return parse_csv(text);
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report(ss.str());
}

}  // namespace cellpair
