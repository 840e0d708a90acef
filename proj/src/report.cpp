#include "aitlab/report.hpp"

#include <cstdint>
#include <sstream>

#include "json.hpp"

#include "aitlab/errors.hpp"

namespace aitlab {

namespace {

constexpr char kValueCharset[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
    "/^_.:+-";

bool valid_token(const std::string& text) {
  return text.find_first_not_of(kValueCharset) == std::string::npos;
}

}  // namespace

Record& Record::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
  return *this;
}

Record& Record::add(const std::string& key, std::uint64_t value) {
  return add(key, std::to_string(value));
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "text") return ReportFormat::kText;
  if (text == "jsonl") return ReportFormat::kJsonl;
  throw InvalidInput("unknown report format: " + text);
}

std::string serialize_record(const Record& r, ReportFormat format) {
  if (format == ReportFormat::kJsonl) {
    nlohmann::ordered_json row;
    if (!r.name.empty()) row["record"] = r.name;
    for (const auto& [key, value] : r.fields) row[key] = value;
    return row.dump() + "\n";
  }
  std::string line;
  if (!r.name.empty()) {
    if (!valid_token(r.name) || r.name.find('=') != std::string::npos) {
      throw InvalidInput("record name not serializable: " + r.name);
    }
    line += r.name;
  }
  for (const auto& [key, value] : r.fields) {
    if (key.empty() || !valid_token(key) ||
        key.find('=') != std::string::npos) {
      throw InvalidInput("field key not serializable: " + key);
    }
    if (!valid_token(value)) {
      throw InvalidInput("field value not serializable: " + value);
    }
    if (!line.empty()) line += ' ';
    line += key + "=" + value;
  }
  return line + "\n";
}

std::string serialize_records(const std::vector<Record>& rows,
                              ReportFormat format) {
  std::string out;
  for (const Record& r : rows) out += serialize_record(r, format);
  return out;
}

std::vector<Record> parse_records(const std::string& text) {
  std::vector<Record> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream tokens(line);
    std::string token;
    Record r;
    bool first = true;
    while (tokens >> token) {
      std::size_t eq = token.find('=');
      if (first && eq == std::string::npos) {
        r.name = token;
        first = false;
        continue;
      }
      first = false;
      if (eq == std::string::npos) {
        throw InvalidInput("expected key=value, got " + token);
      }
      r.fields.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace aitlab
