#ifndef AITLAB_REPORT_HPP
#define AITLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aitlab {

// One line record: an optional name token followed by key=value fields.
// Values are restricted to a shell-safe charset so the text form needs no
// quoting and parses back losslessly.
struct Record {
  std::string name;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& add(const std::string& key, const std::string& value);
  Record& add(const std::string& key, std::uint64_t value);
};

enum class ReportFormat { kText, kJsonl };

ReportFormat parse_report_format(const std::string& text);

std::string serialize_record(const Record& r, ReportFormat format);
std::string serialize_records(const std::vector<Record>& rows,
                              ReportFormat format);

std::vector<Record> parse_records(const std::string& text);

}  // namespace aitlab

#endif  // AITLAB_REPORT_HPP
