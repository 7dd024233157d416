#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace gcqw {

inline constexpr const char* kToolVersion = "gcqw 0.1.0";

enum class OutputFormat { Csv, Json };

using Cell = std::variant<double, long long, std::string>;

/// Streams experiment tables as CSV ('#'-prefixed metadata, comma delimiter,
/// 17 significant digits) or as a single JSON document. Output is
/// byte-identical across reruns with identical inputs.
class TableWriter {
 public:
  TableWriter(std::ostream& os, OutputFormat format);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void meta(const std::string& key, long long value);
  void columns(std::vector<std::string> names);
  void row(const std::vector<Cell>& cells);
  /// Summary values appear after the rows (CSV: trailing '# key=value').
  void summary(const std::string& key, double value);
  void finish();

  static std::string format_double(double v);

 private:
  std::ostream& os_;
  OutputFormat format_;
  bool finished_ = false;
  nlohmann::ordered_json doc_;  // Json mode only
};

}  // namespace gcqw
