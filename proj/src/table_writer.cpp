#include "gcqw/table_writer.hpp"

#include <cstdio>

namespace gcqw {

std::string TableWriter::format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TableWriter::TableWriter(std::ostream& os, OutputFormat format)
    : os_(os), format_(format) {
  if (format_ == OutputFormat::Json) {
    doc_["meta"] = nlohmann::ordered_json::object();
    doc_["columns"] = nlohmann::ordered_json::array();
    doc_["rows"] = nlohmann::ordered_json::array();
  }
  meta("tool", kToolVersion);
}

void TableWriter::meta(const std::string& key, const std::string& value) {
  if (format_ == OutputFormat::Csv)
    os_ << "# " << key << "=" << value << "\n";
  else
    doc_["meta"][key] = value;
}

void TableWriter::meta(const std::string& key, double value) {
  if (format_ == OutputFormat::Csv)
    os_ << "# " << key << "=" << format_double(value) << "\n";
  else
    doc_["meta"][key] = value;
}

void TableWriter::meta(const std::string& key, long long value) {
  if (format_ == OutputFormat::Csv)
    os_ << "# " << key << "=" << value << "\n";
  else
    doc_["meta"][key] = value;
}

void TableWriter::columns(std::vector<std::string> names) {
  if (format_ == OutputFormat::Csv) {
    for (std::size_t i = 0; i < names.size(); ++i)
      os_ << (i ? "," : "") << names[i];
    os_ << "\n";
  } else {
    for (auto& n : names) doc_["columns"].push_back(n);
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (format_ == OutputFormat::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              os_ << format_double(v);
            else
              os_ << v;
          },
          cells[i]);
    }
    os_ << "\n";
  } else {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& c : cells)
      std::visit([&](const auto& v) { jrow.push_back(v); }, c);
    doc_["rows"].push_back(jrow);
  }
}

void TableWriter::summary(const std::string& key, double value) {
  if (format_ == OutputFormat::Csv)
    os_ << "# " << key << "=" << format_double(value) << "\n";
  else
    doc_["summary"][key] = value;
}

void TableWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ == OutputFormat::Json) os_ << doc_.dump(2) << "\n";
  os_.flush();
}

}  // namespace gcqw
