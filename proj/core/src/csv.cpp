#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "fcprobe/analysis.hpp"

namespace fcprobe {

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

double parse_double(const std::string& s, std::size_t row, std::size_t col) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  while (end > begin && end[-1] == ' ') --end;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (begin == end || ec != std::errc{} || ptr != end) {
    throw ValidationError("csv row " + std::to_string(row) + " column " + std::to_string(col) +
                          ": \"" + s + "\" is not a number");
  }
  return v;
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::istream& is) {
  const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        row_has_content = false;
        break;
      default:
        field += ch;
        row_has_content = true;
    }
  }
  if (quoted) throw ValidationError("csv ends inside a quoted field");
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& os, const LabeledMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << csv_escape(m.labels[i]);
  os << "\r\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) os << (j ? "," : "") << format_double(m.at(i, j));
    os << "\r\n";
  }
}

void write_csv(std::ostream& os, const Embedding& e) {
  os << "label";
  for (std::size_t d = 0; d < e.dims; ++d) os << ",dim" << d + 1;
  os << "\r\n";
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    os << csv_escape(e.labels[i]);
    for (std::size_t d = 0; d < e.dims; ++d) os << ',' << format_double(e.at(i, d));
    os << "\r\n";
  }
}

void write_csv(std::ostream& os, const Spectrogram& s) {
  os << "frame_start";
  for (std::size_t b = 0; b < s.bins; ++b) os << ',' << format_double(s.bin_hz * static_cast<double>(b));
  os << "\r\n";
  for (std::size_t f = 0; f < s.frames; ++f) {
    os << f * s.frame_hop;
    for (double v : s.frame(f)) os << ',' << format_double(v);
    os << "\r\n";
  }
}

LabeledMatrix read_labeled_matrix_csv(std::istream& is) {
  const auto rows = parse_csv(is);
  if (rows.empty()) throw ValidationError("matrix csv is empty");
  LabeledMatrix m;
  m.labels = rows.front();
  const std::size_t n = m.labels.size();
  if (rows.size() != n + 1) {
    throw ValidationError("matrix csv has " + std::to_string(rows.size() - 1) + " data rows for " +
                          std::to_string(n) + " labels");
  }
  m.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i + 1];
    if (r.size() != n) {
      throw ValidationError("matrix csv row " + std::to_string(i + 2) + " has " +
                            std::to_string(r.size()) + " fields, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = parse_double(r[j], i + 2, j + 1);
  }
  return m;
}

}  // namespace fcprobe
