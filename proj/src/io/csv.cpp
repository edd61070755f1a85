#include "gasald/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gasald/error.hpp"

namespace gasald::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, std::size_t line, const std::string& column) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line, "column '" + column + "': not a number: '" + text + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "column '" + column + "': non-finite value");
  return v;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         bool required) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  if (required) throw ParseError(1, "missing column '" + name + "'");
  return header.size();
}

struct Table {
  std::vector<std::string> header;
  // (line number, cells)
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(t.header.size()) + " fields, got " +
                                    std::to_string(cells.size()));
    }
    t.rows.emplace_back(line_no, std::move(cells));
  }
  if (t.header.empty()) throw InputError("empty CSV input");
  return t;
}

void check_date_order(const std::string& date, const std::string* previous, std::size_t line) {
  if (!valid_iso_date(date)) throw ParseError(line, "invalid ISO-8601 date '" + date + "'");
  if (previous != nullptr) {
    if (date == *previous) throw ParseError(line, "duplicate date " + date);
    if (date < *previous) throw ParseError(line, "date " + date + " is not after " + *previous);
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return in;
}

}  // namespace

std::string to_string(SourceKind kind) {
  return kind == SourceKind::kPrices ? "prices" : "returns";
}

SourceKind parse_source_kind(const std::string& text) {
  if (text == "prices") return SourceKind::kPrices;
  if (text == "returns") return SourceKind::kReturns;
  throw InputError("source kind must be 'prices' or 'returns', got '" + text + "'");
}

bool valid_iso_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  const int y = std::stoi(text.substr(0, 4));
  const int m = std::stoi(text.substr(5, 2));
  const int d = std::stoi(text.substr(8, 2));
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return d <= kDays[m - 1] + (m == 2 && leap ? 1 : 0);
}

Dataset parse_dataset(std::istream& in, const IngestOptions& options) {
  const Table t = read_table(in);
  const std::size_t di = column_index(t.header, options.date_column, true);
  const std::size_t vi = column_index(t.header, options.value_column, true);
  if (t.rows.size() < 2) throw InputError("need at least 2 data rows");

  std::vector<std::string> dates;
  std::vector<double> values;
  for (const auto& [line, cells] : t.rows) {
    check_date_order(cells[di], dates.empty() ? nullptr : &dates.back(), line);
    const double v = parse_number(cells[vi], line, options.value_column);
    if (options.source_kind == SourceKind::kPrices && !(v > 0.0)) {
      throw ParseError(line, "price must be positive");
    }
    dates.push_back(cells[di]);
    values.push_back(v);
  }

  Dataset d;
  d.source_kind = options.source_kind;
  if (options.source_kind == SourceKind::kReturns) {
    d.dates = std::move(dates);
    d.returns = std::move(values);
    return d;
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    d.dates.push_back(dates[i]);
    d.returns.push_back(std::log(values[i]) - std::log(values[i - 1]));
  }
  return d;
}

Dataset ingest(const std::string& path, const IngestOptions& options) {
  auto in = open(path);
  return parse_dataset(in, options);
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << "date,value\n";
  for (std::size_t i = 0; i < data.returns.size(); ++i) {
    out << data.dates[i] << ',' << format_exact(data.returns[i]) << '\n';
  }
}

ForecastTable parse_forecasts(std::istream& in) {
  const Table t = read_table(in);
  const std::size_t di = column_index(t.header, "date", true);
  const std::size_t vi = column_index(t.header, "var", true);
  const std::size_t ei = column_index(t.header, "es", false);
  const std::size_t ai = column_index(t.header, "alpha", false);
  if (t.rows.empty()) throw InputError("forecast file has no rows");
  ForecastTable f;
  if (ei < t.header.size()) f.es.emplace();
  if (ai < t.header.size()) f.alpha.emplace();
  for (const auto& [line, cells] : t.rows) {
    check_date_order(cells[di], f.dates.empty() ? nullptr : &f.dates.back(), line);
    f.dates.push_back(cells[di]);
    f.var.push_back(parse_number(cells[vi], line, "var"));
    if (f.es) f.es->push_back(parse_number(cells[ei], line, "es"));
    if (f.alpha) f.alpha->push_back(parse_number(cells[ai], line, "alpha"));
  }
  return f;
}

ForecastTable read_forecasts(const std::string& path) {
  auto in = open(path);
  return parse_forecasts(in);
}

void write_forecasts(std::ostream& out, const ForecastTable& table) {
  out << "date,var";
  if (table.es) out << ",es";
  if (table.alpha) out << ",alpha";
  out << '\n';
  for (std::size_t i = 0; i < table.dates.size(); ++i) {
    out << table.dates[i] << ',' << format_exact(table.var[i]);
    if (table.es) out << ',' << format_exact((*table.es)[i]);
    if (table.alpha) out << ',' << format_exact((*table.alpha)[i]);
    out << '\n';
  }
}

}  // namespace gasald::io
