#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gasald/series.hpp"

namespace gasald::io {

enum class SourceKind { kPrices, kReturns };

std::string to_string(SourceKind kind);
SourceKind parse_source_kind(const std::string& text);

struct Dataset {
  // ISO-8601 calendar dates aligned with `returns`.
  std::vector<std::string> dates;
  ReturnSeries returns;
  SourceKind source_kind = SourceKind::kReturns;
};

struct IngestOptions {
  std::string date_column = "date";
  std::string value_column = "value";
  SourceKind source_kind = SourceKind::kReturns;
};

// True for a valid YYYY-MM-DD calendar date.
bool valid_iso_date(const std::string& text);

// Reads a header-first CSV of dates and values. Prices become log returns
// dated at the later price.
Dataset parse_dataset(std::istream& in, const IngestOptions& options = {});
Dataset ingest(const std::string& path, const IngestOptions& options = {});

// Returns mode, full precision; ingesting the output reproduces the data.
void write_dataset(std::ostream& out, const Dataset& data);

struct ForecastTable {
  std::vector<std::string> dates;
  std::vector<double> var;
  std::optional<std::vector<double>> es;
  std::optional<std::vector<double>> alpha;
};

// Header `date,var,es,alpha`; es and alpha may be missing.
ForecastTable parse_forecasts(std::istream& in);
ForecastTable read_forecasts(const std::string& path);
void write_forecasts(std::ostream& out, const ForecastTable& table);

// Shortest text that parses back to the same double.
std::string format_exact(double v);

}  // namespace gasald::io
