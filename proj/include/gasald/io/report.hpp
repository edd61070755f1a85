#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gasald/backtest.hpp"
#include "gasald/estimation.hpp"
#include "json.hpp"

namespace gasald::io {

using Json = nlohmann::json;

enum class Format { kJson, kCsv };

Format parse_format(const std::string& text);

struct RunReport {
  Json metadata = Json::object();
  Json describe = Json::object();
  Json fit = Json::object();
  Json backtest = Json::object();
  Json loss = Json::object();

  Json to_json() const;
  static RunReport from_json(const Json& j);
};

// Sorted keys, two-space indent, floats with 6 significant digits,
// non-finite numbers as null. Stable under parse and re-emit.
std::string canonical_json(const Json& j);

// JSON is canonical; CSV prints one table per section.
std::string emit_report(const RunReport& report, Format format);

// Structural check of a report; returns a list of problems, empty when valid.
std::vector<std::string> validate_report(const Json& report);

// Mean, variance, skewness, excess kurtosis and Jarque-Bera.
Json describe_block(std::span<const double> series);

Json fit_block(const FitResult<AldFamily>& result, std::span<const double> series);

struct ModelEvaluation {
  std::string model;
  std::size_t n_obs = 0;
  TestReport uc;
  TestReport cc;
  std::optional<TestReport> dq;
  std::string dq_error;
  std::optional<TestReport> es;
  std::string es_error;
  std::optional<LossSummary> loss;
  std::string loss_error;
  double mean_ql = 0.0;
};

// Runs the coverage tests, the ES bootstrap (when ES is supplied) and the
// losses. A missing ES with `need_es` is an input error.
ModelEvaluation evaluate_forecasts(const std::string& model, std::span<const double> realized,
                                   std::span<const double> var_seq,
                                   const std::optional<std::vector<double>>& es_seq, double alpha,
                                   std::uint64_t seed, bool need_es);

Json backtest_entry(const ModelEvaluation& e);
// Quantile loss enters scaled by 1e3.
Json loss_entry(const ModelEvaluation& e);

}  // namespace gasald::io
