#include "gasald/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "gasald/error.hpp"
#include "gasald/gas_filter.hpp"
#include "gasald/stats.hpp"

namespace gasald::io {

namespace {

std::string format_number(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  const double v = j.get<double>();
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_canonical(std::ostringstream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Json(key).dump() << ": ";
      write_canonical(out, value, depth + 1);
    }
    out << '\n' << close << '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      out << "[]";
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out << ",\n";
      out << pad;
      write_canonical(out, j[i], depth + 1);
    }
    out << '\n' << close << ']';
  } else if (j.is_number()) {
    out << format_number(j);
  } else {
    out << j.dump();
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_number()) {
    const std::string s = format_number(j);
    return s == "null" ? "" : s;
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ";" : "") + csv_cell(j[i]);
    return s;
  }
  return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::map<std::string, Json>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out[prefix] = j;
  }
}

// Sections keyed by model become one row per model; anything else is a
// key/value listing.
void write_csv_section(std::ostringstream& out, const std::string& name, const Json& section) {
  out << "# " << name << '\n';
  bool per_model = section.is_object() && !section.empty();
  for (const auto& [k, v] : section.items()) per_model = per_model && v.is_object();
  if (!per_model) {
    std::map<std::string, Json> flat;
    flatten(section, "", flat);
    out << "key,value\n";
    for (const auto& [k, v] : flat) out << k << ',' << csv_cell(v) << '\n';
    out << '\n';
    return;
  }
  std::map<std::string, std::map<std::string, Json>> rows;
  std::set<std::string> columns;
  for (const auto& [model, entry] : section.items()) {
    flatten(entry, "", rows[model]);
    for (const auto& [k, v] : rows[model]) columns.insert(k);
  }
  out << "model";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& [model, cells] : rows) {
    out << model;
    for (const auto& c : columns) {
      const auto it = cells.find(c);
      out << ',' << (it == cells.end() ? "" : csv_cell(it->second));
    }
    out << '\n';
  }
  out << '\n';
}

Json test_json(const TestReport& r) {
  return {{"statistic", r.statistic}, {"p_value", r.p_value}};
}

void check_p_values(const Json& j, const std::string& path, std::vector<std::string>& problems) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      const std::string here = path + "." + k;
      if (k == "p_value" && !v.is_null()) {
        if (!v.is_number() || !(v.get<double>() >= 0.0 && v.get<double>() <= 1.0)) {
          problems.push_back(here + " is not a probability");
        }
      }
      check_p_values(v, here, problems);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      check_p_values(j[i], path + "[" + std::to_string(i) + "]", problems);
    }
  }
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  throw InputError("format must be 'json' or 'csv', got '" + text + "'");
}

Json RunReport::to_json() const {
  return {{"metadata", metadata},
          {"describe", describe},
          {"fit", fit},
          {"backtest", backtest},
          {"loss", loss}};
}

RunReport RunReport::from_json(const Json& j) {
  RunReport r;
  r.metadata = j.at("metadata");
  r.describe = j.at("describe");
  r.fit = j.at("fit");
  r.backtest = j.at("backtest");
  r.loss = j.at("loss");
  return r;
}

std::string canonical_json(const Json& j) {
  std::ostringstream out;
  write_canonical(out, j, 0);
  out << '\n';
  return out.str();
}

std::string emit_report(const RunReport& report, Format format) {
  if (format == Format::kJson) return canonical_json(report.to_json());
  std::ostringstream out;
  write_csv_section(out, "metadata", report.metadata);
  write_csv_section(out, "describe", report.describe);
  write_csv_section(out, "fit", report.fit);
  write_csv_section(out, "backtest", report.backtest);
  write_csv_section(out, "loss", report.loss);
  return out.str();
}

std::vector<std::string> validate_report(const Json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  static const std::set<std::string> kSections = {"metadata", "describe", "fit", "backtest",
                                                  "loss"};
  for (const auto& s : kSections) {
    if (!report.contains(s)) {
      problems.push_back("missing section " + s);
    } else if (!report[s].is_object()) {
      problems.push_back("section " + s + " is not an object");
    }
  }
  for (const auto& [k, v] : report.items()) {
    if (!kSections.count(k)) problems.push_back("unexpected section " + k);
  }
  if (!problems.empty()) return problems;
  if (!report["metadata"].contains("version")) problems.push_back("metadata.version missing");
  for (const auto& [model, entry] : report["backtest"].items()) {
    for (const char* key : {"uc", "cc", "dq", "es_bootstrap"}) {
      if (!entry.contains(key)) problems.push_back("backtest." + model + "." + key + " missing");
    }
  }
  for (const auto& [model, entry] : report["loss"].items()) {
    for (const char* key : {"mean_ql_x1e3", "mean_fzl"}) {
      if (!entry.contains(key)) problems.push_back("loss." + model + "." + key + " missing");
    }
  }
  check_p_values(report, "", problems);
  return problems;
}

Json describe_block(std::span<const double> series) {
  const auto jb = backtest::jarque_bera(series);
  return {{"n_obs", series.size()},
          {"mean", stats::mean(series)},
          {"variance", stats::sample_variance(series)},
          {"skewness", stats::skewness(series)},
          {"excess_kurtosis", stats::excess_kurtosis(series)},
          {"jarque_bera", test_json(jb)}};
}

Json fit_block(const FitResult<AldFamily>& result, std::span<const double> series) {
  const auto& c = result.coeffs;
  Json j;
  j["model"] = result.restricted_static ? "static-ald" : "gas-ald";
  j["loglik"] = result.loglik;
  j["converged"] = result.converged;
  j["gradient_norm"] = result.gradient_norm;
  j["n_obs"] = result.n_obs;
  j["coefficients"] = {{"kappa", c.kappa}, {"a", c.a}, {"b", c.b}};
  if (result.std_errors) {
    Json se = Json::array();
    for (const auto& v : *result.std_errors) se.push_back(v ? Json(*v) : Json(nullptr));
    j["std_errors"] = {{"kappa", Json(std::vector<Json>(se.begin(), se.begin() + 3))},
                       {"a", Json(std::vector<Json>(se.begin() + 3, se.begin() + 6))},
                       {"b", Json(std::vector<Json>(se.begin() + 6, se.end()))}};
  } else {
    j["std_errors"] = nullptr;
  }
  const auto path = gas::filter<AldFamily>(series, c);
  const auto u = gas::pit<AldFamily>(series, path);
  const double d = stats::ks_uniform_statistic(u);
  j["pit_ks"] = {{"statistic", d}, {"p_value", stats::ks_pvalue(d, u.size())}};
  return j;
}

ModelEvaluation evaluate_forecasts(const std::string& model, std::span<const double> realized,
                                   std::span<const double> var_seq,
                                   const std::optional<std::vector<double>>& es_seq, double alpha,
                                   std::uint64_t seed, bool need_es) {
  if (realized.size() != var_seq.size()) {
    throw InputError(model + ": " + std::to_string(var_seq.size()) + " forecasts for " +
                     std::to_string(realized.size()) + " observations");
  }
  if (!es_seq && need_es) {
    throw InputError(model + ": column 'es' is required for the FZL loss and ES backtest");
  }
  ModelEvaluation e;
  e.model = model;
  e.n_obs = realized.size();
  const auto hits = backtest::violations(realized, var_seq);
  e.uc = backtest::uc_test(hits, alpha);
  e.cc = backtest::cc_test(hits, alpha);
  try {
    e.dq = backtest::dq_test(hits, var_seq, alpha);
  } catch (const DegenerateInputError& err) {
    e.dq_error = err.what();
  }
  e.mean_ql = backtest::mean_quantile_loss(realized, var_seq, alpha);
  if (es_seq) {
    try {
      e.es = backtest::es_bootstrap_test(realized, var_seq, *es_seq, backtest::kBootstrapDraws,
                                         seed);
    } catch (const InsufficientExceedancesError& err) {
      e.es_error = err.what();
    }
    try {
      e.loss = backtest::loss_summary(realized, var_seq, *es_seq, alpha);
    } catch (const DomainError& err) {
      // FZL is undefined for a non-negative ES; the row stays in the table.
      e.loss_error = err.what();
    }
  }
  return e;
}

Json backtest_entry(const ModelEvaluation& e) {
  Json j;
  j["n_obs"] = e.n_obs;
  j["n_violations"] = e.uc.n_violations;
  j["violation_rate"] =
      static_cast<double>(e.uc.n_violations) / static_cast<double>(std::max<std::size_t>(e.n_obs, 1));
  j["uc"] = test_json(e.uc);
  j["cc"] = test_json(e.cc);
  if (e.dq) {
    j["dq"] = test_json(*e.dq);
  } else {
    j["dq"] = {{"statistic", nullptr}, {"p_value", nullptr}, {"error", e.dq_error}};
  }
  j["dq"]["n_lags"] = backtest::kDqLags;
  if (e.es) {
    j["es_bootstrap"] = test_json(*e.es);
    j["es_bootstrap"]["n_exceedances"] = e.es->n_violations;
  } else {
    j["es_bootstrap"] = {{"statistic", nullptr},
                         {"p_value", nullptr},
                         {"error", e.es_error.empty() ? "no ES forecasts" : e.es_error}};
  }
  j["es_bootstrap"]["n_boot"] = backtest::kBootstrapDraws;
  return j;
}

Json loss_entry(const ModelEvaluation& e) {
  Json j;
  j["n_obs"] = e.n_obs;
  j["mean_ql_x1e3"] = e.mean_ql * 1e3;
  j["mean_fzl"] = e.loss ? Json(e.loss->mean_fzl) : Json(nullptr);
  if (!e.loss_error.empty()) j["error"] = e.loss_error;
  return j;
}

}  // namespace gasald::io
