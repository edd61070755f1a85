#include "gasald/io/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "gasald/ald.hpp"
#include "gasald/baselines.hpp"
#include "gasald/error.hpp"
#include "gasald/estimation.hpp"
#include "gasald/io/csv.hpp"
#include "gasald/io/report.hpp"
#include "gasald/risk_forecast.hpp"
#include "gasald/simulate.hpp"

namespace gasald::io {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

// Effective configuration of a run; every field is echoed into report
// metadata so a run can be repeated from its report.
struct RunConfig {
  FitConfig fit;
  RollingConfig rolling;
  std::size_t window = baselines::kHistoricalWindow;
  std::uint64_t seed = kDefaultSeed;

  Json to_json() const {
    Json j;
    j["max_iterations"] = fit.max_iterations;
    j["gradient_tolerance"] =
        fit.gradient_tolerance ? Json(*fit.gradient_tolerance) : Json(nullptr);
    j["n_restarts"] = fit.n_restarts;
    j["restrict_static"] = fit.restrict_static;
    j["fd_step"] = fit.fd_step ? Json(*fit.fd_step) : Json(nullptr);
    j["polish_evaluations"] = fit.polish_evaluations;
    j["train_length"] = rolling.train_length;
    j["refit_interval"] = rolling.refit_interval;
    j["alpha"] = rolling.alpha;
    j["refit_restarts"] = rolling.refit_restarts;
    j["refit_polish_evaluations"] = rolling.refit_polish_evaluations;
    j["window"] = window;
    j["seed"] = seed;
    return j;
  }

  void apply(const Json& j) {
    if (!j.is_object()) throw InputError("config file must hold a JSON object");
    for (const auto& [key, v] : j.items()) {
      try {
        if (key == "max_iterations") fit.max_iterations = v.get<int>();
        else if (key == "gradient_tolerance") fit.gradient_tolerance = v.is_null() ? std::nullopt : std::optional(v.get<double>());
        else if (key == "n_restarts") fit.n_restarts = v.get<int>();
        else if (key == "restrict_static") fit.restrict_static = v.get<bool>();
        else if (key == "fd_step") fit.fd_step = v.is_null() ? std::nullopt : std::optional(v.get<double>());
        else if (key == "polish_evaluations") fit.polish_evaluations = v.get<long>();
        else if (key == "train_length") rolling.train_length = v.get<std::size_t>();
        else if (key == "refit_interval") rolling.refit_interval = v.get<std::size_t>();
        else if (key == "alpha") rolling.alpha = v.get<double>();
        else if (key == "refit_restarts") rolling.refit_restarts = v.get<int>();
        else if (key == "refit_polish_evaluations") rolling.refit_polish_evaluations = v.get<long>();
        else if (key == "window") window = v.get<std::size_t>();
        else if (key == "seed") seed = v.get<std::uint64_t>();
        else throw InputError("unknown config key '" + key + "'");
      } catch (const Json::exception& e) {
        throw InputError("config key '" + key + "': " + e.what());
      }
    }
  }

  void finalize() {
    fit.seed = seed;
    fit.validate();
    rolling.validate();
    if (window < 2) throw InputError("window must be >= 2");
  }
};

// Flags shared by the subcommands, bound before parsing and merged over the
// config file afterwards.
struct CommonFlags {
  std::string config_path;
  std::string format = "json";
  std::string output;
  bool prices = false;
  double alpha = 0.01;
  std::size_t train = 1500;
  std::size_t refit = 5;
  std::size_t window = baselines::kHistoricalWindow;
  std::uint64_t seed = kDefaultSeed;
  bool restrict_static = false;
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* app, bool rolling) {
    opts["config"] = app->add_option("--config", config_path, "JSON config file");
    opts["format"] = app->add_option("--format", format, "Report format")
                         ->check(CLI::IsMember({"json", "csv"}));
    opts["output"] = app->add_option("-o,--output", output, "Output path (default stdout)");
    opts["prices"] = app->add_flag("--prices", prices, "Input values are prices");
    opts["seed"] = app->add_option("--seed", seed, "Seed for restarts and resampling");
    opts["alpha"] = app->add_option("--alpha", alpha, "VaR/ES tail probability");
    if (rolling) {
      opts["train"] = app->add_option("--train", train, "Training length");
      opts["refit"] = app->add_option("--refit", refit, "Refit interval");
      opts["window"] = app->add_option("--window", window, "Historical simulation window");
    }
    opts["static"] = app->add_flag("--static", restrict_static, "Fixed-parameter ALD fit");
  }

  bool given(const std::string& name) const {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InputError("cannot read config '" + config_path + "'");
      try {
        cfg.apply(Json::parse(in));
      } catch (const Json::parse_error& e) {
        throw InputError("config '" + config_path + "': " + e.what());
      }
    }
    if (given("alpha")) cfg.rolling.alpha = alpha;
    if (given("train")) cfg.rolling.train_length = train;
    if (given("refit")) cfg.rolling.refit_interval = refit;
    if (given("window")) cfg.window = window;
    if (given("seed")) cfg.seed = seed;
    if (given("static")) cfg.fit.restrict_static = restrict_static;
    cfg.finalize();
    return cfg;
  }
};

Json policies() {
  return {{"window", "expanding"},
          {"state_at_refit", "continuous"},
          {"var_sign", "raw left-tail return"},
          {"violation", "y < VaR"},
          {"historical_quantile", "linear interpolation, h = (n - 1) alpha"},
          {"historical_schedule", "daily"},
          {"es_scale", "sample sd of exceedance residuals"},
          {"dq_lags", backtest::kDqLags},
          {"ql_scale", 1000}};
}

Json metadata(const std::string& command, const RunConfig& cfg) {
  return {{"version", GASALD_VERSION},
          {"command", command},
          {"config", cfg.to_json()},
          {"policies", policies()}};
}

Json input_json(const std::string& path, const Dataset& d) {
  return {{"file", std::filesystem::path(path).filename().string()},
          {"source_kind", to_string(d.source_kind)},
          {"n_obs", d.returns.size()},
          {"first_date", d.dates.front()},
          {"last_date", d.dates.back()}};
}

Dataset load(const std::string& path, bool prices) {
  IngestOptions opt;
  opt.source_kind = prices ? SourceKind::kPrices : SourceKind::kReturns;
  return ingest(path, opt);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

// Proleptic Gregorian day counts relative to 1970-01-01.
long days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

std::string civil_from_days(long z) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  const long y = static_cast<long>(yoe) + era * 400 + (m <= 2);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04ld-%02u-%02u", y, m, d);
  return buf;
}

// Consecutive weekdays starting at `start` (moved forward off a weekend).
std::vector<std::string> business_days(const std::string& start, std::size_t n) {
  if (!valid_iso_date(start)) throw InputError("invalid start date '" + start + "'");
  long day = days_from_civil(std::stoi(start.substr(0, 4)),
                             static_cast<unsigned>(std::stoi(start.substr(5, 2))),
                             static_cast<unsigned>(std::stoi(start.substr(8, 2))));
  std::vector<std::string> out;
  out.reserve(n);
  while (out.size() < n) {
    // 1970-01-01 was a Thursday; weekday 0 = Monday.
    const long wd = ((day % 7) + 7 + 3) % 7;
    if (wd < 5) out.push_back(civil_from_days(day));
    ++day;
  }
  return out;
}

std::vector<double> parse_triple(const std::string& text, const std::string& name) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw InputError("--" + name + ": not a number: '" + cell + "'");
    }
  }
  if (v.size() != 3) throw InputError("--" + name + " needs three comma-separated values");
  return v;
}

struct SeriesForecasts {
  std::string model;
  std::vector<std::string> dates;
  std::vector<double> var;
  std::optional<std::vector<double>> es;
};

SeriesForecasts from_var_es(const std::string& model, const Dataset& d,
                            const std::vector<VarEs>& rows) {
  SeriesForecasts f;
  f.model = model;
  f.es.emplace();
  for (const auto& r : rows) {
    f.dates.push_back(d.dates[r.time_index]);
    f.var.push_back(r.var);
    f.es->push_back(r.es);
  }
  return f;
}

const std::set<std::string> kModels = {"gas-ald", "static-ald", "gas-normal", "historical"};

// Out-of-sample forecasts of a built-in model; the GAS-ALD fit at the first
// origin is returned through `first_fit`.
SeriesForecasts run_model(const std::string& model, const Dataset& d, const RunConfig& cfg,
                          std::optional<FitResult<AldFamily>>* first_fit = nullptr) {
  const std::span<const double> y(d.returns);
  if (model == "historical") {
    if (y.size() <= cfg.rolling.train_length) {
      throw InputError("series length must exceed train_length");
    }
    auto rows = baselines::historical_var_es(y, cfg.window, cfg.rolling.alpha);
    const std::size_t skip =
        cfg.rolling.train_length > cfg.window ? cfg.rolling.train_length - cfg.window : 0;
    rows.erase(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(skip));
    return from_var_es(model, d, rows);
  }
  if (model == "gas-normal") {
    return from_var_es(model, d,
                       baselines::to_var_es(baselines::gas_normal_forecast(y, cfg.rolling, cfg.fit)));
  }
  if (model == "static-ald") {
    return from_var_es(model, d,
                       baselines::to_var_es(baselines::static_ald_var_es(y, cfg.rolling, cfg.fit)));
  }
  if (model == "gas-ald") {
    FitConfig fc = cfg.fit;
    fc.restrict_static = false;
    auto result = risk::rolling_forecast<AldFamily>(y, cfg.rolling, fc);
    if (first_fit != nullptr) *first_fit = result.fits.front().result;
    return from_var_es(model, d, baselines::to_var_es(result));
  }
  throw InputError("unknown model '" + model + "'");
}

ForecastTable to_table(const SeriesForecasts& f, double alpha) {
  ForecastTable t;
  t.dates = f.dates;
  t.var = f.var;
  t.es = f.es;
  t.alpha = std::vector<double>(f.dates.size(), alpha);
  return t;
}

double forecast_alpha(const ForecastTable& t, double fallback) {
  if (!t.alpha) return fallback;
  const double a = t.alpha->front();
  for (double v : *t.alpha) {
    if (v != a) throw InputError("forecast file mixes alpha levels");
  }
  return a;
}

// Realized returns at the forecast dates; every date must occur in the data.
std::vector<double> realized_at(const Dataset& d, const std::vector<std::string>& dates) {
  if (dates.size() > d.dates.size()) {
    throw InputError("forecast file has " + std::to_string(dates.size()) +
                     " rows but the data only " + std::to_string(d.dates.size()));
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < d.dates.size(); ++i) index[d.dates[i]] = i;
  std::vector<double> out;
  out.reserve(dates.size());
  for (const auto& date : dates) {
    const auto it = index.find(date);
    if (it == index.end()) throw InputError("forecast date " + date + " not found in the data");
    out.push_back(d.returns[it->second]);
  }
  return out;
}

int cmd_describe(const std::string& data_path, const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  const Dataset d = load(data_path, flags.prices);
  RunReport r;
  r.metadata = metadata("describe", cfg);
  r.metadata["input"] = input_json(data_path, d);
  r.describe = describe_block(d.returns);
  write_text(flags.output, emit_report(r, parse_format(flags.format)), out);
  return kExitOk;
}

int cmd_fit(const std::string& data_path, const CommonFlags& flags, bool with_se,
            std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  const Dataset d = load(data_path, flags.prices);
  auto result = estimation::fit<AldFamily>(d.returns, cfg.fit);
  if (with_se && result.converged) result.std_errors = estimation::std_errors(result, d.returns);
  RunReport r;
  r.metadata = metadata("fit", cfg);
  r.metadata["input"] = input_json(data_path, d);
  r.metadata["model"] = cfg.fit.restrict_static ? "static-ald" : "gas-ald";
  r.describe = describe_block(d.returns);
  r.fit = fit_block(result, d.returns);
  write_text(flags.output, emit_report(r, parse_format(flags.format)), out);
  return kExitOk;
}

int cmd_forecast(const std::string& data_path, const std::string& model, const CommonFlags& flags,
                 std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  const Dataset d = load(data_path, flags.prices);
  const auto f = run_model(model, d, cfg);
  std::ostringstream text;
  write_forecasts(text, to_table(f, cfg.rolling.alpha));
  write_text(flags.output, text.str(), out);
  return kExitOk;
}

int cmd_backtest(const std::string& data_path, const std::string& forecast_path,
                 const std::string& name, const CommonFlags& flags, std::ostream& out) {
  RunConfig cfg = flags.resolve();
  const Dataset d = load(data_path, flags.prices);
  const ForecastTable t = read_forecasts(forecast_path);
  const double alpha = forecast_alpha(t, cfg.rolling.alpha);
  cfg.rolling.alpha = alpha;
  const auto realized = realized_at(d, t.dates);
  const auto e = evaluate_forecasts(name, realized, t.var, t.es, alpha, cfg.seed, false);
  RunReport r;
  r.metadata = metadata("backtest", cfg);
  r.metadata["input"] = input_json(data_path, d);
  r.metadata["forecasts"] = {{name, std::filesystem::path(forecast_path).filename().string()}};
  r.metadata["evaluation"] = {{"first_date", t.dates.front()}, {"last_date", t.dates.back()}};
  r.describe = describe_block(realized);
  r.backtest[name] = backtest_entry(e);
  r.loss[name] = loss_entry(e);
  write_text(flags.output, emit_report(r, parse_format(flags.format)), out);
  return kExitOk;
}

struct SimulateFlags {
  std::size_t length = 3000;
  std::size_t burn_in = 500;
  std::string start = "2000-01-03";
  std::string kappa = "0,-0.05,0";
  std::string a = "0.05,0.05,0.05";
  std::string b = "0.9,0.95,0.9";
};

int cmd_simulate(const SimulateFlags& sf, const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  SimulationSpec<AldFamily> spec;
  const auto k = parse_triple(sf.kappa, "kappa");
  const auto a = parse_triple(sf.a, "a");
  const auto b = parse_triple(sf.b, "b");
  std::copy(k.begin(), k.end(), spec.coeffs.kappa.begin());
  std::copy(a.begin(), a.end(), spec.coeffs.a.begin());
  std::copy(b.begin(), b.end(), spec.coeffs.b.begin());
  spec.length = sf.length;
  spec.burn_in = sf.burn_in;
  spec.seed = cfg.seed;
  const auto sim = simulate::simulate_path(spec);
  Dataset d;
  d.returns = sim.series;
  d.dates = business_days(sf.start, sim.series.size());
  std::ostringstream text;
  write_dataset(text, d);
  write_text(flags.output, text.str(), out);
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

int cmd_compare(const std::string& data_path, const std::vector<std::string>& external,
                const std::string& models, bool need_es, const CommonFlags& flags,
                std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  const Dataset d = load(data_path, flags.prices);
  std::vector<SeriesForecasts> all;
  std::optional<FitResult<AldFamily>> first_fit;
  for (const auto& m : split_list(models)) {
    if (!kModels.count(m)) throw InputError("unknown model '" + m + "'");
    all.push_back(run_model(m, d, cfg, m == "gas-ald" ? &first_fit : nullptr));
  }
  Json sources = Json::object();
  for (const auto& spec : external) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError("--forecast expects NAME=PATH, got '" + spec + "'");
    }
    const std::string name = spec.substr(0, eq);
    const std::string path = spec.substr(eq + 1);
    ForecastTable t = read_forecasts(path);
    if (forecast_alpha(t, cfg.rolling.alpha) != cfg.rolling.alpha) {
      throw InputError(name + ": forecast alpha differs from --alpha");
    }
    if (!t.es && need_es) {
      throw InputError(name + ": column 'es' is required for the FZL loss and ES backtest");
    }
    all.push_back({name, t.dates, t.var, t.es});
    sources[name] = std::filesystem::path(path).filename().string();
  }
  if (all.empty()) throw InputError("nothing to compare");

  // Date-aligned intersection of every forecast stream.
  std::set<std::string> common(all.front().dates.begin(), all.front().dates.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    std::set<std::string> next;
    for (const auto& date : all[i].dates) {
      if (common.count(date)) next.insert(date);
    }
    common = std::move(next);
  }
  const std::vector<std::string> dates(common.begin(), common.end());
  if (dates.empty()) throw InputError("forecast streams share no dates");
  const auto realized = realized_at(d, dates);

  RunReport r;
  r.metadata = metadata("compare", cfg);
  r.metadata["input"] = input_json(data_path, d);
  r.metadata["models"] = split_list(models);
  r.metadata["forecasts"] = sources;
  r.metadata["evaluation"] = {
      {"first_date", dates.front()}, {"last_date", dates.back()}, {"n_obs", dates.size()}};
  r.describe = describe_block(d.returns);
  if (first_fit) r.fit = fit_block(*first_fit, std::span(d.returns).first(first_fit->n_obs));
  for (const auto& f : all) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < f.dates.size(); ++i) pos[f.dates[i]] = i;
    std::vector<double> var;
    std::optional<std::vector<double>> es;
    if (f.es) es.emplace();
    for (const auto& date : dates) {
      const std::size_t i = pos.at(date);
      var.push_back(f.var[i]);
      if (es) es->push_back((*f.es)[i]);
    }
    const auto e = evaluate_forecasts(f.model, realized, var, es, cfg.rolling.alpha, cfg.seed,
                                      need_es);
    r.backtest[f.model] = backtest_entry(e);
    r.loss[f.model] = loss_entry(e);
  }
  write_text(flags.output, emit_report(r, parse_format(flags.format)), out);
  return kExitOk;
}

int cmd_export_paths(const std::string& data_path, const std::string& dir,
                     const std::string& dates_text, std::size_t grid, const CommonFlags& flags,
                     std::ostream& out) {
  const RunConfig cfg = flags.resolve();
  if (grid < 2) throw InputError("--grid must be >= 2");
  const Dataset d = load(data_path, flags.prices);
  const auto result = estimation::fit<AldFamily>(d.returns, cfg.fit);
  const auto path = gas::filter<AldFamily>(d.returns, result.coeffs);
  const auto moments = risk::moment_path(path);

  std::vector<std::string> wanted = split_list(dates_text);
  if (wanted.empty()) wanted.push_back(d.dates.back());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < d.dates.size(); ++i) index[d.dates[i]] = i;
  for (const auto& w : wanted) {
    if (!index.count(w)) throw InputError("date " + w + " not found in the data");
  }

  std::filesystem::create_directories(dir);
  std::ofstream params(std::filesystem::path(dir) / "params.csv");
  std::ofstream moms(std::filesystem::path(dir) / "moments.csv");
  std::ofstream dens(std::filesystem::path(dir) / "density.csv");
  if (!params || !moms || !dens) throw InputError("cannot write into '" + dir + "'");
  params << "date,mu,sigma,p\n";
  moms << "date,mean,volatility,skewness,excess_kurtosis\n";
  for (std::size_t t = 0; t < path.size(); ++t) {
    const auto p = path.records[t].params();
    params << d.dates[t] << ',' << format_exact(p.mu) << ',' << format_exact(p.sigma) << ','
           << format_exact(p.p) << '\n';
    const auto& m = moments[t];
    moms << d.dates[t] << ',' << format_exact(m.mean) << ',' << format_exact(std::sqrt(m.variance))
         << ',' << format_exact(m.skewness) << ',' << format_exact(m.excess_kurtosis) << '\n';
  }
  dens << "date,x,pdf\n";
  for (const auto& w : wanted) {
    const auto p = path.records[index[w]].params();
    const double lo = ald::quantile(0.001, p);
    const double hi = ald::quantile(0.999, p);
    for (std::size_t i = 0; i < grid; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
      dens << w << ',' << format_exact(x) << ',' << format_exact(ald::pdf(x, p)) << '\n';
    }
  }
  RunReport r;
  r.metadata = metadata("export-paths", cfg);
  r.metadata["input"] = input_json(data_path, d);
  r.metadata["outputs"] = {"params.csv", "moments.csv", "density.csv"};
  r.fit = fit_block(result, d.returns);
  write_text(flags.output, emit_report(r, parse_format(flags.format)), out);
  return kExitOk;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score-driven asymmetric Laplace VaR/ES engine", "gasald"};
  app.set_version_flag("--version", GASALD_VERSION);
  app.require_subcommand(1);

  std::string data_path;
  std::string forecast_path;
  std::string name = "model";
  std::string model = "gas-ald";
  std::string models = "gas-ald,historical,static-ald,gas-normal";
  std::string dir;
  std::string dates;
  std::string loss = "both";
  std::vector<std::string> external;
  std::size_t grid = 201;
  bool no_se = false;
  SimulateFlags sim;

  CommonFlags f_describe, f_fit, f_forecast, f_backtest, f_simulate, f_compare, f_export;

  auto* describe = app.add_subcommand("describe", "Descriptive statistics of a return series");
  describe->add_option("data", data_path, "CSV with date,value")->required();
  f_describe.add(describe, false);

  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of the score-driven ALD model");
  fit->add_option("data", data_path, "CSV with date,value")->required();
  fit->add_flag("--no-se", no_se, "Skip standard errors");
  f_fit.add(fit, false);

  auto* forecast = app.add_subcommand("forecast", "Rolling one-step VaR/ES forecasts");
  forecast->add_option("data", data_path, "CSV with date,value")->required();
  forecast->add_option("--model", model, "Model")->check(CLI::IsMember(kModels));
  f_forecast.add(forecast, true);

  auto* bt = app.add_subcommand("backtest", "Backtests and losses of a forecast file");
  bt->add_option("data", data_path, "CSV with date,value")->required();
  bt->add_option("forecasts", forecast_path, "CSV with date,var[,es][,alpha]")->required();
  bt->add_option("--name", name, "Model label in the report");
  f_backtest.add(bt, false);

  auto* simulate = app.add_subcommand("simulate", "Synthetic score-driven ALD returns");
  simulate->add_option("--length", sim.length, "Retained observations");
  simulate->add_option("--burn-in", sim.burn_in, "Discarded leading observations");
  simulate->add_option("--start", sim.start, "First date (weekdays follow)");
  simulate->add_option("--kappa", sim.kappa, "Intercepts in (mu, ln sigma, ln p)");
  simulate->add_option("--a", sim.a, "Score loadings");
  simulate->add_option("--b", sim.b, "Autoregressive coefficients");
  f_simulate.add(simulate, false);

  auto* compare = app.add_subcommand("compare", "Backtest table across models");
  compare->add_option("data", data_path, "CSV with date,value")->required();
  compare->add_option("--models", models, "Built-in models, comma separated (may be empty)");
  compare->add_option("--forecast", external, "External forecasts as NAME=PATH");
  compare->add_option("--loss", loss, "Losses to report")->check(CLI::IsMember({"ql", "both"}));
  f_compare.add(compare, true);

  auto* exp = app.add_subcommand("export-paths", "Parameter, moment and density paths");
  exp->add_option("data", data_path, "CSV with date,value")->required();
  exp->add_option("--dir", dir, "Output directory")->required();
  exp->add_option("--dates", dates, "Density dates, comma separated (default last)");
  exp->add_option("--grid", grid, "Density grid points");
  f_export.add(exp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*describe) return cmd_describe(data_path, f_describe, out);
    if (*fit) return cmd_fit(data_path, f_fit, !no_se, out);
    if (*forecast) return cmd_forecast(data_path, model, f_forecast, out);
    if (*bt) return cmd_backtest(data_path, forecast_path, name, f_backtest, out);
    if (*simulate) return cmd_simulate(sim, f_simulate, out);
    if (*compare) return cmd_compare(data_path, external, models, loss == "both", f_compare, out);
    if (*exp) return cmd_export_paths(data_path, dir, dates, grid, f_export, out);
  } catch (const EstimationError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const DivergenceError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const NonstationaryError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const StateError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("gasald");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gasald::io
