#include "dbsurv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dbsurv/datasets.hpp"
#include "dbsurv/diagnostics.hpp"
#include "dbsurv/io.hpp"
#include "dbsurv/likelihood.hpp"
#include "dbsurv/simulate.hpp"
#include "dbsurv/version.hpp"

namespace dbsurv {

namespace {

using nlohmann::json;

// Per-component seed streams derived from the one top-level seed.
constexpr std::uint64_t kSeedOffsetMcmc = 1;
constexpr std::uint64_t kSeedOffsetResiduals = 2;
constexpr std::uint64_t kSeedOffsetSimulate = 3;

SurvivalDataset load_input(const RunConfig& cfg) {
  constexpr std::string_view kBuiltinPrefix = "builtin:";
  if (cfg.input.empty()) {
    throw InputError("no input dataset given (use a CSV path or builtin:<id>)");
  }
  if (cfg.input.starts_with(kBuiltinPrefix)) {
    return load_builtin(cfg.input.substr(kBuiltinPrefix.size())).data;
  }
  return ingest_csv_file(cfg.input,
                         {cfg.time_col, cfg.status_col, cfg.censored_value});
}

std::vector<std::string> param_names(const FitResult& fit) {
  return fit.estimates.size() == 2 ? std::vector<std::string>{"beta", "eta"}
                                   : std::vector<std::string>{"beta"};
}

json fit_to_json(const FitResult& f) {
  json j;
  j["family"] = family_name(f.family);
  j["setting"] = setting_name(f.setting);
  j["converged"] = f.converged;
  j["iterations"] = f.iterations;
  j["loglik"] = f.loglik;
  j["aic"] = f.aic;
  j["bic"] = f.bic;
  j["aicc"] = f.aicc_valid ? json(f.aicc) : json(nullptr);
  j["ci_level"] = f.ci_level;
  j["se_available"] = f.se_available;
  const auto names = param_names(f);
  json est = json::object(), se = json::object(), ci = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    est[names[i]] = f.estimates[i];
    se[names[i]] = f.se_available ? json(f.std_errors[i]) : json(nullptr);
    ci[names[i]] = f.se_available
                       ? json::array({f.ci[i].first, f.ci[i].second})
                       : json::array({nullptr, nullptr});
  }
  j["estimates"] = est;
  j["std_errors"] = se;
  j["ci"] = ci;
  if (!f.message.empty()) j["message"] = f.message;
  return j;
}

json data_summary_json(const SurvivalDataset& data) {
  int t_min = data.records().front().time, t_max = t_min;
  for (const auto& r : data.records()) {
    t_min = std::min(t_min, r.time);
    t_max = std::max(t_max, r.time);
  }
  json j;
  j["n"] = data.size();
  j["events"] = data.event_count();
  j["censored"] = data.size() - data.event_count();
  j["t_min"] = t_min;
  j["t_max"] = t_max;
  return j;
}

json config_json(const RunConfig& cfg) {
  json j;
  const char* names[] = {"fit", "bayes", "diagnose", "simulate", "km"};
  j["command"] = names[static_cast<int>(cfg.command)];
  j["input"] = cfg.input;
  j["time_col"] = cfg.time_col;
  j["status_col"] = cfg.status_col;
  j["censored_value"] = cfg.censored_value;
  j["family"] = cfg.family;
  j["setting"] = cfg.setting;
  j["output_format"] = cfg.output_format;
  j["seed"] = cfg.seed;
  if (cfg.command == Command::Bayes) {
    j["mcmc"] = {{"iterations", cfg.mcmc.iterations},
                 {"burn_in", cfg.mcmc.burn_in},
                 {"thin", cfg.mcmc.thin},
                 {"proposal_scale", cfg.mcmc.proposal_scale}};
    j["priors"] = {{"beta_gamma_shape", cfg.priors.beta_prior.shape},
                   {"beta_gamma_rate", cfg.priors.beta_prior.rate},
                   {"eta_beta_a", cfg.priors.eta_prior.alpha},
                   {"eta_beta_b", cfg.priors.eta_prior.beta}};
  }
  if (cfg.command == Command::Simulate) {
    j["simulate"] = {{"beta", cfg.sim_beta},
                     {"n", cfg.sim_n},
                     {"censor_admin", cfg.sim_censor_admin},
                     {"cure", cfg.sim_cure}};
  }
  if (cfg.command == Command::Diagnose) j["t_max"] = cfg.t_max;
  return j;
}

json version_json() {
  return {{"name", kToolName},
          {"version", kToolVersion},
          {"schema", kReportSchemaVersion}};
}

void fit_text(std::ostream& os, const FitResult& f) {
  os << "family " << family_name(f.family) << ", setting " << setting_name(f.setting)
     << (f.converged ? "" : "  [NOT CONVERGED]") << "\n";
  const auto names = param_names(f);
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << "  " << names[i] << " = " << f.estimates[i];
    if (f.se_available) {
      os << "  (SE " << f.std_errors[i] << ", " << 100.0 * f.ci_level << "% CI "
         << f.ci[i].first << " to " << f.ci[i].second << ")";
    }
    os << "\n";
  }
  os << "  loglik " << f.loglik << ", AIC " << f.aic << ", BIC " << f.bic;
  if (f.aicc_valid) os << ", AICC " << f.aicc;
  os << "\n";
  if (!f.message.empty()) os << "  note: " << f.message << "\n";
}

int emit_report(const RunConfig& cfg, const json& report, std::ostream& out,
                const std::string& text_form) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw InputError("cannot write to '" + cfg.out_path + "'");
    os = &file;
  }
  if (cfg.output_format == "json") {
    *os << report.dump(2) << "\n";
  } else {
    *os << text_form;
  }
  return kExitOk;
}

int run_fit(const RunConfig& cfg, std::ostream& out) {
  const SurvivalDataset data = load_input(cfg);
  const Setting setting = parse_setting(cfg.setting);
  json fit_block;
  std::ostringstream text;
  bool all_converged = true;

  if (cfg.family == "all") {
    const auto table = compare_families(data, setting);
    json results = json::array();
    json ranking = json::array();
    for (const auto& row : table) {
      json r;
      r["family"] = family_name(row.family);
      r["status"] = row.status;
      if (row.fit) {
        r["fit"] = fit_to_json(*row.fit);
        ranking.push_back(family_name(row.family));
      }
      results.push_back(r);
      text << family_name(row.family) << ": " << row.status << "\n";
      if (row.fit) fit_text(text, *row.fit);
    }
    fit_block["results"] = results;
    fit_block["ranking"] = ranking;
    fit_block["ranked_by"] = "aic";
  } else {
    const FitResult fit = fit_ml(parse_family(cfg.family), setting, data);
    all_converged = fit.converged;
    fit_block["results"] = json::array({fit_to_json(fit)});
    fit_text(text, fit);
  }

  json report;
  report["config"] = config_json(cfg);
  report["data_summary"] = data_summary_json(data);
  report["fit"] = fit_block;
  report["version"] = version_json();

  std::string text_form = text.str();
  if (cfg.output_format == "csv") {
    std::ostringstream csv;
    csv << "family,converged,loglik,aic,bic,aicc\n";
    for (const auto& r : fit_block["results"]) {
      const json& f = r.contains("fit") ? r["fit"] : r;
      if (!f.contains("family")) continue;
      csv << f["family"].get<std::string>() << ',' << f["converged"].dump() << ','
          << f["loglik"].dump() << ',' << f["aic"].dump() << ',' << f["bic"].dump()
          << ',' << f["aicc"].dump() << "\n";
    }
    text_form = csv.str();
  }
  emit_report(cfg, report, out, text_form);
  return all_converged ? kExitOk : kExitNoConvergence;
}

int run_bayes(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family != "db") {
    throw InputError("bayesian estimation is available for the db family only");
  }
  const SurvivalDataset data = load_input(cfg);
  const Setting setting = parse_setting(cfg.setting);
  if (!data.has_event()) {
    throw InputError("all observations are censored; the parameter is not identified");
  }
  McmcConfig mcmc = cfg.mcmc;
  mcmc.seed = cfg.seed + kSeedOffsetMcmc;
  const PosteriorChain chain = run_mcmc(data, cfg.priors, mcmc, setting);

  json chains;
  chains["acceptance_rate"] = chain.acceptance_rate;
  chains["retained"] = chain.draws.size();
  chains["divergence_warning"] = chain.divergence_warning;
  json params = json::object();
  std::ostringstream text;
  text << "posterior summary (" << chain.draws.size() << " retained draws, "
       << "acceptance " << chain.acceptance_rate << ")\n";
  for (std::size_t k = 0; k < chain.param_names.size(); ++k) {
    json p;
    p["posterior_mean"] = chain.posterior_mean[k];
    p["hdi_95"] = json::array({chain.hdi[k].first, chain.hdi[k].second});
    p["geweke_z"] = chain.geweke_z[k];
    json acf_head = json::array();
    for (std::size_t l = 0; l < std::min<std::size_t>(10, chain.acf[k].size()); ++l) {
      acf_head.push_back(chain.acf[k][l]);
    }
    p["acf"] = acf_head;
    params[chain.param_names[k]] = p;
    text << "  " << chain.param_names[k] << ": mean " << chain.posterior_mean[k]
         << ", 95% HDI " << chain.hdi[k].first << " to " << chain.hdi[k].second
         << ", Geweke z " << chain.geweke_z[k] << "\n";
  }
  chains["parameters"] = params;
  if (chain.divergence_warning) {
    text << "  warning: chain visited beta < 1e-6\n";
  }

  if (!cfg.chain_out_path.empty()) {
    std::ofstream cf(cfg.chain_out_path);
    if (!cf) throw InputError("cannot write to '" + cfg.chain_out_path + "'");
    write_chain_csv(cf, chain);
  }

  json report;
  report["config"] = config_json(cfg);
  report["data_summary"] = data_summary_json(data);
  report["chains"] = chains;
  report["version"] = version_json();

  std::string text_form = text.str();
  if (cfg.output_format == "csv") {
    std::ostringstream csv;
    csv << "parameter,posterior_mean,hdi_lower,hdi_upper,geweke_z\n";
    for (std::size_t k = 0; k < chain.param_names.size(); ++k) {
      csv << chain.param_names[k] << ',' << chain.posterior_mean[k] << ','
          << chain.hdi[k].first << ',' << chain.hdi[k].second << ','
          << chain.geweke_z[k] << "\n";
    }
    text_form = csv.str();
  }
  emit_report(cfg, report, out, text_form);
  return kExitOk;
}

int run_diagnose(const RunConfig& cfg, std::ostream& out) {
  const SurvivalDataset data = load_input(cfg);
  const Setting setting = parse_setting(cfg.setting);
  const FitResult fit = fit_ml(parse_family(cfg.family), setting, data);
  const ResidualSet res = quantile_residuals(fit, data, cfg.seed + kSeedOffsetResiduals);
  const KmCurve km = kaplan_meier(data);
  int t_max = cfg.t_max;
  if (t_max < 0) {
    t_max = 0;
    for (const auto& r : data.records()) t_max = std::max(t_max, 2 * r.time);
  }
  const auto table = fitted_survival_table(fit, t_max);

  json diag;
  diag["residuals"] = {{"values", res.residuals},
                       {"seed", res.seed},
                       {"ks_statistic", res.ks_statistic},
                       {"ks_p_value", res.ks_p_value}};
  json km_json = json::array();
  for (std::size_t i = 0; i < km.times.size(); ++i) {
    km_json.push_back({{"t", km.times[i]},
                       {"survival", km.survival[i]},
                       {"at_risk", km.at_risk[i]},
                       {"events", km.events[i]}});
  }
  diag["kaplan_meier"] = km_json;
  json fs = json::array();
  for (const auto& [t, s] : table) fs.push_back(json::array({t, s}));
  diag["fitted_survival"] = fs;

  json report;
  report["config"] = config_json(cfg);
  report["data_summary"] = data_summary_json(data);
  report["fit"] = {{"results", json::array({fit_to_json(fit)})}};
  report["diagnostics"] = diag;
  report["version"] = version_json();

  std::ostringstream text;
  fit_text(text, fit);
  text << "  K-S vs standard normal: statistic " << res.ks_statistic << ", p "
       << res.ks_p_value << " (residual seed " << res.seed << ")\n"
       << "  KM plateau " << km_plateau(km) << "\n";
  std::string text_form = text.str();
  if (cfg.output_format == "csv") {
    std::ostringstream csv;
    write_residuals_csv(csv, res);
    text_form = csv.str();
  }
  emit_report(cfg, report, out, text_form);
  return fit.converged ? kExitOk : kExitNoConvergence;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family != "db") {
    throw InputError("simulation is available for the db family only");
  }
  Rng rng(cfg.seed + kSeedOffsetSimulate);
  const SurvivalDataset data =
      simulate_db(cfg.sim_beta, cfg.sim_n, cfg.sim_censor_admin, cfg.sim_cure, rng);
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw InputError("cannot write to '" + cfg.out_path + "'");
    os = &file;
  }
  write_dataset_csv(*os, data);
  return kExitOk;
}

int run_km(const RunConfig& cfg, std::ostream& out) {
  const SurvivalDataset data = load_input(cfg);
  const KmCurve km = kaplan_meier(data);
  if (cfg.output_format == "json") {
    json km_json = json::array();
    for (std::size_t i = 0; i < km.times.size(); ++i) {
      km_json.push_back({{"t", km.times[i]},
                         {"survival", km.survival[i]},
                         {"at_risk", km.at_risk[i]},
                         {"events", km.events[i]}});
    }
    json report;
    report["config"] = config_json(cfg);
    report["data_summary"] = data_summary_json(data);
    report["diagnostics"] = {{"kaplan_meier", km_json}};
    report["version"] = version_json();
    return emit_report(cfg, report, out, "");
  }
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw InputError("cannot write to '" + cfg.out_path + "'");
    os = &file;
  }
  write_km_csv(*os, km);
  return kExitOk;
}

void emit_error(std::ostream& err, const std::string& category,
                const std::string& message) {
  json e;
  e["error"] = {{"category", category}, {"message", message}};
  err << e.dump() << "\n";
}

}  // namespace

std::vector<CompareRow> compare_families(const SurvivalDataset& data, Setting setting,
                                         const FitOptions& options) {
  static constexpr Family kAll[] = {Family::Db, Family::DsFxI,
                                    Family::DiscreteLindley, Family::DiscreteRayleigh,
                                    Family::DiscreteBurrHatke};
  std::vector<CompareRow> rows;
  for (Family fam : kAll) {
    CompareRow row;
    row.family = fam;
    try {
      FitResult fit = fit_ml(fam, setting, data, options);
      row.status = fit.converged ? "ok" : "did not converge";
      row.fit = std::move(fit);
    } catch (const std::exception& e) {
      row.status = std::string("unsupported: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    const bool ga = a.fit.has_value(), gb = b.fit.has_value();
    if (ga != gb) return ga;
    if (!ga) return static_cast<int>(a.family) < static_cast<int>(b.family);
    return a.fit->aic < b.fit->aic;
  });
  return rows;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.output_format != "json" && config.output_format != "csv" &&
        config.output_format != "text") {
      throw InputError("output format must be json, csv, or text");
    }
    switch (config.command) {
      case Command::Fit: return run_fit(config, out);
      case Command::Bayes: return run_bayes(config, out);
      case Command::Diagnose: return run_diagnose(config, out);
      case Command::Simulate: return run_simulate(config, out);
      case Command::Km: return run_km(config, out);
    }
    throw std::logic_error("unhandled command");
  } catch (const InputError& e) {
    emit_error(err, "input", e.what());
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    emit_error(err, "input", e.what());
    return kExitInputError;
  } catch (const std::logic_error& e) {
    emit_error(err, "internal", e.what());
    return kExitInternalError;
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return kExitInternalError;
  }
}

}  // namespace dbsurv
