// Command-line front end: data ingestion, ML/Bayes fitting, diagnostics,
// Kaplan-Meier export, and dataset simulation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dbsurv/cli.hpp"
#include "dbsurv/version.hpp"

namespace {

void add_data_options(CLI::App* cmd, dbsurv::RunConfig* cfg) {
  cmd->add_option("--data", cfg->input, "CSV path or builtin:<id> (leukemia, pelvic)")
      ->required();
  cmd->add_option("--time-col", cfg->time_col, "time column name or 0-based index");
  cmd->add_option("--status-col", cfg->status_col, "status column name or 0-based index");
  cmd->add_option("--status-censored-value", cfg->censored_value,
                  "status value that marks a censored row (default 0)");
}

void add_output_options(CLI::App* cmd, dbsurv::RunConfig* cfg) {
  cmd->add_option("--output", cfg->output_format, "json|csv|text (default json)");
  cmd->add_option("--out", cfg->out_path, "write the report to this path");
  cmd->add_option("--seed", cfg->seed,
                  "top-level seed; per-component streams derive from it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(dbsurv::kToolName) +
               " - discrete Bilal survival modeling (" + dbsurv::kToolVersion + ")"};
  app.require_subcommand(1);

  dbsurv::RunConfig cfg;

  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit (one family or all)");
  add_data_options(fit, &cfg);
  fit->add_option("--family", cfg.family, "db|dsfx1|lindley|rayleigh|burrhatke|all");
  fit->add_option("--setting", cfg.setting, "complete|censored|cure");
  add_output_options(fit, &cfg);

  auto* bayes = app.add_subcommand("bayes", "random-walk Metropolis posterior (db)");
  add_data_options(bayes, &cfg);
  bayes->add_option("--setting", cfg.setting, "complete|censored|cure");
  bayes->add_option("--iterations", cfg.mcmc.iterations, "MCMC iterations");
  bayes->add_option("--burn-in", cfg.mcmc.burn_in, "burn-in iterations");
  bayes->add_option("--thin", cfg.mcmc.thin, "thinning interval");
  bayes->add_option("--proposal-scale", cfg.mcmc.proposal_scale,
                    "fixed proposal scale (default: auto-tuned)");
  bayes->add_option("--prior-beta-shape", cfg.priors.beta_prior.shape,
                    "gamma prior shape for beta");
  bayes->add_option("--prior-beta-rate", cfg.priors.beta_prior.rate,
                    "gamma prior rate for beta");
  bayes->add_option("--prior-eta-a", cfg.priors.eta_prior.alpha,
                    "beta prior a for eta (cure)");
  bayes->add_option("--prior-eta-b", cfg.priors.eta_prior.beta,
                    "beta prior b for eta (cure)");
  bayes->add_option("--chain-out", cfg.chain_out_path, "CSV path for retained draws");
  add_output_options(bayes, &cfg);

  auto* diagnose = app.add_subcommand(
      "diagnose", "fit plus randomized quantile residuals, K-S test, KM overlay");
  add_data_options(diagnose, &cfg);
  diagnose->add_option("--family", cfg.family, "db|dsfx1|lindley|rayleigh|burrhatke");
  diagnose->add_option("--setting", cfg.setting, "complete|censored|cure");
  diagnose->add_option("--t-max", cfg.t_max, "fitted survival horizon (default 2x max t)");
  add_output_options(diagnose, &cfg);

  auto* simulate = app.add_subcommand("simulate", "draw a DB dataset as CSV");
  simulate->add_option("--beta", cfg.sim_beta, "DB parameter")->required();
  simulate->add_option("--n", cfg.sim_n, "sample size")->required();
  simulate->add_option("--censor-admin", cfg.sim_censor_admin,
                       "administrative censoring time (-1 disables)");
  simulate->add_option("--cure", cfg.sim_cure, "cured fraction in [0,1)");
  add_output_options(simulate, &cfg);

  auto* km = app.add_subcommand("km", "Kaplan-Meier curve export");
  add_data_options(km, &cfg);
  add_output_options(km, &cfg);

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed()) cfg.command = dbsurv::Command::Fit;
  if (bayes->parsed()) cfg.command = dbsurv::Command::Bayes;
  if (diagnose->parsed()) cfg.command = dbsurv::Command::Diagnose;
  if (simulate->parsed()) cfg.command = dbsurv::Command::Simulate;
  if (km->parsed()) cfg.command = dbsurv::Command::Km;

  return dbsurv::run(cfg, std::cout, std::cerr);
}
