#ifndef DBSURV_CLI_HPP_
#define DBSURV_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dbsurv/bayes.hpp"
#include "dbsurv/mle.hpp"
#include "dbsurv/types.hpp"

namespace dbsurv {

enum class Command { Fit, Bayes, Diagnose, Simulate, Km };

// Exit codes shared by run() and the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitInternalError = 4;

struct RunConfig {
  Command command{Command::Fit};
  std::string input;  // CSV path or "builtin:<id>"
  std::string time_col{"time"};
  std::string status_col{"status"};
  long censored_value{0};
  std::string family{"db"};  // db|dsfx1|lindley|rayleigh|burrhatke|all
  std::string setting{"censored"};
  McmcConfig mcmc{};
  PriorSpec priors{};
  std::string output_format{"json"};  // json|csv|text
  std::string out_path;               // empty writes to `out`
  std::string chain_out_path;         // bayes: optional CSV of retained draws
  std::uint64_t seed{0};
  int t_max{-1};  // diagnose survival-table horizon; -1 picks 2x max time
  // simulate
  double sim_beta{0.2};
  std::size_t sim_n{100};
  int sim_censor_admin{-1};  // administrative censoring time; -1 disables
  double sim_cure{0.0};      // cured fraction
};

// Per-family row of the model-comparison table, ranked by AIC ascending;
// rows that failed or are unsupported sort last and carry a status message.
struct CompareRow {
  Family family{};
  std::optional<FitResult> fit;
  std::string status;  // "ok" or the failure reason
};

std::vector<CompareRow> compare_families(const SurvivalDataset& data, Setting setting,
                                         const FitOptions& options = {});

// Executes one configured run and writes the report (JSON/CSV/text) to `out`
// (or config.out_path when set). Errors are reported on `err` as a one-line
// JSON object with a machine-readable category; the return value is the
// process exit code. Deterministic given (input bytes, config, seed).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dbsurv

#endif  // DBSURV_CLI_HPP_
