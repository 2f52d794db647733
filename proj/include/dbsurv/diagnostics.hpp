#ifndef DBSURV_DIAGNOSTICS_HPP_
#define DBSURV_DIAGNOSTICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "dbsurv/mle.hpp"
#include "dbsurv/types.hpp"

namespace dbsurv {

// Product-limit estimate. Jumps only at event times; at tied times events are
// taken before censorings, so censored subjects at t still count as at risk.
struct KmCurve {
  std::vector<int> times;        // distinct event times, increasing
  std::vector<double> survival;  // S(t) just after each event time
  std::vector<int> at_risk;
  std::vector<int> events;
};

KmCurve kaplan_meier(const SurvivalDataset& data);

// Step-function lookup: S(t) with S = 1 before the first event time.
double km_survival_at(const KmCurve& curve, double t);

// Survival level after the last event (1 when there are no events); the
// plateau of a heavily censored curve estimates the cured fraction.
double km_plateau(const KmCurve& curve);

// Randomized quantile residuals r_i = Phi^{-1}(u_i) with u_i drawn uniformly
// on [F(t_i - 1), F(t_i)] for events and [F(t_i), 1] for censored records,
// where F is the fitted model cdf (mixture cdf for cure fits). Deterministic
// given (fit, data, seed).
struct ResidualSet {
  std::vector<double> residuals;
  std::uint64_t seed{};
  double ks_statistic{};
  double ks_p_value{};
};

ResidualSet quantile_residuals(const FitResult& fit, const SurvivalDataset& data,
                               std::uint64_t seed);

// One-sample Kolmogorov-Smirnov test against the standard normal.
// Asymptotic p-value; the approximation is coarse below n ~ 35. n >= 5 required.
std::pair<double, double> ks_normal_test(std::span<const double> values);

// (t, fitted survival) for t = 0..t_max.
std::vector<std::pair<int, double>> fitted_survival_table(const FitResult& fit, int t_max);

// (theoretical normal quantile, ordered residual) pairs for Q-Q plotting.
std::vector<std::pair<double, double>> qq_points(std::span<const double> residuals);

// CSV emitters: "t,survival" and "index,residual,theoretical_quantile".
void write_survival_csv(std::ostream& os,
                        const std::vector<std::pair<int, double>>& table);
void write_km_csv(std::ostream& os, const KmCurve& curve);
void write_residuals_csv(std::ostream& os, const ResidualSet& residuals);

}  // namespace dbsurv

#endif  // DBSURV_DIAGNOSTICS_HPP_
