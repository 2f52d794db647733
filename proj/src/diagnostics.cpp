#include "dbsurv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "dbsurv/rng.hpp"
#include "dbsurv/stats.hpp"

namespace dbsurv {

KmCurve kaplan_meier(const SurvivalDataset& data) {
  // events and censorings aggregated per time point
  std::map<int, std::pair<int, int>> counts;  // time -> (events, censored)
  for (const auto& r : data.records()) {
    auto& c = counts[r.time];
    (r.status == 1 ? c.first : c.second) += 1;
  }
  KmCurve curve;
  int at_risk = static_cast<int>(data.size());
  double surv = 1.0;
  for (const auto& [t, c] : counts) {
    const auto [d, w] = c;
    if (d > 0) {
      surv *= 1.0 - static_cast<double>(d) / at_risk;
      curve.times.push_back(t);
      curve.survival.push_back(surv);
      curve.at_risk.push_back(at_risk);
      curve.events.push_back(d);
    }
    at_risk -= d + w;
  }
  return curve;
}

double km_survival_at(const KmCurve& curve, double t) {
  double s = 1.0;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    if (curve.times[i] > t) break;
    s = curve.survival[i];
  }
  return s;
}

double km_plateau(const KmCurve& curve) {
  return curve.survival.empty() ? 1.0 : curve.survival.back();
}

ResidualSet quantile_residuals(const FitResult& fit, const SurvivalDataset& data,
                               std::uint64_t seed) {
  ResidualSet out;
  out.seed = seed;
  out.residuals.reserve(data.size());
  Rng rng(seed);
  for (const auto& r : data.records()) {
    const double hi_cdf = model_cdf(fit, r.time);
    double a, b;
    if (r.status == 1) {
      a = model_cdf(fit, r.time - 1);  // F(-1) = 0, so t = 0 needs no special case
      b = hi_cdf;
    } else {
      a = hi_cdf;
      b = 1.0;
    }
    const double u = a + rng.uniform_open() * (b - a);
    out.residuals.push_back(normal_quantile(u));
  }
  const auto [stat, p] = ks_normal_test(out.residuals);
  out.ks_statistic = stat;
  out.ks_p_value = p;
  return out;
}

std::pair<double, double> ks_normal_test(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 5) {
    throw std::invalid_argument("ks_normal_test: need at least 5 values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = normal_cdf(sorted[i]);
    const double up = static_cast<double>(i + 1) / n - f;
    const double dn = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(up, dn));
  }
  return {d, ks_asymptotic_p_value(d, n)};
}

std::vector<std::pair<int, double>> fitted_survival_table(const FitResult& fit,
                                                          int t_max) {
  if (t_max < 0) {
    throw std::invalid_argument("fitted_survival_table: t_max must be >= 0");
  }
  std::vector<std::pair<int, double>> table;
  table.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    table.emplace_back(t, model_survival(fit, t));
  }
  return table;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> residuals) {
  std::vector<double> sorted(residuals.begin(), residuals.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.emplace_back(normal_quantile((i + 0.5) / n), sorted[i]);
  }
  return pts;
}

void write_survival_csv(std::ostream& os,
                        const std::vector<std::pair<int, double>>& table) {
  os << "t,survival\n";
  for (const auto& [t, s] : table) os << t << ',' << s << '\n';
}

void write_km_csv(std::ostream& os, const KmCurve& curve) {
  os << "t,survival\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    os << curve.times[i] << ',' << curve.survival[i] << '\n';
  }
}

void write_residuals_csv(std::ostream& os, const ResidualSet& residuals) {
  // rows in residual order with the matching normal quantile for Q-Q plots
  std::vector<std::size_t> order(residuals.residuals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return residuals.residuals[a] < residuals.residuals[b];
  });
  const std::size_t n = order.size();
  os << "index,residual,theoretical_quantile\n";
  for (std::size_t rank = 0; rank < n; ++rank) {
    const std::size_t idx = order[rank];
    os << idx << ',' << residuals.residuals[idx] << ','
       << normal_quantile((rank + 0.5) / n) << '\n';
  }
}

}  // namespace dbsurv
