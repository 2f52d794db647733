#include "dbsurv/mle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "dbsurv/competitors.hpp"
#include "dbsurv/db_dist.hpp"
#include "dbsurv/diagnostics.hpp"
#include "dbsurv/likelihood.hpp"
#include "dbsurv/stats.hpp"

namespace dbsurv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLogBetaMin = -27.6;  // beta ~ 1e-12
constexpr double kLogBetaMax = 9.2;    // beta ~ 1e4
constexpr double kLogitMin = -40.0;
constexpr double kLogitMax = 40.0;

double logit(double x) { return std::log(x / (1.0 - x)); }
double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Golden-section maximization of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 300 && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Expands around z0 until a local maximum of f is bracketed, staying within
// [lo, hi]. Returns {a, b}; equality with a bound signals a boundary run.
std::pair<double, double> bracket_max(const std::function<double(double)>& f,
                                      double z0, double lo, double hi) {
  double step = 0.5;
  double a = std::max(lo, z0 - step);
  double b = std::min(hi, z0 + step);
  double fm = f(z0), fa = f(a), fb = f(b);
  while (fa >= fm && a > lo) {
    step *= 2.0;
    a = std::max(lo, a - step);
    fa = f(a);
    if (fa >= fm) fm = std::max(fm, fa);
  }
  while (fb >= fm && b < hi) {
    step *= 2.0;
    b = std::min(hi, b + step);
    fb = f(b);
    if (fb >= fm) fm = std::max(fm, fb);
  }
  return {a, b};
}

struct Newton1dResult {
  double beta;
  bool converged;
  int iterations;
  bool boundary;
};

// Safeguarded ascent for the DB likelihoods: bracket + golden section on
// theta = log(beta), then Newton polish with the analytic score/information.
Newton1dResult maximize_db_1d(const std::function<double(double)>& loglik,
                              const std::function<double(double)>& score,
                              const std::function<double(double)>& info,
                              double beta0, double tol, int max_iter) {
  const auto f = [&](double theta) { return loglik(std::exp(theta)); };
  double theta = std::clamp(std::log(beta0), kLogBetaMin, kLogBetaMax);
  auto [a, b] = bracket_max(f, theta, kLogBetaMin, kLogBetaMax);
  theta = golden_max(f, a, b, 1e-10);

  bool boundary = (theta - kLogBetaMin < 1e-6) || (kLogBetaMax - theta < 1e-6);
  int iters = 0;
  bool converged = false;
  double cur = f(theta);
  for (; iters < max_iter && !boundary; ++iters) {
    const double beta = std::exp(theta);
    const double s = score(beta);
    if (std::abs(s) < tol * (1.0 + std::abs(cur))) {
      converged = true;
      break;
    }
    const double g = beta * s;
    const double h = -beta * beta * info(beta) + beta * s;
    double step = (h < 0.0) ? -g / h : ((g > 0.0) ? 0.5 : -0.5);
    step = std::clamp(step, -2.0, 2.0);
    int bt = 0;
    double next = theta + step;
    while (bt < 60 && f(next) < cur - 1e-13 * std::abs(cur)) {
      step *= 0.5;
      next = theta + step;
      ++bt;
    }
    if (bt == 60) break;  // flat to rounding; score check decides on next pass
    theta = std::clamp(next, kLogBetaMin, kLogBetaMax);
    cur = f(theta);
    boundary = (theta - kLogBetaMin < 1e-9) || (kLogBetaMax - theta < 1e-9);
  }
  return {std::exp(theta), converged && !boundary, iters, boundary};
}

// Minimal Nelder-Mead ascent used as the 2-d fallback.
std::array<double, 2> nelder_mead_2d(const std::function<double(std::array<double, 2>)>& f,
                                     std::array<double, 2> v0, int iters) {
  std::array<std::array<double, 2>, 3> pts = {{v0,
                                               {v0[0] + 0.25, v0[1]},
                                               {v0[0], v0[1] + 0.25}}};
  std::array<double, 3> vals = {f(pts[0]), f(pts[1]), f(pts[2])};
  for (int it = 0; it < iters; ++it) {
    std::array<int, 3> ord = {0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int i, int j) { return vals[i] > vals[j]; });
    const auto& best = pts[ord[0]];
    auto& worst = pts[ord[2]];
    const std::array<double, 2> mid = {0.5 * (best[0] + pts[ord[1]][0]),
                                       0.5 * (best[1] + pts[ord[1]][1])};
    const std::array<double, 2> refl = {2.0 * mid[0] - worst[0], 2.0 * mid[1] - worst[1]};
    const double fr = f(refl);
    if (fr > vals[ord[0]]) {
      const std::array<double, 2> exp_pt = {3.0 * mid[0] - 2.0 * worst[0],
                                            3.0 * mid[1] - 2.0 * worst[1]};
      const double fe = f(exp_pt);
      worst = (fe > fr) ? exp_pt : refl;
      vals[ord[2]] = std::max(fe, fr);
    } else if (fr > vals[ord[1]]) {
      worst = refl;
      vals[ord[2]] = fr;
    } else {
      const std::array<double, 2> con = {0.5 * (mid[0] + worst[0]),
                                         0.5 * (mid[1] + worst[1])};
      const double fc = f(con);
      if (fc > vals[ord[2]]) {
        worst = con;
        vals[ord[2]] = fc;
      } else {
        for (int k : {1, 2}) {
          auto& p = pts[ord[k]];
          p = {0.5 * (p[0] + best[0]), 0.5 * (p[1] + best[1])};
          vals[ord[k]] = f(p);
        }
      }
    }
  }
  int besti = 0;
  for (int k : {1, 2}) {
    if (vals[k] > vals[besti]) besti = k;
  }
  return pts[besti];
}

struct CureFitState {
  CureParams params{0.1, 0.0};
  bool converged{};
  int iterations{};
  std::string message;
};

CureFitState maximize_cure(const SurvivalDataset& data, double beta0, double eta0,
                           double tol, int max_iter) {
  const auto eval = [&](std::array<double, 2> v) {
    const double beta = std::exp(std::clamp(v[0], kLogBetaMin, kLogBetaMax));
    const double eta = logistic(std::clamp(v[1], kLogitMin, kLogitMax));
    return loglik_cure(CureParams(beta, eta), data);
  };

  std::array<double, 2> v = {std::clamp(std::log(beta0), kLogBetaMin, kLogBetaMax),
                             std::clamp(logit(eta0), kLogitMin, kLogitMax)};
  double cur = eval(v);
  bool converged = false;
  int iters = 0;
  bool used_fallback = false;
  for (; iters < max_iter; ++iters) {
    const double beta = std::exp(v[0]);
    const double eta = logistic(v[1]);
    const CureParams params(beta, eta);
    const auto g = grad_cure(params, data);
    if (std::hypot(g[0], g[1]) < tol * (1.0 + std::abs(cur))) {
      converged = true;
      break;
    }
    const auto H = hessian_cure(params, data);
    const double de = eta * (1.0 - eta);
    const double gt0 = beta * g[0];
    const double gt1 = de * g[1];
    const double h00 = beta * beta * H[0][0] + beta * g[0];
    const double h11 = de * de * H[1][1] + de * (1.0 - 2.0 * eta) * g[1];
    const double h01 = beta * de * H[0][1];
    const double det = h00 * h11 - h01 * h01;
    std::array<double, 2> step;
    if (h00 < 0.0 && det > 0.0) {
      step = {-(h11 * gt0 - h01 * gt1) / det, -(h00 * gt1 - h01 * gt0) / det};
    } else {
      const double norm = std::hypot(gt0, gt1);
      step = {gt0 / norm * 0.5, gt1 / norm * 0.5};
    }
    step[0] = std::clamp(step[0], -2.0, 2.0);
    step[1] = std::clamp(step[1], -2.0, 2.0);
    int bt = 0;
    std::array<double, 2> next = {v[0] + step[0], v[1] + step[1]};
    while (bt < 60 && eval(next) < cur - 1e-13 * std::abs(cur)) {
      step[0] *= 0.5;
      step[1] *= 0.5;
      next = {v[0] + step[0], v[1] + step[1]};
      ++bt;
    }
    if (bt == 60) {
      if (used_fallback) break;
      used_fallback = true;
      v = nelder_mead_2d(eval, v, 400);
      cur = eval(v);
      continue;
    }
    v = {std::clamp(next[0], kLogBetaMin, kLogBetaMax),
         std::clamp(next[1], kLogitMin, kLogitMax)};
    cur = eval(v);
  }

  CureFitState out;
  out.params = CureParams(std::exp(v[0]), logistic(v[1]));
  out.converged = converged;
  out.iterations = iters;
  return out;
}

struct Competitor1dResult {
  double theta;
  bool converged;
  int iterations;
  bool boundary;
};

Competitor1dResult maximize_competitor(Family family, const SurvivalDataset& data,
                                       double tol, int max_iter,
                                       const std::vector<double>& start) {
  const ParamDomain dom = competitor_domain(family);
  const double lo = dom.positive ? kLogBetaMin : kLogitMin;
  const double hi = dom.positive ? kLogBetaMax : kLogitMax;
  const auto to_nat = [&](double z) { return dom.positive ? std::exp(z) : logistic(z); };
  const auto to_z = [&](double th) { return dom.positive ? std::log(th) : logit(th); };
  const auto f = [&](double z) { return loglik_censored_family(family, to_nat(z), data); };

  double z0;
  if (!start.empty()) {
    z0 = std::clamp(to_z(start[0]), lo, hi);
  } else {
    // coarse scan for a sane start
    z0 = lo;
    double best = -std::numeric_limits<double>::infinity();
    const int kGrid = 121;
    for (int i = 0; i < kGrid; ++i) {
      const double z = lo + (hi - lo) * i / (kGrid - 1.0);
      const double v = f(z);
      if (v > best) {
        best = v;
        z0 = z;
      }
    }
  }
  auto [a, b] = bracket_max(f, z0, lo, hi);
  double z = golden_max(f, a, b, 1e-11);
  bool boundary = (z - lo < 1e-6) || (hi - z < 1e-6);

  // Newton polish with finite-difference derivatives on the natural scale.
  const auto ll_nat = [&](double th) { return loglik_censored_family(family, th, data); };
  double theta = to_nat(z);
  bool converged = false;
  int iters = 0;
  for (; iters < std::min(max_iter, 12) && !boundary; ++iters) {
    const double h = std::max(1e-9, 1e-6 * std::abs(theta));
    const double cur = ll_nat(theta);
    const double s = (ll_nat(theta + h) - ll_nat(theta - h)) / (2.0 * h);
    if (std::abs(s) < tol * (1.0 + std::abs(cur))) {
      converged = true;
      break;
    }
    const double d2 = (ll_nat(theta + h) - 2.0 * cur + ll_nat(theta - h)) / (h * h);
    if (!(d2 < 0.0)) break;
    double next = theta - s / d2;
    const double nat_lo = to_nat(lo), nat_hi = to_nat(hi);
    next = std::clamp(next, nat_lo, nat_hi);
    if (ll_nat(next) < cur) break;
    theta = next;
  }
  return {theta, converged && !boundary, iters, boundary};
}

double fd_obs_info_1d(const std::function<double(double)>& ll, double theta) {
  const double h = std::max(1e-7, 1e-4 * std::abs(theta));
  return -(ll(theta + h) - 2.0 * ll(theta) + ll(theta - h)) / (h * h);
}

}  // namespace

namespace detail {

double mom_start_beta(const SurvivalDataset& data) {
  double sum = 0.0;
  std::size_t n_events = 0;
  for (const auto& r : data.records()) {
    if (r.status == 1) {
      sum += r.time;
      ++n_events;
    }
  }
  const double target = sum / static_cast<double>(n_events);
  if (target <= 1e-12) return std::exp(kLogBetaMax) * 1e-1;
  double lo = 1e-8, hi = 50.0;
  if (mean(DbParam(lo)) < target) return lo;
  if (mean(DbParam(hi)) > target) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean(DbParam(mid)) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

InfoCriteria information_criteria(double loglik, int num_params, std::size_t n) {
  InfoCriteria out{};
  out.aic = -2.0 * loglik + 2.0 * num_params;
  out.bic = -2.0 * loglik + num_params * std::log(static_cast<double>(n));
  out.aicc_valid = n > static_cast<std::size_t>(num_params) + 1;
  out.aicc = out.aicc_valid
                 ? out.aic + (2.0 * num_params * num_params + 2.0 * num_params) /
                       (static_cast<double>(n) - num_params - 1.0)
                 : kNaN;
  return out;
}

std::pair<double, double> wald_ci(double estimate, double std_error, double level,
                                  double domain_lo, double domain_hi) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("wald_ci: level must be in (0,1)");
  }
  if (!(std_error >= 0.0)) {
    throw std::invalid_argument("wald_ci: std_error must be >= 0");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  return {std::clamp(estimate - z * std_error, domain_lo, domain_hi),
          std::clamp(estimate + z * std_error, domain_lo, domain_hi)};
}

FitResult fit_ml(Family family, Setting setting, const SurvivalDataset& data,
                 const FitOptions& options) {
  if (!data.has_event()) {
    throw std::invalid_argument(
        "fit_ml: all observations are censored; the parameter is not identified");
  }
  if (setting == Setting::Complete && !data.all_events()) {
    throw std::invalid_argument("fit_ml: Complete setting requires all events");
  }
  if (setting == Setting::CureMixture && family != Family::Db) {
    throw std::invalid_argument("fit_ml: cure mixture fitting is available for db only");
  }
  if (!(options.ci_level > 0.0 && options.ci_level < 1.0)) {
    throw std::invalid_argument("fit_ml: ci_level must be in (0,1)");
  }

  FitResult out;
  out.family = family;
  out.setting = setting;
  out.ci_level = options.ci_level;

  const std::size_t n = data.size();

  if (family == Family::Db && setting != Setting::CureMixture) {
    const bool complete = (setting == Setting::Complete);
    const auto ll = [&](double b) {
      return complete ? loglik_complete(b, data) : loglik_censored(b, data);
    };
    const auto sc = [&](double b) {
      return complete ? score_complete(b, data) : score_censored(b, data);
    };
    const auto in = [&](double b) {
      return complete ? obs_info_complete(b, data) : obs_info_censored(b, data);
    };
    const double beta0 =
        options.start.empty() ? detail::mom_start_beta(data) : options.start.at(0);
    const auto res = maximize_db_1d(ll, sc, in, beta0, options.tol, options.max_iter);
    out.estimates = {res.beta};
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.loglik = ll(res.beta);
    if (res.boundary) out.message = "estimate ran to the parameter boundary";
    const double info = in(res.beta);
    if (info > 0.0 && std::isfinite(info)) {
      const double var = 1.0 / info;
      out.se_available = true;
      out.std_errors = {std::sqrt(var)};
      out.covariance = {var};
      out.ci = {wald_ci(res.beta, out.std_errors[0], options.ci_level, 0.0)};
    } else {
      out.message = out.message.empty()
                        ? "observed information is singular at the estimate"
                        : out.message;
      out.ci = {{kNaN, kNaN}};
    }
  } else if (family == Family::Db) {
    // cure mixture
    if (data.all_events()) {
      out.message = "cure setting without censored observations; eta is weakly identified";
    }
    double beta0 = detail::mom_start_beta(data);
    double eta0 = std::clamp(km_plateau(kaplan_meier(data)), 0.02, 0.95);
    if (!options.start.empty()) {
      beta0 = options.start.at(0);
      eta0 = std::clamp(options.start.at(1), 1e-6, 1.0 - 1e-6);
    }
    const auto res = maximize_cure(data, beta0, eta0, options.tol, options.max_iter);
    out.estimates = {res.params.beta, res.params.eta};
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.loglik = loglik_cure(res.params, data);
    if (!res.message.empty()) out.message = res.message;
    const auto H = hessian_cure(res.params, data);
    const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    if (H[0][0] < 0.0 && det > 0.0) {
      // covariance = (-H)^{-1}
      const double v00 = -H[1][1] / det;
      const double v11 = -H[0][0] / det;
      const double v01 = H[0][1] / det;
      out.se_available = true;
      out.std_errors = {std::sqrt(v00), std::sqrt(v11)};
      out.covariance = {v00, v01, v01, v11};
      out.ci = {wald_ci(res.params.beta, out.std_errors[0], options.ci_level, 0.0),
                wald_ci(res.params.eta, out.std_errors[1], options.ci_level, 0.0, 1.0)};
    } else {
      out.message = out.message.empty()
                        ? "observed information is not positive definite at the estimate"
                        : out.message;
      out.ci = {{kNaN, kNaN}, {kNaN, kNaN}};
    }
  } else {
    const auto res =
        maximize_competitor(family, data, options.tol, options.max_iter, options.start);
    out.estimates = {res.theta};
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.loglik = loglik_censored_family(family, res.theta, data);
    if (res.boundary) out.message = "estimate ran to the parameter boundary";
    const auto ll_nat = [&](double th) {
      return loglik_censored_family(family, th, data);
    };
    const double info = fd_obs_info_1d(ll_nat, res.theta);
    const ParamDomain dom = competitor_domain(family);
    if (info > 0.0 && std::isfinite(info)) {
      const double var = 1.0 / info;
      out.se_available = true;
      out.std_errors = {std::sqrt(var)};
      out.covariance = {var};
      out.ci = {wald_ci(res.theta, out.std_errors[0], options.ci_level, 0.0,
                        dom.positive ? 1e308 : 1.0)};
    } else {
      out.message = out.message.empty()
                        ? "observed information is singular at the estimate"
                        : out.message;
      out.ci = {{kNaN, kNaN}};
    }
  }

  const int k = static_cast<int>(out.estimates.size());
  const auto ic = information_criteria(out.loglik, k, n);
  out.aic = ic.aic;
  out.bic = ic.bic;
  out.aicc = ic.aicc;
  out.aicc_valid = ic.aicc_valid;
  return out;
}

double model_survival(const FitResult& fit, int t) {
  if (fit.family == Family::Db) {
    const DbParam param(fit.estimates.at(0));
    const double s0 = survival(param, t);
    if (fit.setting == Setting::CureMixture) {
      const double eta = fit.estimates.at(1);
      return eta + (1.0 - eta) * s0;
    }
    return s0;
  }
  return competitor_survival(CompetitorParam(fit.family, fit.estimates.at(0)), t);
}

double model_cdf(const FitResult& fit, int t) { return 1.0 - model_survival(fit, t); }

}  // namespace dbsurv
