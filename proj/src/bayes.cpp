#include "dbsurv/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "dbsurv/likelihood.hpp"
#include "dbsurv/rng.hpp"
#include "dbsurv/stats.hpp"

namespace dbsurv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_config(const McmcConfig& c) {
  if (c.iterations <= c.burn_in || c.burn_in < 0 || c.thin < 1) {
    throw std::invalid_argument("McmcConfig: need iterations > burn_in >= 0, thin >= 1");
  }
  if ((c.iterations - c.burn_in) / c.thin < 100) {
    throw std::invalid_argument("McmcConfig: fewer than 100 retained draws");
  }
}

double segment_mean_and_se2(std::span<const double> seg, double* se2) {
  const std::size_t len = seg.size();
  const double mean = std::accumulate(seg.begin(), seg.end(), 0.0) / len;
  const std::size_t n_batches = std::min<std::size_t>(20, len);
  const std::size_t batch = len / n_batches;
  double var_means = 0.0;
  for (std::size_t b = 0; b < n_batches; ++b) {
    const auto first = seg.begin() + b * batch;
    const double bm = std::accumulate(first, first + batch, 0.0) / batch;
    var_means += (bm - mean) * (bm - mean);
  }
  var_means /= (n_batches > 1) ? (n_batches - 1) : 1;
  *se2 = var_means / n_batches;
  return mean;
}

}  // namespace

double log_posterior(std::span<const double> params, const SurvivalDataset& data,
                     const PriorSpec& prior, Setting setting) {
  const double beta = params[0];
  if (!(beta > 0.0) || !std::isfinite(beta)) return kNegInf;
  double ll;
  if (setting == Setting::CureMixture) {
    if (params.size() < 2) {
      throw std::invalid_argument("log_posterior: cure setting needs (beta, eta)");
    }
    const double eta = params[1];
    if (!(eta >= 0.0 && eta < 1.0)) return kNegInf;
    ll = loglik_cure(CureParams(beta, eta), data) +
         log_beta_pdf(eta, prior.eta_prior.alpha, prior.eta_prior.beta);
  } else if (setting == Setting::Complete) {
    ll = loglik_complete(beta, data);
  } else {
    ll = loglik_censored(beta, data);
  }
  return ll + log_gamma_pdf(beta, prior.beta_prior.shape, prior.beta_prior.rate);
}

PosteriorChain run_mcmc(const SurvivalDataset& data, const PriorSpec& prior,
                        const McmcConfig& config, Setting setting) {
  validate_config(config);
  const int dim = (setting == Setting::CureMixture) ? 2 : 1;

  // target on the transformed scale, Jacobian included
  const auto log_target = [&](const std::vector<double>& v) {
    const double beta = std::exp(v[0]);
    if (!std::isfinite(beta) || beta <= 0.0) return kNegInf;
    double jac = v[0];
    std::vector<double> nat = {beta};
    if (dim == 2) {
      const double eta = 1.0 / (1.0 + std::exp(-v[1]));
      if (!(eta > 0.0 && eta < 1.0)) return kNegInf;
      nat.push_back(eta);
      jac += std::log(eta) + std::log1p(-eta);
    }
    const double lp = log_posterior(nat, data, prior, setting);
    return std::isfinite(lp) ? lp + jac : kNegInf;
  };

  // deterministic start: prior-neutral midpoint of the sane range
  std::vector<double> v(dim);
  v[0] = std::log(0.05);
  if (dim == 2) v[1] = 0.0;  // eta = 0.5

  std::vector<double> base_scale(dim, dim == 2 ? 0.4 : 0.4);
  double scale_factor = (config.proposal_scale > 0.0) ? config.proposal_scale : 1.0;
  const bool tune = config.proposal_scale <= 0.0;

  Rng rng(config.seed);
  double cur_lt = log_target(v);
  const std::int64_t retained_target = (config.iterations - config.burn_in) / config.thin;

  PosteriorChain chain;
  chain.param_names = (dim == 2) ? std::vector<std::string>{"beta", "eta"}
                                 : std::vector<std::string>{"beta"};
  chain.draws.reserve(retained_target);

  std::int64_t accepted_post = 0, proposals_post = 0;
  std::int64_t accepted_win = 0, window = 0;
  std::vector<double> prop(dim);

  for (std::int64_t i = 0; i < config.iterations; ++i) {
    for (int k = 0; k < dim; ++k) {
      prop[k] = v[k] + scale_factor * base_scale[k] * rng.normal();
    }
    const double lt = log_target(prop);
    const bool accept = std::log(rng.uniform_open()) < lt - cur_lt;
    if (accept) {
      v = prop;
      cur_lt = lt;
    }
    if (i < config.burn_in) {
      if (tune) {
        accepted_win += accept;
        if (++window == 500) {
          const double rate = static_cast<double>(accepted_win) / window;
          if (rate > 0.5) scale_factor *= 1.25;
          if (rate < 0.2) scale_factor *= 0.8;
          accepted_win = 0;
          window = 0;
        }
      }
    } else {
      ++proposals_post;
      accepted_post += accept;
      if ((i - config.burn_in + 1) % config.thin == 0) {
        std::vector<double> nat = {std::exp(v[0])};
        if (dim == 2) nat.push_back(1.0 / (1.0 + std::exp(-v[1])));
        if (nat[0] < 1e-6) chain.divergence_warning = true;
        chain.draws.push_back(std::move(nat));
      }
    }
  }

  chain.acceptance_rate = static_cast<double>(accepted_post) / proposals_post;

  const std::size_t m = chain.draws.size();
  const int max_lag = static_cast<int>(std::min<std::size_t>(40, m - 1));
  for (int k = 0; k < dim; ++k) {
    std::vector<double> col(m);
    for (std::size_t j = 0; j < m; ++j) col[j] = chain.draws[j][k];
    chain.posterior_mean.push_back(std::accumulate(col.begin(), col.end(), 0.0) / m);
    chain.geweke_z.push_back(geweke_z(col));
    chain.acf.push_back(acf(col, max_lag));
    chain.hdi.push_back(hdi(col, 0.95));
  }
  return chain;
}

std::pair<double, double> hdi(std::vector<double> samples, double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::invalid_argument("hdi: prob must be in (0,1)");
  }
  if (samples.size() < 10) {
    throw std::invalid_argument("hdi: need at least 10 draws");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size();
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(prob * static_cast<double>(m)));
  std::size_t best = 0;
  double best_width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + k <= m; ++i) {
    const double width = samples[i + k - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {samples[best], samples[best + k - 1]};
}

double geweke_z(std::span<const double> samples, double frac_first, double frac_last) {
  const std::size_t m = samples.size();
  if (m < 100) {
    throw std::invalid_argument("geweke_z: need at least 100 samples");
  }
  if (!(frac_first > 0.0 && frac_last > 0.0 && frac_first + frac_last <= 1.0)) {
    throw std::invalid_argument("geweke_z: invalid segment fractions");
  }
  const std::size_t na = static_cast<std::size_t>(frac_first * m);
  const std::size_t nb = static_cast<std::size_t>(frac_last * m);
  double se2_a, se2_b;
  const double ma = segment_mean_and_se2(samples.first(na), &se2_a);
  const double mb = segment_mean_and_se2(samples.last(nb), &se2_b);
  return (ma - mb) / std::sqrt(se2_a + se2_b);
}

std::vector<double> acf(std::span<const double> samples, int max_lag) {
  const std::size_t m = samples.size();
  if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= m) {
    throw std::invalid_argument("acf: need 1 <= max_lag < number of samples");
  }
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / m;
  double denom = 0.0;
  for (double x : samples) denom += (x - mean) * (x - mean);
  std::vector<double> out(max_lag);
  for (int lag = 1; lag <= max_lag; ++lag) {
    double num = 0.0;
    for (std::size_t i = 0; i + lag < m; ++i) {
      num += (samples[i] - mean) * (samples[i + lag] - mean);
    }
    out[lag - 1] = num / denom;
  }
  return out;
}

void write_chain_csv(std::ostream& os, const PosteriorChain& chain) {
  for (std::size_t k = 0; k < chain.param_names.size(); ++k) {
    os << (k ? "," : "") << chain.param_names[k];
  }
  os << '\n';
  for (const auto& row : chain.draws) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      os << (k ? "," : "") << row[k];
    }
    os << '\n';
  }
}

}  // namespace dbsurv
